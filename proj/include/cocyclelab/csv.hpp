#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "cocyclelab/algebra.hpp"
#include "cocyclelab/cantor.hpp"
#include "cocyclelab/cocycle.hpp"
#include "cocyclelab/fox.hpp"

namespace cocyclelab {

// Fixed 17-significant-digit decimal, so identical values give identical
// bytes across runs.
std::string format_double(double x);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Comma-separated with a trailing newline; fields containing a comma, quote,
// or newline are quoted.
std::string to_csv(const CsvTable& t);

// Write through a temp file in the same directory plus rename, creating
// parent directories as needed; readers never observe a partial file.
void write_file_atomic(const std::string& path, const std::string& content);

CsvTable profile_table(const GrowthProfile& p);               // label,norm
CsvTable flow_table(const GrowthProfile& p);                  // t,norm
CsvTable sequence_table(std::span<const double> values);      // n,c_n (n from 1)
CsvTable nullpair_table(std::span<const NullPairResult> rs);  // radius,residual,norm1,norm2
CsvTable algebra_table(const AlgebraElement& f);              // word,re,im
CsvTable cantor_table(const CantorMeasure& mu);               // level,lo,hi,weight

// Deterministic run record: tool name and version, the subcommand, and the
// full configuration in key order. Deliberately no timestamps.
std::string manifest_text(const std::string& subcommand,
                          const std::map<std::string, std::string>& config);

}  // namespace cocyclelab
