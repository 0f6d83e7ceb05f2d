#include "cocyclelab/csv.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cocyclelab/errors.hpp"
#include "cocyclelab/version.hpp"

namespace cocyclelab {

namespace {

std::string escape_field(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void append_row(std::string& out, const std::vector<std::string>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out += ',';
    out += escape_field(row[i]);
  }
  out += '\n';
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string to_csv(const CsvTable& t) {
  std::string out;
  append_row(out, t.header);
  for (const auto& row : t.rows) append_row(out, row);
  return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  if (target.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(target.parent_path(), ec);
    if (ec) throw PreconditionError("cannot create directory " + target.parent_path().string());
  }
  const std::filesystem::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw PreconditionError("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw PreconditionError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw PreconditionError("cannot move " + tmp.string() + " into place");
  }
}

CsvTable profile_table(const GrowthProfile& p) {
  CsvTable t;
  t.header = {"label", "norm"};
  for (std::size_t i = 0; i < p.labels.size(); ++i)
    t.rows.push_back({p.labels[i], format_double(p.norms[i])});
  return t;
}

CsvTable flow_table(const GrowthProfile& p) {
  CsvTable t = profile_table(p);
  t.header = {"t", "norm"};
  return t;
}

CsvTable sequence_table(std::span<const double> values) {
  CsvTable t;
  t.header = {"n", "c_n"};
  for (std::size_t i = 0; i < values.size(); ++i)
    t.rows.push_back({std::to_string(i + 1), format_double(values[i])});
  return t;
}

CsvTable nullpair_table(std::span<const NullPairResult> rs) {
  CsvTable t;
  t.header = {"radius", "residual", "norm1", "norm2"};
  for (const NullPairResult& r : rs)
    t.rows.push_back({std::to_string(r.radius), format_double(r.residual),
                      format_double(r.norm1), format_double(r.norm2)});
  return t;
}

CsvTable algebra_table(const AlgebraElement& f) {
  CsvTable t;
  t.header = {"word", "re", "im"};
  for (const auto& [word, c] : f.terms())
    t.rows.push_back({word.str(), format_double(c.real()), format_double(c.imag())});
  return t;
}

CsvTable cantor_table(const CantorMeasure& mu) {
  CsvTable t;
  t.header = {"level", "lo", "hi", "weight"};
  for (std::size_t i = 0; i < mu.pieces().size(); ++i) {
    const AnchoredInterval& iv = mu.pieces()[i];
    t.rows.push_back({std::to_string(mu.regions()[i]), format_double(iv.inf()),
                      format_double(iv.sup()), format_double(mu.masses()[i])});
  }
  return t;
}

std::string manifest_text(const std::string& subcommand,
                          const std::map<std::string, std::string>& config) {
  std::ostringstream os;
  os << "tool: " << kToolName << ' ' << kToolVersion << '\n';
  os << "subcommand: " << subcommand << '\n';
  for (const auto& [key, value] : config) os << key << '=' << value << '\n';
  return os.str();
}

}  // namespace cocyclelab
