#pragma once

#include <stdexcept>
#include <string>

namespace cocyclelab {

// Violated input contract: bad words, mismatched ranks, balls too small,
// inadmissible measure parameters. CLI exit code 2.
class PreconditionError : public std::runtime_error {
 public:
  explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

// An iterative routine failed to converge or a computed quantity fell out of
// tolerance. CLI exit code 3.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cocyclelab
