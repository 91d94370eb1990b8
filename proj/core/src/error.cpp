#include "coint_rec/error.hpp"

namespace coint_rec {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_dimension: return "invalid_dimension";
    case ErrorKind::domain: return "domain";
    case ErrorKind::enumeration_too_large: return "enumeration_too_large";
    case ErrorKind::not_positive_definite: return "not_positive_definite";
    case ErrorKind::invalid_input: return "invalid_input";
    case ErrorKind::config: return "config";
    case ErrorKind::infeasible: return "infeasible";
    case ErrorKind::numerical: return "numerical";
  }
  return "unknown";
}

EnumerationTooLarge::EnumerationTooLarge(std::uint64_t count,
                                         std::uint64_t budget)
    : Error(ErrorKind::enumeration_too_large,
            "support enumeration of " + std::to_string(count) +
                " subsets exceeds budget " + std::to_string(budget)),
      count_(count),
      budget_(budget) {}

}  // namespace coint_rec
