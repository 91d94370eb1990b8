#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace coint_rec {

enum class ErrorKind {
  invalid_dimension,
  domain,
  enumeration_too_large,
  not_positive_definite,
  invalid_input,
  config,
  infeasible,
  numerical,
};

const char* to_string(ErrorKind kind);

/// Base class for every exception thrown by the library. The kind is what
/// the CLI maps onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& what)
      : Error(ErrorKind::invalid_dimension, what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what)
      : Error(ErrorKind::domain, what) {}
};

class EnumerationTooLarge : public Error {
 public:
  EnumerationTooLarge(std::uint64_t count, std::uint64_t budget);
  std::uint64_t count() const noexcept { return count_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t count_;
  std::uint64_t budget_;
};

class NotPositiveDefinite : public Error {
 public:
  explicit NotPositiveDefinite(const std::string& what)
      : Error(ErrorKind::not_positive_definite, what) {}
};

class InvalidInput : public Error {
 public:
  explicit InvalidInput(const std::string& what)
      : Error(ErrorKind::invalid_input, what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what)
      : Error(ErrorKind::config, what) {}
};

class InfeasibleConstants : public Error {
 public:
  explicit InfeasibleConstants(const std::string& what)
      : Error(ErrorKind::infeasible, what) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what)
      : Error(ErrorKind::numerical, what) {}
};

}  // namespace coint_rec
