#pragma once

#include <stdexcept>
#include <string>

namespace ricci {

/// Argument outside the mathematical domain of an evaluator.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Missing or malformed configuration (unknown override, missing constant).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A construction step could not certify one of its inequalities.
/// `clause()` is the name of the check that failed, matching the
/// CheckResult name used in verification reports.
class CertificationError : public std::runtime_error {
 public:
  CertificationError(std::string clause, const std::string& what)
      : std::runtime_error(clause + ": " + what), clause_(std::move(clause)) {}

  const std::string& clause() const noexcept { return clause_; }

 private:
  std::string clause_;
};

}  // namespace ricci
