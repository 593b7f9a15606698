#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace cat0 {

/// A single violated invariant found while validating an input object.
/// `idx` holds the indices involved (unused slots are -1) and `slack` is the
/// signed amount by which the constraint fails (negative = violated).
struct Violation {
  std::string kind;
  std::array<int, 3> idx{-1, -1, -1};
  double slack = 0.0;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;

  std::string summary() const;
};

/// Thrown when a constructor is handed data that fails validation.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(const std::string& what, ValidationReport report)
      : std::runtime_error(what), report_(std::move(report)) {}

  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

}  // namespace cat0
