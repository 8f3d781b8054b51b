#pragma once

#include <stdexcept>
#include <string>

namespace vdp {

// Raised when a Gröbner computation exceeds its configured reduction budget.
// Never converted into a verdict: callers either propagate it or report the
// certificate as "budget exceeded".
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(std::string what) : std::runtime_error(std::move(what)) {}
};

// A certificate whose computed evidence contradicts the expected identity.
class CertificateFailure : public std::runtime_error {
 public:
  explicit CertificateFailure(std::string what) : std::runtime_error(std::move(what)) {}
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string what, std::size_t position)
      : std::runtime_error(std::move(what)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace vdp
