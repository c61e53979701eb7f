#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace treehardy {

/** Exact integer arithmetic left the 128-bit range. Carries the offending radius. */
class OverflowError : public std::runtime_error {
 public:
  explicit OverflowError(std::int64_t depth)
      : std::runtime_error("count overflows 128-bit range at radius " + std::to_string(depth)),
        depth_(depth) {}
  std::int64_t depth() const { return depth_; }

 private:
  std::int64_t depth_;
};

/** A requested structure would exceed the configured vertex budget. */
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** An argument lies outside the mathematical domain of the operation. */
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** A descriptor or parameter set failed structural validation. */
class InvalidParamError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** A weight required to be positive was negative on the evaluation window. */
class NonpositiveWeightError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** A support constraint places mass on the outermost sphere of a truncation. */
class SupportTouchesBoundaryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** A certified-nonnegative bottom eigenvalue came out below the slack floor. */
class NonnegativityViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** Malformed descriptor text. */
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace treehardy
