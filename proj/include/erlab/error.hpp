#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace erlab {

enum class Errc {
  EmptySequence,
  EntryBelowThree,
  SingleColour,
  IndexOutOfRange,
  EqualIndices,
  InvalidInput,
  InfeasiblePattern,
  InfeasibleInput,
  DimensionTooLarge,
  BudgetExhausted,
  NotBasicOptimal,
  EmptyOptSet,
  NotApplicable,
  NotKFree,
  TooLarge,
  Infeasible,
};

std::string_view errc_name(Errc code) noexcept;

// All domain failures are reported through this exception type; the code is
// what the CLI surfaces in its structured report.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }
  std::string_view name() const noexcept { return errc_name(code_); }

 private:
  Errc code_;
};

}  // namespace erlab
