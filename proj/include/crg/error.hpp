#pragma once

#include <stdexcept>
#include <string>

namespace crg {

enum class Errc {
  non_prime,
  reducible_modulus,
  field_too_large,
  division_by_zero,
  invalid_subfield,
  invalid_argument,
  invalid_divisor,
  non_integer_result,
  seed_without_zero,
  empty_family,
  budget_exceeded,
  dimension_too_small,
  zero_dilation,
  not_a_helper,
  missing_payload,
  rank_deficient,
  malformed_input,
  assertion_failure,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::non_prime: return "NonPrime";
    case Errc::reducible_modulus: return "ReducibleModulus";
    case Errc::field_too_large: return "FieldTooLarge";
    case Errc::division_by_zero: return "DivisionByZero";
    case Errc::invalid_subfield: return "InvalidSubfield";
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::invalid_divisor: return "InvalidDivisor";
    case Errc::non_integer_result: return "NonIntegerResult";
    case Errc::seed_without_zero: return "SeedWithoutZero";
    case Errc::empty_family: return "EmptyFamily";
    case Errc::budget_exceeded: return "BudgetExceeded";
    case Errc::dimension_too_small: return "DimensionTooSmall";
    case Errc::zero_dilation: return "ZeroDilation";
    case Errc::not_a_helper: return "NotAHelper";
    case Errc::missing_payload: return "MissingPayload";
    case Errc::rank_deficient: return "RankDeficient";
    case Errc::malformed_input: return "MalformedInput";
    case Errc::assertion_failure: return "AssertionFailure";
  }
  return "Unknown";
}

/// All library failures are reported through this exception; `code()` names the condition.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace crg
