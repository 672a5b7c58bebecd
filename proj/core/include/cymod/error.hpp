#pragma once

#include <stdexcept>
#include <string>

namespace cymod {

enum class Errc {
  invalid_prime,
  invalid_discriminant,
  unsupported_field,
  non_unit_leading,
  non_integral_series,
  insufficient_precision,
  closure_violation,
  internal_inconsistency,
  no_generator,
  normalization_failure,
  bad_prime,
  not_on_curve,
  division_by_zero,
  singular_curve,
  wrong_shape,
  unknown_name,
  pole,
  overflow,
  model_mismatch,
  audit_failure,
  prime_leak,
  unsupported_characteristic,
  weil_bound,
  expansion_mismatch,
  unresolved_twist,
  parity_violation,
  non_semistable,
};

const char* errc_name(Errc e);

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline const char* errc_name(Errc e) {
  switch (e) {
    case Errc::invalid_prime: return "invalid-prime";
    case Errc::invalid_discriminant: return "invalid-discriminant";
    case Errc::unsupported_field: return "unsupported-field";
    case Errc::non_unit_leading: return "non-unit-leading";
    case Errc::non_integral_series: return "non-integral-series";
    case Errc::insufficient_precision: return "insufficient-precision";
    case Errc::closure_violation: return "closure-violation";
    case Errc::internal_inconsistency: return "internal-inconsistency";
    case Errc::no_generator: return "no-generator";
    case Errc::normalization_failure: return "normalization-failure";
    case Errc::bad_prime: return "bad-prime";
    case Errc::not_on_curve: return "not-on-curve";
    case Errc::division_by_zero: return "division-by-zero";
    case Errc::singular_curve: return "singular-curve";
    case Errc::wrong_shape: return "wrong-shape";
    case Errc::unknown_name: return "unknown-name";
    case Errc::pole: return "pole";
    case Errc::overflow: return "overflow";
    case Errc::model_mismatch: return "model-mismatch";
    case Errc::audit_failure: return "audit-failure";
    case Errc::prime_leak: return "prime-leak";
    case Errc::unsupported_characteristic: return "unsupported-characteristic";
    case Errc::weil_bound: return "weil-bound";
    case Errc::expansion_mismatch: return "expansion-mismatch";
    case Errc::unresolved_twist: return "unresolved-twist";
    case Errc::parity_violation: return "parity-violation";
    case Errc::non_semistable: return "non-semistable";
  }
  return "error";
}

}  // namespace cymod
