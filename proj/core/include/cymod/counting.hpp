#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cymod/arith.hpp"
#include "cymod/families.hpp"

namespace cymod {

// Integer Weierstrass coefficients a1, a2, a3, a4, a6.
using CurveZ = std::array<i64, 5>;

CurveZ parse_curve(const std::string& text);  // "a1,a2,a3,a4,a6"
i128 curve_discriminant(const CurveZ& e);

// Projective F_p points of the (possibly singular) cubic; p odd.
i64 curve_count(const CurveZ& e, i64 p);

// Quadratic character table chi[x] for x in [0, p).
std::vector<signed char> quadratic_character_table(i64 p);
// #{y^2 = x^3 + a x + b} over F_p including infinity, using a precomputed table.
i64 short_curve_count(i64 a, i64 b, i64 p, const std::vector<signed char>& chi);

// A(p) = p + 1 - #E(F_p); throws bad_prime if E has bad reduction at p.
i64 ap_elliptic(const CurveZ& e, i64 p);

struct CountReport {
  std::string family;
  i64 p = 0;
  i64 total = 0;
  int ns_trace_used = 0;
  i64 B = 0;
  std::string matched_form;  // empty until a twist fit is attached
  i64 twist_disc = 0;
  bool ok = false;
};

CountReport k3_point_count(const WeierstrassFamily& f, i64 p);

// Parallel sweep over primes; results sorted by p.
std::vector<CountReport> count_sweep(const WeierstrassFamily& f, const std::vector<i64>& primes,
                                     unsigned threads = 0);

// Good primes lo <= p <= hi for the family.
std::vector<i64> good_primes(const WeierstrassFamily& f, i64 lo, i64 hi);

// Hecke form whose field matches the family (empty if none).
std::string family_form(const std::string& family);

// 1, -3, -4, 8, -8, 12, -24, 24: fundamental discriminants dividing 48.
const std::vector<i64>& twist_candidates();
i64 fundamental_part(i64 n);

struct TwistFit {
  std::string family;
  std::string form_id;
  i64 D = 0;                   // canonical representative
  std::vector<i64> equivalent; // all candidates fitting; they differ by the CM character
  std::vector<i64> primes;
  bool resolved() const { return !form_id.empty(); }
};

// B(p) = chi_D(p) a_p(form) for every prime used. Throws model_mismatch if nothing fits.
TwistFit twist_fit(const WeierstrassFamily& f, const std::vector<i64>& primes,
                   const std::optional<std::string>& form = std::nullopt, unsigned threads = 0);
TwistFit twist_fit_from_counts(const WeierstrassFamily& f, const std::vector<CountReport>& counts,
                               const std::optional<std::string>& form = std::nullopt);

// chi_D(p) a_p(form), the modular prediction for B(p).
i64 predicted_B(const TwistFit& fit, i64 p);
int nebentypus(const TwistFit& fit, i64 p);

// ((p+1-a1)(p+1-a2) + (p+1+a1)(p+1+a2))/2 + p r2, checked against (p+1)^2 + a1 a2 + p r2.
i64 kummer_fiber_count(i64 a1, i64 a2, i64 r2, i64 p);
i64 kummer_fiber_count_average(i64 a1, i64 a2, i64 r2, i64 p);
i64 kummer_fiber_count_simplified(i64 a1, i64 a2, i64 r2, i64 p);

// Number of F_p-rational 2-torsion points (including O).
int rational_two_torsion(const CurveZ& e, i64 p);

i64 h3_trace(const WeierstrassFamily& f, const CurveZ& e, i64 p, const TwistFit& fit);
i64 h2_trace(const WeierstrassFamily& f, i64 p);

}  // namespace cymod
