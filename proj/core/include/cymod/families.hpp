#pragma once

#include <array>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "cymod/error.hpp"
#include "cymod/poly.hpp"

namespace cymod {

// a1, a2, a3, a4, a6 over a field F (Rational, Fp or RatFunc).
template <class F>
struct WeierstrassCurve {
  std::array<F, 5> a;
  const F& a1() const { return a[0]; }
  const F& a2() const { return a[1]; }
  const F& a3() const { return a[2]; }
  const F& a4() const { return a[3]; }
  const F& a6() const { return a[4]; }
};

template <class F>
struct Invariants {
  F b2, b4, b6, b8, c4, c6, disc;
  std::optional<F> j;  // absent when disc = 0
};

template <class F>
void require_char_not_2_3(const F& x) {
  if constexpr (std::is_same_v<F, Fp>) {
    if (x.modulus() == 2 || x.modulus() == 3)
      fail(Errc::unsupported_characteristic, "characteristic 2 or 3");
  }
}

// b2..c6 and disc only; usable over any commutative ring with from_int.
template <class F>
Invariants<F> ring_invariants(const WeierstrassCurve<F>& E) {
  const F& a1 = E.a1();
  const F& a2 = E.a2();
  const F& a3 = E.a3();
  const F& a4 = E.a4();
  const F& a6 = E.a6();
  auto k = [&](i128 x) { return a1.from_int(x); };
  Invariants<F> r;
  r.b2 = a1 * a1 + k(4) * a2;
  r.b4 = k(2) * a4 + a1 * a3;
  r.b6 = a3 * a3 + k(4) * a6;
  r.b8 = a1 * a1 * a6 + k(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  r.c4 = r.b2 * r.b2 - k(24) * r.b4;
  r.c6 = -(r.b2 * r.b2 * r.b2) + k(36) * r.b2 * r.b4 - k(216) * r.b6;
  r.disc = -(r.b2 * r.b2 * r.b8) - k(8) * r.b4 * r.b4 * r.b4 - k(27) * r.b6 * r.b6 +
           k(9) * r.b2 * r.b4 * r.b6;
  return r;
}

template <class F>
Invariants<F> invariants(const WeierstrassCurve<F>& E) {
  require_char_not_2_3(E.a1());
  Invariants<F> r = ring_invariants(E);
  if (!r.disc.is_zero()) r.j = r.c4 * r.c4 * r.c4 / r.disc;
  return r;
}

// Throws Errc::singular_curve (message carries c4) when disc = 0.
template <class F>
F j_invariant(const WeierstrassCurve<F>& E) {
  auto inv = invariants(E);
  if (!inv.j) fail(Errc::singular_curve, "disc = 0, c4 = " + inv.c4.str());
  return *inv.j;
}

template <class F>
struct Point {
  F x, y;
  bool infinity = false;
  static Point at_infinity(const F& like) { return {like.from_int(0), like.from_int(0), true}; }
  bool operator==(const Point& o) const {
    return infinity == o.infinity && (infinity || (x == o.x && y == o.y));
  }
};

template <class F>
bool on_curve(const WeierstrassCurve<F>& E, const Point<F>& P) {
  if (P.infinity) return true;
  const F &x = P.x, &y = P.y;
  return y * y + E.a1() * x * y + E.a3() * y ==
         x * x * x + E.a2() * x * x + E.a4() * x + E.a6();
}

template <class F>
Point<F> negate(const WeierstrassCurve<F>& E, const Point<F>& P) {
  if (P.infinity) return P;
  return {P.x, -P.y - E.a1() * P.x - E.a3(), false};
}

template <class F>
Point<F> group_law(const WeierstrassCurve<F>& E, const Point<F>& P, const Point<F>& Q) {
  if (!on_curve(E, P) || !on_curve(E, Q)) fail(Errc::not_on_curve, "group_law input not on curve");
  if (P.infinity) return Q;
  if (Q.infinity) return P;
  const F &x1 = P.x, &y1 = P.y, &x2 = Q.x, &y2 = Q.y;
  F lambda, nu;
  if (x1 == x2) {
    F s = y1 + y2 + E.a1() * x2 + E.a3();
    if (s.is_zero()) return Point<F>::at_infinity(x1);
    auto k = [&](i128 v) { return x1.from_int(v); };
    F den = k(2) * y1 + E.a1() * x1 + E.a3();
    lambda = (k(3) * x1 * x1 + k(2) * E.a2() * x1 + E.a4() - E.a1() * y1) / den;
    nu = (-(x1 * x1 * x1) + E.a4() * x1 + k(2) * E.a6() - E.a3() * y1) / den;
  } else {
    lambda = (y2 - y1) / (x2 - x1);
    nu = (y1 * x2 - y2 * x1) / (x2 - x1);
  }
  F x3 = lambda * lambda + E.a1() * lambda - E.a2() - x1 - x2;
  F y3 = -(lambda + E.a1()) * x3 - nu - E.a3();
  return {x3, y3, false};
}

template <class F>
Point<F> multiple(const WeierstrassCurve<F>& E, const Point<F>& P, int n) {
  Point<F> R = Point<F>::at_infinity(E.a1());
  Point<F> B = n < 0 ? negate(E, P) : P;
  for (int k = n < 0 ? -n : n; k > 0; k >>= 1) {
    if (k & 1) R = group_law(E, R, B);
    if (k > 1) B = group_law(E, B, B);
  }
  return R;
}

// Least n <= bound with nP = O.
template <class F>
std::optional<int> torsion_order(const WeierstrassCurve<F>& E, const Point<F>& P, int bound) {
  Point<F> R = P;
  for (int n = 1; n <= bound; ++n) {
    if (R.infinity) return n;
    R = group_law(E, R, P);
  }
  return std::nullopt;
}

// y^2 + a xy + b y = x^3 + b x^2 with P = (0,0).
template <class F>
WeierstrassCurve<F> tate_normal_form(const F& a, const F& b) {
  F z = a.from_int(0);
  return {{a, b, b, z, z}};
}

template <class F>
struct TateMultiples {
  Point<F> P, minus_P, P2, minus_P2, P3, P4;
};

// Closed forms; 4P needs a != 1.
template <class F>
TateMultiples<F> tate_multiples(const F& a, const F& b) {
  if (b.is_zero()) fail(Errc::singular_curve, "tate normal form needs b != 0");
  auto k = [&](i128 v) { return a.from_int(v); };
  F one = k(1);
  if ((one - a).is_zero()) fail(Errc::division_by_zero, "4P needs a != 1");
  TateMultiples<F> m;
  m.P = {k(0), k(0), false};
  m.minus_P = {k(0), -b, false};
  m.P2 = {-b, (a - one) * b, false};
  m.minus_P2 = {-b, k(0), false};
  m.P3 = {one - a, a - one - b, false};
  F r = b / (one - a);
  m.P4 = {r + r * r, b * r * (one + b / ((one - a) * (one - a)) + one / (one - a)), false};
  return m;
}

// Quotient of y^2 = x(x^2 + a x + b) by (0,0): y^2 = x(x^2 - 2a x + a^2 - 4b).
template <class F>
WeierstrassCurve<F> two_isogeny_quotient(const WeierstrassCurve<F>& E) {
  if (!E.a1().is_zero() || !E.a3().is_zero() || !E.a6().is_zero())
    fail(Errc::wrong_shape, "expected y^2 = x(x^2 + a x + b)");
  require_char_not_2_3(E.a1());
  const F& a = E.a2();
  const F& b = E.a4();
  F z = a.from_int(0);
  return {{z, -(a.from_int(2) * a), z, a * a - a.from_int(4) * b, z}};
}

struct WeierstrassFamily {
  std::string name;
  std::string parameter;
  std::array<RatFunc, 5> a;
  std::vector<std::string> expected_config;  // Kodaira symbols, e.g. "I4", "I1*"
  std::vector<i64> level_primes;
  int euler_target = 24;
  std::string modular_group;  // congruence preset name, empty if none
};

std::vector<std::string> family_names();
std::string canonical_family_name(const std::string& name);  // resolves aliases such as g4
WeierstrassFamily preset(const std::string& name);

// a_i * D^i = A_i / scale_i with A_i integral, D a common denominator.
struct IntegralModel {
  PolyZ D;
  std::array<PolyZ, 5> A;
  std::array<i128, 5> scale{};
};
IntegralModel integral_model(const WeierstrassFamily& f);
// The integral model reduced mod p (p must not divide any scale).
std::array<PolyFp, 5> reduce_model(const IntegralModel& m, i64 p);

// Specialize at t0 (or infinity). Poles are cleared by (x, y) -> (u^2 x, u^3 y)
// with the smallest power of the local parameter.
WeierstrassCurve<Rational> specialize(const WeierstrassFamily& f, const Rational& t0);
WeierstrassCurve<Rational> specialize_at_infinity(const WeierstrassFamily& f, const Rational& like);
WeierstrassCurve<Fp> specialize(const WeierstrassFamily& f, const Fp& t0);
WeierstrassCurve<Fp> specialize_at_infinity(const WeierstrassFamily& f, const Fp& like);

WeierstrassCurve<RatFunc> generic_curve(const WeierstrassFamily& f);

// xi_to_a: (2 xi^2 - 10)/(xi^2 - 9); u_to_a: u^2 + 1.
RatFunc parameter_map_function(const std::string& name);
Rational parameter_map(const std::string& name, const Rational& value);
// (1+lambda)^2/lambda - (4-3a^2)^2/(16(a-1)^3) with lambda and a written in xi.
RatFunc fibred_product_residual();

// j of the Legendre model in sigma: as printed, and as the model actually gives.
RatFunc legendre_j_printed();
RatFunc legendre_j_model();

}  // namespace cymod
