#include <cstdlib>
#include <random>

#include "cymod/arith.hpp"
#include "cymod/cmforms.hpp"
#include "cymod/counting.hpp"
#include "cymod/error.hpp"
#include "cymod/kodaira.hpp"
#include "doctest.h"

using namespace cymod;

namespace {

// Projective point count by direct enumeration of the general Weierstrass equation.
i64 enumerate_curve(const CurveZ& e, i64 p) {
  i64 n = 1;
  for (i64 x = 0; x < p; ++x)
    for (i64 y = 0; y < p; ++y) {
      i64 lhs = mod(y * y + e[0] * x * y + e[2] * y, p);
      i64 rhs = mod(((x * x % p) * x + e[1] * x % p * x + e[3] * x + e[4]), p);
      if (lhs == rhs) ++n;
    }
  return n;
}

i64 nonresidue(i64 p) {
  for (i64 u = 2;; ++u)
    if (legendre_symbol(u, p) == -1) return u;
}

// Twist of y^2 = x^3 + a x + b by u.
CurveZ twist(const CurveZ& e, i64 u, i64 p) {
  return {0, 0, 0, mod(u * u % p * e[3], p), mod(u * u % p * u % p * e[4], p)};
}

}  // namespace

TEST_SUITE("counting") {
  TEST_CASE("curve counts") {
    CHECK(curve_count(parse_curve("0,0,0,-1,0"), 5) == 8);
    CHECK(curve_count(parse_curve("0,0,1,-1,0"), 5) == 8);
    CHECK(ap_elliptic(parse_curve("0,0,1,-1,0"), 5) == -2);
    CHECK(ap_elliptic(parse_curve("0,0,0,-1,0"), 13) == 6);
    CHECK(ap_elliptic(parse_curve("0,0,0,-1,0"), 7) == 0);
  }

  TEST_CASE("curve counts against enumeration") {
    std::mt19937_64 rng(7);
    for (i64 p : {3, 5, 7, 11, 13, 29, 53}) {
      std::uniform_int_distribution<i64> coef(-20, 20);
      for (int trial = 0; trial < 15; ++trial) {
        CurveZ e{coef(rng), coef(rng), coef(rng), coef(rng), coef(rng)};
        REQUIRE(curve_count(e, p) == enumerate_curve(e, p));
      }
    }
  }

  TEST_CASE("Hasse bound") {
    auto e = parse_curve("0,0,1,-1,0");
    for (i64 p : primes_between(3, 800)) {
      if (p == 37) continue;
      i64 a = ap_elliptic(e, p);
      CHECK(a * a <= 4 * p);
    }
    CHECK_THROWS_AS(ap_elliptic(e, 37), Error);
    CHECK_THROWS_AS(ap_elliptic(parse_curve("0,1,0,0,0"), 5), Error);
  }

  TEST_CASE("curve parsing") {
    CHECK(parse_curve(" 0, 0 ,1,-1,0") == CurveZ{0, 0, 1, -1, 0});
    CHECK_THROWS_AS(parse_curve("1,2,3"), Error);
    CHECK_THROWS_AS(parse_curve("1,2,3,4,x"), Error);
    CHECK_THROWS_AS(parse_curve(""), Error);
    CHECK(curve_discriminant(parse_curve("0,0,1,-1,0")) == 37);
    CHECK(curve_discriminant(parse_curve("0,0,0,-1,0")) == 64);
  }

  TEST_CASE("two torsion") {
    CHECK(rational_two_torsion(parse_curve("0,0,0,-1,0"), 13) == 4);
    CHECK(rational_two_torsion(parse_curve("0,0,0,1,0"), 7) == 2);
  }

  TEST_CASE("K3 counts for the Legendre family") {
    auto f = preset("g4_legendre");
    auto r5 = k3_point_count(f, 5);
    CHECK(std::abs(r5.B) == 6);
    CHECK(r5.ns_trace_used == 20);
    for (i64 p : good_primes(f, 5, 80)) {
      auto r = k3_point_count(f, p);
      CHECK(r.total == 1 + p * p + p * r.ns_trace_used + r.B);
      if (p % 4 == 3) CHECK(r.B == 0);
      CHECK(r.B * r.B <= 4 * p * p);
    }
  }

  TEST_CASE("K3 counts for g62") {
    auto r = k3_point_count(preset("g62"), 7);
    CHECK(std::abs(r.B) == 2);
  }

  TEST_CASE("good fibers agree with the specialized model") {
    for (const std::string name : {"g4_legendre", "g62"}) {
      auto f = preset(name);
      const i64 p = 13;
      FiberModel m(f, p);
      auto chi = quadratic_character_table(p);
      for (i64 t = 0; t < p; ++t) {
        auto lf = m.local_at(t);
        if (lf.fiber) continue;
        auto E = specialize(f, Fp(t, p));
        CurveZ e{E.a1().value(), E.a2().value(), E.a3().value(), E.a4().value(), E.a6().value()};
        REQUIRE(short_curve_count(-27 * lf.r4, -54 * lf.r6, p, chi) == enumerate_curve(e, p));
      }
    }
  }

  TEST_CASE("sweeps are deterministic across thread counts") {
    auto f = preset("g8_412");
    auto primes = good_primes(f, 5, 120);
    auto a = count_sweep(f, primes, 1);
    auto b = count_sweep(f, primes, 4);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].p == b[i].p);
      CHECK(a[i].B == b[i].B);
      CHECK(a[i].total == b[i].total);
    }
  }

  TEST_CASE("twist fits") {
    for (const std::string name : {"g4_legendre", "g62", "g82", "g8_412"}) {
      auto f = preset(name);
      auto fit = twist_fit(f, good_primes(f, 5, 97));
      REQUIRE(fit.resolved());
      CHECK(fit.form_id == family_form(name));
      for (i64 p : good_primes(f, 5, 97)) REQUIRE(predicted_B(fit, p) == k3_point_count(f, p).B);
      bool has_D = false;
      for (i64 D : fit.equivalent) has_D |= D == fit.D;
      CHECK(has_D);
    }
    auto legendre = twist_fit(preset("g4_legendre"), good_primes(preset("g4_legendre"), 5, 97));
    CHECK(legendre.form_id == "h8");
    for (i64 D : legendre.equivalent) CHECK((D == 1 || D == -4));
  }

  TEST_CASE("twist fit rejects the wrong form") {
    auto f = preset("g62");
    try {
      twist_fit(f, good_primes(f, 5, 97), std::string("h8"));
      FAIL("expected a model mismatch");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::model_mismatch);
    }
    CHECK_THROWS_AS(twist_fit(f, {5, 7, 11}), Error);
    TwistFit empty;
    CHECK_THROWS_AS(predicted_B(empty, 5), Error);
  }

  TEST_CASE("fundamental parts") {
    CHECK(fundamental_part(-4) == -4);
    CHECK(fundamental_part(-32) == -8);
    CHECK(fundamental_part(-12) == -3);
    CHECK(fundamental_part(16) == 1);
    CHECK(twist_candidates().size() == 8);
    for (i64 D : twist_candidates()) CHECK((is_fundamental_discriminant(D) || D == 1));
  }

  TEST_CASE("Kummer fiber counts") {
    CHECK(kummer_fiber_count(0, 0, 16, 5) == 36 + 80);
    CHECK(kummer_fiber_count(2, -2, 1, 7) == 64 - 4 + 7);
    CHECK_THROWS_AS(kummer_fiber_count(0, 0, 0, 5), Error);
    CHECK_THROWS_AS(kummer_fiber_count(0, 0, 17, 5), Error);
  }

  TEST_CASE("Kummer count against twisted pairs") {
    const i64 p = 13;
    const i64 u = nonresidue(p);
    CurveZ e1{0, 0, 0, -1, 0}, e2{0, 0, 0, -4, 0};
    i64 n1 = enumerate_curve(e1, p), n2 = enumerate_curve(e2, p);
    i64 m1 = enumerate_curve(twist(e1, u, p), p), m2 = enumerate_curve(twist(e2, u, p), p);
    i64 a1 = p + 1 - n1, a2 = p + 1 - n2;
    for (i64 r2 = 1; r2 <= 16; ++r2) CHECK(kummer_fiber_count(a1, a2, r2, p) == (n1 * n2 + m1 * m2) / 2 + p * r2);
  }

  TEST_CASE("cohomological traces") {
    auto g4 = preset("g4_legendre");
    CHECK(h2_trace(g4, 5) == 31 * 5);
    CHECK(h2_trace(g4, 7) == 27 * 7);
    auto fit = twist_fit(g4, good_primes(g4, 5, 97));
    auto e = parse_curve("0,0,0,-1,0");
    for (i64 p : good_primes(g4, 5, 60)) {
      i64 A = ap_elliptic(e, p);
      i64 expect = A * k3_point_count(g4, p).B + p * A * ns_decomposition("g4_legendre")->minus_trace(p);
      CHECK(h3_trace(g4, e, p, fit) == expect);
      if (p % 4 == 3) CHECK(h3_trace(g4, e, p, fit) == 0);
    }
  }
}
