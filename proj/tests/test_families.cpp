#include <random>

#include "cymod/counting.hpp"
#include "cymod/error.hpp"
#include "cymod/families.hpp"
#include "doctest.h"

using namespace cymod;

namespace {

RatFunc poly(std::vector<i128> c) { return RatFunc(PolyZ(c), PolyZ::constant(1)); }

template <class F>
void check_discriminant_identity(const WeierstrassCurve<F>& E) {
  auto inv = ring_invariants(E);
  auto k = E.a1().from_int(1728);
  REQUIRE(k * inv.disc == inv.c4 * inv.c4 * inv.c4 - inv.c6 * inv.c6);
}

CurveZ to_z(const WeierstrassCurve<Fp>& E) {
  CurveZ e{};
  for (std::size_t i = 0; i < 5; ++i) e[i] = E.a[i].value();
  return e;
}

}  // namespace

TEST_SUITE("families") {
  TEST_CASE("presets as printed") {
    auto a = RatFunc::var();
    auto e16 = generic_curve(preset("e1_6"));
    auto m = (a - RatFunc(1)) * (a - RatFunc(2));
    CHECK(e16.a1() == a);
    CHECK(e16.a2() == -m);
    CHECK(e16.a3() == -m);
    CHECK(e16.a4().is_zero());
    CHECK(e16.a6().is_zero());

    auto t = RatFunc::var();
    auto e17 = generic_curve(preset("e1_7"));
    CHECK(e17.a1() == poly({1, 1, -1}));
    CHECK(e17.a3() == poly({0, 0, 1, -1}));
    CHECK(e17.a2() == poly({0, 0, 1, -1}));

    auto e14 = generic_curve(preset("e1_4"));
    CHECK(e14.a1() == RatFunc(1));
    CHECK(e14.a3() == t);
    CHECK(e14.a2() == t);

    CHECK(family_names().size() == 9);
    CHECK(canonical_family_name("g4") == "g4_legendre");
    CHECK_THROWS_AS(preset("g5"), Error);
  }

  TEST_CASE("Legendre family at sigma = 2") {
    auto E = specialize(preset("g4_legendre"), Rational(2));
    // Y^2 = X(X-1)(X-lambda) with lambda = 25/16
    CHECK(E.a4() == Rational(25, 16));
    CHECK(E.a2() == Rational(-41, 16));
  }

  TEST_CASE("e1_8 degenerates at k = 1") {
    auto E = specialize(preset("e1_8"), Rational(1));
    CHECK(ring_invariants(E).disc.is_zero());
  }

  TEST_CASE("j-invariants") {
    WeierstrassCurve<Rational> E{{0, 0, 0, 0, 1}};
    CHECK(*invariants(E).j == Rational(0));
    auto s = RatFunc::var();
    auto s4 = s * s * s * s;
    auto num = RatFunc(16) * (RatFunc(1) + RatFunc(14) * s4 + s4 * s4) * (RatFunc(1) + RatFunc(14) * s4 + s4 * s4) *
               (RatFunc(1) + RatFunc(14) * s4 + s4 * s4);
    auto den = s4 * (s4 - RatFunc(1)) * (s4 - RatFunc(1)) * (s4 - RatFunc(1)) * (s4 - RatFunc(1));
    CHECK(legendre_j_model() == num / den);
    CHECK_FALSE(legendre_j_model() == legendre_j_printed());
    CHECK(j_invariant(generic_curve(preset("g4_legendre"))) == legendre_j_model());
  }

  TEST_CASE("1728 disc = c4^3 - c6^2 on random specializations") {
    std::mt19937_64 rng(7);
    for (const auto& name : family_names()) {
      auto f = preset(name);
      check_discriminant_identity(generic_curve(f));
      for (int trial = 0; trial < 50; ++trial) {
        i64 n = static_cast<i64>(rng() % 13) - 6, d = 1 + static_cast<i64>(rng() % 3);
        try {
          check_discriminant_identity(specialize(f, Rational(n, d)));
        } catch (const Error& e) {
          REQUIRE(e.code() == Errc::pole);
        }
        check_discriminant_identity(specialize(f, Fp(static_cast<i64>(rng() % 101), 101)));
      }
    }
  }

  TEST_CASE("Tate normal form multiples") {
    auto m = tate_multiples(Rational(3), Rational(5));
    CHECK(m.P3.x == Rational(-2));
    CHECK(m.P3.y == Rational(-3));
    CHECK(m.P2.x == Rational(-5));
    CHECK(m.P2.y == Rational(10));
    std::mt19937_64 rng(8);
    const i64 p = 1009;
    int checked = 0;
    while (checked < 50) {
      Fp a(static_cast<i64>(rng() % p), p), b(static_cast<i64>(rng() % p), p);
      auto E = tate_normal_form(a, b);
      if (b.is_zero() || (a - Fp(1, p)).is_zero() || ring_invariants(E).disc.is_zero()) continue;
      ++checked;
      auto tm = tate_multiples(a, b);
      Point<Fp> P = tm.P;
      auto P2 = group_law(E, P, P);
      auto P3 = group_law(E, P2, P);
      auto P4 = group_law(E, P3, P);
      REQUIRE(on_curve(E, tm.P4));
      REQUIRE((P2.x == tm.P2.x && P2.y == tm.P2.y));
      REQUIRE((P3.x == tm.P3.x && P3.y == tm.P3.y));
      REQUIRE((P4.x == tm.P4.x && P4.y == tm.P4.y));
      auto mP = negate(E, P);
      REQUIRE((mP.x == tm.minus_P.x && mP.y == tm.minus_P.y));
    }
  }

  TEST_CASE("torsion orders") {
    Point<Rational> O{0, 0, false};
    CHECK(torsion_order(specialize(preset("e1_6"), Rational(5)), O, 20) == 6);
    CHECK(torsion_order(specialize(preset("e1_7"), Rational(2)), O, 20) == 7);
    CHECK(torsion_order(specialize(preset("e1_8"), Rational(3)), O, 20) == 8);
    CHECK(torsion_order(specialize(preset("e1_4"), Rational(3)), O, 20) == 4);
  }

  TEST_CASE("two-isogeny quotient") {
    WeierstrassCurve<Rational> E{{0, 0, 0, -1, 0}};
    auto Q = two_isogeny_quotient(E);
    CHECK(Q.a2() == Rational(0));
    CHECK(Q.a4() == Rational(4));
    // Legendre: y^2 = x(x^2 + 2(1+l)x + (1-l)^2)
    auto l = RatFunc::var();
    WeierstrassCurve<RatFunc> L{{RatFunc(0), -(RatFunc(1) + l), RatFunc(0), l, RatFunc(0)}};
    auto QL = two_isogeny_quotient(L);
    CHECK(QL.a2() == RatFunc(2) * (RatFunc(1) + l));
    CHECK(QL.a4() == (RatFunc(1) - l) * (RatFunc(1) - l));
    CHECK_THROWS_AS(two_isogeny_quotient(WeierstrassCurve<Rational>{{1, 0, 0, 0, 0}}), Error);
  }

  TEST_CASE("two-isogeny quotient preserves point counts") {
    std::mt19937_64 rng(9);
    auto primes = primes_between(5, 997);
    int trials = 0;
    while (trials < 100) {
      i64 p = primes[rng() % primes.size()];
      Fp a(static_cast<i64>(rng() % p), p), b(static_cast<i64>(rng() % p), p);
      if (b.is_zero() || (a * a - Fp(4, p) * b).is_zero()) continue;
      ++trials;
      WeierstrassCurve<Fp> E{{Fp(0, p), a, Fp(0, p), b, Fp(0, p)}};
      REQUIRE(curve_count(to_z(E), p) == curve_count(to_z(two_isogeny_quotient(E)), p));
    }
  }

  TEST_CASE("parameter maps") {
    CHECK(parameter_map("xi_to_a", Rational(1)) == Rational(1));
    CHECK(parameter_map("u_to_a", Rational(2)) == Rational(5));
    CHECK(fibred_product_residual().is_zero());
    CHECK_THROWS_AS(parameter_map("nope", Rational(1)), Error);
  }

  TEST_CASE("specializations") {
    auto E = specialize(preset("e1_6"), Fp(3, 7));
    CHECK(E.a1() == Fp(3, 7));
    CHECK(E.a2() == Fp(-2, 7));
    CHECK(E.a3() == Fp(-2, 7));
    // Cusps of the Legendre family and the pole of e1_8 give singular cleared models.
    CHECK(ring_invariants(specialize(preset("g4_legendre"), Rational(0))).disc.is_zero());
    CHECK(ring_invariants(specialize_at_infinity(preset("g4_legendre"), Rational(0))).disc.is_zero());
    CHECK(ring_invariants(specialize(preset("e1_8"), Rational(0))).disc.is_zero());
    CHECK_FALSE(ring_invariants(specialize(preset("e1_8"), Rational(3))).disc.is_zero());
  }

  TEST_CASE("integral models") {
    auto t = PolyZ::var();
    CHECK(integral_model(preset("g4_legendre")).D == t * t);
    CHECK(integral_model(preset("e1_8")).D == t);
    CHECK(integral_model(preset("g82")).D == t * t * t * t);
  }
}
