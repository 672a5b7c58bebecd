#include <random>

#include "cymod/error.hpp"
#include "cymod/poly.hpp"
#include "doctest.h"

using namespace cymod;

namespace {

PolyFp random_monic(std::mt19937_64& rng, i64 p, int deg) {
  std::vector<i64> c(static_cast<std::size_t>(deg) + 1);
  for (auto& x : c) x = static_cast<i64>(rng() % static_cast<std::uint64_t>(p));
  c.back() = 1;
  return PolyFp(p, c);
}

// Irreducibility by trial division over every monic polynomial of degree <= deg/2.
bool brute_irreducible(const PolyFp& f) {
  const i64 p = f.p;
  for (int d = 1; 2 * d <= f.degree(); ++d) {
    i64 count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (i64 code = 0; code < count; ++code) {
      std::vector<i64> c(static_cast<std::size_t>(d) + 1);
      i64 x = code;
      for (int i = 0; i < d; ++i, x /= p) c[i] = x % p;
      c[d] = 1;
      if ((f % PolyFp(p, c)).is_zero()) return false;
    }
  }
  return f.degree() >= 1;
}

PolyZ random_z(std::mt19937_64& rng, int deg) {
  std::vector<i128> c(static_cast<std::size_t>(deg) + 1);
  for (auto& x : c) x = static_cast<i128>(rng() % 21) - 10;
  if (c.back() == 0) c.back() = 1;
  return PolyZ(c);
}

}  // namespace

TEST_SUITE("poly") {
  TEST_CASE("checked arithmetic") {
    const i128 big = static_cast<i128>(1) << 100;
    CHECK_THROWS_AS(mul_checked(big, big), Error);
    CHECK(mul_checked(big, 2) == big * 2);
    CHECK(gcd128(12, -18) == 6);
  }

  TEST_CASE("rationals") {
    Rational a(6, -4);
    CHECK(a.num() == -3);
    CHECK(a.den() == 2);
    CHECK(a + Rational(3, 2) == Rational(0));
    CHECK(a * Rational(2, 3) == Rational(-1));
    CHECK(a.str() == "-3/2");
    CHECK_THROWS_AS(a / Rational(0), Error);
  }

  TEST_CASE("integer polynomials") {
    PolyZ t = PolyZ::var();
    PolyZ f = (t - PolyZ::constant(1)) * (t - PolyZ::constant(2));
    PolyZ g = (t - PolyZ::constant(1)) * (t + PolyZ::constant(3));
    CHECK(gcd(f, g) == t - PolyZ::constant(1));
    CHECK(exact_div(f, t - PolyZ::constant(2)) == t - PolyZ::constant(1));
    CHECK_THROWS_AS(exact_div(f, t + PolyZ::constant(5)), Error);
    CHECK(PolyZ({6, 4}).content() == 2);
    CHECK(f.eval(Rational(3)) == Rational(2));
    CHECK(f.eval_mod(4, 5) == 1);
  }

  TEST_CASE("gcd of random products") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 100; ++trial) {
      PolyZ f = random_z(rng, 1 + static_cast<int>(rng() % 4)).primitive();
      PolyZ g = random_z(rng, static_cast<int>(rng() % 4));
      PolyZ h = random_z(rng, static_cast<int>(rng() % 4));
      PolyZ d = gcd(f * g, f * h);
      // f divides the gcd, and the gcd divides both products.
      REQUIRE_NOTHROW(exact_div(d, f));
      REQUIRE_NOTHROW(exact_div(f * g, d));
      REQUIRE_NOTHROW(exact_div(f * h, d));
      REQUIRE(d.lc() > 0);
    }
  }

  TEST_CASE("rational functions") {
    RatFunc t = RatFunc::var();
    RatFunc r = (t * t - RatFunc(1)) / (t - RatFunc(1));
    CHECK(r == t + RatFunc(1));
    CHECK((t / (t + RatFunc(1))).eval(Rational(1)) == Rational(1, 2));
    CHECK_THROWS_AS((RatFunc(1) / t).eval(Rational(0)), Error);
    // (t + 1) o (t^2) = t^2 + 1
    CHECK((t + RatFunc(1)).compose(t * t) == t * t + RatFunc(1));
    CHECK((RatFunc(2) / RatFunc(4)).eval(Rational(0)) == Rational(1, 2));
  }

  TEST_CASE("F_p polynomials") {
    const i64 p = 7;
    PolyFp f(p, {1, 0, 1});  // t^2 + 1, irreducible mod 7
    CHECK(is_irreducible(f));
    CHECK_FALSE(is_irreducible(PolyFp(p, {6, 0, 1})));
    auto [q, r] = divmod(PolyFp(p, {1, 2, 3, 4}), f);
    CHECK(q * f + r == PolyFp(p, {1, 2, 3, 4}));
    CHECK(gcd(PolyFp(p, {6, 0, 1}), PolyFp(p, {6, 1})) == PolyFp(p, {6, 1}));
    CHECK(PolyFp(p, {3, 2, 1}).derivative() == PolyFp(p, {2, 2}));
    auto [k, rest] = valuation(PolyFp(p, {0, 0, 5, 1}), PolyFp::var(p));
    CHECK(k == 2);
    CHECK(rest == PolyFp(p, {5, 1}));
  }

  TEST_CASE("factorization against trial division") {
    std::mt19937_64 rng(5);
    for (i64 p : {3, 5, 7, 11, 13}) {
      for (int trial = 0; trial < 40; ++trial) {
        int deg = 1 + static_cast<int>(rng() % 7);
        PolyFp f = random_monic(rng, p, deg);
        if (trial % 4 == 0) f = f * random_monic(rng, p, 1) * random_monic(rng, p, 1);
        auto fs = factor(f);
        PolyFp prod = PolyFp::constant(p, 1);
        for (const auto& [g, e] : fs) {
          REQUIRE(g.lc() == 1);
          REQUIRE(brute_irreducible(g));
          for (int i = 0; i < e; ++i) prod = prod * g;
        }
        REQUIRE(prod == f.monic());
      }
    }
  }

  TEST_CASE("residue norms") {
    std::mt19937_64 rng(6);
    const i64 p = 13;
    for (int trial = 0; trial < 50; ++trial) {
      PolyFp g = random_monic(rng, p, 3).scaled(1 + static_cast<i64>(rng() % 12));
      i64 a = static_cast<i64>(rng() % 13);
      CHECK(residue_norm(g, PolyFp::linear(p, a)) == g.eval(a));
      PolyFp f(p, {2, 0, 1});  // t^2 + 2 is irreducible mod 13
      REQUIRE(is_irreducible(f));
      // The norm from F_{p^2} is g^{p+1}.
      PolyFp n = powmod(g % f, p + 1, f);
      REQUIRE(n.degree() <= 0);
      CHECK(residue_norm(g, f) == (n.is_zero() ? 0 : n.c[0]));
    }
  }
}
