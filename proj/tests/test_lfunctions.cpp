#include <cmath>
#include <complex>
#include <random>

#include "cymod/arith.hpp"
#include "cymod/error.hpp"
#include "cymod/lfunctions.hpp"
#include "doctest.h"

using namespace cymod;

namespace {

using C = std::complex<long double>;

// Roots of 1 - a T + b T^2 written as reciprocal roots alpha, beta.
std::pair<C, C> reciprocal_roots(long double a, long double b) {
  C disc = std::sqrt(C(a * a - 4 * b, 0));
  return {(C(a, 0) + disc) / C(2, 0), (C(a, 0) - disc) / C(2, 0)};
}

// Expand prod (1 - alpha_i beta_j T) numerically.
std::vector<long double> tensor_oracle(i64 A, i64 B, int eps, i64 p) {
  auto [a1, a2] = reciprocal_roots(A, p);
  auto [b1, b2] = reciprocal_roots(B, static_cast<long double>(eps) * p * p);
  std::vector<C> poly{C(1, 0)};
  for (C r : {a1 * b1, a1 * b2, a2 * b1, a2 * b2}) {
    std::vector<C> next(poly.size() + 1, C(0, 0));
    for (size_t i = 0; i < poly.size(); ++i) {
      next[i] += poly[i];
      next[i + 1] -= r * poly[i];
    }
    poly = next;
  }
  std::vector<long double> out;
  for (C c : poly) out.push_back(c.real());
  return out;
}

}  // namespace

TEST_SUITE("lfunctions") {
  TEST_CASE("factor construction") {
    CHECK(weight2_factor(-2, 5).str() == "1 + 2T + 5T^2");
    CHECK(weight3_factor(6, 1, 5).str() == "1 - 6T + 25T^2");
    CHECK(tensor_factor(1, 1, 1, 2).str() == "1 - T - 10T^2 - 8T^3 + 64T^4");
    CHECK_THROWS_AS(weight2_factor(5, 5), Error);
    CHECK_THROWS_AS(weight3_factor(11, 1, 5), Error);
    CHECK_THROWS_AS(tensor_factor(1, 1, 0, 5), Error);
  }

  TEST_CASE("tensor factor against complex roots") {
    std::mt19937_64 rng(11);
    auto primes = primes_between(3, 400);
    for (int trial = 0; trial < 100; ++trial) {
      i64 p = primes[rng() % primes.size()];
      i64 boundA = static_cast<i64>(std::floor(2 * std::sqrt(static_cast<double>(p))));
      i64 A = static_cast<i64>(rng() % (2 * boundA + 1)) - boundA;
      i64 B = static_cast<i64>(rng() % (4 * p + 1)) - 2 * p;
      int eps = (rng() & 1) ? 1 : -1;
      if (eps == -1) B = 0;  // real roots of modulus p must come in a +- pair
      auto f = tensor_factor(A, B, eps, p);
      auto oracle = tensor_oracle(A, B, eps, p);
      REQUIRE(f.coeffs.size() == oracle.size());
      for (size_t i = 0; i < oracle.size(); ++i) {
        long double got = static_cast<long double>(f.coeffs[i]);
        REQUIRE(std::fabs(got - oracle[i]) <= 1e-6L * (1 + std::fabs(oracle[i])));
      }
      auto exp = tensor_product_expansion(A, B, eps, p);
      REQUIRE(exp == f.coeffs);
    }
  }

  TEST_CASE("root moduli") {
    CHECK(root_modulus_ok(weight2_factor(-2, 5)));
    CHECK(root_modulus_ok(weight3_factor(6, 1, 5)));
    CHECK(root_modulus_ok(tensor_factor(-2, 6, 1, 5)));
    CHECK(root_modulus_ok(tensor_factor(10, -38, 1, 401)));
    CHECK(root_modulus_deviation(tensor_factor(0, 0, -1, 7)) < 1e-9);
    LocalFactor bogus{5, 2, {1, 0, 7}, 1};
    CHECK_FALSE(root_modulus_ok(bogus));
  }

  TEST_CASE("shift and product") {
    auto f = weight2_factor(-2, 5);
    CHECK(shifted(f, 1).str() == "1 + 10T + 125T^2");
    auto g = multiply(f, weight2_factor(1, 5));
    CHECK(g.degree() == 4);
    CHECK(multiply(f, f, 2).degree() == 2);
    CHECK(multiply(f, f, 2).coeffs[1] == 4);
  }

  TEST_CASE("Dirichlet series") {
    std::map<i64, LocalFactor> one{{2, LocalFactor{2, 1, {1, -1}, 1}}};
    auto s = euler_to_dirichlet(one, 16);
    for (i64 n = 1; n <= 16; ++n) {
      bool power_of_two = (n & (n - 1)) == 0;
      CHECK(s.a[n] == (power_of_two ? 1 : 0));
    }
    CHECK(s.missing.size() == 5);

    auto e = parse_curve("0,0,1,-1,0");
    std::map<i64, LocalFactor> ell{{2, weight2_factor(-2, 2)}};
    for (i64 p : primes_between(3, 200))
      if (p != 37) ell[p] = weight2_factor(ap_elliptic(e, p), p);
    auto d = euler_to_dirichlet(ell, 200);
    CHECK(d.a[6] == d.a[2] * d.a[3]);
    CHECK(d.a[35] == d.a[5] * d.a[7]);
    CHECK(d.a[4] == d.a[2] * d.a[2] - 2);
    CHECK(d.missing == std::vector<i64>{37});
  }

  TEST_CASE("three-fold series primes") {
    auto e = parse_curve("0,0,0,-1,0");
    for (const std::string name : {"g62", "g8_412"}) {
      auto f = preset(name);
      auto fit = twist_fit(f, good_primes(f, 5, 97));
      auto s = assemble_h3(f, e, 60, fit);
      for (i64 p : good_primes(f, 5, 60)) {
        if (p == 2) continue;
        auto eul = h3_euler(f, e, p, fit);
        if (!eul.good) continue;
        REQUIRE(s.a[p] == h3_trace(f, e, p, fit));
        REQUIRE(root_modulus_ok(eul.tensor));
      }
    }
  }

  TEST_CASE("inert primes give vanishing coefficients") {
    auto f = preset("g4_legendre");
    auto fit = twist_fit(f, good_primes(f, 5, 97));
    auto e = parse_curve("0,0,0,-1,0");
    auto s = assemble_h3(f, e, 80, fit);
    for (i64 p : good_primes(f, 5, 80))
      if (p % 4 == 3) CHECK(s.a[p] == 0);
  }

  TEST_CASE("Betti numbers") {
    auto b = betti_hodge_report();
    CHECK(b.b3_y_times_e == 44);
    CHECK(b.b2_x == 31);
    CHECK(b.b3_x == 16);
    CHECK(b.h21_x == 7);
    CHECK(b.n_plus == 14);
    CHECK(b.n_minus == 6);
  }
}
