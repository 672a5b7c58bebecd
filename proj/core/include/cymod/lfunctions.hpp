#pragma once

#include <map>
#include <string>
#include <vector>

#include "cymod/counting.hpp"

namespace cymod {

// Polynomial in T = p^{-s} with constant term 1.
struct LocalFactor {
  i64 p = 0;
  int weight = 0;  // roots have modulus p^{-(weight-1)/2}
  std::vector<i128> coeffs;
  int nebentypus = 1;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  std::string str() const;
};

LocalFactor weight2_factor(i64 A, i64 p);                // 1 - A T + p T^2
LocalFactor weight3_factor(i64 B, int eps, i64 p);       // 1 - B T + eps p^2 T^2
LocalFactor tensor_factor(i64 A, i64 B, int eps, i64 p); // degree 4, motivic weight 3

// prod over alpha, beta of (1 - alpha beta T) from power sums; independent of the closed form.
std::vector<i128> tensor_product_expansion(i64 A, i64 B, int eps, i64 p);

// L(s - k): coefficient of T^j scaled by p^{jk}.
LocalFactor shifted(const LocalFactor& f, int k);

// Product truncated to degree <= max_degree (all degrees if negative).
LocalFactor multiply(const LocalFactor& a, const LocalFactor& b, int max_degree = -1);

// Largest | |root| / p^{-(w-1)/2} - 1 | over the roots, via companion-matrix eigenvalues.
double root_modulus_deviation(const LocalFactor& f);
bool root_modulus_ok(const LocalFactor& f, double tol = 1e-9);

struct DirichletSeries {
  std::vector<i128> a;           // a[0] unused, a[1] = 1
  std::vector<i64> missing;      // primes <= N given the trivial factor
};

DirichletSeries euler_to_dirichlet(const std::map<i64, LocalFactor>& factors, i64 N);

struct H3Euler {
  i64 p = 0;
  bool good = false;  // bad primes get the trivial factor
  LocalFactor tensor;
  std::vector<LocalFactor> shifted_e;  // one per algebraic cycle on the minus side
};

H3Euler h3_euler(const WeierstrassFamily& f, const CurveZ& e, i64 p, const TwistFit& fit);
DirichletSeries assemble_h3(const WeierstrassFamily& f, const CurveZ& e, i64 N, const TwistFit& fit);

struct BettiHodge {
  int b3_y_times_e = 0;
  int h03_y_times_e = 0;
  int h10_y_times_e = 0;
  int b2_x = 0;
  int b3_x = 0;
  int h21_x = 0;
  int n_plus = 0;
  int n_minus = 0;
};

// Kunneth for Y x E and the Kummer quotient X; n_plus / n_minus from the stored decompositions.
BettiHodge betti_hodge_report(const std::string& family = "g4_legendre");

}  // namespace cymod
