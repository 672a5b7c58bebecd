#include "cymod/lfunctions.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>

#include "cymod/kodaira.hpp"
#include "cymod/poly.hpp"

namespace cymod {

namespace {

i128 ipow(i128 b, int e) {
  i128 r = 1;
  while (e-- > 0) r = mul_checked(r, b);
  return r;
}

void require_weil(i64 x, i64 p, int weight) {
  // |x| <= 2 p^{(weight-1)/2}
  const i128 x2 = static_cast<i128>(x) * x;
  const i128 bound = 4 * ipow(p, weight - 1);
  if (x2 > bound)
    fail(Errc::weil_bound, "trace " + std::to_string(x) + " exceeds the Weil bound at p=" + std::to_string(p));
}

void require_unit_or_zero(int eps) {
  if (eps < -1 || eps > 1) fail(Errc::wrong_shape, "nebentypus value must be -1, 0 or 1");
}

}  // namespace

std::string LocalFactor::str() const {
  std::string s;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] == 0 && k > 0) continue;
    i128 c = coeffs[k];
    std::string mag = to_string(c < 0 ? -c : c);
    if (k == 0) {
      s = to_string(c);
      continue;
    }
    s += c < 0 ? " - " : " + ";
    if (mag != "1") s += mag;
    s += k == 1 ? "T" : "T^" + std::to_string(k);
  }
  return s;
}

LocalFactor weight2_factor(i64 A, i64 p) {
  require_weil(A, p, 2);
  return {p, 2, {1, -A, p}, 1};
}

LocalFactor weight3_factor(i64 B, int eps, i64 p) {
  require_unit_or_zero(eps);
  require_weil(B, p, 3);
  return {p, 3, {1, -B, static_cast<i128>(eps) * p * p}, eps};
}

std::vector<i128> tensor_product_expansion(i64 A, i64 B, int eps, i64 p) {
  // Power sums of the alpha roots (e1 = A, e2 = p) and the beta roots (e1 = B, e2 = eps p^2).
  std::array<i128, 5> s{2, A}, t{2, B}, P{};
  for (int k = 2; k <= 4; ++k) {
    s[k] = A * s[k - 1] - static_cast<i128>(p) * s[k - 2];
    t[k] = B * t[k - 1] - static_cast<i128>(eps) * p * p * t[k - 2];
  }
  for (int k = 1; k <= 4; ++k) P[k] = s[k] * t[k];
  // Newton: k e_k = sum_{i=1..k} (-1)^{i-1} e_{k-i} P_i
  std::array<i128, 5> e{1};
  for (int k = 1; k <= 4; ++k) {
    i128 acc = 0;
    for (int i = 1; i <= k; ++i) acc += (i % 2 == 1 ? 1 : -1) * e[k - i] * P[i];
    if (acc % k != 0) fail(Errc::internal_inconsistency, "Newton identity not integral");
    e[k] = acc / k;
  }
  std::vector<i128> c(5);
  for (int k = 0; k <= 4; ++k) c[k] = (k % 2 == 0 ? 1 : -1) * e[k];
  return c;
}

LocalFactor tensor_factor(i64 A, i64 B, int eps, i64 p) {
  require_weil(A, p, 2);
  require_weil(B, p, 3);
  if (eps != 1 && eps != -1) fail(Errc::bad_prime, "tensor factor needs a unit nebentypus value");
  const i128 a = A, b = B, e = eps, q = p;
  LocalFactor f{p, 4, {1, -a * b, (b * b + e * q * a * a - 2 * q * q * e) * q, -a * b * e * q * q * q, ipow(q, 6)}, eps};
  if (f.coeffs != tensor_product_expansion(A, B, eps, p))
    fail(Errc::expansion_mismatch, "tensor factor disagrees with the root-product expansion");
  return f;
}

LocalFactor shifted(const LocalFactor& f, int k) {
  LocalFactor g = f;
  g.weight = f.weight + 2 * k;
  for (std::size_t j = 0; j < g.coeffs.size(); ++j)
    g.coeffs[j] = mul_checked(g.coeffs[j], ipow(f.p, static_cast<int>(j) * k));
  return g;
}

LocalFactor multiply(const LocalFactor& a, const LocalFactor& b, int max_degree) {
  if (a.p != b.p) fail(Errc::wrong_shape, "local factors at different primes");
  int deg = a.degree() + b.degree();
  if (max_degree >= 0) deg = std::min(deg, max_degree);
  LocalFactor c{a.p, std::max(a.weight, b.weight), std::vector<i128>(static_cast<std::size_t>(deg) + 1, 0),
                a.nebentypus};
  for (int i = 0; i <= a.degree() && i <= deg; ++i)
    for (int j = 0; j <= b.degree() && i + j <= deg; ++j)
      c.coeffs[i + j] = add_checked(c.coeffs[i + j], mul_checked(a.coeffs[i], b.coeffs[j]));
  return c;
}

double root_modulus_deviation(const LocalFactor& f) {
  using Real = long double;
  int n = f.degree();
  while (n > 0 && f.coeffs[static_cast<std::size_t>(n)] == 0) --n;
  if (n == 0) return 0.0;
  // Substitute T = rho z so the expected roots sit on the unit circle.
  const Real rho = std::pow(static_cast<Real>(f.p), -static_cast<Real>(f.weight - 1) / 2);
  std::vector<Real> c(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) c[k] = static_cast<Real>(f.coeffs[k]) * std::pow(rho, static_cast<Real>(k));
  Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic> M = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
  for (int i = 1; i < n; ++i) M(i, i - 1) = 1;
  for (int i = 0; i < n; ++i) M(i, n - 1) = -c[i] / c[n];
  Eigen::EigenSolver<decltype(M)> solver(M, false);
  Real worst = 0;
  for (int i = 0; i < n; ++i) worst = std::max(worst, std::fabs(std::abs(solver.eigenvalues()[i]) - 1));
  return static_cast<double>(worst);
}

bool root_modulus_ok(const LocalFactor& f, double tol) { return root_modulus_deviation(f) <= tol; }

DirichletSeries euler_to_dirichlet(const std::map<i64, LocalFactor>& factors, i64 N) {
  DirichletSeries out;
  const auto n_size = static_cast<std::size_t>(N) + 1;
  out.a.assign(n_size, 0);
  if (N < 1) return out;
  out.a[1] = 1;
  std::vector<i64> spf(n_size, 0);
  for (i64 i = 2; i <= N; ++i)
    if (spf[i] == 0)
      for (i64 j = i; j <= N; j += i)
        if (spf[j] == 0) spf[j] = i;
  // Coefficients of 1 / L_p(T) at p^k.
  std::map<i64, std::vector<i128>> inverse;
  for (i64 p = 2; p <= N; ++p) {
    if (spf[p] != p) continue;
    int kmax = 0;
    for (i64 q = p; q <= N; q *= p) ++kmax;
    std::vector<i128> inv(static_cast<std::size_t>(kmax) + 1, 0);
    inv[0] = 1;
    auto it = factors.find(p);
    if (it == factors.end()) {
      out.missing.push_back(p);
    } else {
      const auto& c = it->second.coeffs;
      if (c.empty() || c[0] != 1) fail(Errc::non_unit_leading, "local factor must start with 1");
      for (int k = 1; k <= kmax; ++k) {
        i128 acc = 0;
        for (int j = 1; j <= k && j < static_cast<int>(c.size()); ++j) acc = add_checked(acc, mul_checked(c[j], inv[k - j]));
        inv[k] = -acc;
      }
    }
    inverse[p] = std::move(inv);
  }
  for (i64 n = 2; n <= N; ++n) {
    i64 p = spf[n], m = n;
    int k = 0;
    while (m % p == 0) {
      m /= p;
      ++k;
    }
    out.a[n] = mul_checked(out.a[m], inverse[p][k]);
  }
  return out;
}

H3Euler h3_euler(const WeierstrassFamily& f, const CurveZ& e, i64 p, const TwistFit& fit) {
  H3Euler h;
  h.p = p;
  auto ns = ns_decomposition(f.name);
  if (!ns) fail(Errc::unknown_name, f.name + " has no cycle decomposition");
  try {
    require_good_prime(f, p);
  } catch (const Error&) {
    return h;
  }
  if (curve_discriminant(e) % p == 0) return h;
  h.good = true;
  const i64 A = ap_elliptic(e, p);
  const int eps = nebentypus(fit, p);
  h.tensor = tensor_factor(A, predicted_B(fit, p), eps, p);
  for (auto [D, mult] : ns->minus) {
    auto g = shifted(weight2_factor(kronecker_character(D, p) * A, p), 1);
    for (int i = 0; i < mult; ++i) h.shifted_e.push_back(g);
  }
  return h;
}

DirichletSeries assemble_h3(const WeierstrassFamily& f, const CurveZ& e, i64 N, const TwistFit& fit) {
  std::map<i64, LocalFactor> factors;
  std::vector<i64> bad;
  for (i64 p : primes_between(2, N)) {
    int kmax = 0;
    for (i64 q = p; q <= N; q *= p) ++kmax;
    auto h = h3_euler(f, e, p, fit);
    if (!h.good) {
      bad.push_back(p);
      factors[p] = LocalFactor{p, 4, {1}, 1};
      continue;
    }
    LocalFactor prod = h.tensor;
    prod.coeffs.resize(std::min<std::size_t>(prod.coeffs.size(), static_cast<std::size_t>(kmax) + 1));
    for (const auto& g : h.shifted_e) prod = multiply(prod, g, kmax);
    factors[p] = prod;
  }
  auto series = euler_to_dirichlet(factors, N);
  series.missing = bad;
  return series;
}

BettiHodge betti_hodge_report(const std::string& family) {
  auto ns = ns_decomposition(family);
  if (!ns) fail(Errc::unknown_name, family + " has no cycle decomposition");
  // Betti and Hodge numbers of a K3 surface Y and an elliptic curve E.
  const std::array<int, 5> bY = {1, 0, 22, 0, 1};
  const std::array<int, 3> bE = {1, 2, 1};
  BettiHodge r;
  for (int i = 0; i <= 4; ++i)
    for (int j = 0; j <= 2; ++j)
      if (i + j == 3) r.b3_y_times_e += bY[i] * bE[j];
  r.h03_y_times_e = 1 * 1;  // h^{0,2}(Y) h^{0,1}(E)
  r.h10_y_times_e = 0 + 1;  // h^{1,0}(Y) + h^{1,0}(E)
  r.n_plus = ns->n_prime_plus() + ns->n_second_plus();
  r.n_minus = ns->n_prime_minus() + ns->n_second_minus();
  // 16 exceptional classes, the base class, and the invariant cycles.
  r.b2_x = 17 + r.n_plus;
  // T(Y) x H^1(E) plus the anti-invariant cycles tensored with H^1(E).
  r.b3_x = 2 * 2 + 2 * r.n_minus;
  r.h21_x = r.b3_x / 2 - 1;
  return r;
}

}  // namespace cymod
