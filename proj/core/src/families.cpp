#include "cymod/families.hpp"

#include <algorithm>
#include <climits>
#include <map>

namespace cymod {

namespace {

constexpr std::array<int, 5> kWeights = {1, 2, 3, 4, 6};

using R = RatFunc;

R t() { return R::var(); }

WeierstrassFamily make(std::string name, std::string param, std::array<R, 5> a,
                       std::vector<std::string> config, int euler, std::string group,
                       std::vector<i64> bad = {2, 3}) {
  WeierstrassFamily f;
  f.name = std::move(name);
  f.parameter = std::move(param);
  f.a = std::move(a);
  f.expected_config = std::move(config);
  f.level_primes = std::move(bad);
  f.euler_target = euler;
  f.modular_group = std::move(group);
  return f;
}

std::array<R, 5> e1_6_coeffs(const R& a) {
  R m = -((a - R(1)) * (a - R(2)));
  return {a, m, m, R(0), R(0)};
}

R legendre_lambda() {
  R s = t();
  return (s * s + R(1)) * (s * s + R(1)) / (R(4) * s * s);
}

std::vector<std::string> times(const std::string& s, int n) { return std::vector<std::string>(n, s); }

std::vector<std::string> cat(std::initializer_list<std::vector<std::string>> parts) {
  std::vector<std::string> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

// Valuation and leading coefficient of num/den at t0 (or at infinity) over F.
template <class F>
std::pair<int, F> local_lead(const PolyZ& num, const PolyZ& den, const F& t0, bool at_infinity) {
  auto coeffs = [&](const PolyZ& f) {
    std::vector<F> c;
    for (auto x : f.c) c.push_back(t0.from_int(x));
    while (!c.empty() && c.back().is_zero()) c.pop_back();
    return c;
  };
  auto n = coeffs(num), d = coeffs(den);
  if (d.empty()) fail(Errc::pole, "denominator vanishes identically in this field");
  if (n.empty()) return {INT_MAX, t0.from_int(0)};
  if (at_infinity) {
    int v = static_cast<int>(d.size()) - static_cast<int>(n.size());
    return {v, n.back() / d.back()};
  }
  auto shift_low = [&](std::vector<F> b) {
    // Taylor shift b(t0 + s), then the lowest nonzero coefficient.
    const std::size_t deg = b.size() - 1;
    for (std::size_t i = 0; i < deg; ++i)
      for (std::size_t j = deg; j-- > i;) b[j] = b[j] + t0 * b[j + 1];
    std::size_t k = 0;
    while (b[k].is_zero()) ++k;
    return std::make_pair(static_cast<int>(k), b[k]);
  };
  auto [vn, ln] = shift_low(n);
  auto [vd, ld] = shift_low(d);
  return {vn - vd, ln / ld};
}

template <class F>
WeierstrassCurve<F> specialize_impl(const WeierstrassFamily& f, const F& t0, bool at_infinity) {
  std::array<std::pair<int, F>, 5> local;
  int e = 0;
  for (std::size_t i = 0; i < 5; ++i) {
    local[i] = local_lead(f.a[i].num(), f.a[i].den(), t0, at_infinity);
    if (local[i].first != INT_MAX && local[i].first < 0) {
      int w = kWeights[i];
      e = std::max(e, (-local[i].first + w - 1) / w);
    }
  }
  WeierstrassCurve<F> E;
  for (std::size_t i = 0; i < 5; ++i) {
    bool lead = local[i].first != INT_MAX && local[i].first + kWeights[i] * e == 0;
    E.a[i] = lead ? local[i].second : t0.from_int(0);
  }
  return E;
}

}  // namespace

std::vector<std::string> family_names() {
  return {"g4_legendre", "e1_4", "e1_6", "e1_7", "e1_8", "g62", "g82", "g8_412", "x0_12"};
}

std::string canonical_family_name(const std::string& name) {
  if (name == "g4") return "g4_legendre";
  return name;
}

WeierstrassFamily preset(const std::string& name0) {
  const std::string name = canonical_family_name(name0);
  const R x = t();
  if (name == "g4_legendre") {
    R lam = legendre_lambda();
    return make(name, "sigma", {R(0), -(R(1) + lam), R(0), lam, R(0)}, times("I4", 6), 24, "gamma4");
  }
  if (name == "e1_4")
    return make(name, "t", {R(1), x, x, R(0), R(0)}, {"I1*", "I1", "I4"}, 12, "");
  if (name == "e1_6") return make(name, "a", e1_6_coeffs(x), {"I6", "I3", "I2", "I1"}, 12, "");
  if (name == "e1_7") {
    R c = x * x - x * x * x;
    return make(name, "t", {R(1) + x - x * x, c, c, R(0), R(0)}, cat({times("I7", 3), times("I1", 3)}),
                24, "gamma1_7", {2, 3, 7});
  }
  if (name == "e1_8") {
    R a = (R(-2) * x * x + R(4) * x - R(1)) / x;
    R b = R(-2) * x * x + R(3) * x - R(1);
    return make(name, "k", {a, b, b, R(0), R(0)}, {"I8", "I8", "I4", "I2", "I1", "I1"}, 24, "gamma1_8");
  }
  if (name == "g62") {
    auto base = e1_6_coeffs(parameter_map_function("xi_to_a"));
    return make(name, "xi", base, cat({times("I6", 3), times("I2", 3)}), 24, "gamma0_3_gamma2");
  }
  if (name == "g82") {
    R s2 = x * x;
    R a2 = R(2) + (s2 + R(1)) * (s2 + R(1)) / (R(2) * s2);
    R d = (s2 - R(1)) * (s2 - R(1));
    R a4 = d * d / (R(16) * s2 * s2);
    return make(name, "sigma", {R(0), a2, R(0), a4, R(0)}, cat({times("I8", 2), times("I2", 4)}), 24,
                "gamma0_8_gamma2");
  }
  if (name == "g8_412") {
    R k = x;
    R q = R(8) * k * k * k * k - R(16) * k * k * k + R(16) * k * k - R(8) * k + R(1);
    R l = R(2) * k - R(1);
    R a4 = (R(8) * k * k - R(8) * k + R(1)) * l * l * l * l;
    return make(name, "k", {R(0), R(-2) * q, R(0), a4, R(0)}, {"I8", "I4", "I4", "I4", "I2", "I2"}, 24,
                "gamma1_8_412");
  }
  if (name == "x0_12") {
    R u2 = x * x;
    R c = -(u2 * (u2 - R(1)));
    return make(name, "u", {u2 + R(1), c, c, R(0), R(0)}, {"I12", "I4", "I3", "I3", "I1", "I1"}, 24,
                "gamma0_12");
  }
  fail(Errc::unknown_name, "unknown family '" + name0 + "'");
}

IntegralModel integral_model(const WeierstrassFamily& f) {
  IntegralModel m;
  m.D = PolyZ::constant(1);
  std::array<PolyZ, 5> q;
  std::array<i128, 5> cont{};
  for (std::size_t i = 0; i < 5; ++i) {
    const PolyZ& d = f.a[i].den();
    cont[i] = d.content();
    q[i] = d.primitive();
    PolyZ g = gcd(m.D, q[i]);
    m.D = exact_div(m.D * q[i], g);
  }
  for (std::size_t i = 0; i < 5; ++i) {
    if (f.a[i].is_zero()) {
      m.A[i] = PolyZ();
      m.scale[i] = 1;
      continue;
    }
    m.A[i] = f.a[i].num() * exact_div(m.D, q[i]) * m.D.pow(kWeights[i] - 1);
    m.scale[i] = cont[i];
  }
  return m;
}

std::array<PolyFp, 5> reduce_model(const IntegralModel& m, i64 p) {
  std::array<PolyFp, 5> out;
  for (std::size_t i = 0; i < 5; ++i) {
    if (m.scale[i] % p == 0) fail(Errc::bad_prime, "model scale divisible by " + std::to_string(p));
    i64 inv = invmod(static_cast<i64>(m.scale[i] % p), p);
    out[i] = PolyFp::from_z(m.A[i], p).scaled(inv);
  }
  return out;
}

WeierstrassCurve<Rational> specialize(const WeierstrassFamily& f, const Rational& t0) {
  return specialize_impl(f, t0, false);
}
WeierstrassCurve<Rational> specialize_at_infinity(const WeierstrassFamily& f, const Rational& like) {
  return specialize_impl(f, like, true);
}
WeierstrassCurve<Fp> specialize(const WeierstrassFamily& f, const Fp& t0) {
  return specialize_impl(f, t0, false);
}
WeierstrassCurve<Fp> specialize_at_infinity(const WeierstrassFamily& f, const Fp& like) {
  return specialize_impl(f, like, true);
}

WeierstrassCurve<RatFunc> generic_curve(const WeierstrassFamily& f) { return {f.a}; }

RatFunc parameter_map_function(const std::string& name) {
  const R x = t();
  if (name == "xi_to_a") return (R(2) * x * x - R(10)) / (x * x - R(9));
  if (name == "u_to_a") return x * x + R(1);
  fail(Errc::unknown_name, "unknown parameter map '" + name + "'");
}

Rational parameter_map(const std::string& name, const Rational& value) {
  return parameter_map_function(name).eval(value);
}

RatFunc fibred_product_residual() {
  const R xi = t();
  const R a = parameter_map_function("xi_to_a");
  const R am1 = a - R(1);
  const R cube = am1 * am1 * am1;
  const R q = R(4) - R(3) * a * a;
  // Solve the defining expression of xi for lambda.
  const R lambda = xi * q * (a - R(2)) * (a - R(2)) / (R(32) * cube) - R(1) + q * q / (R(32) * cube);
  return (R(1) + lambda) * (R(1) + lambda) / lambda - q * q / (R(16) * cube);
}

RatFunc legendre_j_printed() {
  const R s = t();
  const R s2 = s * s, s4 = s2 * s2;
  const R n = R(1) + R(14) * s2 + s4;
  const R d = s4 - R(1);
  return R(16) * n * n * n / (s4 * d * d * d * d);
}

RatFunc legendre_j_model() { return j_invariant(generic_curve(preset("g4_legendre"))); }

}  // namespace cymod
