#include "cymod/poly.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <sstream>

#include "cymod/error.hpp"

namespace cymod {

i128 add_checked(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) fail(Errc::overflow, "128-bit addition overflow");
  return r;
}

i128 mul_checked(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) fail(Errc::overflow, "128-bit multiplication overflow");
  return r;
}

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// ---------------------------------------------------------------- Rational

Rational::Rational(i128 n, i128 d) : n_(n), d_(d) {
  if (d_ == 0) fail(Errc::division_by_zero, "rational with zero denominator");
  if (d_ < 0) n_ = -n_, d_ = -d_;
  i128 g = gcd128(n_, d_);
  if (g > 1) n_ /= g, d_ /= g;
}

Rational Rational::operator+(const Rational& o) const {
  i128 g = gcd128(d_, o.d_);
  i128 a = mul_checked(n_, o.d_ / g), b = mul_checked(o.n_, d_ / g);
  return Rational(add_checked(a, b), mul_checked(d_ / g, o.d_));
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
  i128 g1 = gcd128(n_, o.d_), g2 = gcd128(o.n_, d_);
  if (g1 == 0) g1 = 1;
  if (g2 == 0) g2 = 1;
  return Rational(mul_checked(n_ / g1, o.n_ / g2), mul_checked(d_ / g2, o.d_ / g1));
}

Rational Rational::operator/(const Rational& o) const {
  if (o.n_ == 0) fail(Errc::division_by_zero, "rational division by zero");
  return *this * Rational(o.d_, o.n_);
}

std::string Rational::str() const {
  return d_ == 1 ? to_string(n_) : to_string(n_) + "/" + to_string(d_);
}

// ---------------------------------------------------------------- Fp

Fp::Fp(i128 v, i64 p) : p_(p) {
  if (p <= 1) fail(Errc::invalid_prime, "F_p needs p > 1");
  i128 r = v % p;
  if (r < 0) r += p;
  v_ = static_cast<i64>(r);
}

Fp Fp::operator/(const Fp& o) const { return *this * Fp(invmod(o.v_, p_), p_); }

// ---------------------------------------------------------------- PolyZ

namespace {

template <class V>
void trim(V& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

std::string term_str(const std::string& coef, int k, const std::string& var) {
  if (k == 0) return coef;
  std::string mono = var + (k > 1 ? "^" + std::to_string(k) : "");
  if (coef == "1") return mono;
  if (coef == "-1") return "-" + mono;
  return coef + "*" + mono;
}

template <class C, class F>
std::string poly_str(const std::vector<C>& c, const std::string& var, F fmt) {
  if (c.empty()) return "0";
  std::string out;
  for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) {
    if (c[static_cast<std::size_t>(k)] == 0) continue;
    std::string t = term_str(fmt(c[static_cast<std::size_t>(k)]), k, var);
    if (out.empty())
      out = t;
    else if (t[0] == '-')
      out += " - " + t.substr(1);
    else
      out += " + " + t;
  }
  return out;
}

}  // namespace

PolyZ::PolyZ(std::vector<i128> coeffs) : c(std::move(coeffs)) { trim(c); }

i128 PolyZ::content() const {
  i128 g = 0;
  for (auto x : c) g = gcd128(g, x);
  return g;
}

PolyZ PolyZ::primitive() const {
  if (is_zero()) return *this;
  i128 g = content();
  if (lc() < 0) g = -g;
  std::vector<i128> out(c);
  for (auto& x : out) x /= g;
  return PolyZ(std::move(out));
}

PolyZ PolyZ::operator+(const PolyZ& o) const {
  std::vector<i128> out(std::max(c.size(), o.c.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i];
  for (std::size_t i = 0; i < o.c.size(); ++i) out[i] = add_checked(out[i], o.c[i]);
  return PolyZ(std::move(out));
}

PolyZ PolyZ::operator-() const { return scaled(-1); }
PolyZ PolyZ::operator-(const PolyZ& o) const { return *this + (-o); }

PolyZ PolyZ::operator*(const PolyZ& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<i128> out(c.size() + o.c.size() - 1, 0);
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < o.c.size(); ++j)
      out[i + j] = add_checked(out[i + j], mul_checked(c[i], o.c[j]));
  return PolyZ(std::move(out));
}

PolyZ PolyZ::scaled(i128 k) const {
  std::vector<i128> out(c);
  for (auto& x : out) x = mul_checked(x, k);
  return PolyZ(std::move(out));
}

PolyZ PolyZ::pow(int e) const {
  PolyZ r = constant(1);
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

Rational PolyZ::eval(const Rational& x) const {
  Rational r(0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + Rational(*it);
  return r;
}

i64 PolyZ::eval_mod(i64 x, i64 p) const {
  i64 r = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it)
    r = mod(mulmod(r, x, p) + static_cast<i64>(*it % p), p);
  return r;
}

std::string PolyZ::str(const std::string& var) const {
  return poly_str(c, var, [](i128 x) { return to_string(x); });
}

PolyZ exact_div(const PolyZ& a, const PolyZ& b) {
  if (b.is_zero()) fail(Errc::division_by_zero, "polynomial division by zero");
  std::vector<i128> r = a.c;
  if (a.degree() < b.degree()) {
    if (!a.is_zero()) fail(Errc::internal_inconsistency, "inexact polynomial division");
    return {};
  }
  std::vector<i128> q(static_cast<std::size_t>(a.degree() - b.degree() + 1), 0);
  for (int k = a.degree() - b.degree(); k >= 0; --k) {
    i128 top = r[static_cast<std::size_t>(k + b.degree())];
    if (top % b.lc() != 0) fail(Errc::internal_inconsistency, "inexact polynomial division");
    i128 qk = top / b.lc();
    q[static_cast<std::size_t>(k)] = qk;
    for (int j = 0; j <= b.degree(); ++j)
      r[static_cast<std::size_t>(k + j)] =
          add_checked(r[static_cast<std::size_t>(k + j)], -mul_checked(qk, b.c[static_cast<std::size_t>(j)]));
  }
  for (auto x : r)
    if (x != 0) fail(Errc::internal_inconsistency, "inexact polynomial division");
  return PolyZ(std::move(q));
}

namespace {

std::optional<PolyZ> try_exact_div(const PolyZ& a, const PolyZ& b) {
  try {
    return exact_div(a, b);
  } catch (const Error&) {
    return std::nullopt;
  }
}

// Primitive remainder sequence; only used when the modular route gives up.
PolyZ gcd_prs(PolyZ a, PolyZ b) {
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    while (!a.is_zero() && a.degree() >= b.degree()) {
      int shift = a.degree() - b.degree();
      std::vector<i128> sh(static_cast<std::size_t>(shift), 0);
      sh.insert(sh.end(), b.c.begin(), b.c.end());
      PolyZ bs(std::move(sh));
      i128 g = gcd128(a.lc(), b.lc());
      a = (a.scaled(b.lc() / g) - bs.scaled(a.lc() / g)).primitive();
    }
    std::swap(a, b);
  }
  return a;
}

}  // namespace

PolyZ gcd(const PolyZ& a0, const PolyZ& b0) {
  PolyZ a = a0.primitive(), b = b0.primitive();
  if (a.is_zero()) return b.is_zero() ? PolyZ::constant(1) : b;
  if (b.is_zero()) return a;
  // Modular gcd over large primes: a degree-0 image proves coprimality, otherwise
  // lift the image (scaled to gcd of leading coefficients) and confirm by division.
  const i128 lcg = gcd128(a.lc(), b.lc());
  for (i64 p : {i64{2305843009213693951}, i64{4611686018427387847}, i64{4611686018427387817}}) {
    if (a.lc() % p == 0 || b.lc() % p == 0) continue;
    PolyFp g = gcd(PolyFp::from_z(a, p), PolyFp::from_z(b, p));
    if (g.degree() == 0) return PolyZ::constant(1);
    g = g.scaled(static_cast<i64>(lcg % p));
    std::vector<i128> lifted;
    for (i64 x : g.c) lifted.push_back(x > p / 2 ? static_cast<i128>(x) - p : x);
    PolyZ cand = PolyZ(std::move(lifted)).primitive();
    if (try_exact_div(a, cand) && try_exact_div(b, cand)) return cand;
  }
  PolyZ g = gcd_prs(a, b);
  return g.is_zero() ? PolyZ::constant(1) : g.primitive();
}

// ---------------------------------------------------------------- RatFunc

RatFunc::RatFunc(PolyZ num, PolyZ den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

void RatFunc::normalize() {
  if (den_.is_zero()) fail(Errc::division_by_zero, "rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = PolyZ::constant(1);
    return;
  }
  PolyZ g = gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = exact_div(num_, g);
    den_ = exact_div(den_, g);
  }
  i128 c = gcd128(num_.content(), den_.content());
  if (den_.lc() < 0) c = -c;
  if (c != 1) {
    std::vector<i128> n = num_.c, d = den_.c;
    for (auto& x : n) x /= c;
    for (auto& x : d) x /= c;
    num_ = PolyZ(std::move(n));
    den_ = PolyZ(std::move(d));
  }
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
  if (den_ == o.den_) return RatFunc(num_ + o.num_, den_);
  return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}
RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }
RatFunc RatFunc::operator*(const RatFunc& o) const { return RatFunc(num_ * o.num_, den_ * o.den_); }
RatFunc RatFunc::operator/(const RatFunc& o) const {
  if (o.is_zero()) fail(Errc::division_by_zero, "rational function division by zero");
  return RatFunc(num_ * o.den_, den_ * o.num_);
}

RatFunc RatFunc::compose(const RatFunc& g) const {
  const int m = std::max(num_.degree(), den_.degree());
  auto hom = [&](const PolyZ& f) {
    PolyZ acc;
    for (int i = 0; i <= f.degree(); ++i)
      acc = acc + (g.num().pow(i) * g.den().pow(m - i)).scaled(f.c[static_cast<std::size_t>(i)]);
    return acc;
  };
  return RatFunc(hom(num_), hom(den_));
}

Rational RatFunc::eval(const Rational& x) const {
  Rational d = den_.eval(x);
  if (d.is_zero()) fail(Errc::pole, "pole at " + x.str());
  return num_.eval(x) / d;
}

std::string RatFunc::str(const std::string& var) const {
  if (den_ == PolyZ::constant(1)) return num_.str(var);
  return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
}

// ---------------------------------------------------------------- PolyFp

PolyFp::PolyFp(i64 p_, std::vector<i64> coeffs) : p(p_), c(std::move(coeffs)) {
  for (auto& x : c) x = mod(x, p);
  trim(c);
}

PolyFp PolyFp::from_z(const PolyZ& f, i64 p) {
  std::vector<i64> c;
  for (auto x : f.c) {
    i128 r = x % p;
    c.push_back(static_cast<i64>(r < 0 ? r + p : r));
  }
  return PolyFp(p, std::move(c));
}

PolyFp PolyFp::operator+(const PolyFp& o) const {
  std::vector<i64> out(std::max(c.size(), o.c.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i];
  for (std::size_t i = 0; i < o.c.size(); ++i) out[i] = (out[i] + o.c[i]) % p;
  return PolyFp(p, std::move(out));
}

PolyFp PolyFp::operator-(const PolyFp& o) const { return *this + o.scaled(p - 1); }

PolyFp PolyFp::operator*(const PolyFp& o) const {
  if (is_zero() || o.is_zero()) return PolyFp(p, {});
  std::vector<i64> out(c.size() + o.c.size() - 1, 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    for (std::size_t j = 0; j < o.c.size(); ++j) out[i + j] = (out[i + j] + mulmod(c[i], o.c[j], p)) % p;
  }
  return PolyFp(p, std::move(out));
}

PolyFp PolyFp::scaled(i64 k) const {
  std::vector<i64> out(c);
  for (auto& x : out) x = mulmod(x, mod(k, p), p);
  return PolyFp(p, std::move(out));
}

PolyFp PolyFp::monic() const { return is_zero() ? *this : scaled(invmod(lc(), p)); }

PolyFp PolyFp::derivative() const {
  std::vector<i64> out;
  for (std::size_t i = 1; i < c.size(); ++i) out.push_back(mulmod(c[i], static_cast<i64>(i) % p, p));
  return PolyFp(p, std::move(out));
}

i64 PolyFp::eval(i64 x) const {
  i64 r = 0;
  x = mod(x, p);
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = (mulmod(r, x, p) + *it) % p;
  return r;
}

std::string PolyFp::str(const std::string& var) const {
  return poly_str(c, var, [](i64 x) { return std::to_string(x); });
}

std::pair<PolyFp, PolyFp> divmod(const PolyFp& a, const PolyFp& b) {
  if (b.is_zero()) fail(Errc::division_by_zero, "polynomial division by zero");
  const i64 p = b.p;
  std::vector<i64> r = a.c;
  if (a.degree() < b.degree()) return {PolyFp(p, {}), a};
  std::vector<i64> q(static_cast<std::size_t>(a.degree() - b.degree() + 1), 0);
  const i64 inv = invmod(b.lc(), p);
  for (int k = a.degree() - b.degree(); k >= 0; --k) {
    i64 qk = mulmod(r[static_cast<std::size_t>(k + b.degree())], inv, p);
    q[static_cast<std::size_t>(k)] = qk;
    if (qk == 0) continue;
    for (int j = 0; j <= b.degree(); ++j) {
      auto& x = r[static_cast<std::size_t>(k + j)];
      x = mod(x - mulmod(qk, b.c[static_cast<std::size_t>(j)], p), p);
    }
  }
  return {PolyFp(p, std::move(q)), PolyFp(p, std::move(r))};
}

PolyFp operator%(const PolyFp& a, const PolyFp& b) { return divmod(a, b).second; }
PolyFp operator/(const PolyFp& a, const PolyFp& b) { return divmod(a, b).first; }

PolyFp gcd(PolyFp a, PolyFp b) {
  while (!b.is_zero()) {
    PolyFp r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

PolyFp powmod(PolyFp base, i64 e, const PolyFp& m) {
  PolyFp r = PolyFp::constant(m.p, 1) % m;
  base = base % m;
  while (e > 0) {
    if (e & 1) r = (r * base) % m;
    base = (base * base) % m;
    e >>= 1;
  }
  return r;
}

namespace {

PolyFp pth_root(const PolyFp& f) {
  std::vector<i64> out;
  for (std::size_t i = 0; i < f.c.size(); i += static_cast<std::size_t>(f.p)) out.push_back(f.c[i]);
  return PolyFp(f.p, std::move(out));
}

void squarefree_parts(const PolyFp& f, int mult, std::vector<std::pair<PolyFp, int>>& out) {
  if (f.degree() < 1) return;
  PolyFp d = f.derivative();
  if (d.is_zero()) {
    squarefree_parts(pth_root(f), mult * static_cast<int>(f.p), out);
    return;
  }
  PolyFp c = gcd(f, d);
  PolyFp w = f / c;
  int i = 1;
  while (w.degree() > 0) {
    PolyFp y = gcd(w, c);
    PolyFp z = w / y;
    if (z.degree() > 0) out.push_back({z.monic(), i * mult});
    ++i;
    w = y;
    c = c / y;
  }
  if (c.degree() > 0) squarefree_parts(pth_root(c.monic()), mult * static_cast<int>(f.p), out);
}

PolyFp frobenius_norm_power(const PolyFp& a, int d, const PolyFp& m) {
  // a^(1 + p + ... + p^(d-1)) mod m
  PolyFp t = a % m, n = a % m;
  for (int i = 1; i < d; ++i) {
    t = powmod(t, m.p, m);
    n = (n * t) % m;
  }
  return n;
}

void equal_degree(const PolyFp& g, int d, std::mt19937_64& rng, std::vector<PolyFp>& out) {
  if (g.degree() == d) {
    out.push_back(g.monic());
    return;
  }
  const i64 p = g.p;
  std::uniform_int_distribution<i64> coef(0, p - 1);
  for (;;) {
    std::vector<i64> a(static_cast<std::size_t>(g.degree()));
    for (auto& x : a) x = coef(rng);
    PolyFp ap(p, a);
    if (ap.degree() < 1) continue;
    PolyFp b = powmod(frobenius_norm_power(ap, d, g), (p - 1) / 2, g);
    PolyFp h = gcd(g, b - PolyFp::constant(p, 1));
    if (h.degree() > 0 && h.degree() < g.degree()) {
      equal_degree(h, d, rng, out);
      equal_degree(g / h, d, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<std::pair<PolyFp, int>> factor(const PolyFp& f0) {
  if (f0.p < 3) fail(Errc::invalid_prime, "factorization implemented for odd p");
  std::vector<std::pair<PolyFp, int>> sqf, out;
  squarefree_parts(f0.monic(), 1, sqf);
  std::mt19937_64 rng(0x5eed);
  for (const auto& [g0, mult] : sqf) {
    PolyFp g = g0;
    const PolyFp x = PolyFp::var(g.p);
    PolyFp h = x % g;
    for (int d = 1; g.degree() >= 2 * d; ++d) {
      h = powmod(h, g.p, g);
      PolyFp part = gcd(g, h - x);
      if (part.degree() > 0) {
        std::vector<PolyFp> irr;
        equal_degree(part, d, rng, irr);
        for (auto& q : irr) out.push_back({q, mult});
        g = g / part;
        h = h % g;
      }
    }
    if (g.degree() > 0) out.push_back({g.monic(), mult});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

bool is_irreducible(const PolyFp& f) {
  auto fs = factor(f);
  return fs.size() == 1 && fs[0].second == 1;
}

i64 residue_norm(const PolyFp& g, const PolyFp& f) {
  PolyFp n = frobenius_norm_power(g, f.degree(), f);
  return n.is_zero() ? 0 : n.c[0];
}

std::pair<int, PolyFp> valuation(PolyFp g, const PolyFp& f) {
  if (g.is_zero()) fail(Errc::internal_inconsistency, "valuation of zero");
  int k = 0;
  for (;;) {
    auto [q, r] = divmod(g, f);
    if (!r.is_zero()) return {k, g};
    g = std::move(q);
    ++k;
  }
}

}  // namespace cymod
