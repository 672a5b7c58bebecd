#include "cymod/qseries.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "cymod/error.hpp"

namespace cymod {

namespace {

i64 ceil_div(i64 a, i64 b) {  // b > 0
  return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}

i64 floor_div(i64 a, i64 b) {  // b > 0
  return a >= 0 ? a / b : -((-a + b - 1) / b);
}

i64 narrow(i128 x) {
  if (x > INT64_MAX || x < INT64_MIN) fail(Errc::overflow, "series coefficient exceeds 64 bits");
  return static_cast<i64>(x);
}

}  // namespace

TruncatedSeries::TruncatedSeries(i64 offset, i64 step, std::vector<i64> coeffs, i64 prec)
    : offset_(offset), step_(step), c_(std::move(coeffs)), prec_(prec) {
  if (step_ <= 0) fail(Errc::internal_inconsistency, "series step must be positive");
  trim();
}

void TruncatedSeries::trim() {
  i64 len = std::max<i64>(0, ceil_div(prec_ - offset_, step_));
  if (static_cast<i64>(c_.size()) > len) c_.resize(static_cast<std::size_t>(len));
}

TruncatedSeries TruncatedSeries::one(i64 prec) { return TruncatedSeries(0, kGrid, {1}, prec); }

TruncatedSeries TruncatedSeries::from_q(const std::vector<i64>& c, i64 nprec) {
  return TruncatedSeries(0, kGrid, c, kGrid * nprec);
}

i64 TruncatedSeries::at_grid(i64 e) const {
  if (e >= prec_)
    fail(Errc::insufficient_precision,
         "exponent " + std::to_string(e) + "/24 outside window " + std::to_string(prec_) + "/24");
  if (e < offset_ || (e - offset_) % step_ != 0) return 0;
  auto i = static_cast<std::size_t>((e - offset_) / step_);
  return i < c_.size() ? c_[i] : 0;
}

i64 TruncatedSeries::integral_prec() const { return floor_div(prec_ - 1, kGrid); }

bool TruncatedSeries::integral() const {
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0 && (offset_ + static_cast<i64>(i) * step_) % kGrid != 0) return false;
  return true;
}

std::vector<i64> TruncatedSeries::q_coefficients(i64 nmax) const {
  std::vector<i64> out(static_cast<std::size_t>(nmax + 1));
  for (i64 n = 0; n <= nmax; ++n) out[static_cast<std::size_t>(n)] = coefficient(n);
  return out;
}

TruncatedSeries TruncatedSeries::truncated(i64 prec) const {
  return TruncatedSeries(offset_, step_, c_, std::min(prec, prec_));
}

bool TruncatedSeries::operator==(const TruncatedSeries& o) const {
  return prec_ == o.prec_ && equal_on_common_range(*this, o);
}

std::string TruncatedSeries::to_sparse_text() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    i64 e = offset_ + static_cast<i64>(i) * step_;
    if (!first) os << ' ';
    first = false;
    if (e % kGrid == 0) {
      os << e / kGrid;
    } else {
      i64 g = std::gcd(e, kGrid);
      os << e / g << '/' << kGrid / g;
    }
    os << ':' << c_[i];
  }
  return os.str();
}

std::string TruncatedSeries::to_json() const {
  std::ostringstream os;
  os << "{\"grid\":" << kGrid << ",\"prec\":" << prec_ << ",\"terms\":[";
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (!first) os << ',';
    first = false;
    os << '[' << offset_ + static_cast<i64>(i) * step_ << ',' << c_[i] << ']';
  }
  os << "]}";
  return os.str();
}

TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  const i64 g = std::gcd(a.step(), b.step());
  const i64 off = a.offset() + b.offset();
  const i64 prec = std::min(a.prec() + b.offset(), b.prec() + a.offset());
  const i64 len = std::min<i64>(std::max<i64>(0, ceil_div(prec - off, g)),
                               static_cast<i64>(a.raw().size()) * (a.step() / g) +
                                   static_cast<i64>(b.raw().size()) * (b.step() / g));
  std::vector<i128> acc(static_cast<std::size_t>(len), 0);
  const auto& x = a.raw();
  const auto& y = b.raw();
  const i64 sa = a.step() / g, sb = b.step() / g;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) {
      i64 k = static_cast<i64>(i) * sa + static_cast<i64>(j) * sb;
      if (k >= len) break;
      acc[static_cast<std::size_t>(k)] += static_cast<i128>(x[i]) * y[j];
    }
  }
  std::vector<i64> out(acc.size());
  for (std::size_t k = 0; k < acc.size(); ++k) out[k] = narrow(acc[k]);
  return TruncatedSeries(off, g, std::move(out), prec);
}

TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b) {
  const i64 off = std::min(a.offset(), b.offset());
  const i64 g = std::gcd(std::gcd(a.step(), b.step()), std::abs(a.offset() - b.offset()));
  const i64 prec = std::min(a.prec(), b.prec());
  const i64 len = std::max<i64>(0, ceil_div(prec - off, g));
  std::vector<i64> out(static_cast<std::size_t>(len), 0);
  for (const auto* s : {&a, &b})
    for (std::size_t i = 0; i < s->raw().size(); ++i) {
      i64 k = (s->offset() + static_cast<i64>(i) * s->step() - off) / g;
      if (k < len) out[static_cast<std::size_t>(k)] += s->raw()[i];
    }
  return TruncatedSeries(off, g, std::move(out), prec);
}

std::vector<i64> power_series_pow(const std::vector<i64>& f, i64 r, std::size_t len) {
  if (f.empty() || f[0] != 1) fail(Errc::non_unit_leading, "power series must start with 1");
  std::vector<i64> g(len, 0);
  if (len == 0) return g;
  g[0] = 1;
  for (std::size_t k = 1; k < len; ++k) {
    i128 s = 0;
    const std::size_t top = std::min(k, f.size() - 1);
    for (std::size_t j = 1; j <= top; ++j) {
      if (f[j] == 0) continue;
      i128 w = static_cast<i128>(static_cast<i64>(j) * (r + 1) - static_cast<i64>(k));
      s += w * f[j] * g[k - j];
    }
    if (s % static_cast<i128>(k) != 0)
      fail(Errc::internal_inconsistency, "power recurrence produced a non-integer");
    g[k] = narrow(s / static_cast<i128>(k));
  }
  return g;
}

TruncatedSeries invert(const TruncatedSeries& a) {
  const auto& c = a.raw();
  std::size_t lead = 0;
  while (lead < c.size() && c[lead] == 0) ++lead;
  if (lead == c.size() || (c[lead] != 1 && c[lead] != -1))
    fail(Errc::non_unit_leading, "invert needs a leading coefficient of +-1");
  const i64 sign = c[lead];
  const i64 o = a.offset() + static_cast<i64>(lead) * a.step();
  std::vector<i64> f(c.begin() + static_cast<std::ptrdiff_t>(lead), c.end());
  for (auto& x : f) x *= sign;
  const i64 len = std::max<i64>(0, ceil_div(a.prec() - o, a.step()));
  auto g = power_series_pow(f, -1, static_cast<std::size_t>(len));
  for (auto& x : g) x *= sign;
  return TruncatedSeries(-o, a.step(), std::move(g), a.prec() - 2 * o);
}

TruncatedSeries pow(const TruncatedSeries& a, i64 r) {
  if (r < 0) return pow(invert(a), -r);
  if (r == 0) return TruncatedSeries::one(a.prec() - a.offset());
  TruncatedSeries result = TruncatedSeries::one(i64{1} << 60);
  TruncatedSeries base = a;
  while (r > 0) {
    if (r & 1) result = mul(result, base);
    r >>= 1;
    if (r > 0) base = mul(base, base);
  }
  return result;
}

bool equal_on_common_range(const TruncatedSeries& a, const TruncatedSeries& b) {
  const i64 prec = std::min(a.prec(), b.prec());
  for (const auto* s : {&a, &b}) {
    const auto* other = s == &a ? &b : &a;
    for (std::size_t i = 0; i < s->raw().size(); ++i) {
      i64 e = s->offset() + static_cast<i64>(i) * s->step();
      if (e >= prec) break;
      if (s->raw()[i] != other->at_grid(e)) return false;
    }
  }
  return true;
}

RescaleResult rescale_capped(const TruncatedSeries& s, i64 m, i64 cap) {
  if (m <= 0) fail(Errc::internal_inconsistency, "rescale factor must be positive");
  TruncatedSeries r(s.offset() * m, s.step() * m, s.raw(), s.prec() * m);
  if (cap > 0 && r.prec() > cap) return {r.truncated(cap), true};
  return {r, false};
}

TruncatedSeries rescale(const TruncatedSeries& s, i64 m) { return rescale_capped(s, m, 0).series; }

TruncatedSeries sign_twist(const TruncatedSeries& s) {
  if (!s.integral()) fail(Errc::non_integral_series, "sign_twist needs an integral series");
  std::vector<i64> c = s.raw();
  for (std::size_t i = 0; i < c.size(); ++i) {
    i64 n = (s.offset() + static_cast<i64>(i) * s.step()) / kGrid;
    if (n % 2 != 0) c[i] = -c[i];
  }
  return TruncatedSeries(s.offset(), s.step(), std::move(c), s.prec());
}

std::vector<i64> euler_product(i64 K) {
  std::vector<i64> e(static_cast<std::size_t>(std::max<i64>(K + 1, 0)), 0);
  if (K < 0) return e;
  e[0] = 1;
  for (i64 k = 1;; ++k) {
    i64 sign = (k % 2 == 0) ? 1 : -1;
    i64 p1 = k * (3 * k - 1) / 2, p2 = k * (3 * k + 1) / 2;
    if (p1 > K) break;
    e[static_cast<std::size_t>(p1)] += sign;
    if (p2 <= K) e[static_cast<std::size_t>(p2)] += sign;
  }
  return e;
}

i64 EtaQuotient::offset() const {
  i64 s = 0;
  for (auto [m, r] : factors) s += m * r;
  return s;
}

i64 EtaQuotient::weight_times_two() const {
  i64 s = 0;
  for (auto [m, r] : factors) s += r;
  return s;
}

TruncatedSeries eta_power_expansion(i64 m, i64 r, i64 prec) {
  if (m <= 0) fail(Errc::internal_inconsistency, "eta scale must be positive");
  const i64 off = m * r, step = kGrid * m;
  const i64 len = std::max<i64>(0, ceil_div(prec - off, step));
  auto g = power_series_pow(euler_product(len - 1), r, static_cast<std::size_t>(len));
  return TruncatedSeries(off, step, std::move(g), prec);
}

TruncatedSeries expand(const EtaQuotient& q, i64 prec) {
  const i64 total = q.offset();
  TruncatedSeries s = TruncatedSeries::one(prec);
  bool first = true;
  for (auto [m, r] : q.factors) {
    auto f = eta_power_expansion(m, r, prec - (total - m * r));
    s = first ? f : mul(s, f);
    first = false;
  }
  return s.truncated(prec);
}

bool has_eta_formula(const std::string& name) {
  return name == "h1" || name == "h2" || name == "h3" || name == "h4" || name == "h5" ||
         name == "h7" || name == "h8";
}

EtaQuotient eta_form(const std::string& name) {
  if (name == "h1") return {{{1, 6}}};
  if (name == "h2") return {{{1, 3}, {3, 3}}};
  if (name == "h3") return {{{1, 3}, {7, 3}}};
  if (name == "h4") return {{{1, 2}, {2, 1}, {4, 1}, {8, 2}}};
  if (name == "h5") return {{{2, 6}}};
  if (name == "h7") return {{{2, 3}, {6, 3}}};
  if (name == "h8") return {{{4, 6}}};
  fail(Errc::unknown_name, "no eta product for form '" + name + "'");
}

TruncatedSeries form_series(const std::string& name, i64 nmax) {
  const i64 prec = kGrid * (nmax + 1);
  if (has_eta_formula(name)) return expand(eta_form(name), prec);
  if (name == "h9") return sign_twist(expand(eta_form("h4"), prec));
  if (name == "h6") {
    auto h9 = sign_twist(expand(eta_form("h4"), kGrid * (nmax / 2 + 1)));
    return rescale(h9, 2).truncated(prec);
  }
  fail(Errc::unknown_name, "unknown form '" + name + "'");
}

}  // namespace cymod
