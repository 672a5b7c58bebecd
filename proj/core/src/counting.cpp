#include "cymod/counting.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "cymod/cmforms.hpp"
#include "cymod/kodaira.hpp"

namespace cymod {

CurveZ parse_curve(const std::string& text) {
  CurveZ e{};
  std::stringstream ss(text);
  std::string item;
  std::size_t i = 0;
  while (std::getline(ss, item, ',')) {
    if (i >= 5) fail(Errc::wrong_shape, "curve needs exactly five coefficients: " + text);
    try {
      std::size_t used = 0;
      e[i++] = std::stoll(item, &used);
      while (used < item.size() && item[used] == ' ') ++used;
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      fail(Errc::wrong_shape, "bad coefficient '" + item + "' in " + text);
    }
  }
  if (i != 5) fail(Errc::wrong_shape, "curve needs exactly five coefficients: " + text);
  return e;
}

i128 curve_discriminant(const CurveZ& e) {
  const i128 a1 = e[0], a2 = e[1], a3 = e[2], a4 = e[3], a6 = e[4];
  const i128 b2 = a1 * a1 + 4 * a2, b4 = 2 * a4 + a1 * a3, b6 = a3 * a3 + 4 * a6;
  const i128 b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
}

namespace {

// (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
std::array<i64, 4> completed_cubic(const CurveZ& e, i64 p) {
  i64 a1 = mod(e[0], p), a2 = mod(e[1], p), a3 = mod(e[2], p), a4 = mod(e[3], p), a6 = mod(e[4], p);
  i64 b2 = mod(a1 * a1 + 4 * a2, p);
  i64 b4 = mod(2 * a4 + a1 * a3, p);
  i64 b6 = mod(a3 * a3 + 4 * a6, p);
  return {b6, mod(2 * b4, p), b2, 4 % p};
}

i64 eval_cubic(const std::array<i64, 4>& f, i64 x, i64 p) {
  i64 v = 0;
  for (int k = 3; k >= 0; --k) v = mod(v * x + f[static_cast<std::size_t>(k)], p);
  return v;
}

void require_odd_prime(i64 p) {
  if (p < 3 || !is_prime(p)) fail(Errc::invalid_prime, "need an odd prime, got " + std::to_string(p));
}

}  // namespace

i64 curve_count(const CurveZ& e, i64 p) {
  require_odd_prime(p);
  auto chi = quadratic_character_table(p);
  auto f = completed_cubic(e, p);
  i64 n = 1;
  for (i64 x = 0; x < p; ++x) n += 1 + chi[static_cast<std::size_t>(eval_cubic(f, x, p))];
  return n;
}

std::vector<signed char> quadratic_character_table(i64 p) {
  std::vector<signed char> chi(static_cast<std::size_t>(p), -1);
  chi[0] = 0;
  for (i64 y = 1; y <= p / 2; ++y) chi[static_cast<std::size_t>(y * y % p)] = 1;
  return chi;
}

i64 short_curve_count(i64 a, i64 b, i64 p, const std::vector<signed char>& chi) {
  a = mod(a, p);
  b = mod(b, p);
  i64 n = 1 + p;
  for (i64 x = 0; x < p; ++x) {
    i64 v = (x * x % p + a) % p * x % p + b;
    n += chi[static_cast<std::size_t>(v % p)];
  }
  return n;
}

i64 ap_elliptic(const CurveZ& e, i64 p) {
  require_odd_prime(p);
  if (curve_discriminant(e) % p == 0)
    fail(Errc::bad_prime, "curve has bad reduction at " + std::to_string(p));
  return p + 1 - curve_count(e, p);
}

CountReport k3_point_count(const WeierstrassFamily& f, i64 p) {
  require_good_prime(f, p);
  FiberModel model(f, p);
  auto chi = quadratic_character_table(p);
  auto fiber_count = [&](const LocalFiber& lf) {
    return short_curve_count(-27 * lf.r4, -54 * lf.r6, p, chi);
  };
  CountReport r;
  r.family = f.name;
  r.p = p;
  for (i64 t = 0; t < p; ++t) r.total += fiber_count(model.local_at(t));
  r.total += fiber_count(model.local(Place{true, PolyFp(p, {})}));
  int tau = 0;
  for (const auto& place : model.candidate_places()) {
    auto lf = model.local(place);
    if (lf.fiber) tau += lf.fiber->tau;
  }
  r.total += p * tau;
  r.ns_trace_used = 2 + tau;
  r.B = r.total - 1 - p * p - p * r.ns_trace_used;
  r.ok = std::abs(r.B) <= 2 * p;
  return r;
}

std::vector<CountReport> count_sweep(const WeierstrassFamily& f, const std::vector<i64>& primes,
                                     unsigned threads) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, primes.size())));
  std::vector<CountReport> out(primes.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i; (i = next++) < primes.size();) {
      try {
        out[i] = k3_point_count(f, primes[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.p < b.p; });
  return out;
}

std::vector<i64> good_primes(const WeierstrassFamily& f, i64 lo, i64 hi) {
  std::vector<i64> out;
  for (i64 p : primes_between(std::max<i64>(lo, 5), hi))
    if (std::find(f.level_primes.begin(), f.level_primes.end(), p) == f.level_primes.end()) out.push_back(p);
  return out;
}

std::string family_form(const std::string& family) {
  static const std::map<std::string, std::string> forms = {
      {"g4_legendre", "h8"}, {"g62", "h7"}, {"g82", "h8"}, {"g8_412", "h4"}};
  auto it = forms.find(canonical_family_name(family));
  return it == forms.end() ? std::string() : it->second;
}

const std::vector<i64>& twist_candidates() {
  static const std::vector<i64> c = {1, -3, -4, 8, -8, 12, -24, 24};
  return c;
}

i64 fundamental_part(i64 n) {
  if (n == 0) fail(Errc::invalid_discriminant, "zero has no fundamental part");
  i64 m = n;
  for (i64 q = 2; q * q <= std::abs(m); ++q)
    while (m % (q * q) == 0) m /= q * q;
  return mod(m, 4) == 1 ? m : 4 * m;
}

i64 predicted_B(const TwistFit& fit, i64 p) {
  if (!fit.resolved()) fail(Errc::unresolved_twist, "no twist fitted for " + fit.family);
  return kronecker_character(fit.D, p) * ap(hecke_spec(fit.form_id), p);
}

int nebentypus(const TwistFit& fit, i64 p) {
  if (!fit.resolved()) fail(Errc::unresolved_twist, "no twist fitted for " + fit.family);
  return kronecker_character(newtype(hecke_spec(fit.form_id)), p);
}

TwistFit twist_fit_from_counts(const WeierstrassFamily& f, const std::vector<CountReport>& counts,
                               const std::optional<std::string>& form) {
  TwistFit fit;
  fit.family = f.name;
  std::string form_id = form ? *form : family_form(f.name);
  if (form_id.empty()) fail(Errc::model_mismatch, f.name + " has no matched CM form");
  auto spec = hecke_spec(form_id);
  if (std::none_of(counts.begin(), counts.end(), [](const auto& c) { return c.B != 0; }))
    fail(Errc::insufficient_precision, "every B(p) vanishes; the twist is undetermined");
  std::vector<i64> a;
  for (const auto& c : counts) a.push_back(ap(spec, c.p));
  for (i64 D : twist_candidates()) {
    bool all = true;
    for (std::size_t i = 0; i < counts.size() && all; ++i)
      all = counts[i].B == kronecker_character(D, counts[i].p) * a[i];
    if (all) fit.equivalent.push_back(D);
  }
  if (fit.equivalent.empty())
    fail(Errc::model_mismatch, f.name + " fits no quadratic twist of " + form_id);
  fit.form_id = form_id;
  fit.D = fit.equivalent.front();
  for (const auto& c : counts) fit.primes.push_back(c.p);
  return fit;
}

TwistFit twist_fit(const WeierstrassFamily& f, const std::vector<i64>& primes,
                   const std::optional<std::string>& form, unsigned threads) {
  constexpr std::size_t kMaxPrimes = 100;
  if (primes.size() < 10) fail(Errc::insufficient_precision, "twist fitting needs at least 10 primes");
  auto counts = count_sweep(f, primes, threads);
  for (;;) {
    auto fit = twist_fit_from_counts(f, counts, form);
    const i64 dk = hecke_spec(fit.form_id).discriminant();
    // Fits differing by the CM character agree at every prime where a_p can be nonzero.
    bool one_class = std::all_of(fit.equivalent.begin(), fit.equivalent.end(), [&](i64 D) {
      return D == fit.D || fundamental_part(D * fit.D) == dk;
    });
    if (one_class) return fit;
    if (counts.size() >= kMaxPrimes) fail(Errc::unresolved_twist, f.name + ": twist not unique after 100 primes");
    i64 p = counts.back().p;
    auto more = good_primes(f, p + 1, p + 200);
    more.resize(std::min(more.size(), kMaxPrimes - counts.size()));
    auto extra = count_sweep(f, more, threads);
    counts.insert(counts.end(), extra.begin(), extra.end());
  }
}

i64 kummer_fiber_count_average(i64 a1, i64 a2, i64 r2, i64 p) {
  i64 s = (p + 1 - a1) * (p + 1 - a2) + (p + 1 + a1) * (p + 1 + a2);
  if (s % 2 != 0) fail(Errc::parity_violation, "odd quotient average");
  return s / 2 + p * r2;
}

i64 kummer_fiber_count_simplified(i64 a1, i64 a2, i64 r2, i64 p) {
  return (p + 1) * (p + 1) + a1 * a2 + p * r2;
}

i64 kummer_fiber_count(i64 a1, i64 a2, i64 r2, i64 p) {
  if (r2 < 1 || r2 > 16) fail(Errc::wrong_shape, "r2 must lie in 1..16");
  i64 x = kummer_fiber_count_average(a1, a2, r2, p);
  if (x != kummer_fiber_count_simplified(a1, a2, r2, p))
    fail(Errc::parity_violation, "Kummer count expressions disagree");
  return x;
}

int rational_two_torsion(const CurveZ& e, i64 p) {
  require_odd_prime(p);
  auto f = completed_cubic(e, p);
  int n = 1;
  for (i64 x = 0; x < p; ++x)
    if (eval_cubic(f, x, p) == 0) ++n;
  return n;
}

i64 h3_trace(const WeierstrassFamily& f, const CurveZ& e, i64 p, const TwistFit& fit) {
  require_good_prime(f, p);
  auto ns = ns_decomposition(f.name);
  if (!ns) fail(Errc::unknown_name, f.name + " has no cycle decomposition");
  const i64 A = ap_elliptic(e, p);
  return A * predicted_B(fit, p) + p * A * ns->minus_trace(p);
}

i64 h2_trace(const WeierstrassFamily& f, i64 p) {
  require_good_prime(f, p);
  auto ns = ns_decomposition(f.name);
  if (!ns) fail(Errc::unknown_name, f.name + " has no cycle decomposition");
  return p * (17 + ns->plus_trace(p));
}

}  // namespace cymod
