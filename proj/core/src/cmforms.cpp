#include "cymod/cmforms.hpp"

#include "cymod/error.hpp"
#include "cymod/qseries.hpp"

namespace cymod {

HeckeCharSpec hecke_spec(const std::string& form_id) {
  if (form_id == "h8") return {"h8", 1, 2, 16};
  if (form_id == "h7") return {"h7", 3, 2, 12};
  if (form_id == "h3") return {"h3", 7, 1, 7};
  if (form_id == "h4") return {"h4", 2, 1, 8};
  fail(Errc::unknown_name, "no Hecke character attached to '" + form_id + "'");
}

std::vector<std::string> hecke_form_ids() { return {"h8", "h7", "h3", "h4"}; }

bool is_bad_prime(const HeckeCharSpec& s, i64 p) { return s.conductor_gen % p == 0; }

i64 trace_of_square(const QuadFieldElement& x) {
  return (x.u * x.u - static_cast<i64>(x.d) * x.v * x.v) / 2;
}

namespace {

// pi = +-1 mod c: (pi -+ 1)/c must be an integral element.
bool congruent_to_pm_one(const QuadFieldElement& x, i64 c) {
  if (c == 1) return true;
  for (i64 s : {2, -2}) {
    i64 du = x.u - s;
    if (du % c != 0 || x.v % c != 0) continue;
    if (QuadFieldElement{x.d, du / c, x.v / c}.valid()) return true;
  }
  return false;
}

std::vector<QuadFieldElement> generators_above(const HeckeCharSpec& s, i64 p) {
  auto sols = norm_equation_solutions(s.d, p);
  if (sols.empty())
    fail(Errc::no_generator, std::to_string(p) + " is inert in Q(sqrt(-" + std::to_string(s.d) + "))");
  return sols;
}

}  // namespace

std::vector<QuadFieldElement> admissible_generators(const HeckeCharSpec& s, i64 p) {
  std::vector<QuadFieldElement> out;
  for (const auto& g : generators_above(s, p))
    for (const auto& x : g.unit_orbit())
      if (congruent_to_pm_one(x, s.conductor_gen)) out.push_back(x);
  return out;
}

QuadFieldElement normalized_generator(const HeckeCharSpec& s, i64 p) {
  if (is_bad_prime(s, p)) fail(Errc::bad_prime, std::to_string(p) + " divides the conductor");
  for (const auto& g : generators_above(s, p))
    for (const auto& x : g.unit_orbit())
      if (congruent_to_pm_one(x, s.conductor_gen)) return x;
  fail(Errc::normalization_failure, "no unit multiple is +-1 mod c at p = " + std::to_string(p));
}

i64 ap(const HeckeCharSpec& s, i64 p, GeneratorSelection sel) {
  if (!is_prime(p)) fail(Errc::invalid_prime, std::to_string(p) + " is not prime");
  if (is_bad_prime(s, p)) fail(Errc::bad_prime, std::to_string(p) + " divides the conductor");
  int chi = kronecker_character(s.discriminant(), p);
  if (chi == -1) return 0;
  if (chi == 0) {
    // Ramified: the admissible generator with u*v = 0 has a rational square.
    for (const auto& x : admissible_generators(s, p))
      if (x.u == 0 || x.v == 0) return (x.u * x.u - static_cast<i64>(x.d) * x.v * x.v) / 4;
    fail(Errc::normalization_failure, "no rational-square generator at ramified p = " + std::to_string(p));
  }
  if (sel == GeneratorSelection::first_listed) return trace_of_square(generators_above(s, p).front());
  return trace_of_square(normalized_generator(s, p));
}

std::vector<i64> coefficient_sequence(const HeckeCharSpec& s, i64 N, GeneratorSelection sel) {
  std::vector<i64> a(static_cast<std::size_t>(std::max<i64>(N, 0) + 1), 0);
  if (N < 1) return a;
  a[1] = 1;
  TruncatedSeries eta;
  bool have_eta = false;
  // Prime powers first, then multiplicativity in increasing n.
  std::vector<i64> spf(a.size(), 0);
  for (i64 p = 2; p <= N; ++p) {
    if (spf[static_cast<std::size_t>(p)] != 0) continue;
    for (i64 m = p; m <= N; m += p)
      if (spf[static_cast<std::size_t>(m)] == 0) spf[static_cast<std::size_t>(m)] = p;
    if (is_bad_prime(s, p)) {
      if (!have_eta) {
        eta = expand(eta_form(s.form_id), kGrid * (N + 1));
        have_eta = true;
      }
      for (i64 q = p; q <= N; q *= p) a[static_cast<std::size_t>(q)] = eta.coefficient(q);
      continue;
    }
    const i64 app = ap(s, p, sel);
    const i64 eps = kronecker_character(s.discriminant(), p);
    i64 prev = 1, cur = app;
    for (i64 q = p; q <= N; q *= p) {
      a[static_cast<std::size_t>(q)] = cur;
      i64 next = app * cur - eps * p * p * prev;
      prev = cur;
      cur = next;
      if (q > N / p) break;
    }
  }
  for (i64 n = 2; n <= N; ++n) {
    i64 p = spf[static_cast<std::size_t>(n)], q = 1, m = n;
    while (m % p == 0) m /= p, q *= p;
    if (m > 1) a[static_cast<std::size_t>(n)] = a[static_cast<std::size_t>(q)] * a[static_cast<std::size_t>(m)];
  }
  return a;
}

i64 newtype(const HeckeCharSpec& s) { return s.discriminant(); }

std::vector<i64> verify_against_eta(const HeckeCharSpec& s, i64 N, GeneratorSelection sel) {
  auto eta = expand(eta_form(s.form_id), kGrid * (N + 1));
  auto a = coefficient_sequence(s, N, sel);
  std::vector<i64> bad;
  for (i64 n = 1; n <= N; ++n)
    if (a[static_cast<std::size_t>(n)] != eta.coefficient(n)) bad.push_back(n);
  return bad;
}

}  // namespace cymod
