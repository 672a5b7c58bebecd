#include "cymod/congruence.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <set>

#include "cymod/error.hpp"

namespace cymod {

namespace {

struct SLTable {
  i64 N = 1;
  std::vector<std::array<i64, 4>> elems;
  std::vector<int> lookup;  // N^4 entries, -1 off the group
  std::vector<int> class_of;
  int I = 0, minus_I = 0, S = 0, T = 0, U = 0;

  int index(i64 a, i64 b, i64 c, i64 d) const {
    a = mod(a, N), b = mod(b, N), c = mod(c, N), d = mod(d, N);
    return lookup[static_cast<std::size_t>(((a * N + b) * N + c) * N + d)];
  }
  int mul(int x, int y) const {
    const auto& p = elems[static_cast<std::size_t>(x)];
    const auto& q = elems[static_cast<std::size_t>(y)];
    return index(p[0] * q[0] + p[1] * q[2], p[0] * q[1] + p[1] * q[3], p[2] * q[0] + p[3] * q[2],
                 p[2] * q[1] + p[3] * q[3]);
  }
  int inv(int x) const {
    const auto& p = elems[static_cast<std::size_t>(x)];
    return index(p[3], -p[1], -p[2], p[0]);
  }
  int neg(int x) const {
    const auto& p = elems[static_cast<std::size_t>(x)];
    return index(-p[0], -p[1], -p[2], -p[3]);
  }
  int size() const { return static_cast<int>(elems.size()); }
};

std::unique_ptr<SLTable> build_table(i64 N) {
  auto t = std::make_unique<SLTable>();
  t->N = N;
  t->lookup.assign(static_cast<std::size_t>(N * N * N * N), -1);
  for (i64 a = 0; a < N; ++a)
    for (i64 b = 0; b < N; ++b)
      for (i64 c = 0; c < N; ++c)
        for (i64 d = 0; d < N; ++d)
          if (mod(a * d - b * c, N) == 1 % N) {
            t->lookup[static_cast<std::size_t>(((a * N + b) * N + c) * N + d)] = t->size();
            t->elems.push_back({a, b, c, d});
          }
  t->I = t->index(1, 0, 0, 1);
  t->minus_I = t->index(-1, 0, 0, -1);
  t->S = t->index(0, -1, 1, 0);
  t->T = t->index(1, 1, 0, 1);
  t->U = t->T;
  // Conjugacy classes by brute-force conjugation over the whole group.
  t->class_of.assign(t->elems.size(), -1);
  int next = 0;
  for (int x = 0; x < t->size(); ++x) {
    if (t->class_of[static_cast<std::size_t>(x)] >= 0) continue;
    for (int h = 0; h < t->size(); ++h)
      t->class_of[static_cast<std::size_t>(t->mul(t->mul(h, x), t->inv(h)))] = next;
    ++next;
  }
  return t;
}

const SLTable& table(i64 N) {
  static std::mutex mu;
  static std::map<i64, std::unique_ptr<SLTable>> cache;
  if (N < 1 || N > 64) fail(Errc::internal_inconsistency, "modulus out of range");
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[N];
  if (!slot) slot = build_table(N);
  return *slot;
}

// Membership bitmap for the group (optionally closed under -Id), validated as a subgroup.
std::vector<char> members(const SLTable& t, const CongruenceGroupSpec& g, bool pm) {
  std::vector<char> in(t.elems.size(), 0);
  for (int x = 0; x < t.size(); ++x) {
    const auto& e = t.elems[static_cast<std::size_t>(x)];
    if (g.member(e[0], e[1], e[2], e[3])) {
      in[static_cast<std::size_t>(x)] = 1;
      if (pm) in[static_cast<std::size_t>(t.neg(x))] = 1;
    }
  }
  if (!in[static_cast<std::size_t>(t.I)])
    fail(Errc::closure_violation, g.name + ": identity not in group");
  std::vector<int> list;
  for (int x = 0; x < t.size(); ++x)
    if (in[static_cast<std::size_t>(x)]) list.push_back(x);
  for (int x : list)
    for (int y : list)
      if (!in[static_cast<std::size_t>(t.mul(x, y))])
        fail(Errc::closure_violation, g.name + ": predicate not closed under products");
  return in;
}

struct Cosets {
  std::vector<int> id;    // element -> right coset of +-H
  std::vector<int> reps;  // coset -> representative element
};

Cosets right_cosets(const SLTable& t, const std::vector<char>& hpm) {
  std::vector<int> h;
  for (int x = 0; x < t.size(); ++x)
    if (hpm[static_cast<std::size_t>(x)]) h.push_back(x);
  Cosets cs;
  cs.id.assign(t.elems.size(), -1);
  auto label = [&](int x) {
    int k = static_cast<int>(cs.reps.size());
    cs.reps.push_back(x);
    for (int y : h) cs.id[static_cast<std::size_t>(t.mul(y, x))] = k;
  };
  // Breadth-first search over the action of S and T.
  label(t.I);
  for (std::size_t head = 0; head < cs.reps.size(); ++head)
    for (int gen : {t.S, t.T}) {
      int y = t.mul(cs.reps[head], gen);
      if (cs.id[static_cast<std::size_t>(y)] < 0) label(y);
    }
  if (cs.reps.size() * h.size() != t.elems.size())
    fail(Errc::internal_inconsistency, "coset enumeration did not cover SL(2,Z/N)");
  return cs;
}

bool meets_classes(const SLTable& t, const std::vector<char>& in, const std::vector<int>& seeds) {
  std::set<int> cls;
  for (int s : seeds) cls.insert(t.class_of[static_cast<std::size_t>(s)]);
  for (int x = 0; x < t.size(); ++x)
    if (in[static_cast<std::size_t>(x)] && cls.count(t.class_of[static_cast<std::size_t>(x)]))
      return true;
  return false;
}

std::vector<int> elliptic_seeds(const SLTable& t) {
  int st = t.mul(t.S, t.T);
  int st2 = t.mul(st, st);
  return {t.S, t.inv(t.S), st, t.inv(st), st2, t.inv(st2)};
}

std::vector<int> trace_minus_two_seeds(const SLTable& t) {
  std::vector<int> seeds;
  for (i64 k = 0; k < t.N; ++k) seeds.push_back(t.index(-1, -k, 0, -1));
  return seeds;
}

}  // namespace

std::vector<int> GroupAnalysis::widths() const {
  std::vector<int> w;
  for (const auto& c : cusps) w.push_back(c.width);
  std::sort(w.rbegin(), w.rend());
  return w;
}

GroupAnalysis analyze(const CongruenceGroupSpec& g) {
  const auto& t = table(g.modulus);
  auto in = members(t, g, g.plus_minus);
  std::vector<char> hpm = in;
  for (int x = 0; x < t.size(); ++x)
    if (in[static_cast<std::size_t>(x)]) hpm[static_cast<std::size_t>(t.neg(x))] = 1;

  GroupAnalysis r;
  r.name = g.name;
  r.modulus = g.modulus;
  r.order = static_cast<int>(std::count(in.begin(), in.end(), 1));
  auto cs = right_cosets(t, hpm);
  r.index = static_cast<int>(cs.reps.size());

  std::vector<char> seen(cs.reps.size(), 0);
  for (std::size_t k = 0; k < cs.reps.size(); ++k) {
    if (seen[k]) continue;
    int w = 0, x = cs.reps[k];
    do {
      seen[static_cast<std::size_t>(cs.id[static_cast<std::size_t>(x)])] = 1;
      x = t.mul(x, t.U);
      ++w;
    } while (cs.id[static_cast<std::size_t>(x)] != static_cast<int>(k));
    const auto& e = t.elems[static_cast<std::size_t>(cs.reps[k])];
    r.cusps.push_back({e[0], e[2], w});
  }

  const int st = t.mul(t.S, t.T);
  for (std::size_t k = 0; k < cs.reps.size(); ++k) {
    int x = cs.reps[k];
    if (cs.id[static_cast<std::size_t>(t.mul(x, t.S))] == static_cast<int>(k)) ++r.e2;
    if (cs.id[static_cast<std::size_t>(t.mul(x, st))] == static_cast<int>(k)) ++r.e3;
  }
  int twelve_g = 12 + r.index - 3 * r.e2 - 4 * r.e3 - 6 * static_cast<int>(r.cusps.size());
  if (twelve_g % 12 != 0 || twelve_g < 0)
    fail(Errc::internal_inconsistency, g.name + ": non-integral genus");
  r.genus = twelve_g / 12;

  r.torsion_free = !meets_classes(t, hpm, elliptic_seeds(t));
  r.contains_minus_id = in[static_cast<std::size_t>(t.minus_I)] != 0;
  r.trace_minus_two = meets_classes(t, in, trace_minus_two_seeds(t));
  return r;
}

int index_in_modular_group(const CongruenceGroupSpec& g) { return analyze(g).index; }
std::vector<CuspData> cusps_and_widths(const CongruenceGroupSpec& g) { return analyze(g).cusps; }
bool is_torsion_free(const CongruenceGroupSpec& g) { return analyze(g).torsion_free; }
bool has_trace_minus_two(const CongruenceGroupSpec& g) { return analyze(g).trace_minus_two; }
bool contains_minus_id(const CongruenceGroupSpec& g) { return analyze(g).contains_minus_id; }
int genus(const CongruenceGroupSpec& g) { return analyze(g).genus; }

bool same_psl_image(const CongruenceGroupSpec& a, const CongruenceGroupSpec& b) {
  if (a.modulus != b.modulus) return false;
  const auto& t = table(a.modulus);
  return members(t, a, true) == members(t, b, true);
}

LiftCensus enumerate_lifts(const CongruenceGroupSpec& g) {
  const auto& t = table(g.modulus);
  auto hpm = members(t, g, true);
  auto closure = [&](const std::vector<int>& gens) {
    std::vector<char> in(t.elems.size(), 0);
    std::vector<int> todo{t.I};
    in[static_cast<std::size_t>(t.I)] = 1;
    while (!todo.empty()) {
      int x = todo.back();
      todo.pop_back();
      for (int s : gens) {
        int y = t.mul(x, s);
        if (!in[static_cast<std::size_t>(y)]) {
          in[static_cast<std::size_t>(y)] = 1;
          todo.push_back(y);
        }
      }
    }
    return in;
  };
  // Greedy generating set of the +-group, then every sign choice on the generators.
  std::vector<int> gens;
  auto span = closure(gens);
  for (int x = 0; x < t.size(); ++x)
    if (hpm[static_cast<std::size_t>(x)] && !span[static_cast<std::size_t>(x)]) {
      gens.push_back(x);
      span = closure(gens);
    }
  std::set<std::vector<char>> found;
  LiftCensus census;
  for (unsigned mask = 0; mask < (1u << gens.size()); ++mask) {
    std::vector<int> signed_gens;
    for (std::size_t i = 0; i < gens.size(); ++i)
      signed_gens.push_back((mask >> i) & 1u ? t.neg(gens[i]) : gens[i]);
    auto in = closure(signed_gens);
    if (in[static_cast<std::size_t>(t.minus_I)] || !found.insert(in).second) continue;
    ++census.lifts;
    if (!meets_classes(t, in, trace_minus_two_seeds(t))) ++census.trace_minus_two_free;
  }
  return census;
}

namespace {

CongruenceGroupSpec make(std::string name, std::string label, i64 N, MembershipPredicate p, bool pm,
                         std::vector<int> widths = {}) {
  return {std::move(name), std::move(label), N, std::move(p), pm, std::move(widths)};
}

bool gamma1_8_412(i64 a, i64 b, i64 c, i64 d) {
  return a % 4 == 1 && b % 2 == 0 && c % 4 == 0 && d % 4 == 1 && ((a - 1) / 4 - c / 4) % 2 == 0;
}

bool gamma1_16_1622(i64 a, i64, i64 c, i64 d) {
  return a % 4 == 1 && c % 8 == 0 && d % 4 == 1 && ((a - 1) / 4 - c / 8) % 2 == 0;
}

}  // namespace

std::vector<CongruenceGroupSpec> index24_groups() {
  return {
      make("gamma4", "G(4)", 4,
           [](i64 a, i64 b, i64 c, i64 d) { return a == 1 && d == 1 && b == 0 && c == 0; }, true,
           {4, 4, 4, 4, 4, 4}),
      make("gamma0_3_gamma2", "G0(3)&G(2)", 6,
           [](i64, i64 b, i64 c, i64) { return c % 6 == 0 && b % 2 == 0; }, true,
           {6, 6, 6, 2, 2, 2}),
      make("gamma1_7", "G1(7)", 7, [](i64 a, i64, i64 c, i64) { return a == 1 && c == 0; }, true,
           {7, 7, 7, 1, 1, 1}),
      make("gamma1_8", "G1(8)", 8, [](i64 a, i64, i64 c, i64) { return a == 1 && c == 0; }, true,
           {8, 8, 4, 2, 1, 1}),
      make("gamma0_8_gamma2", "G0(8)&G(2)", 8,
           [](i64, i64 b, i64 c, i64) { return c == 0 && b % 2 == 0; }, true, {8, 8, 2, 2, 2, 2}),
      make("gamma1_8_412", "G1(8;4,1,2)", 8, gamma1_8_412, true, {8, 4, 4, 4, 2, 2}),
      make("gamma0_12", "G0(12)", 12, [](i64, i64, i64 c, i64) { return c == 0; }, true,
           {12, 4, 3, 3, 1, 1}),
      make("gamma0_16", "G0(16)", 16, [](i64, i64, i64 c, i64) { return c == 0; }, true,
           {16, 4, 1, 1, 1, 1}),
      make("gamma1_16_1622", "G1(16;16,2,2)", 16, gamma1_16_1622, true, {16, 2, 2, 2, 1, 1}),
  };
}

std::vector<CongruenceGroupSpec> chosen_lifts() {
  auto groups = index24_groups();
  std::vector<MembershipPredicate> preds = {
      [](i64 a, i64 b, i64 c, i64 d) { return a == 1 && d == 1 && b == 0 && c == 0; },
      // The +-group itself contains -Id; this is its trace -2 free lift.
      [](i64 a, i64 b, i64 c, i64) { return a % 3 == 1 && c % 6 == 0 && b % 2 == 0; },
      [](i64 a, i64, i64 c, i64) { return a == 1 && c == 0; },
      [](i64 a, i64, i64 c, i64) { return a == 1 && c == 0; },
      // Same story as above.
      [](i64 a, i64 b, i64 c, i64) { return a % 4 == 1 && c == 0 && b % 2 == 0; },
      gamma1_8_412,
      [](i64 a, i64, i64 c, i64) { return c == 0 && a % 3 == 1; },
      [](i64 a, i64, i64 c, i64) { return c == 0 && a % 4 == 1; },
      gamma1_16_1622,
  };
  std::vector<std::string> labels = {"G(4)",          "G1(3)&G(2)", "G1(7)",
                                     "G1(8)",         "G1(4)&G0(8)&G(2)", "G1'(8;4,1,2)",
                                     "G0(12)&G1(3)",  "G0(16)&G1(4)", "G1'(16;16,2,2)"};
  std::vector<CongruenceGroupSpec> out;
  for (std::size_t i = 0; i < groups.size(); ++i)
    out.push_back(make(groups[i].name + "_lift", labels[i], groups[i].modulus, preds[i], false,
                       groups[i].expected_widths));
  return out;
}

std::vector<std::string> preset_group_names() {
  std::vector<std::string> names;
  for (const auto& g : index24_groups()) names.push_back(g.name);
  for (const auto& g : chosen_lifts()) names.push_back(g.name);
  for (const char* n : {"sl2z", "gamma2", "gamma0_2"}) names.emplace_back(n);
  return names;
}

CongruenceGroupSpec preset_group(const std::string& name) {
  for (const auto& g : index24_groups())
    if (g.name == name) return g;
  for (const auto& g : chosen_lifts())
    if (g.name == name) return g;
  if (name == "sl2z") return make("sl2z", "SL(2,Z)", 1, [](i64, i64, i64, i64) { return true; }, true, {1});
  if (name == "gamma2")
    return make("gamma2", "G(2)", 2, [](i64, i64 b, i64 c, i64) { return b == 0 && c == 0; }, true,
                {2, 2, 2});
  if (name == "gamma0_2")
    return make("gamma0_2", "G0(2)", 2, [](i64, i64, i64 c, i64) { return c == 0; }, true, {2, 1});
  fail(Errc::unknown_name, "unknown group '" + name + "'");
}

}  // namespace cymod
