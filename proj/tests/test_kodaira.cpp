#include <algorithm>

#include "cymod/counting.hpp"
#include "cymod/error.hpp"
#include "cymod/kodaira.hpp"
#include "doctest.h"

using namespace cymod;

namespace {

using Config = std::vector<std::string>;

Config configuration(const std::string& family, i64 p) { return scan(preset(family), p).configuration(); }

// Rational points on a resolved I_n fiber (n >= 2): a cycle of n lines, with Frobenius
// acting trivially (split) or by the reflection j -> -j (non-split).
i64 resolved_chain_points(int n, bool split, i64 p) {
  auto frob = [&](int j) { return split ? j : (n - j) % n; };
  i64 count = 0;
  for (int j = 0; j < n; ++j)
    if (frob(j) == j) count += p + 1;
  // Node j joins lines j and j+1; the reflection sends it to node -j-1.
  auto frob_node = [&](int j) { return split ? j : ((n - j - 1) % n + n) % n; };
  for (int j = 0; j < n; ++j) {
    if (frob_node(j) != j) continue;
    int k = (j + 1) % n;
    bool j_stable = frob(j) == j, k_stable = frob(k) == k;
    if (j_stable && k_stable) count -= 1;    // counted on both lines
    if (!j_stable && !k_stable) count += 1;  // lies on no rational line
  }
  return count;
}

int tau_rule(int n, bool split) { return split ? n - 1 : (n % 2 == 0 ? 1 : 0); }

}  // namespace

TEST_SUITE("kodaira") {
  TEST_CASE("fiber types from the printed families") {
    CHECK(configuration("e1_4", 13) == Config{"I1*", "I4", "I1"});
    CHECK(configuration("e1_8", 17) == Config{"I8", "I8", "I4", "I2", "I1", "I1"});
    CHECK(configuration("e1_7", 29) == Config{"I7", "I7", "I7", "I1", "I1", "I1"});
    CHECK(configuration("g62", 13) == Config{"I6", "I6", "I6", "I2", "I2", "I2"});
    CHECK(configuration("g8_412", 13) == Config{"I8", "I4", "I4", "I4", "I2", "I2"});
    auto s = scan(preset("g4_legendre"), 13);
    CHECK(s.fibers.size() == 6);
    for (const auto& fr : s.fibers) {
      CHECK(fr.place.degree() == 1);
      CHECK(fr.symbol() == "I4");
      CHECK(fr.split);
    }
  }

  TEST_CASE("places of higher degree") {
    // Over F_7 the cusps +-i of the Legendre family merge into one place of degree 2.
    auto s = scan(preset("g4_legendre"), 7);
    CHECK(s.audit_ok);
    CHECK(std::any_of(s.fibers.begin(), s.fibers.end(), [](const auto& fr) { return fr.place.degree() == 2; }));
    CHECK(s.configuration() == Config{"I4", "I4", "I4", "I4", "I4", "I4"});
  }

  TEST_CASE("bad residue characteristic") {
    CHECK_THROWS_AS(scan(preset("g4_legendre"), 3), Error);
    CHECK_THROWS_AS(scan(preset("e1_7"), 7), Error);
    CHECK_THROWS_AS(ns_trace(preset("g62"), 2), Error);
  }

  TEST_CASE("Euler audits at every good prime") {
    for (const auto& name : family_names()) {
      auto f = preset(name);
      for (i64 p : good_primes(f, 5, 60)) {
        auto s = scan(f, p, false);
        REQUIRE_MESSAGE(s.audit_ok, name << " at " << p);
        REQUIRE(s.euler_sum == f.euler_target);
      }
    }
  }

  TEST_CASE("configurations do not depend on the prime") {
    for (const auto& name : family_names()) {
      auto f = preset(name);
      auto primes = good_primes(f, 5, 60);
      auto first = scan(f, primes.front()).configuration();
      for (i64 p : primes) REQUIRE_MESSAGE(scan(f, p).configuration() == first, name << " at " << p);
    }
  }

  TEST_CASE("verdicts") {
    auto v = config_verdict(preset("g4_legendre"), {5, 13, 17});
    CHECK(v.ok);
    CHECK(v.measured == Config{"I4", "I4", "I4", "I4", "I4", "I4"});
    auto g82 = config_verdict(preset("g82"), {5, 7, 11});
    CHECK(g82.ok);
    CHECK(g82.measured == Config{"I8", "I8", "I2", "I2", "I2", "I2"});
    REQUIRE_FALSE(g82.notes.empty());
    CHECK(g82.notes.front().find("30") != std::string::npos);
    auto x = config_verdict(preset("x0_12"), {5, 7, 11});
    CHECK(x.measured == Config{"I12", "I4", "I3", "I3", "I1", "I1"});
    CHECK_FALSE(x.notes.empty());
    CHECK_THROWS_AS(config_verdict(preset("g62"), {5, 7}), Error);
    CHECK_THROWS_AS(config_verdict(preset("g62"), {5, 5, 7}), Error);
  }

  TEST_CASE("trace on the Neron-Severi lattice") {
    auto g4 = preset("g4_legendre");
    for (i64 p : good_primes(g4, 5, 100)) CHECK(ns_trace(g4, p) == (p % 4 == 1 ? 20 : 10));
    auto g62 = preset("g62");
    for (i64 p : good_primes(g62, 5, 100)) CHECK(ns_trace(g62, p) == 20);
  }

  TEST_CASE("stored decompositions match the fiber geometry") {
    for (const std::string name : {"g4_legendre", "g62", "g82", "g8_412"}) {
      auto f = preset(name);
      auto ns = ns_decomposition(name);
      REQUIRE(ns.has_value());
      CHECK(ns->rank() == 20);
      for (i64 p : good_primes(f, 5, 200)) REQUIRE_MESSAGE(ns_trace(f, p) == ns->predicted_trace(p), name << " " << p);
    }
    CHECK_FALSE(ns_decomposition("e1_4").has_value());
  }

  TEST_CASE("stored splits") {
    auto check = [](const std::string& name, int a, int b, int c, int d) {
      auto ns = *ns_decomposition(name);
      CHECK(ns.n_prime_plus() == a);
      CHECK(ns.n_second_plus() == b);
      CHECK(ns.n_prime_minus() == c);
      CHECK(ns.n_second_minus() == d);
    };
    check("g4_legendre", 12, 2, 3, 3);
    check("g62", 14, 0, 6, 0);
    check("g82", 13, 1, 6, 0);
    check("g8_412", 13, 1, 5, 1);
  }

  TEST_CASE("cycle split counts") {
    CHECK(cycle_split_counts(std::vector<int>{4, 4, 4, 4, 4, 4}) == std::pair<int, int>{14, 6});
    CHECK(cycle_split_counts(std::vector<int>{7, 7, 7, 1, 1, 1}) == std::pair<int, int>{11, 9});
    CHECK(cycle_split_counts(std::vector<int>{6, 6, 6, 2, 2, 2}) == std::pair<int, int>{14, 6});
    CHECK(cycle_split_counts(Config{"I8", "I8", "I2", "I2", "I2", "I2"}) == std::pair<int, int>{14, 6});
    CHECK_THROWS_AS(cycle_split_counts(Config{"I1*", "I4", "I1"}), Error);
    CHECK_THROWS_AS(cycle_split_counts(Config{"IV"}), Error);
    for (const std::string name : {"g4_legendre", "g62", "e1_7", "e1_8", "g82", "g8_412", "x0_12"}) {
      auto [plus, minus] = cycle_split_counts(configuration(name, 13));
      CHECK(plus + minus == 20);
    }
  }

  TEST_CASE("tau follows from counting points on the resolved chain") {
    const i64 p = 5;
    for (int n = 2; n <= 8; ++n)
      for (bool split : {true, false}) {
        // A nodal Weierstrass cubic has p points when split and p + 2 when not.
        i64 weierstrass = split ? p : p + 2;
        REQUIRE_MESSAGE(resolved_chain_points(n, split, p) == weierstrass + p * tau_rule(n, split),
                        "n=" << n << " split=" << split);
      }
  }

  TEST_CASE("split flag matches the nodal fiber count") {
    for (const std::string name : {"g4_legendre", "g62", "g82", "g8_412", "e1_8"}) {
      auto f = preset(name);
      for (i64 p : good_primes(f, 5, 40)) {
        FiberModel m(f, p);
        auto chi = quadratic_character_table(p);
        for (const auto& place : m.candidate_places()) {
          auto lf = m.local(place);
          if (!lf.fiber || place.degree() != 1) continue;
          REQUIRE(lf.fiber->kind == FiberKind::I);
          i64 count = short_curve_count(-27 * lf.r4, -54 * lf.r6, p, chi);
          REQUIRE(count == (lf.fiber->split ? p : p + 2));
          REQUIRE(lf.fiber->tau == tau_rule(lf.fiber->n, lf.fiber->split));
        }
      }
    }
  }

  TEST_CASE("additive fibers") {
    auto s = scan(preset("e1_4"), 13);
    auto it = std::find_if(s.fibers.begin(), s.fibers.end(), [](const auto& fr) { return fr.kind == FiberKind::Istar; });
    REQUIRE(it != s.fibers.end());
    CHECK(it->n == 1);
    CHECK(it->euler == 7);
  }
}
