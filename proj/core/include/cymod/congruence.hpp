#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cymod/arith.hpp"

namespace cymod {

// Entries are reduced to [0, N) before the predicate is called.
using MembershipPredicate = std::function<bool(i64 a, i64 b, i64 c, i64 d)>;

struct CongruenceGroupSpec {
  std::string name;
  std::string label;
  i64 modulus = 1;
  MembershipPredicate member;
  // Close the predicate's set under -Id (a PSL group given by its +-preimage).
  bool plus_minus = true;
  std::vector<int> expected_widths;  // empty when there is no reference data
};

struct CuspData {
  i64 a = 1, c = 0;  // representative (a : c) in P^1(Z/N)
  int width = 1;
};

struct GroupAnalysis {
  std::string name;
  i64 modulus = 1;
  int order = 0;  // size of the subgroup of SL(2, Z/N)
  int index = 0;  // in PSL(2, Z)
  int genus = 0;
  int e2 = 0, e3 = 0;
  std::vector<CuspData> cusps;
  bool torsion_free = false;
  bool contains_minus_id = false;
  bool trace_minus_two = false;

  std::vector<int> widths() const;  // sorted descending
};

GroupAnalysis analyze(const CongruenceGroupSpec& g);

int index_in_modular_group(const CongruenceGroupSpec& g);
std::vector<CuspData> cusps_and_widths(const CongruenceGroupSpec& g);
bool is_torsion_free(const CongruenceGroupSpec& g);
bool has_trace_minus_two(const CongruenceGroupSpec& g);
bool contains_minus_id(const CongruenceGroupSpec& g);
int genus(const CongruenceGroupSpec& g);

struct LiftCensus {
  int lifts = 0;             // subgroups of SL(2,Z/N) without -Id mapping onto the group
  int trace_minus_two_free = 0;
};
LiftCensus enumerate_lifts(const CongruenceGroupSpec& g);

// True iff the +-closures of the two groups coincide.
bool same_psl_image(const CongruenceGroupSpec& a, const CongruenceGroupSpec& b);

std::vector<CongruenceGroupSpec> index24_groups();
std::vector<CongruenceGroupSpec> chosen_lifts();  // same order as index24_groups()
CongruenceGroupSpec preset_group(const std::string& name);
std::vector<std::string> preset_group_names();

}  // namespace cymod
