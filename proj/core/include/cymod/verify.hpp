#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cymod/arith.hpp"

namespace cymod {

struct VerificationRecord {
  std::string suite;
  std::string target;
  std::vector<std::pair<std::string, std::string>> params;
  bool ok = false;
  std::string details;  // first counterexample, or a note
};

struct SuiteReport {
  int criterion = 0;
  std::string suite;
  double seconds = 0;
  double budget_seconds = 0;  // 0 = no budget
  std::vector<VerificationRecord> records;

  bool records_ok() const;
  bool within_budget() const { return budget_seconds <= 0 || seconds <= budget_seconds; }
  bool ok() const { return records_ok() && within_budget(); }
};

struct VerifyOptions {
  i64 pmax = 97;
  i64 form_prec = 500;
  unsigned threads = 0;
  std::uint64_t seed = 20240611;
};

SuiteReport group_suite(const VerifyOptions& o = {});
SuiteReport form_suite(const VerifyOptions& o = {});
SuiteReport fiber_suite(const VerifyOptions& o = {});
SuiteReport modularity_suite(const VerifyOptions& o = {});
SuiteReport cycle_suite(const VerifyOptions& o = {});
SuiteReport lseries_suite(const VerifyOptions& o = {});
SuiteReport oracle_suite(const VerifyOptions& o = {});

std::vector<SuiteReport> verify_all(const VerifyOptions& o = {});

}  // namespace cymod
