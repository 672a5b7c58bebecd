#include <cstdio>
#include <functional>
#include <string>

#include "cymod/error.hpp"
#include "cymod/verify.hpp"

using namespace cymod;

int main() {
  const std::vector<std::function<SuiteReport(const VerifyOptions&)>> suites{
      group_suite, form_suite, fiber_suite, modularity_suite, cycle_suite, lseries_suite, oracle_suite};
  VerifyOptions opts;
  int failures = 0;
  for (size_t i = 0; i < suites.size(); ++i) {
    SuiteReport r;
    std::string detail;
    try {
      r = suites[i](opts);
    } catch (const std::exception& e) {
      r.criterion = static_cast<int>(i + 1);
      detail = std::string("exception: ") + e.what();
    }
    bool ok = detail.empty() && r.ok();
    if (detail.empty() && !r.records_ok()) {
      for (const auto& rec : r.records)
        if (!rec.ok) {
          detail = rec.target;
          for (const auto& [k, v] : rec.params) detail += " " + k + "=" + v;
          detail += ": " + rec.details;
          break;
        }
    } else if (detail.empty() && !r.within_budget()) {
      detail = "over runtime budget";
    }
    char budget[32] = "no budget";
    if (r.budget_seconds > 0) std::snprintf(budget, sizeof budget, "budget %.0fs", r.budget_seconds);
    std::printf("%s criterion %d: %s (%.3fs, %s, %zu records)\n", ok ? "PASS" : "FAIL", r.criterion, r.suite.c_str(),
                r.seconds, budget, r.records.size());
    if (!ok) {
      std::printf("  %s\n", detail.c_str());
      ++failures;
    }
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(suites.size()) - failures, suites.size());
  return failures == 0 ? 0 : 1;
}
