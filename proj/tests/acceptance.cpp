// acceptance.cpp — the end-to-end gate: runs every verification suite at its
// pinned tolerance and prints one line per criterion. Exit code 0 iff all
// criteria pass (including the runtime budgets).
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qorbit/suites.hpp"

using namespace qorbit;

namespace {

struct Criterion {
  int number;
  std::string title;
  std::function<std::vector<CheckResult>(const SuiteOptions&)> run;
  double time_budget_seconds;  // 0 = no budget
};

}  // namespace

int main() {
  SuiteOptions opt;
  opt.seed = 7;

  const std::vector<Criterion> criteria = {
      {1, "star-commutator realizes the bracket on both charts", suite_commutator, 1.0},
      {2, "star associativity and exact series termination", suite_associativity, 10.0},
      {3, "collapsed P^k shapes on p-linear symbols", suite_lemma_shapes, 0.0},
      {4, "Fourier series route matches the quantized closed form", suite_quantized_numeric,
       5.0},
      {5, "operator commutators and the relation kernel", suite_operator_homomorphism, 0.0},
      {6, "flow exponential matches the closed-form representation",
       suite_representation_match, 60.0},
      {7, "unitarity, group laws, Lebesgue negative control", suite_unitarity_group_law, 0.0},
      {8, "Poisson-rank stratification classifies every sample", suite_stratification, 0.0},
      {9, "PBW confluence and filtration", suite_pbw, 0.0},
      {10, "Pukanszky condition on the catalog polarizations", suite_pukanszky, 0.0},
  };

  bool all_pass = true;
  for (const auto& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<CheckResult> results;
    std::string error;
    try {
      results = criterion.run(opt);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    bool pass = error.empty() && !results.empty();
    double worst_margin = 0.0;  // metric / tolerance, for the summary
    for (const auto& r : results) {
      pass = pass && r.pass;
      if (r.tolerance > 0.0) worst_margin = std::max(worst_margin, r.metric / r.tolerance);
    }
    const bool in_budget =
        criterion.time_budget_seconds == 0.0 || seconds < criterion.time_budget_seconds;
    pass = pass && in_budget;
    all_pass = all_pass && pass;

    std::string budget;
    if (criterion.time_budget_seconds > 0.0)
      budget = ", budget " + std::to_string(static_cast<int>(criterion.time_budget_seconds)) +
               " s";
    std::printf("[%s] criterion %2d: %s (worst metric/tol %.2e, %.2f s%s)\n",
                pass ? "PASS" : "FAIL", criterion.number, criterion.title.c_str(),
                worst_margin, seconds, budget.c_str());
    if (!error.empty()) std::printf("       error: %s\n", error.c_str());
    for (const auto& r : results)
      if (!r.pass)
        std::printf("       failed: %s metric %.3e tolerance %.3e (%s)\n", r.name.c_str(),
                    r.metric, r.tolerance, r.detail.c_str());
  }

  std::printf("%s\n", all_pass ? "ACCEPTANCE: all criteria pass" : "ACCEPTANCE: FAILURES");
  return all_pass ? 0 : 1;
}
