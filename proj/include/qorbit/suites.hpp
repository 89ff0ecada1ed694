// suites.hpp — the verification suites: seeded, deterministic batches of
// checks over the catalog charts, shared by the CLI `verify` command and the
// acceptance runner. Each check carries its measured metric and the
// threshold it was held to.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qorbit {

/// Per-test record attached by the representation suites.
struct RepTestRecord {
  std::string group_element;
  double sup_error = 0.0;
  double l2_error = 0.0;
  double norm_drift = 0.0;
  double boundary_mass = 0.0;
};

struct CheckResult {
  int criterion = 0;      // acceptance criterion this check belongs to (1..10)
  std::string name;
  bool pass = false;
  double metric = 0.0;    // measured value
  double tolerance = 0.0; // threshold compared against
  std::string detail;
  std::vector<RepTestRecord> tests;  // filled by the representation suites
};

struct SuiteOptions {
  std::uint64_t seed = 7;
  double tolerance_override = 0.0;  // > 0 replaces every threshold
  std::string chart_filter;         // "" = all catalog charts
  double grid_min = -8.0;
  double grid_max = 8.0;
  int grid_count = 4096;
  int commutator_trials = 100;
  int assoc_triples = 200;
  int rep_elements = 50;
  int strat_samples = 10000;
  int puk_samples = 1000;
  // when set, the representation suite serializes its first comparison pair
  // (input, flow route, closed form) as JSON + binary sidecars
  std::string dump_grid_path;
  bool dump_single_precision = false;
};

// criterion 1: star-commutator vs bracket, basis pairs + seeded random pairs
std::vector<CheckResult> suite_commutator(const SuiteOptions& opt);
// criterion 2: star associativity + series termination on random triples
std::vector<CheckResult> suite_associativity(const SuiteOptions& opt);
// criterion 3: the collapsed P^k shapes on p-linear symbols, both charts
std::vector<CheckResult> suite_lemma_shapes(const SuiteOptions& opt);
// criterion 4: Fourier series route vs quantized closed form on grids
std::vector<CheckResult> suite_quantized_numeric(const SuiteOptions& opt);
// criterion 5: operator commutators realize the bracket; relation ideal -> 0
std::vector<CheckResult> suite_operator_homomorphism(const SuiteOptions& opt);
// criterion 6: flow exponential vs closed-form representation + ODE check
std::vector<CheckResult> suite_representation_match(const SuiteOptions& opt);
// criterion 7: unitarity, group laws, Lebesgue negative control
std::vector<CheckResult> suite_unitarity_group_law(const SuiteOptions& opt);
// criterion 8: Poisson-rank stratification with zero misclassifications
std::vector<CheckResult> suite_stratification(const SuiteOptions& opt);
// criterion 9: PBW confluence across randomized strategies + filtration
std::vector<CheckResult> suite_pbw(const SuiteOptions& opt);
// criterion 10: Pukanszky condition on the catalog polarizations
std::vector<CheckResult> suite_pukanszky(const SuiteOptions& opt);

/// Named suite for the CLI: commutator | pbw | operator | representation | all.
std::vector<CheckResult> run_suite(const std::string& name, const SuiteOptions& opt);

}  // namespace qorbit
