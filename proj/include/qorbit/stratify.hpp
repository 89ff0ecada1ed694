// stratify.hpp — sampling the dual space and binning points by the rank of
// the Poisson matrix (= dimension of the coadjoint orbit through the point).
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qorbit/algebra.hpp"

namespace qorbit {

struct SamplerSpec {
  enum class Kind { UniformBox, Gaussian };
  Kind kind = Kind::UniformBox;
  double lo = -1.0, hi = 1.0;  // UniformBox bounds per coordinate
  double sigma = 1.0;          // Gaussian std-dev per coordinate

  static SamplerSpec uniform(double lo, double hi);
  static SamplerSpec gaussian(double sigma);
  static SamplerSpec parse(const std::string& text);  // "uniform:-1:1" | "gaussian:1.5"
};

struct StratificationReport {
  std::string algebra;
  std::uint64_t seed = 0;
  int samples = 0;
  double rank_threshold = 1e-9;
  std::map<int, int> rank_histogram;
  std::map<int, std::vector<Eigen::VectorXd>> examples;  // up to a few per rank
  std::string to_json_text() const;
};

/// Draws `count` functionals with per-sample derived seeds and bins them by
/// Poisson rank. Ranks of antisymmetric matrices are even; asserted here.
StratificationReport stratify(const LieAlgebra::Ptr& alg, const SamplerSpec& sampler,
                              int count, std::uint64_t seed, int examples_per_rank = 3);

/// Single-point classification used by the report and by tests.
int poisson_rank_at(const LieAlgebra::Ptr& alg, const Eigen::VectorXd& coords,
                    double rel_threshold = 1e-9);

}  // namespace qorbit
