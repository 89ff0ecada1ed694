// chart.hpp — catalog of Darboux charts on the example coadjoint orbits: the
// chart's constant Poisson tensor, the linear map from algebra elements to
// their Hamiltonian symbols (linear in p, exponential in q), and the
// polarization data used by the Pukanszky check and the PBW block order.
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "qorbit/algebra.hpp"
#include "qorbit/symbol.hpp"

namespace qorbit {

class OrbitChart {
 public:
  LieAlgebra::Ptr algebra;
  std::string orbit_id;            // "affR+", "affR-", "affC:<k>"
  VariableSpace phase_space;       // p_vars + q_vars (pos)
  Eigen::MatrixXd lambda;          // Poisson tensor over [p..., q...] indices
  std::vector<ExpPolySymbol> basis_symbols;  // Hamiltonian symbol per basis element
  std::vector<std::string> dual_names;       // Fourier-dual name per p-variable
  int sheet = 0;                   // affC sheet index; bounds the q2 strip only

  int pairs() const { return static_cast<int>(phase_space.p_vars.size()); }
  /// Sign eps_i = lambda(p_i, q_i) of the i-th canonical pair.
  double pair_sign(int i) const { return pair_signs_[i]; }
  /// Numeric q2 bounds of the sheet's strip, (2k pi, 2(k+1) pi); metadata
  /// only, the symbolic layer never clips.
  std::pair<double, double> sheet_strip() const;

  /// Z -> Z~ (linear in the element's coordinates).
  ExpPolySymbol hamiltonian(const AlgebraElement& z) const;

  /// Position-variable space of quantized operators: [x..., q...].
  VariableSpace operator_space() const;
  /// Position-variable space after the shear s = q - eps*x/2, t = q + eps*x/2.
  VariableSpace sheared_space() const;
  std::string shear_s_name(int i) const;
  std::string shear_t_name(int i) const;

  /// Orbit membership predicate for functionals of this chart's algebra.
  bool contains(const CoadjointFunctional& f) const;

  void finalize();  // derives pair partners/signs; validates lambda shape

 private:
  std::vector<double> pair_signs_;
};

OrbitChart chart_affR(int sign);   // +1 or -1
OrbitChart chart_affC(int sheet);
OrbitChart chart_by_id(const std::string& id);  // "affR+", "affR-", "affC:k"

struct PolarizationSpec {
  LieAlgebra::Ptr algebra;
  std::vector<AlgebraElement> h_basis;
  // Permutation of basis indices: p/h block, then h block, then pbar/h block.
  std::vector<int> block_order;
};

/// The catalog polarization attached to a chart; checks codim h = dim O / 2.
PolarizationSpec catalog_polarization(const OrbitChart& chart);

struct PukanszkyReport {
  int samples = 0;
  int failures = 0;
  std::vector<Eigen::VectorXd> failure_examples;
  bool pass() const { return failures == 0; }
};

/// Samples F + H over the annihilator h^perp and tests orbit membership.
/// Throws PreconditionError when F itself is not on the orbit.
PukanszkyReport pukanszky_check(const OrbitChart& chart, const PolarizationSpec& pol,
                                const CoadjointFunctional& f, int samples,
                                std::uint64_t seed, double range = 5.0);

}  // namespace qorbit
