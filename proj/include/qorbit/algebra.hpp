// algebra.hpp — finite-dimensional real Lie algebras given by structure
// constants, their elements and dual functionals, and the basic maps on them:
// bracket, ad, exp, coadjoint action, Poisson matrix.
#pragma once

#include <Eigen/Dense>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "qorbit/errors.hpp"

namespace qorbit {

/// Lie algebra over R with basis X_1..X_n and [X_i,X_j] = sum_k c[i][j][k] X_k.
/// The table is sparse; an (i,j) slot left empty is read through antisymmetry
/// from (j,i), but an explicitly stored slot is taken as-is, so malformed
/// tables are representable and check_jacobi can report them.
class LieAlgebra {
 public:
  using Ptr = std::shared_ptr<const LieAlgebra>;

  LieAlgebra(std::string name, std::vector<std::string> basis_labels);

  // Declares [X_i, X_j] += c * X_k (0-based).
  void set_bracket_term(int i, int j, int k, double c);

  const std::string& name() const { return name_; }
  int dim() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& basis_labels() const { return labels_; }
  int label_index(const std::string& label) const;  // throws ParseError if unknown

  // Structure constant c[i][j][k] with antisymmetry applied.
  double c(int i, int j, int k) const;
  // Coordinates of [X_i, X_j].
  Eigen::VectorXd bracket_vec(int i, int j) const;

  // JSON definition-file schema (1-based indices, only i<j entries).
  static std::shared_ptr<const LieAlgebra> from_json_text(const std::string& text);
  static std::shared_ptr<const LieAlgebra> from_json_file(const std::string& path);
  std::string to_json_text() const;

 private:
  std::string name_;
  std::vector<std::string> labels_;
  std::map<std::pair<int, int>, std::vector<std::pair<int, double>>> table_;
};

struct AlgebraElement {
  LieAlgebra::Ptr algebra;
  Eigen::VectorXd coeffs;

  AlgebraElement(LieAlgebra::Ptr alg, Eigen::VectorXd c);
  static AlgebraElement basis(LieAlgebra::Ptr alg, int i);
  static AlgebraElement zero(LieAlgebra::Ptr alg);
};

struct CoadjointFunctional {
  LieAlgebra::Ptr algebra;
  Eigen::VectorXd coords;  // coords[i] = <F, X_i>

  CoadjointFunctional(LieAlgebra::Ptr alg, Eigen::VectorXd c);
};

/// Report from validating a structure-constant table. Empty lists iff valid.
struct ValidationReport {
  struct AntisymmetryViolation {
    int i, j, k;
    double value;  // c[i][j][k] + c[j][i][k]
  };
  struct JacobiViolation {
    int i, j, k, l;
    double value;  // cyclic sum
  };
  std::vector<AntisymmetryViolation> antisymmetry;
  std::vector<JacobiViolation> jacobi;
  bool valid() const { return antisymmetry.empty() && jacobi.empty(); }
};

AlgebraElement bracket(const AlgebraElement& a, const AlgebraElement& b);

ValidationReport check_jacobi(const LieAlgebra& alg, double tol = 1e-12);

/// Matrix of ad_U = [U, .]; column j holds the coordinates of [U, X_j].
Eigen::MatrixXd ad_matrix(const AlgebraElement& u);

/// exp(M) by scaling-and-squaring with a truncated power series.
Eigen::MatrixXd matrix_exp(const Eigen::MatrixXd& m, int series_order = 18);

/// K(exp U)F = F o exp(-ad_U).
CoadjointFunctional coadjoint_apply(const AlgebraElement& u, const CoadjointFunctional& f);

/// Lambda(F)_{ij} = <F, [X_i, X_j]>.
Eigen::MatrixXd poisson_matrix(const CoadjointFunctional& f);

/// Numerical rank via singular values > rel_threshold * largest.
int matrix_rank(const Eigen::MatrixXd& m, double rel_threshold = 1e-9);

// Bundled catalog algebras (also shipped as data/aff_r.json, data/aff_c.json).
extern const char* const kAffRealJson;
extern const char* const kAffComplexJson;
LieAlgebra::Ptr aff_real();
LieAlgebra::Ptr aff_complex();

}  // namespace qorbit
