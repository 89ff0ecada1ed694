// enveloping.hpp — formal words in the Lie-algebra basis with complex
// coefficients, rewriting into Poincare-Birkhoff-Witt normal form relative to
// a total order on the basis (the polarization's block order), and the
// algebra homomorphism onto quantized differential operators.
#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "qorbit/algebra.hpp"
#include "qorbit/chart.hpp"
#include "qorbit/diff_op.hpp"
#include "qorbit/symbol.hpp"

namespace qorbit {

using UEWord = std::vector<int>;  // basis indices; empty = unit

class UEElement {
 public:
  explicit UEElement(LieAlgebra::Ptr algebra) : algebra_(std::move(algebra)) {}
  UEElement(LieAlgebra::Ptr algebra, std::map<UEWord, Complex> terms);

  static UEElement unit(LieAlgebra::Ptr algebra, Complex c = Complex(1.0, 0.0));
  static UEElement word(LieAlgebra::Ptr algebra, UEWord w, Complex c = Complex(1.0, 0.0));
  /// Degree-1 element from algebra coordinates.
  static UEElement from_element(const AlgebraElement& z);

  const LieAlgebra::Ptr& algebra() const { return algebra_; }
  const std::map<UEWord, Complex>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  UEElement scaled(Complex c) const;
  std::string format() const;  // deterministic; used for byte-identity checks

  friend UEElement operator+(const UEElement& a, const UEElement& b);
  friend UEElement operator-(const UEElement& a, const UEElement& b);

 private:
  void prune();
  LieAlgebra::Ptr algebra_;
  std::map<UEWord, Complex> terms_;
};

/// Word concatenation extended bilinearly; no normalization.
UEElement ue_mul(const UEElement& a, const UEElement& b);

/// Rewrites every word to be nondecreasing in `order` using
/// X_j X_i -> X_i X_j + [X_j, X_i]. `order` lists basis indices from
/// smallest to largest. The default strategy reduces the leftmost inversion;
/// seed-driven strategies pick random inversions (confluence checks).
UEElement pbw_normal_form(const UEElement& e, const std::vector<int>& order);
UEElement pbw_normal_form_randomized(const UEElement& e, const std::vector<int>& order,
                                     std::uint64_t seed);

/// Word X_{i1}..X_{ik} -> compose of the letters' quantized operators,
/// extended linearly. Constant on PBW classes (the relation ideal maps to 0).
DiffOperator quantize_ue(const UEElement& e, const OrbitChart& chart);

double max_coeff_deviation(const UEElement& a, const UEElement& b);

}  // namespace qorbit
