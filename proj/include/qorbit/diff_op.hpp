// diff_op.hpp — differential operators with exponential-polynomial
// coefficients over position variables, and the conversion of left
// star-multiplication by a p-linear Hamiltonian symbol into such an operator
// through the partial Fourier transform.
#pragma once

#include <string>
#include <vector>

#include "qorbit/chart.hpp"
#include "qorbit/symbol.hpp"

namespace qorbit {

class DiffOperator {
 public:
  struct Term {
    ExpPolySymbol coeff;      // over the operator's position variables
    std::vector<int> orders;  // derivative multi-index aligned with pos_vars
  };

  DiffOperator() = default;
  explicit DiffOperator(VariableSpace space);
  DiffOperator(VariableSpace space, std::vector<Term> terms);

  static DiffOperator zero(VariableSpace space) { return DiffOperator(std::move(space)); }
  static DiffOperator identity(VariableSpace space);
  /// coeff * d^orders, orders given per variable name.
  static DiffOperator monomial(VariableSpace space, const ExpPolySymbol& coeff,
                               const std::map<std::string, int>& orders);

  const VariableSpace& space() const { return space_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int order() const;  // max total derivative order

  DiffOperator scaled(Complex c) const;
  std::string format() const;

  friend DiffOperator operator+(const DiffOperator& a, const DiffOperator& b);
  friend DiffOperator operator-(const DiffOperator& a, const DiffOperator& b);

 private:
  void canonicalize();

  VariableSpace space_;  // p_vars empty; pos_vars only
  std::vector<Term> terms_;
};

/// Leibniz-expanded composition (a then b applied first: (compose(a,b))f = a(b f)).
DiffOperator compose(const DiffOperator& a, const DiffOperator& b);
DiffOperator commutator(const DiffOperator& a, const DiffOperator& b);

/// Exact action on a symbol over the same position variables.
ExpPolySymbol apply_symbolic(const DiffOperator& op, const ExpPolySymbol& u);

/// Max |coefficient| difference between canonical forms; 0 iff equal.
double max_coeff_deviation(const DiffOperator& a, const DiffOperator& b);

/// F_p o (i Zt *) o F_p^{-1} for Zt = sum_i a_i p_i + a_0(q) with constant a_i:
///   sum_i a_i (eps_i/2 d_{q_i} - d_{x_i}) + i * a_0(q_i -> q_i - eps_i x_i / 2)
/// where eps_i = lambda(p_i, q_i) is the chart's pair sign. Throws
/// UnsupportedError if Zt has p-degree > 1 or non-constant p-coefficients.
DiffOperator quantize_symbol(const ExpPolySymbol& zt, const OrbitChart& chart);

/// Change of variables s_i = q_i - eps_i x_i/2, t_i = q_i + eps_i x_i/2
/// applied to an operator over the chart's (x, q) variables. Exact chain rule;
/// quantized Hamiltonians lose their t-dependence.
DiffOperator change_vars_shear(const DiffOperator& op, const OrbitChart& chart);
/// The inverse shear, mapping an operator over (s, t) back to (x, q).
DiffOperator change_vars_shear_inverse(const DiffOperator& op, const OrbitChart& chart);

}  // namespace qorbit
