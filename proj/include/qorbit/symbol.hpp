// symbol.hpp — the exponential-polynomial symbol class: finite sums of
//   coeff * (monomial in p-variables) * exp(complex-linear form in position
//   variables). Closed under +, *, partial derivatives and the shifts used
//   by operator quantization, which is what makes the star-product series
//   terminate and the quantized operators expressible in one class.
#pragma once

#include <complex>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qorbit/errors.hpp"

namespace qorbit {

using Complex = std::complex<double>;

/// Ordered variable lists. p-variables carry polynomial exponents; position
/// variables (q's, Fourier duals x's, sheared s/t's) carry linear-form
/// coefficients inside exponentials.
struct VariableSpace {
  std::vector<std::string> p_vars;
  std::vector<std::string> pos_vars;

  bool operator==(const VariableSpace&) const = default;
  int p_index(std::string_view name) const;    // -1 if absent
  int pos_index(std::string_view name) const;  // -1 if absent
  bool has(std::string_view name) const { return p_index(name) >= 0 || pos_index(name) >= 0; }
};

struct ExpPolyTerm {
  Complex coeff{0.0, 0.0};
  std::vector<int> p_exps;        // aligned with space.p_vars
  std::vector<Complex> q_linform; // aligned with space.pos_vars

  int p_degree() const;
};

class ExpPolySymbol {
 public:
  ExpPolySymbol() = default;
  explicit ExpPolySymbol(VariableSpace space) : space_(std::move(space)) {}
  ExpPolySymbol(VariableSpace space, std::vector<ExpPolyTerm> terms);

  static ExpPolySymbol zero(VariableSpace space) { return ExpPolySymbol(std::move(space)); }
  static ExpPolySymbol constant(VariableSpace space, Complex c);
  /// The variable `name` itself; p-variable as a degree-1 monomial, position
  /// variable is not in the class (throws UnsupportedError).
  static ExpPolySymbol p_variable(VariableSpace space, std::string_view name);
  /// exp(sum of linform[name] * name) over position variables.
  static ExpPolySymbol exponential(VariableSpace space,
                                   const std::map<std::string, Complex>& linform,
                                   Complex coeff = Complex(1.0, 0.0));

  const VariableSpace& space() const { return space_; }
  const std::vector<ExpPolyTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int p_degree() const;  // max total p-degree over terms; 0 for the zero symbol

  ExpPolySymbol scaled(Complex c) const;
  ExpPolySymbol deriv(std::string_view var) const;
  Complex eval(const std::map<std::string, Complex>& point) const;

  /// Substitution var -> var + shift, where shift is a linear form over the
  /// other position variables plus an optional constant. Every term's
  /// exponent a on `var` adds a*shift into its linear form (and a*const into
  /// a coefficient rescale); the class is preserved.
  ExpPolySymbol shifted(std::string_view var, const std::map<std::string, Complex>& shift,
                        Complex const_shift = Complex(0.0, 0.0)) const;

  std::string format() const;

  friend ExpPolySymbol operator+(const ExpPolySymbol& a, const ExpPolySymbol& b);
  friend ExpPolySymbol operator-(const ExpPolySymbol& a, const ExpPolySymbol& b);
  friend ExpPolySymbol operator*(const ExpPolySymbol& a, const ExpPolySymbol& b);

 private:
  void canonicalize();

  VariableSpace space_;
  std::vector<ExpPolyTerm> terms_;
};

/// Max |coefficient| of a - b after canonical merge; 0 iff symbolically equal.
double max_coeff_deviation(const ExpPolySymbol& a, const ExpPolySymbol& b);

/// Largest |coefficient| over the terms (0 for the zero symbol).
double max_abs_coeff(const ExpPolySymbol& s);

std::string format_complex(Complex c);

}  // namespace qorbit
