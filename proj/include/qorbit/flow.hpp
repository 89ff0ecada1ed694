// flow.hpp — exponentiation of first-order transport operators with constant
// vector fields: closed-form characteristic flows (displacement plus an
// integrated phase symbol) and a spectral method-of-lines integrator used as
// the independent cross-check.
#pragma once

#include "qorbit/diff_op.hpp"
#include "qorbit/fourier.hpp"
#include "qorbit/grid.hpp"

namespace qorbit {

/// (e^{zt} - 1)/z, switching to the 3-term Taylor value for |zt| < 1e-6.
Complex expm1_over(Complex z, double t);

struct CharacteristicFlow {
  VariableSpace space;
  std::vector<double> shift;  // per variable: vector field * t
  ExpPolySymbol phase;        // integral of the zero-order part along characteristics

  /// f -> e^{i phase(s)} f(s + shift), shift by band-limited interpolation.
  GridFunction apply(const GridFunction& f) const;
};

/// Closed-form flow of d_t U = op U at time t for op = v.d + i a0(s) with
/// constant real vector field v and exponential-class a0. Each exponential
/// term c e^{<l,s>} integrates to c (e^{<l,v>t}-1)/<l,v> e^{<l,s>}.
CharacteristicFlow characteristic_exp(const DiffOperator& op, double t);

/// Spectral-in-space, classical RK4-in-time integrator for d_t u = op u.
GridFunction ode_exponential(const DiffOperator& op, const GridFunction& f0, double t,
                             int steps);

/// Drops unused variables from an operator (all dropped variables must have
/// zero derivative orders and zero linear-form entries in every term).
DiffOperator restrict_vars(const DiffOperator& op, const std::vector<std::string>& keep);

}  // namespace qorbit
