#include "qorbit/flow.hpp"

#include <algorithm>
#include <cmath>

namespace qorbit {

Complex expm1_over(Complex z, double t) {
  const Complex zt = z * t;
  if (std::abs(zt) < 1e-6) return t * (1.0 + zt / 2.0 + zt * zt / 6.0);
  return (std::exp(zt) - 1.0) / z;
}

GridFunction CharacteristicFlow::apply(const GridFunction& f) const {
  GridFunction out = f;
  for (std::size_t d = 0; d < space.pos_vars.size(); ++d)
    if (shift[d] != 0.0) out = bandlimited_shift(out, space.pos_vars[d], shift[d]);
  if (!phase.is_zero()) {
    std::vector<int> var_axis;
    for (const auto& v : space.pos_vars) var_axis.push_back(out.axis_index(v));
    const auto& terms = phase.terms();
    out.multiply_pointwise([&](const std::vector<double>& pt) {
      Complex ph(0.0);
      for (const auto& t : terms) {
        Complex arg(0.0);
        for (std::size_t d = 0; d < var_axis.size(); ++d)
          arg += t.q_linform[d] * pt[var_axis[d]];
        ph += t.coeff * std::exp(arg);
      }
      return std::exp(Complex(0.0, 1.0) * ph);
    });
  }
  return out;
}

CharacteristicFlow characteristic_exp(const DiffOperator& op, double t) {
  const auto& vars = op.space().pos_vars;
  std::vector<double> field(vars.size(), 0.0);
  ExpPolySymbol c0 = ExpPolySymbol::zero(op.space());

  for (const auto& term : op.terms()) {
    int total = 0;
    for (int o : term.orders) total += o;
    if (total > 1)
      throw UnsupportedError("characteristic flow needs a first-order operator");
    if (total == 1) {
      const auto& ts = term.coeff.terms();
      const bool constant = ts.size() == 1 && ts[0].p_degree() == 0 &&
                            std::all_of(ts[0].q_linform.begin(), ts[0].q_linform.end(),
                                        [](Complex a) { return a == Complex(0.0); });
      if (!constant || std::abs(ts[0].coeff.imag()) > 1e-12)
        throw UnsupportedError("characteristic flow needs a constant real vector field");
      for (std::size_t d = 0; d < vars.size(); ++d)
        if (term.orders[d] == 1) field[d] += ts[0].coeff.real();
    } else {
      c0 = c0 + term.coeff;
    }
  }

  CharacteristicFlow flow;
  flow.space = op.space();
  flow.shift.resize(vars.size());
  for (std::size_t d = 0; d < vars.size(); ++d) flow.shift[d] = field[d] * t;

  // op = v.d + i a0 with a0 = -i c0; Phi = int_0^t a0(s + v tau) dtau.
  std::vector<ExpPolyTerm> phase_terms;
  for (const auto& term : c0.terms()) {
    Complex lv(0.0);
    for (std::size_t d = 0; d < vars.size(); ++d) lv += term.q_linform[d] * field[d];
    ExpPolyTerm pt = term;
    pt.coeff = Complex(0.0, -1.0) * term.coeff * expm1_over(lv, t);
    phase_terms.push_back(std::move(pt));
  }
  flow.phase = ExpPolySymbol(op.space(), std::move(phase_terms));
  return flow;
}

GridFunction ode_exponential(const DiffOperator& op, const GridFunction& f0, double t,
                             int steps) {
  if (steps < 1) throw PreconditionError("steps must be >= 1");
  const double dt = t / steps;
  GridFunction u = f0;
  for (int n = 0; n < steps; ++n) {
    GridFunction k1 = apply_numeric(op, u);
    GridFunction u2 = u;
    {
      GridFunction half = k1;
      half *= dt / 2;
      u2 += half;
    }
    GridFunction k2 = apply_numeric(op, u2);
    GridFunction u3 = u;
    {
      GridFunction half = k2;
      half *= dt / 2;
      u3 += half;
    }
    GridFunction k3 = apply_numeric(op, u3);
    GridFunction u4 = u;
    {
      GridFunction full = k3;
      full *= dt;
      u4 += full;
    }
    GridFunction k4 = apply_numeric(op, u4);

    k2 *= 2.0;
    k3 *= 2.0;
    k1 += k2;
    k1 += k3;
    k1 += k4;
    k1 *= dt / 6.0;
    u += k1;
  }
  return u;
}

DiffOperator restrict_vars(const DiffOperator& op, const std::vector<std::string>& keep) {
  const auto& vars = op.space().pos_vars;
  std::vector<int> keep_index(vars.size(), -1);
  VariableSpace new_space;
  for (const auto& name : keep) {
    const int i = op.space().pos_index(name);
    if (i < 0) throw DimensionMismatchError("unknown variable " + name);
    keep_index[i] = static_cast<int>(new_space.pos_vars.size());
    new_space.pos_vars.push_back(name);
  }

  std::vector<DiffOperator::Term> out;
  for (const auto& term : op.terms()) {
    DiffOperator::Term nt;
    nt.orders.assign(new_space.pos_vars.size(), 0);
    for (std::size_t d = 0; d < vars.size(); ++d) {
      if (keep_index[d] >= 0)
        nt.orders[keep_index[d]] = term.orders[d];
      else if (term.orders[d] != 0)
        throw UnsupportedError("operator differentiates dropped variable " + vars[d]);
    }
    std::vector<ExpPolyTerm> coeff_terms;
    for (const auto& ct : term.coeff.terms()) {
      ExpPolyTerm moved;
      moved.coeff = ct.coeff;
      moved.q_linform.assign(new_space.pos_vars.size(), Complex(0.0));
      for (std::size_t d = 0; d < vars.size(); ++d) {
        if (keep_index[d] >= 0)
          moved.q_linform[keep_index[d]] = ct.q_linform[d];
        else if (ct.q_linform[d] != Complex(0.0))
          throw UnsupportedError("coefficient depends on dropped variable " + vars[d]);
      }
      coeff_terms.push_back(std::move(moved));
    }
    nt.coeff = ExpPolySymbol(new_space, std::move(coeff_terms));
    out.push_back(std::move(nt));
  }
  return DiffOperator(new_space, std::move(out));
}

}  // namespace qorbit
