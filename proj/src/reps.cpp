#include "qorbit/reps.hpp"

#include <cmath>
#include <numbers>

#include "qorbit/chart.hpp"
#include "qorbit/diff_op.hpp"

namespace qorbit {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// |f|^2 fraction inside `shift` of the edge a translation pushes across.
double exiting_mass_fraction(const GridFunction& f, int axis, double shift) {
  if (shift == 0.0) return 0.0;
  const Axis& a = f.axes()[axis];
  const int band = std::min(a.count, static_cast<int>(std::ceil(std::abs(shift) / a.step())));
  const int na = static_cast<int>(f.axes().size());
  std::vector<int> idx(na, 0);
  double total = 0.0, exiting = 0.0;
  for (std::size_t flat = 0; flat < f.values().size(); ++flat) {
    const double m = std::norm(f.values()[flat]);
    total += m;
    if (shift > 0 ? idx[axis] >= a.count - band : idx[axis] < band) exiting += m;
    for (int d = na - 1; d >= 0; --d) {
      if (++idx[d] < f.axes()[d].count) break;
      idx[d] = 0;
    }
  }
  return total == 0.0 ? 0.0 : exiting / total;
}

}  // namespace

GroupElementAffR affr_mul(const GroupElementAffR& g1, const GroupElementAffR& g2) {
  return {g1.a * g2.a, g1.a * g2.b + g1.b};
}

GroupElementAffR affr_exp(double alpha, double beta) {
  Eigen::MatrixXd m(2, 2);
  m << alpha, beta, 0.0, 0.0;
  const Eigen::MatrixXd e = matrix_exp(m);
  return {e(0, 0), e(0, 1)};
}

GridFunction rep_affR(const GroupElementAffR& g, const GridFunction& f,
                      double* domain_exit_mass) {
  if (!(g.a > 0.0)) throw PreconditionError("group element needs a > 0");
  if (f.axes().size() != 1)
    throw DimensionMismatchError("the representation space is one-dimensional in s");
  const Axis& s = f.axes()[0];
  const double shift = std::log(g.a);
  if (domain_exit_mass != nullptr) *domain_exit_mass = exiting_mass_fraction(f, 0, shift);

  GridFunction out = shift != 0.0 ? bandlimited_shift(f, s.name, shift) : f;
  out.multiply_pointwise([&g](const std::vector<double>& pt) {
    return std::exp(Complex(0.0, g.b * std::exp(pt[0])));
  });
  return out;
}

ReprCompareReport compare_exp_vs_closed_form(const AlgebraElement& z, const GridFunction& f) {
  const OrbitChart chart = chart_affR(+1);
  if (z.algebra->to_json_text() != chart.algebra->to_json_text())
    throw DimensionMismatchError("element must come from the 2-dimensional catalog algebra");

  // flow route: shear the quantized operator, drop the spectator variable,
  // exponentiate along characteristics
  if (f.axes().size() != 1 || f.axes()[0].name != chart.shear_s_name(0))
    throw DimensionMismatchError("expected a grid over the single sheared variable 's'");
  const AlgebraElement zc(chart.algebra, z.coeffs);
  const DiffOperator sheared =
      change_vars_shear(quantize_symbol(chart.hamiltonian(zc), chart), chart);
  const DiffOperator op = restrict_vars(sheared, {chart.shear_s_name(0)});
  const GridFunction flow_result = characteristic_exp(op, 1.0).apply(f);

  // closed-form route through the matrix exponential
  const GroupElementAffR g = affr_exp(z.coeffs[0], z.coeffs[1]);
  const GridFunction closed_result = rep_affR(g, f);

  ReprCompareReport report;
  report.g = g;
  report.sup_error = sup_difference_interior(flow_result, closed_result);
  report.l2_error = l2_difference_interior(flow_result, closed_result);
  report.boundary_mass = f.boundary_mass_fraction();
  return report;
}

GroupElementAffC affc_mul(const GroupElementAffC& g1, const GroupElementAffC& g2) {
  return {g1.z + g2.z, g1.w + std::exp(g1.z) * g2.w};
}

GroupElementAffC affc_exp(Complex alpha, Complex beta) {
  return {alpha, beta * expm1_over(alpha, 1.0)};
}

GridFunction rep_affC(double theta, const GroupElementAffC& g, const GridFunction& f,
                      double* domain_exit_mass) {
  if (f.axes().size() != 2 || !f.axes()[1].periodic)
    throw DimensionMismatchError(
        "the representation space is a line axis times a periodic circle axis");
  const Axis& line = f.axes()[0];
  const Axis& circle = f.axes()[1];
  if (std::abs(circle.max - circle.min - kTwoPi) > 1e-12)
    throw DimensionMismatchError("circle axis must span exactly 2 pi");
  if (domain_exit_mass != nullptr)
    *domain_exit_mass = exiting_mass_fraction(f, 0, g.z.real());

  GridFunction out = f;
  if (g.z.real() != 0.0) out = bandlimited_shift(out, line.name, g.z.real());
  if (g.z.imag() != 0.0) out = bandlimited_shift(out, circle.name, g.z.imag());
  const double im_z = g.z.imag();
  const Complex w = g.w;
  out.multiply_pointwise([theta, im_z, w, &circle](const std::vector<double>& pt) {
    const Complex base_point = std::exp(Complex(pt[0], pt[1]));
    const double winding = std::floor((pt[1] - circle.min + im_z) / kTwoPi);
    const double phase = (w * base_point).real() + kTwoPi * theta * winding;
    return std::exp(Complex(0.0, phase));
  });
  return out;
}

double weighted_l2_norm(const GridFunction& f,
                        const std::function<double(const std::vector<double>&)>& density) {
  const auto& axes = f.axes();
  const int na = static_cast<int>(axes.size());
  std::vector<int> idx(na, 0);
  std::vector<double> pt(na);
  double sum = 0.0;
  for (std::size_t flat = 0; flat < f.values().size(); ++flat) {
    double w = 1.0;
    for (int d = 0; d < na; ++d) {
      pt[d] = axes[d].point(idx[d]);
      const double h = axes[d].step();
      w *= (!axes[d].periodic && (idx[d] == 0 || idx[d] == axes[d].count - 1)) ? h / 2 : h;
    }
    sum += w * density(pt) * std::norm(f.values()[flat]);
    for (int d = na - 1; d >= 0; --d) {
      if (++idx[d] < axes[d].count) break;
      idx[d] = 0;
    }
  }
  return std::sqrt(sum);
}

double norm_drift(const GridFunction& before, const GridFunction& after,
                  const std::function<double(const std::vector<double>&)>& density) {
  const double nb = weighted_l2_norm(before, density);
  const double na = weighted_l2_norm(after, density);
  return std::abs(na - nb) / nb;
}

double UnitarityReport::max_drift() const {
  double m = 0.0;
  for (double d : drifts) m = std::max(m, d);
  return m;
}

UnitarityReport unitarity_check(
    const std::function<GridFunction(const GridFunction&)>& action,
    const std::vector<GridFunction>& samples,
    const std::function<double(const std::vector<double>&)>& measure_density) {
  UnitarityReport report;
  for (const auto& f : samples) report.drifts.push_back(norm_drift(f, action(f), measure_density));
  return report;
}

double l2_difference_interior(const GridFunction& a, const GridFunction& b) {
  if (a.axes() != b.axes()) throw DimensionMismatchError("grid axes mismatch");
  GridFunction diff = a;
  diff -= b;
  const auto& axes = diff.axes();
  const int na = static_cast<int>(axes.size());
  std::vector<int> idx(na, 0);
  for (std::size_t flat = 0; flat < diff.values().size(); ++flat) {
    for (int d = 0; d < na; ++d) {
      if (axes[d].periodic) continue;
      const int quarter = axes[d].count / 4;
      if (idx[d] < quarter || idx[d] >= axes[d].count - quarter) {
        diff.values()[flat] = 0.0;
        break;
      }
    }
    for (int d = na - 1; d >= 0; --d) {
      if (++idx[d] < axes[d].count) break;
      idx[d] = 0;
    }
  }
  return diff.l2_norm();
}

}  // namespace qorbit
