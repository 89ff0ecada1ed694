#include "qorbit/chart.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace qorbit {

std::pair<double, double> OrbitChart::sheet_strip() const {
  const double base = 2.0 * std::numbers::pi * sheet;
  return {base, base + 2.0 * std::numbers::pi};
}

ExpPolySymbol OrbitChart::hamiltonian(const AlgebraElement& z) const {
  if (z.algebra != algebra) throw DimensionMismatchError("element is not in the chart's algebra");
  ExpPolySymbol out = ExpPolySymbol::zero(phase_space);
  for (int i = 0; i < algebra->dim(); ++i)
    if (z.coeffs[i] != 0.0) out = out + basis_symbols[i].scaled(z.coeffs[i]);
  return out;
}

VariableSpace OrbitChart::operator_space() const {
  VariableSpace s;
  s.pos_vars = dual_names;
  s.pos_vars.insert(s.pos_vars.end(), phase_space.pos_vars.begin(), phase_space.pos_vars.end());
  return s;
}

std::string OrbitChart::shear_s_name(int i) const {
  return pairs() == 1 ? "s" : "s" + std::to_string(i + 1);
}

std::string OrbitChart::shear_t_name(int i) const {
  return pairs() == 1 ? "t" : "t" + std::to_string(i + 1);
}

VariableSpace OrbitChart::sheared_space() const {
  VariableSpace s;
  for (int i = 0; i < pairs(); ++i) s.pos_vars.push_back(shear_s_name(i));
  for (int i = 0; i < pairs(); ++i) s.pos_vars.push_back(shear_t_name(i));
  return s;
}

bool OrbitChart::contains(const CoadjointFunctional& f) const {
  if (f.algebra != algebra) throw DimensionMismatchError("functional is not in the chart's algebra");
  if (orbit_id == "affR+") return f.coords[1] > 0.0;
  if (orbit_id == "affR-") return f.coords[1] < 0.0;
  if (orbit_id.rfind("affC", 0) == 0)
    return f.coords[2] * f.coords[2] + f.coords[3] * f.coords[3] > 0.0;
  throw UnsupportedError("no membership predicate for orbit " + orbit_id);
}

void OrbitChart::finalize() {
  const int m = pairs();
  const int n = 2 * m;
  if (lambda.rows() != n || lambda.cols() != n)
    throw DimensionMismatchError("lambda dimension does not match the chart variables");
  if ((lambda + lambda.transpose()).cwiseAbs().maxCoeff() != 0.0)
    throw PreconditionError("lambda must be antisymmetric");
  pair_signs_.assign(m, 0.0);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const double v = lambda(i, m + j);
      if (v == 0.0) continue;
      if (j != i || std::abs(v) != 1.0 || pair_signs_[i] != 0.0)
        throw UnsupportedError("chart lambda must pair p_i with q_i at +-1");
      pair_signs_[i] = v;
    }
    for (int j = 0; j < m; ++j)
      if (i != j && lambda(i, j) != 0.0)
        throw UnsupportedError("chart lambda must not couple p-variables");
    if (pair_signs_[i] == 0.0) throw PreconditionError("lambda is degenerate on pair " + std::to_string(i));
  }
}

OrbitChart chart_affR(int sign) {
  if (sign != 1 && sign != -1) throw PreconditionError("sign must be +1 or -1");
  OrbitChart c;
  c.algebra = aff_real();
  c.orbit_id = sign > 0 ? "affR+" : "affR-";
  c.phase_space = VariableSpace{{"p"}, {"q"}};
  c.lambda.resize(2, 2);
  c.lambda << 0, 1, -1, 0;
  c.dual_names = {"x"};
  c.basis_symbols = {
      ExpPolySymbol::p_variable(c.phase_space, "p"),
      ExpPolySymbol::exponential(c.phase_space, {{"q", 1.0}}, Complex(sign, 0.0)),
  };
  c.finalize();
  return c;
}

OrbitChart chart_affC(int sheet) {
  OrbitChart c;
  c.algebra = aff_complex();
  c.orbit_id = "affC:" + std::to_string(sheet);
  c.sheet = sheet;
  c.phase_space = VariableSpace{{"p1", "p2"}, {"q1", "q2"}};
  // omega = dp1^dq1 - dp2^dq2 in variable order (p1, p2, q1, q2).
  c.lambda.resize(4, 4);
  c.lambda << 0, 0, 1, 0,
              0, 0, 0, -1,
              -1, 0, 0, 0,
              0, 1, 0, 0;
  c.dual_names = {"x1", "x2"};
  const Complex I(0.0, 1.0);
  const auto E_plus = ExpPolySymbol::exponential(c.phase_space, {{"q1", 1.0}, {"q2", I}});
  const auto E_minus = ExpPolySymbol::exponential(c.phase_space, {{"q1", 1.0}, {"q2", -I}});
  // A = (alpha, beta) maps to Re(alpha z) + Re(beta e^w) with z = p1 + i p2,
  // w = q1 + i q2; on the basis this reads:
  c.basis_symbols = {
      ExpPolySymbol::p_variable(c.phase_space, "p1"),
      ExpPolySymbol::p_variable(c.phase_space, "p2").scaled(-1.0),
      (E_plus + E_minus).scaled(0.5),
      (E_plus - E_minus).scaled(0.5 * I),
  };
  c.finalize();
  return c;
}

OrbitChart chart_by_id(const std::string& id) {
  if (id == "affR+") return chart_affR(+1);
  if (id == "affR-") return chart_affR(-1);
  if (id.rfind("affC:", 0) == 0) {
    try {
      return chart_affC(std::stoi(id.substr(5)));
    } catch (const std::exception&) {
      throw ParseError("invalid sheet index in chart id: " + id);
    }
  }
  if (id == "affC") return chart_affC(0);
  throw ParseError("unknown chart id: " + id + " (expected affR+, affR-, affC:k)");
}

PolarizationSpec catalog_polarization(const OrbitChart& chart) {
  PolarizationSpec pol;
  pol.algebra = chart.algebra;
  if (chart.orbit_id.rfind("affR", 0) == 0) {
    pol.h_basis = {AlgebraElement::basis(chart.algebra, 1)};
    pol.block_order = {0, 1};
  } else {
    pol.h_basis = {AlgebraElement::basis(chart.algebra, 2),
                   AlgebraElement::basis(chart.algebra, 3)};
    pol.block_order = {0, 1, 2, 3};
  }
  const int codim = chart.algebra->dim() - static_cast<int>(pol.h_basis.size());
  if (codim != chart.pairs())
    throw PreconditionError("polarization codimension != half the orbit dimension");
  return pol;
}

PukanszkyReport pukanszky_check(const OrbitChart& chart, const PolarizationSpec& pol,
                                const CoadjointFunctional& f, int samples,
                                std::uint64_t seed, double range) {
  if (pol.algebra != chart.algebra)
    throw DimensionMismatchError("polarization attached to a different algebra");
  if (!chart.contains(f))
    throw PreconditionError("base functional is not on the orbit " + chart.orbit_id);

  const int n = chart.algebra->dim();
  Eigen::MatrixXd annihilator;
  if (pol.h_basis.empty()) {
    annihilator = Eigen::MatrixXd::Identity(n, n);
  } else {
    Eigen::MatrixXd h(static_cast<int>(pol.h_basis.size()), n);
    for (std::size_t r = 0; r < pol.h_basis.size(); ++r) {
      if (pol.h_basis[r].algebra != chart.algebra)
        throw DimensionMismatchError("h basis element in a different algebra");
      h.row(static_cast<int>(r)) = pol.h_basis[r].coeffs.transpose();
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(h);
    annihilator = lu.kernel();  // columns span h^perp
  }

  PukanszkyReport report;
  report.samples = samples;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-range, range);
  for (int s = 0; s < samples; ++s) {
    Eigen::VectorXd point = f.coords;
    for (int c = 0; c < annihilator.cols(); ++c) point += dist(rng) * annihilator.col(c);
    if (!chart.contains(CoadjointFunctional(chart.algebra, point))) {
      report.failures++;
      if (report.failure_examples.size() < 5) report.failure_examples.push_back(point);
    }
  }
  return report;
}

}  // namespace qorbit
