#include "qorbit/diff_op.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <map>
#include <sstream>

namespace qorbit {

namespace {

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

DiffOperator::DiffOperator(VariableSpace space) : space_(std::move(space)) {
  if (!space_.p_vars.empty())
    throw DimensionMismatchError("operator spaces carry position variables only");
}

DiffOperator::DiffOperator(VariableSpace space, std::vector<Term> terms)
    : space_(std::move(space)), terms_(std::move(terms)) {
  if (!space_.p_vars.empty())
    throw DimensionMismatchError("operator spaces carry position variables only");
  for (auto& t : terms_) {
    if (t.orders.size() != space_.pos_vars.size() || t.coeff.space() != space_)
      throw DimensionMismatchError("operator term does not match the variable space");
    for (int o : t.orders)
      if (o < 0) throw DimensionMismatchError("negative derivative order");
  }
  canonicalize();
}

DiffOperator DiffOperator::identity(VariableSpace space) {
  Term t;
  t.coeff = ExpPolySymbol::constant(space, Complex(1.0, 0.0));
  t.orders.assign(space.pos_vars.size(), 0);
  return DiffOperator(std::move(space), {std::move(t)});
}

DiffOperator DiffOperator::monomial(VariableSpace space, const ExpPolySymbol& coeff,
                                    const std::map<std::string, int>& orders) {
  Term t;
  t.coeff = coeff;
  t.orders.assign(space.pos_vars.size(), 0);
  for (const auto& [name, o] : orders) {
    const int i = space.pos_index(name);
    if (i < 0) throw DimensionMismatchError("unknown operator variable " + name);
    t.orders[i] += o;
  }
  return DiffOperator(std::move(space), {std::move(t)});
}

int DiffOperator::order() const {
  int m = 0;
  for (const auto& t : terms_) {
    int total = 0;
    for (int o : t.orders) total += o;
    m = std::max(m, total);
  }
  return m;
}

void DiffOperator::canonicalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.orders < b.orders; });
  std::vector<Term> merged;
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().orders == t.orders)
      merged.back().coeff = merged.back().coeff + t.coeff;
    else
      merged.push_back(std::move(t));
  }
  terms_.clear();
  for (auto& t : merged)
    if (!t.coeff.is_zero()) terms_.push_back(std::move(t));
}

DiffOperator DiffOperator::scaled(Complex c) const {
  std::vector<Term> terms = terms_;
  for (auto& t : terms) t.coeff = t.coeff.scaled(c);
  return DiffOperator(space_, std::move(terms));
}

DiffOperator operator+(const DiffOperator& a, const DiffOperator& b) {
  if (a.space_ != b.space_)
    throw DimensionMismatchError("operators live in different variable spaces");
  std::vector<DiffOperator::Term> terms = a.terms_;
  terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
  return DiffOperator(a.space_, std::move(terms));
}

DiffOperator operator-(const DiffOperator& a, const DiffOperator& b) {
  return a + b.scaled(Complex(-1.0, 0.0));
}

DiffOperator compose(const DiffOperator& a, const DiffOperator& b) {
  if (a.space() != b.space())
    throw DimensionMismatchError("operators live in different variable spaces");
  const auto& vars = a.space().pos_vars;
  std::vector<DiffOperator::Term> out;
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      // (c1 d^mu)(c2 d^nu) = sum_{kappa<=mu} prod binom(mu,kappa)
      //                      c1 (d^kappa c2) d^{mu-kappa+nu}
      std::vector<int> kappa(vars.size(), 0);
      while (true) {
        ExpPolySymbol dc2 = tb.coeff;
        double weight = 1.0;
        for (std::size_t d = 0; d < vars.size() && !dc2.is_zero(); ++d) {
          weight *= binom(ta.orders[d], kappa[d]);
          for (int k = 0; k < kappa[d]; ++k) dc2 = dc2.deriv(vars[d]);
        }
        if (!dc2.is_zero() && weight != 0.0) {
          DiffOperator::Term t;
          t.coeff = (ta.coeff * dc2).scaled(weight);
          t.orders.resize(vars.size());
          for (std::size_t d = 0; d < vars.size(); ++d)
            t.orders[d] = ta.orders[d] - kappa[d] + tb.orders[d];
          out.push_back(std::move(t));
        }
        // next kappa <= mu in mixed radix
        std::size_t d = 0;
        while (d < vars.size() && ++kappa[d] > ta.orders[d]) kappa[d++] = 0;
        if (d == vars.size()) break;
      }
    }
  }
  return DiffOperator(a.space(), std::move(out));
}

DiffOperator commutator(const DiffOperator& a, const DiffOperator& b) {
  return compose(a, b) - compose(b, a);
}

ExpPolySymbol apply_symbolic(const DiffOperator& op, const ExpPolySymbol& u) {
  if (op.space() != u.space())
    throw DimensionMismatchError("operator and symbol live in different variable spaces");
  ExpPolySymbol out = ExpPolySymbol::zero(u.space());
  for (const auto& t : op.terms()) {
    ExpPolySymbol du = u;
    for (std::size_t d = 0; d < op.space().pos_vars.size() && !du.is_zero(); ++d)
      for (int k = 0; k < t.orders[d]; ++k) du = du.deriv(op.space().pos_vars[d]);
    if (!du.is_zero()) out = out + t.coeff * du;
  }
  return out;
}

double max_coeff_deviation(const DiffOperator& a, const DiffOperator& b) {
  const DiffOperator diff = a - b;
  double m = 0.0;
  for (const auto& t : diff.terms()) m = std::max(m, max_abs_coeff(t.coeff));
  return m;
}

DiffOperator quantize_symbol(const ExpPolySymbol& zt, const OrbitChart& chart) {
  if (zt.space() != chart.phase_space)
    throw DimensionMismatchError("symbol does not live on the chart");
  const int m = chart.pairs();
  const VariableSpace out_space = chart.operator_space();

  std::vector<Complex> p_coeff(m, Complex(0.0));
  std::vector<ExpPolyTerm> a0_terms;
  for (const auto& t : zt.terms()) {
    const int deg = t.p_degree();
    if (deg > 1)
      throw UnsupportedError("quantization needs p-degree <= 1, got " + std::to_string(deg));
    if (deg == 1) {
      for (const auto& a : t.q_linform)
        if (a != Complex(0.0))
          throw UnsupportedError("quantization needs constant p-coefficients");
      for (int i = 0; i < m; ++i)
        if (t.p_exps[i] == 1) p_coeff[i] += t.coeff;
    } else {
      // re-express the p-free part over the operator space
      ExpPolyTerm moved;
      moved.coeff = t.coeff;
      moved.q_linform.assign(out_space.pos_vars.size(), Complex(0.0));
      for (std::size_t qi = 0; qi < chart.phase_space.pos_vars.size(); ++qi) {
        const int target = out_space.pos_index(chart.phase_space.pos_vars[qi]);
        moved.q_linform[target] = t.q_linform[qi];
      }
      a0_terms.push_back(std::move(moved));
    }
  }

  DiffOperator result = DiffOperator::zero(out_space);
  for (int i = 0; i < m; ++i) {
    if (p_coeff[i] == Complex(0.0)) continue;
    const double eps = chart.pair_sign(i);
    const std::string& q = chart.phase_space.pos_vars[i];
    const std::string& x = chart.dual_names[i];
    result = result +
             DiffOperator::monomial(out_space,
                                    ExpPolySymbol::constant(out_space, p_coeff[i] * (eps / 2)),
                                    {{q, 1}});
    result = result + DiffOperator::monomial(
                          out_space, ExpPolySymbol::constant(out_space, -p_coeff[i]), {{x, 1}});
  }
  if (!a0_terms.empty()) {
    ExpPolySymbol a0(out_space, std::move(a0_terms));
    for (int i = 0; i < m; ++i) {
      const double eps = chart.pair_sign(i);
      a0 = a0.shifted(chart.phase_space.pos_vars[i],
                      {{chart.dual_names[i], Complex(-eps / 2, 0.0)}});
    }
    result = result + DiffOperator::monomial(out_space, a0.scaled(Complex(0.0, 1.0)), {});
  }
  return result;
}

namespace {

// General linear change of variables n = A o (derivatives transform by
// d_{o_d} = sum_e A_{ed} d_{n_e}; linear forms through o = B n).
DiffOperator change_vars_linear(const DiffOperator& op, const VariableSpace& new_space,
                                const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const std::size_t n = op.space().pos_vars.size();
  if (new_space.pos_vars.size() != n || a.rows() != static_cast<Eigen::Index>(n) ||
      b.rows() != static_cast<Eigen::Index>(n))
    throw DimensionMismatchError("change of variables must preserve the variable count");
  if (!(a * b).isIdentity(1e-12))
    throw PreconditionError("change-of-variables matrix is not invertible");

  std::vector<DiffOperator::Term> out;
  for (const auto& t : op.terms()) {
    std::vector<ExpPolyTerm> coeff_terms;
    for (const auto& ct : t.coeff.terms()) {
      ExpPolyTerm moved;
      moved.coeff = ct.coeff;
      moved.q_linform.assign(n, Complex(0.0));
      for (std::size_t e = 0; e < n; ++e)
        for (std::size_t d = 0; d < n; ++d)
          moved.q_linform[e] += ct.q_linform[d] * b(d, e);
      coeff_terms.push_back(std::move(moved));
    }
    const ExpPolySymbol coeff(new_space, std::move(coeff_terms));

    std::map<std::vector<int>, double> expansion{{std::vector<int>(n, 0), 1.0}};
    for (std::size_t d = 0; d < n; ++d) {
      for (int rep = 0; rep < t.orders[d]; ++rep) {
        std::map<std::vector<int>, double> next;
        for (const auto& [mi, w] : expansion)
          for (std::size_t e = 0; e < n; ++e) {
            if (a(e, d) == 0.0) continue;
            std::vector<int> mi2 = mi;
            mi2[e] += 1;
            next[mi2] += w * a(e, d);
          }
        expansion = std::move(next);
      }
    }
    for (const auto& [mi, w] : expansion) {
      if (w == 0.0) continue;
      DiffOperator::Term nt;
      nt.coeff = coeff.scaled(w);
      nt.orders = mi;
      out.push_back(std::move(nt));
    }
  }
  return DiffOperator(new_space, std::move(out));
}

// old = (x..., q...) -> new = (s..., t...) with s_i = q_i - eps_i x_i/2,
// t_i = q_i + eps_i x_i/2.
void shear_matrices(const OrbitChart& chart, Eigen::MatrixXd& a, Eigen::MatrixXd& b) {
  const int m = chart.pairs();
  a = Eigen::MatrixXd::Zero(2 * m, 2 * m);
  b = Eigen::MatrixXd::Zero(2 * m, 2 * m);
  for (int i = 0; i < m; ++i) {
    const double eps = chart.pair_sign(i);
    a(i, i) = -eps / 2;
    a(i, m + i) = 1.0;
    a(m + i, i) = eps / 2;
    a(m + i, m + i) = 1.0;
    // x_i = eps (t_i - s_i), q_i = (s_i + t_i)/2
    b(i, i) = -eps;
    b(i, m + i) = eps;
    b(m + i, i) = 0.5;
    b(m + i, m + i) = 0.5;
  }
}

}  // namespace

DiffOperator change_vars_shear(const DiffOperator& op, const OrbitChart& chart) {
  if (op.space() != chart.operator_space())
    throw DimensionMismatchError("shear expects an operator over the chart's (x, q) variables");
  Eigen::MatrixXd a, b;
  shear_matrices(chart, a, b);
  return change_vars_linear(op, chart.sheared_space(), a, b);
}

DiffOperator change_vars_shear_inverse(const DiffOperator& op, const OrbitChart& chart) {
  if (op.space() != chart.sheared_space())
    throw DimensionMismatchError("inverse shear expects an operator over (s, t)");
  Eigen::MatrixXd a, b;
  shear_matrices(chart, a, b);
  return change_vars_linear(op, chart.operator_space(), b, a);
}

std::string DiffOperator::format() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& t : terms_) {
    std::string deriv;
    for (std::size_t d = 0; d < space_.pos_vars.size(); ++d) {
      if (t.orders[d] == 0) continue;
      if (!deriv.empty()) deriv += "*";
      deriv += "d_" + space_.pos_vars[d];
      if (t.orders[d] > 1) deriv += "^" + std::to_string(t.orders[d]);
    }
    // Route a single real negative coefficient into the join separator.
    ExpPolySymbol coeff = t.coeff;
    bool negative = false;
    if (coeff.terms().size() == 1) {
      const Complex c = coeff.terms()[0].coeff;
      if (c.imag() == 0.0 && c.real() < 0.0) {
        negative = true;
        coeff = coeff.scaled(Complex(-1.0, 0.0));
      }
    }
    const std::string ctext = coeff.format();
    std::string body;
    if (deriv.empty()) {
      body = ctext;
    } else if (ctext == "1") {
      body = deriv;
    } else {
      const bool parens = coeff.terms().size() > 1 || ctext.find(' ') != std::string::npos;
      body = (parens ? "(" + ctext + ")" : ctext) + "*" + deriv;
    }
    out << (first ? (negative ? "-" : "") : (negative ? " - " : " + ")) << body;
    first = false;
  }
  return out.str();
}

}  // namespace qorbit
