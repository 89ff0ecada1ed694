#include "qorbit/moyal.hpp"

#include <map>
#include <random>
#include <utility>
#include <vector>

namespace qorbit {

namespace {

using MultiIndex = std::vector<int>;

// Derivative cache keyed by multi-index over the chart variables [p..., q...].
class DerivCache {
 public:
  explicit DerivCache(const ExpPolySymbol& base) {
    const auto& sp = base.space();
    names_.reserve(sp.p_vars.size() + sp.pos_vars.size());
    for (const auto& v : sp.p_vars) names_.push_back(v);
    for (const auto& v : sp.pos_vars) names_.push_back(v);
    cache_[MultiIndex(names_.size(), 0)] = base;
  }

  // D^mu of the base symbol; mu must extend an already-cached parent by one.
  const ExpPolySymbol& get(const MultiIndex& mu, int added_var) {
    auto it = cache_.find(mu);
    if (it != cache_.end()) return it->second;
    MultiIndex parent = mu;
    parent[added_var] -= 1;
    const ExpPolySymbol& p = cache_.at(parent);
    return cache_.emplace(mu, p.deriv(names_[added_var])).first->second;
  }

  const ExpPolySymbol& at(const MultiIndex& mu) const { return cache_.at(mu); }

 private:
  std::vector<std::string> names_;
  std::map<MultiIndex, ExpPolySymbol> cache_;
};

}  // namespace

ExpPolySymbol p_r(const ExpPolySymbol& u, const ExpPolySymbol& v, int r,
                  const Eigen::MatrixXd& lambda) {
  if (u.space() != v.space())
    throw DimensionMismatchError("star operands live in different variable spaces");
  const int nvars =
      static_cast<int>(u.space().p_vars.size() + u.space().pos_vars.size());
  if (lambda.rows() != nvars || lambda.cols() != nvars)
    throw DimensionMismatchError("lambda dimension does not match the variable space");
  if (r == 0) return u * v;

  std::vector<std::pair<int, int>> entries;
  for (int i = 0; i < nvars; ++i)
    for (int j = 0; j < nvars; ++j)
      if (lambda(i, j) != 0.0) entries.emplace_back(i, j);

  DerivCache du(u), dv(v);
  using State = std::pair<MultiIndex, MultiIndex>;
  std::map<State, double> weights;
  weights[{MultiIndex(nvars, 0), MultiIndex(nvars, 0)}] = 1.0;

  for (int step = 0; step < r; ++step) {
    std::map<State, double> next;
    for (const auto& [state, w] : weights) {
      for (const auto& [i, j] : entries) {
        MultiIndex mu = state.first;
        mu[i] += 1;
        if (du.get(mu, i).is_zero()) continue;
        MultiIndex nu = state.second;
        nu[j] += 1;
        if (dv.get(nu, j).is_zero()) continue;
        next[{std::move(mu), std::move(nu)}] += w * lambda(i, j);
      }
    }
    weights = std::move(next);
    if (weights.empty()) break;
  }

  ExpPolySymbol result = ExpPolySymbol::zero(u.space());
  for (const auto& [state, w] : weights) {
    if (w == 0.0) continue;
    result = result + (du.at(state.first) * dv.at(state.second)).scaled(w);
  }
  return result;
}

ExpPolySymbol star(const ExpPolySymbol& u, const ExpPolySymbol& v,
                   const Eigen::MatrixXd& lambda) {
  const int bound = u.p_degree() + v.p_degree();
  ExpPolySymbol result = u * v;
  Complex factor(1.0, 0.0);
  const Complex half_over_i(0.0, -0.5);  // 1/(2i)
  for (int r = 1; r <= bound; ++r) {
    factor *= half_over_i / static_cast<double>(r);
    const ExpPolySymbol pr = p_r(u, v, r, lambda);
    if (!pr.is_zero()) result = result + pr.scaled(factor);
  }
  return result;
}

StarBracketReport star_bracket_check(const OrbitChart& chart, int trials, std::uint64_t seed) {
  StarBracketReport report;
  const Complex I(0.0, 1.0);
  auto check_pair = [&](const AlgebraElement& z, const AlgebraElement& t) {
    const ExpPolySymbol zt = chart.hamiltonian(z).scaled(I);
    const ExpPolySymbol tt = chart.hamiltonian(t).scaled(I);
    const ExpPolySymbol lhs = star(zt, tt, chart.lambda) - star(tt, zt, chart.lambda);
    const ExpPolySymbol rhs = chart.hamiltonian(bracket(z, t)).scaled(I);
    report.max_deviation = std::max(report.max_deviation, max_coeff_deviation(lhs, rhs));
    report.pairs_checked++;
  };

  const int n = chart.algebra->dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      check_pair(AlgebraElement::basis(chart.algebra, i),
                 AlgebraElement::basis(chart.algebra, j));

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < trials; ++trial) {
    Eigen::VectorXd a(n), b(n);
    for (int i = 0; i < n; ++i) a[i] = dist(rng);
    for (int i = 0; i < n; ++i) b[i] = dist(rng);
    check_pair(AlgebraElement(chart.algebra, a), AlgebraElement(chart.algebra, b));
  }
  return report;
}

}  // namespace qorbit
