// moyal.hpp — the star-product engine: bidifferential operators P^r built
// from a constant Poisson tensor, and the terminating series
//   u * v = u.v + sum_{r>=1} (1/r!) (1/2i)^r P^r(u,v).
// On the exponential-polynomial class the series stops at
// r = deg_p(u) + deg_p(v): every contraction spends one p-derivative.
#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "qorbit/chart.hpp"
#include "qorbit/symbol.hpp"

namespace qorbit {

/// P^r(u,v): r-fold contraction of lambda against derivatives of u and v.
/// Computed by iterating the first-order bidifferential contraction r times
/// on a multi-index weight table (partials commute, so states merge).
ExpPolySymbol p_r(const ExpPolySymbol& u, const ExpPolySymbol& v, int r,
                  const Eigen::MatrixXd& lambda);

ExpPolySymbol star(const ExpPolySymbol& u, const ExpPolySymbol& v,
                   const Eigen::MatrixXd& lambda);

struct StarBracketReport {
  int pairs_checked = 0;
  double max_deviation = 0.0;
  bool pass(double tol = 1e-12) const { return max_deviation < tol; }
};

/// Asserts star(iZ~, iT~) - star(iT~, iZ~) = i*[Z,T]~ as canonical symbols
/// for every basis pair plus `trials` seeded random pairs.
StarBracketReport star_bracket_check(const OrbitChart& chart, int trials, std::uint64_t seed);

}  // namespace qorbit
