// reps.hpp — the closed-form irreducible unitary representations of the two
// catalog groups on their grid models, the matrix-exponential route from
// algebra elements to group elements, and the comparison of both against the
// exponentiated quantized operators.
#pragma once

#include <cstdint>
#include <functional>

#include "qorbit/algebra.hpp"
#include "qorbit/flow.hpp"
#include "qorbit/grid.hpp"

namespace qorbit {

// ---- the real affine group --------------------------------------------

struct GroupElementAffR {
  double a = 1.0;  // > 0
  double b = 0.0;
};

/// Matrix product of [[a,b],[0,1]] pairs: (a1,b1)(a2,b2) = (a1 a2, a1 b2 + b1).
GroupElementAffR affr_mul(const GroupElementAffR& g1, const GroupElementAffR& g2);

/// exp[[alpha, beta],[0,0]] through matrix_exp (the numeric oracle).
GroupElementAffR affr_exp(double alpha, double beta);

/// (S(g)f)(y) = e^{iby} f(ay) on L^2(R_+, dy/y), evaluated in s = log y
/// coordinates where the dilation is the shift s -> s + log a. If
/// domain_exit_mass is set it receives the |f|^2 fraction carried past the
/// grid edge by the shift.
GridFunction rep_affR(const GroupElementAffR& g, const GridFunction& f,
                      double* domain_exit_mass = nullptr);

struct ReprCompareReport {
  GroupElementAffR g;
  double sup_error = 0.0;       // interior sup
  double l2_error = 0.0;        // interior L2
  double boundary_mass = 0.0;   // of the input
};

/// Flow route (shear + characteristics, t = 1) against e^{iby}f(ay) with
/// (a,b) from the 2x2 matrix exponential. f lives on a single s-axis.
ReprCompareReport compare_exp_vs_closed_form(const AlgebraElement& z, const GridFunction& f);

// ---- the covering of the complex affine group --------------------------

struct GroupElementAffC {
  Complex z{0.0, 0.0};
  Complex w{0.0, 0.0};
};

/// (z,w)(z',w') = (z + z', w + e^z w').
GroupElementAffC affc_mul(const GroupElementAffC& g1, const GroupElementAffC& g2);
GroupElementAffC affc_exp(Complex alpha, Complex beta);  // one-parameter flow at t = 1

/// [T_theta(z,w)f](x) = exp(i(Re(w e^x) + 2 pi theta [Im(x+z)/2pi])) f(x + z),
/// on a grid with a real line axis and a periodic circle axis [0, 2pi); the
/// circle coordinate of x + z wraps exactly and [.] counts the winding.
/// domain_exit_mass, when set, estimates the |f|^2 fraction the real-axis
/// translation carries past the grid edge.
GridFunction rep_affC(double theta, const GroupElementAffC& g, const GridFunction& f,
                      double* domain_exit_mass = nullptr);

// ---- measures and unitarity --------------------------------------------

/// Trapezoid L2 norm with a pointwise density (measure) factor.
double weighted_l2_norm(const GridFunction& f,
                        const std::function<double(const std::vector<double>&)>& density);

/// |‖after‖ - ‖before‖| / ‖before‖ in the weighted norm.
double norm_drift(const GridFunction& before, const GridFunction& after,
                  const std::function<double(const std::vector<double>&)>& density);

/// Relative norm drift of an action over a batch of test functions, in the
/// measure given by the density (dy/|y| on the log grid is density 1; plain
/// Lebesgue in y is e^s).
struct UnitarityReport {
  std::vector<double> drifts;
  double max_drift() const;
};
UnitarityReport unitarity_check(
    const std::function<GridFunction(const GridFunction&)>& action,
    const std::vector<GridFunction>& samples,
    const std::function<double(const std::vector<double>&)>& measure_density);

/// Interior L2 difference (inner half of every non-periodic axis).
double l2_difference_interior(const GridFunction& a, const GridFunction& b);

}  // namespace qorbit
