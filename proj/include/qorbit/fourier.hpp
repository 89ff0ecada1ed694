// fourier.hpp — the spectral layer: per-axis discrete Fourier transforms in
// the unitary e^{-ipx}/sqrt(2pi) convention, spectral differentiation,
// band-limited shifts, numeric operator application, and the Fourier-space
// realization of left star-multiplication (the series route that the
// closed-form quantized operator is checked against).
//
// Transforms assume windowed data (negligible boundary mass); the dual axis
// of partial_fourier is centered, so round trips need centered source axes.
#pragma once

#include <string_view>

#include "qorbit/diff_op.hpp"
#include "qorbit/grid.hpp"

namespace qorbit {

/// d^order/d(axis)^order via FFT. Odd orders zero the Nyquist mode.
GridFunction spectral_derivative(const GridFunction& f, std::string_view axis, int order);

/// h(x) = f(x + displacement) by Fourier phase shift; exact for band-limited
/// periodic data, unitary on the grid.
GridFunction bandlimited_shift(const GridFunction& f, std::string_view axis,
                               double displacement);

/// F(u)(x) = 1/sqrt(2pi) int e^{-ipx} u(p) dp along one axis; the axis is
/// replaced by its centered dual (step 2pi/(N dp)) renamed to x_name.
GridFunction partial_fourier(const GridFunction& f, std::string_view p_axis,
                             std::string_view x_name);
GridFunction partial_fourier_inverse(const GridFunction& f, std::string_view x_axis,
                                     std::string_view p_name);

/// Evaluates op on the grid: spectral derivatives per axis, coefficients
/// evaluated pointwise. Grid axes must cover the operator's variables.
GridFunction apply_numeric(const DiffOperator& op, const GridFunction& f);

/// F_p(i Zt * F_p^{-1} f) computed by summing the star series in Fourier
/// space: the p-linear part acts on the p-side grid (pointwise p-multiply
/// plus spectral q-derivative), the exponential part becomes an x-space
/// multiplier summed as a power series to convergence. Numeric realization
/// of the quantized operator, independent of quantize_symbol's closed form.
/// If boundary_mass is set it receives f's boundary |f|^2 fraction — above
/// 1e-8 the windowing contract is broken and the result is suspect.
GridFunction star_apply_numeric(const ExpPolySymbol& zt, const GridFunction& f,
                                const OrbitChart& chart, double* boundary_mass = nullptr);

/// Splits Zt = sum_i a_i p_i + a_0(q); throws UnsupportedError outside the
/// p-linear constant-coefficient class.
struct LinearSymbolParts {
  std::vector<Complex> p_coeff;  // per chart pair
  std::vector<ExpPolyTerm> a0;   // p-free terms over the chart's phase space
};
LinearSymbolParts split_p_linear(const ExpPolySymbol& zt, const OrbitChart& chart);

}  // namespace qorbit
