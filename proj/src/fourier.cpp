#include "qorbit/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <numbers>
#include <vector>

namespace qorbit {

namespace {

constexpr double kPi = std::numbers::pi;

// Runs fn(line) for every 1-D line along `axis`; line is gathered into a
// contiguous buffer and scattered back afterwards.
void for_each_line(GridFunction& g, int axis,
                   const std::function<void(std::vector<Complex>&)>& fn) {
  const auto& axes = g.axes();
  const int na = static_cast<int>(axes.size());
  const int n = axes[axis].count;
  std::size_t stride = 1;
  for (int d = na - 1; d > axis; --d) stride *= axes[d].count;
  std::size_t outer = 1;
  for (int d = 0; d < axis; ++d) outer *= axes[d].count;
  const std::size_t block = stride * static_cast<std::size_t>(n);

  std::vector<Complex> line(n);
  auto& vals = g.values();
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t s = 0; s < stride; ++s) {
      const std::size_t base = o * block + s;
      for (int j = 0; j < n; ++j) line[j] = vals[base + j * stride];
      fn(line);
      for (int j = 0; j < n; ++j) vals[base + j * stride] = line[j];
    }
}

// Unnormalized in-place DFT of a line; sign = FFTW_FORWARD or FFTW_BACKWARD.
class LineFft {
 public:
  LineFft(int n, int sign) : n_(n) {
    buf_ = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
    plan_ = fftw_plan_dft_1d(n, buf_, buf_, sign, FFTW_ESTIMATE);
  }
  ~LineFft() {
    fftw_destroy_plan(plan_);
    fftw_free(buf_);
  }
  LineFft(const LineFft&) = delete;
  LineFft& operator=(const LineFft&) = delete;

  void run(std::vector<Complex>& line) {
    for (int j = 0; j < n_; ++j) {
      buf_[j][0] = line[j].real();
      buf_[j][1] = line[j].imag();
    }
    fftw_execute(plan_);
    for (int j = 0; j < n_; ++j) line[j] = Complex(buf_[j][0], buf_[j][1]);
  }

 private:
  int n_;
  fftw_complex* buf_;
  fftw_plan plan_;
};

// Signed FFT index: j for j < n/2, j - n otherwise.
int fft_index(int j, int n) { return j < (n + 1) / 2 ? j : j - n; }

}  // namespace

GridFunction spectral_derivative(const GridFunction& f, std::string_view axis, int order) {
  if (order == 0) return f;
  GridFunction g = f;
  const int ax = g.axis_index(axis);
  const int n = g.axes()[ax].count;
  const double h = g.axes()[ax].step();
  LineFft fwd(n, FFTW_FORWARD), bwd(n, FFTW_BACKWARD);

  std::vector<Complex> mult(n);
  for (int j = 0; j < n; ++j) {
    const double k = 2.0 * kPi * fft_index(j, n) / (n * h);
    mult[j] = std::pow(Complex(0.0, k), order) / static_cast<double>(n);
  }
  if (order % 2 == 1 && n % 2 == 0) mult[n / 2] = 0.0;

  for_each_line(g, ax, [&](std::vector<Complex>& line) {
    fwd.run(line);
    for (int j = 0; j < n; ++j) line[j] *= mult[j];
    bwd.run(line);
  });
  return g;
}

GridFunction bandlimited_shift(const GridFunction& f, std::string_view axis,
                               double displacement) {
  GridFunction g = f;
  const int ax = g.axis_index(axis);
  const int n = g.axes()[ax].count;
  const double h = g.axes()[ax].step();
  LineFft fwd(n, FFTW_FORWARD), bwd(n, FFTW_BACKWARD);

  std::vector<Complex> mult(n);
  for (int j = 0; j < n; ++j) {
    const double k = 2.0 * kPi * fft_index(j, n) / (n * h);
    mult[j] = std::exp(Complex(0.0, k * displacement)) / static_cast<double>(n);
  }
  // Nyquist as cosine keeps real data real under non-grid shifts.
  if (n % 2 == 0) mult[n / 2] = std::cos(kPi * displacement / h) / static_cast<double>(n);

  for_each_line(g, ax, [&](std::vector<Complex>& line) {
    fwd.run(line);
    for (int j = 0; j < n; ++j) line[j] *= mult[j];
    bwd.run(line);
  });
  return g;
}

GridFunction partial_fourier(const GridFunction& f, std::string_view p_axis,
                             std::string_view x_name) {
  GridFunction g = f;
  const int ax = g.axis_index(p_axis);
  const int n = g.axes()[ax].count;
  const double dp = g.axes()[ax].step();
  const double p0 = g.axes()[ax].min;
  const double dx = 2.0 * kPi / (n * dp);
  const double x0 = -(n / 2) * dx;
  LineFft fwd(n, FFTW_FORWARD);

  // e^{-i p_j x_k} = e^{-i p0 x_k} e^{-i j dp x0} e^{-2pi i jk/N}: position
  // indices feed the DFT directly, the phases carry the actual coordinates.
  std::vector<Complex> pre(n), post(n);
  for (int j = 0; j < n; ++j) pre[j] = std::exp(Complex(0.0, -x0 * j * dp));
  const double scale = dp / std::sqrt(2.0 * kPi);
  for (int k = 0; k < n; ++k)
    post[k] = scale * std::exp(Complex(0.0, -p0 * (x0 + k * dx)));

  for_each_line(g, ax, [&](std::vector<Complex>& line) {
    for (int j = 0; j < n; ++j) line[j] *= pre[j];
    fwd.run(line);
    for (int k = 0; k < n; ++k) line[k] *= post[k];
  });

  auto axes = g.axes();
  axes[ax] = Axis{std::string(x_name), x0, x0 + n * dx, n, false};
  GridFunction out(axes);
  out.values() = g.values();
  return out;
}

GridFunction partial_fourier_inverse(const GridFunction& f, std::string_view x_axis,
                                     std::string_view p_name) {
  GridFunction g = f;
  const int ax = g.axis_index(x_axis);
  const int n = g.axes()[ax].count;
  const double dx = g.axes()[ax].step();
  const double x0 = g.axes()[ax].min;
  const double dp = 2.0 * kPi / (n * dx);
  const double p0 = -(n / 2) * dp;
  LineFft bwd(n, FFTW_BACKWARD);

  // e^{+i p_j x_k} = e^{i x0 p_j} e^{i p0 k dx} e^{+2pi i jk/N}.
  std::vector<Complex> pre(n), post(n);
  for (int k = 0; k < n; ++k) pre[k] = std::exp(Complex(0.0, p0 * k * dx));
  const double scale = dx / std::sqrt(2.0 * kPi);
  for (int j = 0; j < n; ++j) post[j] = scale * std::exp(Complex(0.0, (p0 + j * dp) * x0));

  for_each_line(g, ax, [&](std::vector<Complex>& line) {
    for (int k = 0; k < n; ++k) line[k] *= pre[k];
    bwd.run(line);
    for (int j = 0; j < n; ++j) line[j] *= post[j];
  });

  auto axes = g.axes();
  axes[ax] = Axis{std::string(p_name), p0, p0 + n * dp, n, false};
  GridFunction out(axes);
  out.values() = g.values();
  return out;
}

GridFunction apply_numeric(const DiffOperator& op, const GridFunction& f) {
  GridFunction out(f.axes());
  for (const auto& t : op.terms()) {
    GridFunction w = f;
    for (std::size_t d = 0; d < op.space().pos_vars.size(); ++d)
      if (t.orders[d] > 0) w = spectral_derivative(w, op.space().pos_vars[d], t.orders[d]);
    w.multiply_symbol(t.coeff);
    out += w;
  }
  return out;
}

LinearSymbolParts split_p_linear(const ExpPolySymbol& zt, const OrbitChart& chart) {
  if (zt.space() != chart.phase_space)
    throw DimensionMismatchError("symbol does not live on the chart");
  LinearSymbolParts parts;
  parts.p_coeff.assign(chart.pairs(), Complex(0.0));
  for (const auto& t : zt.terms()) {
    const int deg = t.p_degree();
    if (deg > 1)
      throw UnsupportedError("expected p-degree <= 1, got " + std::to_string(deg));
    if (deg == 1) {
      for (const auto& a : t.q_linform)
        if (a != Complex(0.0)) throw UnsupportedError("expected constant p-coefficients");
      for (int i = 0; i < chart.pairs(); ++i)
        if (t.p_exps[i] == 1) parts.p_coeff[i] += t.coeff;
    } else {
      parts.a0.push_back(t);
    }
  }
  return parts;
}

GridFunction star_apply_numeric(const ExpPolySymbol& zt, const GridFunction& f,
                                const OrbitChart& chart, double* boundary_mass) {
  if (boundary_mass != nullptr) *boundary_mass = f.boundary_mass_fraction();
  const LinearSymbolParts parts = split_p_linear(zt, chart);
  const int m = chart.pairs();
  const Complex I(0.0, 1.0);

  // p-side: i a_i p_i . + (eps_i a_i / 2) d_{q_i}
  GridFunction u = f;
  for (int i = 0; i < m; ++i)
    u = partial_fourier_inverse(u, chart.dual_names[i], chart.phase_space.p_vars[i]);

  GridFunction w(u.axes());
  for (int i = 0; i < m; ++i) {
    if (parts.p_coeff[i] == Complex(0.0)) continue;
    const int p_ax = u.axis_index(chart.phase_space.p_vars[i]);
    GridFunction mult = u;
    mult.multiply_pointwise(
        [&](const std::vector<double>& pt) { return I * parts.p_coeff[i] * pt[p_ax]; });
    w += mult;
    GridFunction dq = spectral_derivative(u, chart.phase_space.pos_vars[i], 1);
    dq *= parts.p_coeff[i] * chart.pair_sign(i) * 0.5;
    w += dq;
  }
  GridFunction result = w;
  for (int i = 0; i < m; ++i)
    result = partial_fourier(result, chart.phase_space.p_vars[i], chart.dual_names[i]);

  // exponential part: x-space multiplier summed as a power series
  if (!parts.a0.empty()) {
    std::vector<int> q_ax(m), x_ax(m);
    for (int i = 0; i < m; ++i) {
      q_ax[i] = f.axis_index(chart.phase_space.pos_vars[i]);
      x_ax[i] = f.axis_index(chart.dual_names[i]);
    }
    GridFunction mult = f;
    mult.multiply_pointwise([&](const std::vector<double>& pt) {
      Complex total(0.0);
      for (const auto& t : parts.a0) {
        Complex arg_q(0.0), zeta(0.0);
        for (int i = 0; i < m; ++i) {
          arg_q += t.q_linform[i] * pt[q_ax[i]];
          zeta += -chart.pair_sign(i) * t.q_linform[i] * pt[x_ax[i]] * 0.5;
        }
        // exp(zeta) as its power series, the convergent tail of the star sum
        Complex sum(1.0), term(1.0);
        for (int k = 1; k <= 120; ++k) {
          term *= zeta / static_cast<double>(k);
          sum += term;
          if (std::abs(term) < 1e-17 * std::max(1.0, std::abs(sum))) break;
        }
        total += t.coeff * std::exp(arg_q) * sum;
      }
      return I * total;
    });
    result += mult;
  }
  return result;
}

}  // namespace qorbit
