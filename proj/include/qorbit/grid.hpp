// grid.hpp — complex-valued functions sampled on uniform rectangular grids;
// the substrate for the numeric verification layer. Serialized as a JSON
// header plus a little-endian binary sidecar (complex64 or complex128).
#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "qorbit/errors.hpp"
#include "qorbit/symbol.hpp"

namespace qorbit {

struct Axis {
  std::string name;
  double min = 0.0;
  double max = 1.0;  // exclusive: points are min + j*step, j = 0..count-1
  int count = 0;
  bool periodic = false;

  double step() const { return (max - min) / count; }
  double point(int j) const { return min + j * step(); }
  bool operator==(const Axis&) const = default;
};

class GridFunction {
 public:
  GridFunction() = default;
  explicit GridFunction(std::vector<Axis> axes);

  static GridFunction sample(std::vector<Axis> axes,
                             const std::function<Complex(const std::vector<double>&)>& fn);

  const std::vector<Axis>& axes() const { return axes_; }
  const std::vector<Complex>& values() const { return values_; }
  std::vector<Complex>& values() { return values_; }
  std::size_t size() const { return values_.size(); }
  int axis_index(std::string_view name) const;  // throws DimensionMismatchError

  Complex& at(const std::vector<int>& idx);
  std::vector<double> point(const std::vector<int>& idx) const;

  GridFunction& operator+=(const GridFunction& other);
  GridFunction& operator-=(const GridFunction& other);
  GridFunction& operator*=(Complex c);

  /// Pointwise multiply by a function of the grid coordinates.
  GridFunction& multiply_pointwise(const std::function<Complex(const std::vector<double>&)>& fn);
  /// Pointwise multiply by a symbol evaluated on the grid (symbol variables
  /// must be a subset of the axis names).
  GridFunction& multiply_symbol(const ExpPolySymbol& coeff);

  double sup_norm() const;
  /// sqrt(sum |f|^2 * prod weights); trapezoid weights from the axes.
  double l2_norm() const;
  /// Fraction of |f|^2 mass within the outer `fraction` band of any
  /// non-periodic axis. The windowing contract for spectral transforms.
  double boundary_mass_fraction(double fraction = 0.05) const;

  void save(const std::string& json_path, bool single_precision = false) const;
  static GridFunction load(const std::string& json_path);

 private:
  std::vector<Axis> axes_;
  std::vector<Complex> values_;  // row-major, last axis fastest
};

double sup_difference(const GridFunction& a, const GridFunction& b);
/// Sup of |a-b| restricted to the interior half of every non-periodic axis.
double sup_difference_interior(const GridFunction& a, const GridFunction& b);
double l2_difference(const GridFunction& a, const GridFunction& b);

}  // namespace qorbit
