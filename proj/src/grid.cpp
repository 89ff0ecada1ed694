#include "qorbit/grid.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>

#include <json.hpp>

namespace qorbit {

namespace {

std::size_t total_size(const std::vector<Axis>& axes) {
  std::size_t n = 1;
  for (const auto& a : axes) {
    if (a.count <= 0) throw DimensionMismatchError("axis count must be positive");
    if (!(a.max > a.min)) throw DimensionMismatchError("axis must have max > min");
    n *= static_cast<std::size_t>(a.count);
  }
  return n;
}

// Trapezoid quadrature weight for index j on an axis: uniform for periodic
// axes, halved at the two ends otherwise.
double trapezoid_weight(const Axis& a, int j) {
  const double h = a.step();
  if (a.periodic) return h;
  return (j == 0 || j == a.count - 1) ? h / 2 : h;
}

}  // namespace

GridFunction::GridFunction(std::vector<Axis> axes)
    : axes_(std::move(axes)), values_(total_size(axes_), Complex(0.0)) {}

GridFunction GridFunction::sample(std::vector<Axis> axes,
                                  const std::function<Complex(const std::vector<double>&)>& fn) {
  GridFunction g(std::move(axes));
  const int na = static_cast<int>(g.axes_.size());
  std::vector<int> idx(na, 0);
  std::vector<double> pt(na);
  for (std::size_t flat = 0; flat < g.values_.size(); ++flat) {
    for (int d = 0; d < na; ++d) pt[d] = g.axes_[d].point(idx[d]);
    g.values_[flat] = fn(pt);
    for (int d = na - 1; d >= 0; --d) {
      if (++idx[d] < g.axes_[d].count) break;
      idx[d] = 0;
    }
  }
  return g;
}

int GridFunction::axis_index(std::string_view name) const {
  for (std::size_t i = 0; i < axes_.size(); ++i)
    if (axes_[i].name == name) return static_cast<int>(i);
  throw DimensionMismatchError("no grid axis named " + std::string(name));
}

Complex& GridFunction::at(const std::vector<int>& idx) {
  std::size_t flat = 0;
  for (std::size_t d = 0; d < axes_.size(); ++d)
    flat = flat * axes_[d].count + static_cast<std::size_t>(idx[d]);
  return values_[flat];
}

std::vector<double> GridFunction::point(const std::vector<int>& idx) const {
  std::vector<double> pt(axes_.size());
  for (std::size_t d = 0; d < axes_.size(); ++d) pt[d] = axes_[d].point(idx[d]);
  return pt;
}

GridFunction& GridFunction::operator+=(const GridFunction& other) {
  if (axes_ != other.axes_) throw DimensionMismatchError("grid axes mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& other) {
  if (axes_ != other.axes_) throw DimensionMismatchError("grid axes mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

GridFunction& GridFunction::operator*=(Complex c) {
  for (auto& v : values_) v *= c;
  return *this;
}

GridFunction& GridFunction::multiply_pointwise(
    const std::function<Complex(const std::vector<double>&)>& fn) {
  const int na = static_cast<int>(axes_.size());
  std::vector<int> idx(na, 0);
  std::vector<double> pt(na);
  for (std::size_t flat = 0; flat < values_.size(); ++flat) {
    for (int d = 0; d < na; ++d) pt[d] = axes_[d].point(idx[d]);
    values_[flat] *= fn(pt);
    for (int d = na - 1; d >= 0; --d) {
      if (++idx[d] < axes_[d].count) break;
      idx[d] = 0;
    }
  }
  return *this;
}

GridFunction& GridFunction::multiply_symbol(const ExpPolySymbol& coeff) {
  std::vector<int> var_axis;
  for (const auto& v : coeff.space().pos_vars) var_axis.push_back(axis_index(v));
  if (!coeff.space().p_vars.empty())
    throw DimensionMismatchError("grid coefficients must be position-only symbols");
  return multiply_pointwise([&](const std::vector<double>& pt) {
    Complex sum(0.0);
    for (const auto& t : coeff.terms()) {
      Complex arg(0.0);
      for (std::size_t i = 0; i < var_axis.size(); ++i)
        arg += t.q_linform[i] * pt[var_axis[i]];
      sum += t.coeff * std::exp(arg);
    }
    return sum;
  });
}

double GridFunction::sup_norm() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, std::abs(v));
  return m;
}

double GridFunction::l2_norm() const {
  const int na = static_cast<int>(axes_.size());
  std::vector<int> idx(na, 0);
  double sum = 0.0;
  for (std::size_t flat = 0; flat < values_.size(); ++flat) {
    double w = 1.0;
    for (int d = 0; d < na; ++d) w *= trapezoid_weight(axes_[d], idx[d]);
    sum += w * std::norm(values_[flat]);
    for (int d = na - 1; d >= 0; --d) {
      if (++idx[d] < axes_[d].count) break;
      idx[d] = 0;
    }
  }
  return std::sqrt(sum);
}

double GridFunction::boundary_mass_fraction(double fraction) const {
  const int na = static_cast<int>(axes_.size());
  std::vector<int> idx(na, 0);
  double total = 0.0, boundary = 0.0;
  for (std::size_t flat = 0; flat < values_.size(); ++flat) {
    const double m = std::norm(values_[flat]);
    total += m;
    for (int d = 0; d < na; ++d) {
      if (axes_[d].periodic) continue;
      const int band = std::max(1, static_cast<int>(axes_[d].count * fraction));
      if (idx[d] < band || idx[d] >= axes_[d].count - band) {
        boundary += m;
        break;
      }
    }
    for (int d = na - 1; d >= 0; --d) {
      if (++idx[d] < axes_[d].count) break;
      idx[d] = 0;
    }
  }
  return total == 0.0 ? 0.0 : boundary / total;
}

void GridFunction::save(const std::string& json_path, bool single_precision) const {
  const std::string bin_path = json_path + ".bin";
  nlohmann::ordered_json header;
  header["schema"] = "1";
  header["dtype"] = single_precision ? "complex64" : "complex128";
  header["sidecar"] = bin_path.substr(bin_path.find_last_of('/') + 1);
  header["axes"] = nlohmann::ordered_json::array();
  for (const auto& a : axes_) {
    header["axes"].push_back({{"name", a.name},
                              {"min", a.min},
                              {"max", a.max},
                              {"count", a.count},
                              {"periodic", a.periodic}});
  }
  std::ofstream jh(json_path, std::ios::binary);
  if (!jh) throw ParseError("cannot write " + json_path);
  jh << header.dump(2) << "\n";

  std::ofstream bin(bin_path, std::ios::binary);
  if (!bin) throw ParseError("cannot write " + bin_path);
  if (single_precision) {
    for (const auto& v : values_) {
      const float re = static_cast<float>(v.real()), im = static_cast<float>(v.imag());
      bin.write(reinterpret_cast<const char*>(&re), sizeof re);
      bin.write(reinterpret_cast<const char*>(&im), sizeof im);
    }
  } else {
    for (const auto& v : values_) {
      const double re = v.real(), im = v.imag();
      bin.write(reinterpret_cast<const char*>(&re), sizeof re);
      bin.write(reinterpret_cast<const char*>(&im), sizeof im);
    }
  }
}

GridFunction GridFunction::load(const std::string& json_path) {
  std::ifstream jh(json_path, std::ios::binary);
  if (!jh) throw ParseError("cannot open " + json_path);
  nlohmann::json header;
  try {
    jh >> header;
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid grid header: ") + e.what());
  }
  std::vector<Axis> axes;
  try {
    for (const auto& a : header.at("axes")) {
      axes.push_back(Axis{a.at("name").get<std::string>(), a.at("min").get<double>(),
                          a.at("max").get<double>(), a.at("count").get<int>(),
                          a.value("periodic", false)});
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("grid header schema error: ") + e.what());
  }
  const std::string dtype = header.value("dtype", "complex128");
  const std::string dir = json_path.substr(0, json_path.find_last_of('/') + 1);
  const std::string bin_path = dir + header.at("sidecar").get<std::string>();
  std::ifstream bin(bin_path, std::ios::binary);
  if (!bin) throw ParseError("cannot open sidecar " + bin_path);

  GridFunction g(std::move(axes));
  if (dtype == "complex64") {
    for (auto& v : g.values_) {
      float re = 0, im = 0;
      bin.read(reinterpret_cast<char*>(&re), sizeof re);
      bin.read(reinterpret_cast<char*>(&im), sizeof im);
      v = Complex(re, im);
    }
  } else if (dtype == "complex128") {
    for (auto& v : g.values_) {
      double re = 0, im = 0;
      bin.read(reinterpret_cast<char*>(&re), sizeof re);
      bin.read(reinterpret_cast<char*>(&im), sizeof im);
      v = Complex(re, im);
    }
  } else {
    throw ParseError("unknown dtype " + dtype);
  }
  if (!bin) throw ParseError("sidecar " + bin_path + " too short");
  return g;
}

double sup_difference(const GridFunction& a, const GridFunction& b) {
  if (a.axes() != b.axes()) throw DimensionMismatchError("grid axes mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i)
    m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
  return m;
}

double sup_difference_interior(const GridFunction& a, const GridFunction& b) {
  if (a.axes() != b.axes()) throw DimensionMismatchError("grid axes mismatch");
  const auto& axes = a.axes();
  const int na = static_cast<int>(axes.size());
  std::vector<int> idx(na, 0);
  double m = 0.0;
  for (std::size_t flat = 0; flat < a.values().size(); ++flat) {
    bool interior = true;
    for (int d = 0; d < na && interior; ++d) {
      if (axes[d].periodic) continue;
      const int quarter = axes[d].count / 4;
      interior = idx[d] >= quarter && idx[d] < axes[d].count - quarter;
    }
    if (interior) m = std::max(m, std::abs(a.values()[flat] - b.values()[flat]));
    for (int d = na - 1; d >= 0; --d) {
      if (++idx[d] < axes[d].count) break;
      idx[d] = 0;
    }
  }
  return m;
}

double l2_difference(const GridFunction& a, const GridFunction& b) {
  GridFunction diff = a;
  diff -= b;
  return diff.l2_norm();
}

}  // namespace qorbit
