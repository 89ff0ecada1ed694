#include "qorbit/symbol.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace qorbit {

namespace {

constexpr double kKeyTol = 1e-12;

// Strict-weak ordering on term keys: p-exponents, then linear-form entries
// by (re, im). Used only to bring mergeable keys adjacent.
bool key_less(const ExpPolyTerm& a, const ExpPolyTerm& b) {
  if (a.p_exps != b.p_exps) return a.p_exps < b.p_exps;
  for (std::size_t i = 0; i < a.q_linform.size(); ++i) {
    const Complex& x = a.q_linform[i];
    const Complex& y = b.q_linform[i];
    if (x.real() != y.real()) return x.real() < y.real();
    if (x.imag() != y.imag()) return x.imag() < y.imag();
  }
  return false;
}

bool key_equal_tol(const ExpPolyTerm& a, const ExpPolyTerm& b) {
  if (a.p_exps != b.p_exps) return false;
  for (std::size_t i = 0; i < a.q_linform.size(); ++i) {
    if (std::abs(a.q_linform[i].real() - b.q_linform[i].real()) > kKeyTol) return false;
    if (std::abs(a.q_linform[i].imag() - b.q_linform[i].imag()) > kKeyTol) return false;
  }
  return true;
}

std::string format_real(double x) {
  if (x == 0.0) x = 0.0;  // normalize -0
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace

int VariableSpace::p_index(std::string_view name) const {
  for (std::size_t i = 0; i < p_vars.size(); ++i)
    if (p_vars[i] == name) return static_cast<int>(i);
  return -1;
}

int VariableSpace::pos_index(std::string_view name) const {
  for (std::size_t i = 0; i < pos_vars.size(); ++i)
    if (pos_vars[i] == name) return static_cast<int>(i);
  return -1;
}

int ExpPolyTerm::p_degree() const {
  int d = 0;
  for (int e : p_exps) d += e;
  return d;
}

ExpPolySymbol::ExpPolySymbol(VariableSpace space, std::vector<ExpPolyTerm> terms)
    : space_(std::move(space)), terms_(std::move(terms)) {
  for (auto& t : terms_) {
    if (t.p_exps.size() != space_.p_vars.size() ||
        t.q_linform.size() != space_.pos_vars.size())
      throw DimensionMismatchError("term shape does not match variable space");
  }
  canonicalize();
}

ExpPolySymbol ExpPolySymbol::constant(VariableSpace space, Complex c) {
  ExpPolyTerm t;
  t.coeff = c;
  t.p_exps.assign(space.p_vars.size(), 0);
  t.q_linform.assign(space.pos_vars.size(), Complex(0.0));
  return ExpPolySymbol(std::move(space), {std::move(t)});
}

ExpPolySymbol ExpPolySymbol::p_variable(VariableSpace space, std::string_view name) {
  const int i = space.p_index(name);
  if (i < 0) throw UnsupportedError("not a p-variable: " + std::string(name));
  ExpPolyTerm t;
  t.coeff = 1.0;
  t.p_exps.assign(space.p_vars.size(), 0);
  t.p_exps[i] = 1;
  t.q_linform.assign(space.pos_vars.size(), Complex(0.0));
  return ExpPolySymbol(std::move(space), {std::move(t)});
}

ExpPolySymbol ExpPolySymbol::exponential(VariableSpace space,
                                         const std::map<std::string, Complex>& linform,
                                         Complex coeff) {
  ExpPolyTerm t;
  t.coeff = coeff;
  t.p_exps.assign(space.p_vars.size(), 0);
  t.q_linform.assign(space.pos_vars.size(), Complex(0.0));
  for (const auto& [name, a] : linform) {
    const int i = space.pos_index(name);
    if (i < 0) throw UnsupportedError("not a position variable: " + name);
    t.q_linform[i] += a;
  }
  return ExpPolySymbol(std::move(space), {std::move(t)});
}

int ExpPolySymbol::p_degree() const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.p_degree());
  return d;
}

void ExpPolySymbol::canonicalize() {
  std::sort(terms_.begin(), terms_.end(), key_less);
  std::vector<ExpPolyTerm> merged;
  for (auto& t : terms_) {
    if (!merged.empty() && key_equal_tol(merged.back(), t))
      merged.back().coeff += t.coeff;
    else
      merged.push_back(std::move(t));
  }
  terms_.clear();
  for (auto& t : merged)
    if (t.coeff != Complex(0.0, 0.0)) terms_.push_back(std::move(t));
}

ExpPolySymbol ExpPolySymbol::scaled(Complex c) const {
  if (c == Complex(0.0, 0.0)) return zero(space_);
  ExpPolySymbol out = *this;
  for (auto& t : out.terms_) t.coeff *= c;
  return out;
}

ExpPolySymbol ExpPolySymbol::deriv(std::string_view var) const {
  std::vector<ExpPolyTerm> out;
  const int pi = space_.p_index(var);
  const int qi = pi < 0 ? space_.pos_index(var) : -1;
  if (pi < 0 && qi < 0)
    throw UnsupportedError("unknown variable: " + std::string(var));
  for (const auto& t : terms_) {
    if (pi >= 0) {
      if (t.p_exps[pi] == 0) continue;
      ExpPolyTerm d = t;
      d.coeff *= static_cast<double>(t.p_exps[pi]);
      d.p_exps[pi] -= 1;
      out.push_back(std::move(d));
    } else {
      if (t.q_linform[qi] == Complex(0.0, 0.0)) continue;
      ExpPolyTerm d = t;
      d.coeff *= t.q_linform[qi];
      out.push_back(std::move(d));
    }
  }
  return ExpPolySymbol(space_, std::move(out));
}

Complex ExpPolySymbol::eval(const std::map<std::string, Complex>& point) const {
  std::vector<Complex> p_vals(space_.p_vars.size());
  std::vector<Complex> pos_vals(space_.pos_vars.size());
  for (std::size_t i = 0; i < space_.p_vars.size(); ++i) {
    auto it = point.find(space_.p_vars[i]);
    if (it == point.end())
      throw DimensionMismatchError("eval point missing variable " + space_.p_vars[i]);
    p_vals[i] = it->second;
  }
  for (std::size_t i = 0; i < space_.pos_vars.size(); ++i) {
    auto it = point.find(space_.pos_vars[i]);
    if (it == point.end())
      throw DimensionMismatchError("eval point missing variable " + space_.pos_vars[i]);
    pos_vals[i] = it->second;
  }
  Complex sum(0.0);
  for (const auto& t : terms_) {
    Complex v = t.coeff;
    for (std::size_t i = 0; i < p_vals.size(); ++i)
      for (int e = 0; e < t.p_exps[i]; ++e) v *= p_vals[i];
    Complex arg(0.0);
    for (std::size_t i = 0; i < pos_vals.size(); ++i) arg += t.q_linform[i] * pos_vals[i];
    sum += v * std::exp(arg);
  }
  return sum;
}

ExpPolySymbol ExpPolySymbol::shifted(std::string_view var,
                                     const std::map<std::string, Complex>& shift,
                                     Complex const_shift) const {
  const int qi = space_.pos_index(var);
  if (qi < 0) {
    if (space_.p_index(var) >= 0)
      throw UnsupportedError("shift target must be a position variable");
    throw UnsupportedError("unknown variable: " + std::string(var));
  }
  std::vector<Complex> shift_vec(space_.pos_vars.size(), Complex(0.0));
  for (const auto& [name, a] : shift) {
    const int i = space_.pos_index(name);
    if (i < 0)
      throw UnsupportedError("shift may only involve position variables, got " + name);
    shift_vec[i] += a;
  }
  std::vector<ExpPolyTerm> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    ExpPolyTerm s = t;
    const Complex a = t.q_linform[qi];
    if (a != Complex(0.0, 0.0)) {
      for (std::size_t i = 0; i < shift_vec.size(); ++i) s.q_linform[i] += a * shift_vec[i];
      s.coeff *= std::exp(a * const_shift);
    }
    out.push_back(std::move(s));
  }
  return ExpPolySymbol(space_, std::move(out));
}

ExpPolySymbol operator+(const ExpPolySymbol& a, const ExpPolySymbol& b) {
  if (a.space_ != b.space_)
    throw DimensionMismatchError("symbols live in different variable spaces");
  std::vector<ExpPolyTerm> terms = a.terms_;
  terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
  return ExpPolySymbol(a.space_, std::move(terms));
}

ExpPolySymbol operator-(const ExpPolySymbol& a, const ExpPolySymbol& b) {
  return a + b.scaled(Complex(-1.0, 0.0));
}

ExpPolySymbol operator*(const ExpPolySymbol& a, const ExpPolySymbol& b) {
  if (a.space_ != b.space_)
    throw DimensionMismatchError("symbols live in different variable spaces");
  std::vector<ExpPolyTerm> terms;
  terms.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) {
      ExpPolyTerm u;
      u.coeff = s.coeff * t.coeff;
      u.p_exps.resize(s.p_exps.size());
      for (std::size_t i = 0; i < u.p_exps.size(); ++i) u.p_exps[i] = s.p_exps[i] + t.p_exps[i];
      u.q_linform.resize(s.q_linform.size());
      for (std::size_t i = 0; i < u.q_linform.size(); ++i)
        u.q_linform[i] = s.q_linform[i] + t.q_linform[i];
      terms.push_back(std::move(u));
    }
  return ExpPolySymbol(a.space_, std::move(terms));
}

double max_coeff_deviation(const ExpPolySymbol& a, const ExpPolySymbol& b) {
  return max_abs_coeff(a - b);
}

double max_abs_coeff(const ExpPolySymbol& s) {
  double m = 0.0;
  for (const auto& t : s.terms()) m = std::max(m, std::abs(t.coeff));
  return m;
}

std::string format_complex(Complex c) {
  if (c.imag() == 0.0) return format_real(c.real());
  if (c.real() == 0.0) {
    if (c.imag() == 1.0) return "i";
    if (c.imag() == -1.0) return "-i";
    return format_real(c.imag()) + "*i";
  }
  std::string s = format_real(c.real());
  if (c.imag() == 1.0) return s + " + i";
  if (c.imag() == -1.0) return s + " - i";
  if (c.imag() > 0.0) return s + " + " + format_real(c.imag()) + "*i";
  return s + " - " + format_real(-c.imag()) + "*i";
}

std::string ExpPolySymbol::format() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& t : terms_) {
    std::vector<std::string> factors;
    for (std::size_t i = 0; i < space_.p_vars.size(); ++i) {
      if (t.p_exps[i] == 0) continue;
      if (t.p_exps[i] == 1)
        factors.push_back(space_.p_vars[i]);
      else
        factors.push_back(space_.p_vars[i] + "^" + std::to_string(t.p_exps[i]));
    }
    {
      std::string lin;
      for (std::size_t i = 0; i < space_.pos_vars.size(); ++i) {
        const Complex a = t.q_linform[i];
        auto append = [&lin](double v, bool imaginary, const std::string& var) {
          if (v == 0.0) return;
          std::string piece;
          const double mag = std::abs(v);
          if (mag != 1.0) piece += format_real(mag) + "*";
          if (imaginary) piece += "i*";
          piece += var;
          if (lin.empty())
            lin = (v < 0 ? "-" : "") + piece;
          else
            lin += (v < 0 ? " - " : " + ") + piece;
        };
        append(a.real(), false, space_.pos_vars[i]);
        append(a.imag(), true, space_.pos_vars[i]);
      }
      if (!lin.empty()) factors.push_back("exp(" + lin + ")");
    }

    // Coefficient: positive reals print bare, negative reals go through the
    // " - " separator, anything complex is parenthesized.
    Complex c = t.coeff;
    bool negative = false;
    if (c.imag() == 0.0 && c.real() < 0.0) {
      negative = true;
      c = -c;
    }
    std::string body;
    if (c == Complex(1.0, 0.0) && !factors.empty()) {
      // omit the unit coefficient
    } else if (c.imag() == 0.0) {
      body = format_real(c.real());
    } else {
      body = "(" + format_complex(c) + ")";
    }
    for (const auto& f : factors) {
      if (!body.empty()) body += "*";
      body += f;
    }
    if (body.empty()) body = "1";

    if (first) {
      out << (negative ? "-" : "") << body;
      first = false;
    } else {
      out << (negative ? " - " : " + ") << body;
    }
  }
  return out.str();
}

}  // namespace qorbit
