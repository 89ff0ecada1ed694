#include "qorbit/algebra.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qorbit {

LieAlgebra::LieAlgebra(std::string name, std::vector<std::string> basis_labels)
    : name_(std::move(name)), labels_(std::move(basis_labels)) {
  if (labels_.empty()) throw ParseError("algebra dimension must be positive");
}

void LieAlgebra::set_bracket_term(int i, int j, int k, double c) {
  if (i < 0 || j < 0 || k < 0 || i >= dim() || j >= dim() || k >= dim())
    throw ParseError("bracket index out of range");
  table_[{i, j}].emplace_back(k, c);
}

int LieAlgebra::label_index(const std::string& label) const {
  for (int i = 0; i < dim(); ++i)
    if (labels_[i] == label) return i;
  throw ParseError("unknown basis label '" + label + "' in algebra " + name_);
}

double LieAlgebra::c(int i, int j, int k) const {
  auto it = table_.find({i, j});
  if (it != table_.end()) {
    double sum = 0.0;
    for (const auto& [kk, cc] : it->second)
      if (kk == k) sum += cc;
    return sum;
  }
  if (i == j) return 0.0;
  it = table_.find({j, i});
  if (it == table_.end()) return 0.0;
  double sum = 0.0;
  for (const auto& [kk, cc] : it->second)
    if (kk == k) sum += cc;
  return -sum;
}

Eigen::VectorXd LieAlgebra::bracket_vec(int i, int j) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dim());
  auto it = table_.find({i, j});
  if (it != table_.end()) {
    for (const auto& [k, c] : it->second) out[k] += c;
    return out;
  }
  if (i == j) return out;
  it = table_.find({j, i});
  if (it == table_.end()) return out;
  for (const auto& [k, c] : it->second) out[k] -= c;
  return out;
}

std::shared_ptr<const LieAlgebra> LieAlgebra::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
  }
  try {
    auto alg = std::make_shared<LieAlgebra>(j.at("name").get<std::string>(),
                                            j.at("basis").get<std::vector<std::string>>());
    const int dim = j.at("dim").get<int>();
    if (dim != alg->dim())
      throw ParseError("dim field does not match basis list length");
    if (j.contains("brackets")) {
      for (const auto& entry : j.at("brackets")) {
        const int i = entry.at("i").get<int>();
        const int jj = entry.at("j").get<int>();
        if (i >= jj)
          throw ParseError("bracket entries require i < j (antisymmetry is implied)");
        for (const auto& term : entry.at("terms")) {
          alg->set_bracket_term(i - 1, jj - 1, term.at("k").get<int>() - 1,
                                term.at("c").get<double>());
        }
      }
    }
    return alg;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("algebra file schema error: ") + e.what());
  }
}

std::shared_ptr<const LieAlgebra> LieAlgebra::from_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open algebra file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

std::string LieAlgebra::to_json_text() const {
  nlohmann::ordered_json j;
  j["name"] = name_;
  j["dim"] = dim();
  j["basis"] = labels_;
  j["brackets"] = nlohmann::ordered_json::array();
  for (const auto& [ij, terms] : table_) {
    nlohmann::ordered_json entry;
    entry["i"] = ij.first + 1;
    entry["j"] = ij.second + 1;
    entry["terms"] = nlohmann::ordered_json::array();
    for (const auto& [k, c] : terms) entry["terms"].push_back({{"k", k + 1}, {"c", c}});
    j["brackets"].push_back(entry);
  }
  return j.dump(2);
}

AlgebraElement::AlgebraElement(LieAlgebra::Ptr alg, Eigen::VectorXd c)
    : algebra(std::move(alg)), coeffs(std::move(c)) {
  if (coeffs.size() != algebra->dim())
    throw DimensionMismatchError("element coefficient vector has wrong length");
}

AlgebraElement AlgebraElement::basis(LieAlgebra::Ptr alg, int i) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(alg->dim());
  c[i] = 1.0;
  return AlgebraElement(std::move(alg), std::move(c));
}

AlgebraElement AlgebraElement::zero(LieAlgebra::Ptr alg) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(alg->dim());
  return AlgebraElement(std::move(alg), std::move(c));
}

CoadjointFunctional::CoadjointFunctional(LieAlgebra::Ptr alg, Eigen::VectorXd c)
    : algebra(std::move(alg)), coords(std::move(c)) {
  if (coords.size() != algebra->dim())
    throw DimensionMismatchError("functional coordinate vector has wrong length");
}

namespace {
void require_same_algebra(const LieAlgebra::Ptr& a, const LieAlgebra::Ptr& b) {
  if (a != b && a->to_json_text() != b->to_json_text())
    throw DimensionMismatchError("operands belong to different algebras");
}
}  // namespace

AlgebraElement bracket(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_algebra(a.algebra, b.algebra);
  const int n = a.algebra->dim();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i) {
    if (a.coeffs[i] == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      if (b.coeffs[j] == 0.0) continue;
      out += a.coeffs[i] * b.coeffs[j] * a.algebra->bracket_vec(i, j);
    }
  }
  return AlgebraElement(a.algebra, std::move(out));
}

ValidationReport check_jacobi(const LieAlgebra& alg, double tol) {
  ValidationReport report;
  const int n = alg.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const double v = alg.c(i, j, k) + alg.c(j, i, k);
        if (std::abs(v) > tol) report.antisymmetry.push_back({i, j, k, v});
      }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double sum = 0.0;
          for (int m = 0; m < n; ++m) {
            sum += alg.c(i, j, m) * alg.c(m, k, l) + alg.c(j, k, m) * alg.c(m, i, l) +
                   alg.c(k, i, m) * alg.c(m, j, l);
          }
          if (std::abs(sum) > tol) report.jacobi.push_back({i, j, k, l, sum});
        }
  return report;
}

Eigen::MatrixXd ad_matrix(const AlgebraElement& u) {
  const int n = u.algebra->dim();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    Eigen::VectorXd col = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i)
      if (u.coeffs[i] != 0.0) col += u.coeffs[i] * u.algebra->bracket_vec(i, j);
    m.col(j) = col;
  }
  return m;
}

Eigen::MatrixXd matrix_exp(const Eigen::MatrixXd& m, int series_order) {
  const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();  // induced inf-norm
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Eigen::MatrixXd a = m / std::ldexp(1.0, squarings);

  Eigen::MatrixXd result = Eigen::MatrixXd::Identity(m.rows(), m.cols());
  Eigen::MatrixXd term = result;
  for (int k = 1; k <= series_order; ++k) {
    term = (term * a) / static_cast<double>(k);
    result += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18 * result.cwiseAbs().maxCoeff()) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

CoadjointFunctional coadjoint_apply(const AlgebraElement& u, const CoadjointFunctional& f) {
  require_same_algebra(u.algebra, f.algebra);
  const Eigen::MatrixXd e = matrix_exp(-ad_matrix(u));
  return CoadjointFunctional(f.algebra, e.transpose() * f.coords);
}

Eigen::MatrixXd poisson_matrix(const CoadjointFunctional& f) {
  const int n = f.algebra->dim();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double v = f.algebra->bracket_vec(i, j).dot(f.coords);
      m(i, j) = v;
      m(j, i) = -v;
    }
  return m;
}

int matrix_rank(const Eigen::MatrixXd& m, double rel_threshold) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv[0] == 0.0) return 0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > rel_threshold * sv[0]) ++rank;
  return rank;
}

const char* const kAffRealJson = R"({
  "name": "aff_r",
  "dim": 2,
  "basis": ["X", "Y"],
  "brackets": [
    {"i": 1, "j": 2, "terms": [{"k": 2, "c": 1}]}
  ]
})";

const char* const kAffComplexJson = R"({
  "name": "aff_c",
  "dim": 4,
  "basis": ["X1", "X2", "Y1", "Y2"],
  "brackets": [
    {"i": 1, "j": 3, "terms": [{"k": 3, "c": 1}]},
    {"i": 1, "j": 4, "terms": [{"k": 4, "c": 1}]},
    {"i": 2, "j": 3, "terms": [{"k": 4, "c": 1}]},
    {"i": 2, "j": 4, "terms": [{"k": 3, "c": -1}]}
  ]
})";

LieAlgebra::Ptr aff_real() {
  static const LieAlgebra::Ptr alg = LieAlgebra::from_json_text(kAffRealJson);
  return alg;
}

LieAlgebra::Ptr aff_complex() {
  static const LieAlgebra::Ptr alg = LieAlgebra::from_json_text(kAffComplexJson);
  return alg;
}

}  // namespace qorbit
