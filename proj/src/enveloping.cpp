#include "qorbit/enveloping.hpp"

#include <random>
#include <sstream>

namespace qorbit {

UEElement::UEElement(LieAlgebra::Ptr algebra, std::map<UEWord, Complex> terms)
    : algebra_(std::move(algebra)), terms_(std::move(terms)) {
  for (const auto& [w, c] : terms_)
    for (int letter : w)
      if (letter < 0 || letter >= algebra_->dim())
        throw DimensionMismatchError("word letter out of range");
  prune();
}

UEElement UEElement::unit(LieAlgebra::Ptr algebra, Complex c) {
  return UEElement(std::move(algebra), {{UEWord{}, c}});
}

UEElement UEElement::word(LieAlgebra::Ptr algebra, UEWord w, Complex c) {
  return UEElement(std::move(algebra), {{std::move(w), c}});
}

UEElement UEElement::from_element(const AlgebraElement& z) {
  std::map<UEWord, Complex> terms;
  for (int i = 0; i < z.algebra->dim(); ++i)
    if (z.coeffs[i] != 0.0) terms[{i}] = z.coeffs[i];
  return UEElement(z.algebra, std::move(terms));
}

void UEElement::prune() {
  for (auto it = terms_.begin(); it != terms_.end();)
    it = it->second == Complex(0.0) ? terms_.erase(it) : std::next(it);
}

UEElement UEElement::scaled(Complex c) const {
  UEElement out(algebra_);
  if (c == Complex(0.0)) return out;
  out.terms_ = terms_;
  for (auto& [w, coeff] : out.terms_) coeff *= c;
  return out;
}

UEElement operator+(const UEElement& a, const UEElement& b) {
  if (a.algebra_ != b.algebra_)
    throw DimensionMismatchError("elements belong to different algebras");
  UEElement out = a;
  for (const auto& [w, c] : b.terms_) out.terms_[w] += c;
  out.prune();
  return out;
}

UEElement operator-(const UEElement& a, const UEElement& b) {
  return a + b.scaled(Complex(-1.0, 0.0));
}

UEElement ue_mul(const UEElement& a, const UEElement& b) {
  if (a.algebra() != b.algebra())
    throw DimensionMismatchError("elements belong to different algebras");
  UEElement out(a.algebra());
  std::map<UEWord, Complex> terms;
  for (const auto& [wa, ca] : a.terms())
    for (const auto& [wb, cb] : b.terms()) {
      UEWord w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      terms[w] += ca * cb;
    }
  return UEElement(a.algebra(), std::move(terms));
}

namespace {

// First position where rank[w[pos]] > rank[w[pos+1]], or -1.
int leftmost_inversion(const UEWord& w, const std::vector<int>& rank) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (rank[w[i]] > rank[w[i + 1]]) return static_cast<int>(i);
  return -1;
}

std::vector<int> all_inversions(const UEWord& w, const std::vector<int>& rank) {
  std::vector<int> out;
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (rank[w[i]] > rank[w[i + 1]]) out.push_back(static_cast<int>(i));
  return out;
}

UEElement normal_form_impl(const UEElement& e, const std::vector<int>& order,
                           const std::function<int(const UEWord&)>& pick) {
  const auto& alg = e.algebra();
  std::vector<int> rank(alg->dim(), -1);
  if (static_cast<int>(order.size()) != alg->dim())
    throw DimensionMismatchError("order must be a permutation of the basis indices");
  for (std::size_t r = 0; r < order.size(); ++r) {
    if (order[r] < 0 || order[r] >= alg->dim() || rank[order[r]] != -1)
      throw DimensionMismatchError("order must be a permutation of the basis indices");
    rank[order[r]] = static_cast<int>(r);
  }

  std::map<UEWord, Complex> done;
  std::map<UEWord, Complex> work(e.terms());
  while (!work.empty()) {
    auto it = work.begin();
    const UEWord w = it->first;
    const Complex c = it->second;
    work.erase(it);
    if (c == Complex(0.0)) continue;
    const int pos = pick(w);
    if (pos < 0) {
      done[w] += c;
      continue;
    }
    // X_j X_i -> X_i X_j + [X_j, X_i]
    UEWord swapped = w;
    std::swap(swapped[pos], swapped[pos + 1]);
    work[swapped] += c;
    const Eigen::VectorXd br = alg->bracket_vec(w[pos], w[pos + 1]);
    for (int k = 0; k < alg->dim(); ++k) {
      if (br[k] == 0.0) continue;
      UEWord contracted;
      contracted.reserve(w.size() - 1);
      contracted.insert(contracted.end(), w.begin(), w.begin() + pos);
      contracted.push_back(k);
      contracted.insert(contracted.end(), w.begin() + pos + 2, w.end());
      work[contracted] += c * br[k];
    }
  }
  return UEElement(alg, std::move(done));
}

}  // namespace

UEElement pbw_normal_form(const UEElement& e, const std::vector<int>& order) {
  std::vector<int> rank(e.algebra()->dim());
  for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = static_cast<int>(r);
  return normal_form_impl(e, order,
                          [&rank](const UEWord& w) { return leftmost_inversion(w, rank); });
}

UEElement pbw_normal_form_randomized(const UEElement& e, const std::vector<int>& order,
                                     std::uint64_t seed) {
  std::vector<int> rank(e.algebra()->dim());
  for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = static_cast<int>(r);
  auto rng = std::make_shared<std::mt19937_64>(seed);
  return normal_form_impl(e, order, [&rank, rng](const UEWord& w) {
    const auto inv = all_inversions(w, rank);
    if (inv.empty()) return -1;
    std::uniform_int_distribution<std::size_t> pick(0, inv.size() - 1);
    return inv[pick(*rng)];
  });
}

DiffOperator quantize_ue(const UEElement& e, const OrbitChart& chart) {
  if (e.algebra() != chart.algebra)
    throw DimensionMismatchError("element is not in the chart's algebra");
  std::vector<DiffOperator> letter_ops;
  for (int i = 0; i < chart.algebra->dim(); ++i)
    letter_ops.push_back(quantize_symbol(chart.basis_symbols[i], chart));

  DiffOperator out = DiffOperator::zero(chart.operator_space());
  for (const auto& [w, c] : e.terms()) {
    DiffOperator word_op = DiffOperator::identity(chart.operator_space());
    for (int letter : w) word_op = compose(word_op, letter_ops[letter]);
    out = out + word_op.scaled(c);
  }
  return out;
}

double max_coeff_deviation(const UEElement& a, const UEElement& b) {
  const UEElement diff = a - b;
  double m = 0.0;
  for (const auto& [w, c] : diff.terms()) m = std::max(m, std::abs(c));
  return m;
}

std::string UEElement::format() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    out << "(" << format_complex(c) << ")";
    for (int letter : w) out << "." << algebra_->basis_labels()[letter];
  }
  return out.str();
}

}  // namespace qorbit
