#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "qorbit/enveloping.hpp"
#include "test_util.hpp"

using namespace qorbit;

namespace {

const Complex I(0.0, 1.0);

UEWord random_word(std::mt19937_64& rng, int dim, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> letter(0, dim - 1);
  UEWord w(len(rng));
  for (auto& l : w) l = letter(rng);
  return w;
}

UEElement random_element(const LieAlgebra::Ptr& alg, std::mt19937_64& rng, int terms = 3,
                         int max_len = 4) {
  std::map<UEWord, Complex> t;
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (int k = 0; k < terms; ++k)
    t[random_word(rng, alg->dim(), max_len)] += Complex(d(rng), d(rng));
  return UEElement(alg, std::move(t));
}

}  // namespace

TEST_CASE("ue_mul concatenates and distributes") {
  auto ar = aff_real();
  auto X = UEElement::word(ar, {0});
  auto Y = UEElement::word(ar, {1});
  CHECK(ue_mul(X, Y).terms().begin()->first == UEWord{0, 1});
  CHECK(max_coeff_deviation(ue_mul(UEElement::unit(ar), X), X) == 0.0);
  CHECK(max_coeff_deviation(ue_mul(X, UEElement::unit(ar)), X) == 0.0);

  std::mt19937_64 rng(1);
  for (int k = 0; k < 30; ++k) {
    auto a = random_element(ar, rng);
    auto b = random_element(ar, rng);
    auto c = random_element(ar, rng);
    CHECK(max_coeff_deviation(ue_mul(a, b + c), ue_mul(a, b) + ue_mul(a, c)) < 1e-14);
    CHECK(max_coeff_deviation(ue_mul(a + b, c), ue_mul(a, c) + ue_mul(b, c)) < 1e-14);
    CHECK(max_coeff_deviation(ue_mul(ue_mul(a, b), c), ue_mul(a, ue_mul(b, c))) < 1e-14);
  }
}

TEST_CASE("pbw normal form on affR") {
  auto ar = aff_real();
  // YX -> XY + [Y,X] = XY - Y
  auto yx = UEElement::word(ar, {1, 0});
  auto nf = pbw_normal_form(yx, {0, 1});
  auto expected = UEElement::word(ar, {0, 1}) - UEElement::word(ar, {1});
  CHECK(max_coeff_deviation(nf, expected) == 0.0);

  // already-ordered words are untouched
  auto xy = UEElement::word(ar, {0, 1}, Complex(2.0, 1.0));
  CHECK(max_coeff_deviation(pbw_normal_form(xy, {0, 1}), xy) == 0.0);
  CHECK(pbw_normal_form(UEElement::unit(ar), {0, 1}).format() ==
        UEElement::unit(ar).format());
}

TEST_CASE("pbw normal form on affC matches the bracket table") {
  auto ac = aff_complex();
  // Y2 X2 -> X2 Y2 + [Y2, X2] = X2 Y2 + Y1
  auto nf = pbw_normal_form(UEElement::word(ac, {3, 1}), {0, 1, 2, 3});
  auto expected = UEElement::word(ac, {1, 3}) + UEElement::word(ac, {2});
  CHECK(max_coeff_deviation(nf, expected) == 0.0);
}

TEST_CASE("pbw rewriting is confluent across randomized strategies") {
  auto ac = aff_complex();
  const std::vector<int> order{0, 1, 2, 3};
  std::mt19937_64 rng(2);
  for (int k = 0; k < 60; ++k) {
    auto e = UEElement::word(ac, random_word(rng, 4, 6));
    const std::string reference = pbw_normal_form(e, order).format();
    for (std::uint64_t strategy = 0; strategy < 20; ++strategy)
      CHECK(pbw_normal_form_randomized(e, order, strategy).format() == reference);
  }
}

TEST_CASE("normal form result has no inversions and keeps the top part") {
  auto ac = aff_complex();
  const std::vector<int> order{0, 1, 2, 3};
  std::mt19937_64 rng(3);
  for (int k = 0; k < 100; ++k) {
    UEWord w = random_word(rng, 4, 6);
    auto nf = pbw_normal_form(UEElement::word(ac, w), order);
    // every output word is nondecreasing
    for (const auto& [word, c] : nf.terms())
      CHECK(std::is_sorted(word.begin(), word.end()));
    // filtration: the unique top-length word is sort(w) with coefficient 1
    UEWord sorted = w;
    std::sort(sorted.begin(), sorted.end());
    int top_len = 0;
    for (const auto& [word, c] : nf.terms()) top_len = std::max<int>(top_len, word.size());
    if (!w.empty()) {
      CHECK(top_len == static_cast<int>(w.size()));
      int top_count = 0;
      for (const auto& [word, c] : nf.terms())
        if (static_cast<int>(word.size()) == top_len) {
          ++top_count;
          CHECK(word == sorted);
          CHECK(std::abs(c - Complex(1.0, 0.0)) < 1e-14);
        }
      CHECK(top_count == 1);
    }
  }
}

TEST_CASE("normal forming twice is idempotent and linear") {
  auto ac = aff_complex();
  const std::vector<int> order{0, 1, 2, 3};
  std::mt19937_64 rng(4);
  for (int k = 0; k < 30; ++k) {
    auto e = random_element(ac, rng);
    auto nf = pbw_normal_form(e, order);
    CHECK(max_coeff_deviation(pbw_normal_form(nf, order), nf) < 1e-13);
  }
  CHECK_THROWS_AS(pbw_normal_form(random_element(ac, rng), {0, 1}), DimensionMismatchError);
  CHECK_THROWS_AS(pbw_normal_form(random_element(ac, rng), {0, 1, 2, 2}),
                  DimensionMismatchError);
}

TEST_CASE("quantize_ue is an algebra homomorphism") {
  for (const auto& id : {"affR+", "affC:0"}) {
    auto chart = chart_by_id(id);
    auto alg = chart.algebra;

    // unit -> identity
    CHECK(max_coeff_deviation(quantize_ue(UEElement::unit(alg), chart),
                              DiffOperator::identity(chart.operator_space())) == 0.0);

    std::mt19937_64 rng(5);
    for (int k = 0; k < 10; ++k) {
      auto a = random_element(alg, rng, 2, 3);
      auto b = random_element(alg, rng, 2, 3);
      auto lhs = quantize_ue(ue_mul(a, b), chart);
      auto rhs = compose(quantize_ue(a, chart), quantize_ue(b, chart));
      CHECK(max_coeff_deviation(lhs, rhs) < 1e-12);
    }
  }
}

TEST_CASE("the relation ideal quantizes to zero") {
  for (const auto& id : {"affR+", "affC:0"}) {
    auto chart = chart_by_id(id);
    auto alg = chart.algebra;
    const int n = alg->dim();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        auto rel = UEElement::word(alg, {i, j}) - UEElement::word(alg, {j, i}) -
                   UEElement::from_element(
                       bracket(AlgebraElement::basis(alg, i), AlgebraElement::basis(alg, j)));
        CHECK(quantize_ue(rel, chart).is_zero());
      }
  }

  // aff(R): XY - YX - Y quantizes to zero
  auto chart = chart_affR(+1);
  auto rel = UEElement::word(chart.algebra, {0, 1}) - UEElement::word(chart.algebra, {1, 0}) -
             UEElement::word(chart.algebra, {1});
  CHECK(quantize_ue(rel, chart).is_zero());

  // X quantizes to the transport generator
  auto lx = quantize_ue(UEElement::word(chart.algebra, {0}), chart);
  CHECK(lx.format() == "0.5*d_q - d_x");
}

TEST_CASE("quantize_ue is constant on PBW classes") {
  for (const auto& id : {"affR+", "affC:0"}) {
    auto chart = chart_by_id(id);
    auto pol = catalog_polarization(chart);
    std::mt19937_64 rng(6);
    for (int k = 0; k < 10; ++k) {
      auto e = random_element(chart.algebra, rng, 2, 4);
      auto nf = pbw_normal_form(e, pol.block_order);
      CHECK(max_coeff_deviation(quantize_ue(e, chart), quantize_ue(nf, chart)) < 1e-11);
    }
  }
}
