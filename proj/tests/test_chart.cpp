#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qorbit/chart.hpp"
#include "qorbit/parse.hpp"
#include "test_util.hpp"

using namespace qorbit;
using namespace qorbit::testutil;

namespace {

AlgebraElement elem(const LieAlgebra::Ptr& alg, std::initializer_list<double> c) {
  Eigen::VectorXd v(alg->dim());
  int i = 0;
  for (double x : c) v[i++] = x;
  return AlgebraElement(alg, v);
}

}  // namespace

TEST_CASE("affR chart") {
  auto c = chart_affR(+1);
  CHECK(c.orbit_id == "affR+");
  CHECK(c.hamiltonian(AlgebraElement::basis(c.algebra, 0)).format() == "p");
  CHECK(c.hamiltonian(AlgebraElement::zero(c.algebra)).is_zero());
  Eigen::MatrixXd expected(2, 2);
  expected << 0, 1, -1, 0;
  CHECK(c.lambda.isApprox(expected));
  CHECK(c.pair_sign(0) == 1.0);

  // alpha p + beta e^q, and the minus chart flips the exponential's sign
  auto h = c.hamiltonian(elem(c.algebra, {2.0, 3.0}));
  CHECK(max_coeff_deviation(h, parse_symbol("2*p + 3*exp(q)", c.phase_space)) == 0.0);
  auto cm = chart_affR(-1);
  auto hm = cm.hamiltonian(elem(cm.algebra, {2.0, 3.0}));
  CHECK(max_coeff_deviation(hm, parse_symbol("2*p - 3*exp(q)", cm.phase_space)) == 0.0);
}

TEST_CASE("affC chart symbols") {
  auto c = chart_affC(0);
  CHECK(c.hamiltonian(AlgebraElement::basis(c.algebra, 0)).format() == "p1");
  CHECK(c.hamiltonian(AlgebraElement::basis(c.algebra, 1)).format() == "-p2");

  // Y1 ~ e^{q1} cos q2 encoded as (e^{q1+iq2} + e^{q1-iq2})/2
  auto y1 = c.hamiltonian(AlgebraElement::basis(c.algebra, 2));
  CHECK(max_coeff_deviation(
            y1, parse_symbol("0.5*exp(q1 + i*q2) + 0.5*exp(q1 - i*q2)", c.phase_space)) == 0.0);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    const double q1 = d(rng), q2 = d(rng);
    std::map<std::string, Complex> pt{{"p1", 0.0}, {"p2", 0.0}, {"q1", q1}, {"q2", q2}};
    CHECK(std::abs(y1.eval(pt) - std::exp(q1) * std::cos(q2)) < 1e-14);
    auto y2 = c.hamiltonian(AlgebraElement::basis(c.algebra, 3));
    CHECK(std::abs(y2.eval(pt) - (-std::exp(q1) * std::sin(q2))) < 1e-14);
  }

  // Full element (alpha, beta) = (a1+ia2, b1+ib2): Re(alpha z) + Re(beta e^w).
  for (int k = 0; k < 20; ++k) {
    const double a1 = d(rng), a2 = d(rng), b1 = d(rng), b2 = d(rng);
    auto h = c.hamiltonian(elem(c.algebra, {a1, a2, b1, b2}));
    CHECK(h.p_degree() <= 1);
    const double p1 = d(rng), p2 = d(rng), q1 = d(rng), q2 = d(rng);
    const Complex alpha(a1, a2), beta(b1, b2), z(p1, p2), w(q1, q2);
    const double expected = 0.5 * (alpha * z + beta * std::exp(w) + std::conj(alpha * z) +
                                   std::conj(beta * std::exp(w)))
                                .real();
    std::map<std::string, Complex> pt{{"p1", p1}, {"p2", p2}, {"q1", q1}, {"q2", q2}};
    CHECK(std::abs(h.eval(pt) - expected) < 1e-13);
  }
}

TEST_CASE("affC lambda matches the printed tensor in (p1,q1,p2,q2) order") {
  auto c = chart_affC(2);
  CHECK(c.sheet == 2);
  // our variable order is (p1,p2,q1,q2); permute to (p1,q1,p2,q2)
  std::vector<int> perm{0, 2, 1, 3};
  Eigen::MatrixXd printed(4, 4);
  printed << 0, 1, 0, 0,
             -1, 0, 0, 0,
             0, 0, 0, -1,
             0, 0, 1, 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(c.lambda(perm[i], perm[j]) == printed(i, j));
  CHECK(c.pair_sign(0) == 1.0);
  CHECK(c.pair_sign(1) == -1.0);
}

TEST_CASE("hamiltonian map is linear with p-degree <= 1") {
  for (const auto& id : {"affR+", "affR-", "affC:0"}) {
    auto c = chart_by_id(id);
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    const int n = c.algebra->dim();
    for (int k = 0; k < 50; ++k) {
      Eigen::VectorXd a(n), b(n);
      for (int i = 0; i < n; ++i) { a[i] = d(rng); b[i] = d(rng); }
      const double s = d(rng), t = d(rng);
      AlgebraElement A(c.algebra, a), B(c.algebra, b), AB(c.algebra, s * a + t * b);
      CHECK(max_coeff_deviation(c.hamiltonian(AB),
                                c.hamiltonian(A).scaled(s) + c.hamiltonian(B).scaled(t)) <
            1e-13);
      CHECK(c.hamiltonian(A).p_degree() <= 1);
    }
  }
}

TEST_CASE("chart-level homomorphism {A~,B~} = [A,B]~") {
  for (const auto& id : {"affR+", "affR-", "affC:0"}) {
    auto c = chart_by_id(id);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    const int n = c.algebra->dim();
    for (int k = 0; k < 100; ++k) {
      Eigen::VectorXd a(n), b(n);
      for (int i = 0; i < n; ++i) { a[i] = d(rng); b[i] = d(rng); }
      AlgebraElement A(c.algebra, a), B(c.algebra, b);
      auto lhs = poisson_bracket(c.hamiltonian(A), c.hamiltonian(B), c.lambda);
      auto rhs = c.hamiltonian(bracket(A, B));
      CHECK(max_coeff_deviation(lhs, rhs) < 1e-13);
    }
  }
}

TEST_CASE("chart ids") {
  CHECK(chart_by_id("affR+").orbit_id == "affR+");
  CHECK(chart_by_id("affC:3").sheet == 3);
  CHECK(chart_by_id("affC:-1").sheet == -1);
  CHECK(chart_by_id("affC").sheet == 0);
  CHECK_THROWS_AS(chart_by_id("nope"), ParseError);
  CHECK_THROWS_AS(chart_by_id("affC:zz"), ParseError);
  CHECK_THROWS_AS(chart_affR(0), PreconditionError);
}

TEST_CASE("sheet strips tile the plane and only shift metadata") {
  const double two_pi = 2 * M_PI;
  auto c0 = chart_affC(0);
  auto c2 = chart_affC(2);
  CHECK(c0.sheet_strip().first == 0.0);
  CHECK(c0.sheet_strip().second == doctest::Approx(two_pi));
  CHECK(c2.sheet_strip().first == doctest::Approx(2 * two_pi));
  CHECK(c2.sheet_strip().second - c2.sheet_strip().first == doctest::Approx(two_pi));
  // symbolic data is sheet-independent
  for (int i = 0; i < 4; ++i)
    CHECK(max_coeff_deviation(c0.basis_symbols[i], c2.basis_symbols[i]) == 0.0);
  CHECK(c0.lambda == c2.lambda);
}

TEST_CASE("operator and sheared spaces") {
  auto r = chart_affR(+1);
  CHECK(r.operator_space().pos_vars == std::vector<std::string>{"x", "q"});
  CHECK(r.sheared_space().pos_vars == std::vector<std::string>{"s", "t"});
  auto cc = chart_affC(0);
  CHECK(cc.operator_space().pos_vars == std::vector<std::string>{"x1", "x2", "q1", "q2"});
  CHECK(cc.sheared_space().pos_vars == std::vector<std::string>{"s1", "s2", "t1", "t2"});
}

TEST_CASE("catalog polarizations satisfy the codimension relation") {
  for (const auto& id : {"affR+", "affR-", "affC:0"}) {
    auto c = chart_by_id(id);
    auto pol = catalog_polarization(c);
    const int codim = c.algebra->dim() - static_cast<int>(pol.h_basis.size());
    CHECK(codim == c.pairs());
    CHECK(static_cast<int>(pol.block_order.size()) == c.algebra->dim());
  }
}

TEST_CASE("pukanszky check") {
  auto c = chart_affR(+1);
  auto pol = catalog_polarization(c);
  // h = span{Y}: h^perp = span{X*}; F + t X* keeps the second coordinate 1.
  CoadjointFunctional Ystar(c.algebra, Eigen::Vector2d(0.0, 1.0));
  auto report = pukanszky_check(c, pol, Ystar, 1000, 9);
  CHECK(report.pass());
  CHECK(report.samples == 1000);

  // empty h: the annihilator is the whole dual, which leaves the half-plane
  PolarizationSpec empty{c.algebra, {}, {0, 1}};
  auto bad = pukanszky_check(c, empty, Ystar, 1000, 9);
  CHECK(!bad.pass());
  CHECK(bad.failures > 0);

  // off-orbit base point
  CoadjointFunctional off(c.algebra, Eigen::Vector2d(1.0, 0.0));
  CHECK_THROWS_AS(pukanszky_check(c, pol, off, 10, 1), PreconditionError);

  auto cc = chart_affC(0);
  auto polc = catalog_polarization(cc);
  Eigen::VectorXd f(4);
  f << 0.3, -0.2, 0.8, 0.1;
  auto rc = pukanszky_check(cc, polc, CoadjointFunctional(cc.algebra, f), 1000, 11);
  CHECK(rc.pass());

  auto cm = chart_affR(-1);
  CoadjointFunctional Yneg(cm.algebra, Eigen::Vector2d(0.0, -1.0));
  CHECK(pukanszky_check(cm, catalog_polarization(cm), Yneg, 500, 13).pass());
}
