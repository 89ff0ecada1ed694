#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <random>

#include "qorbit/diff_op.hpp"
#include "qorbit/fourier.hpp"
#include "qorbit/grid.hpp"
#include "qorbit/parse.hpp"
#include "test_util.hpp"

using namespace qorbit;
using namespace qorbit::testutil;

namespace {

const Complex I(0.0, 1.0);

DiffOperator random_operator(const VariableSpace& space, std::mt19937_64& rng, int max_terms = 2,
                             int max_order = 2) {
  std::uniform_int_distribution<int> nterms(1, max_terms);
  std::uniform_int_distribution<int> order(0, max_order);
  std::vector<DiffOperator::Term> terms;
  const int n = nterms(rng);
  for (int t = 0; t < n; ++t) {
    DiffOperator::Term term;
    term.coeff = random_symbol(space, rng, 2, 0);
    term.orders.resize(space.pos_vars.size());
    int budget = order(rng);
    for (std::size_t d = 0; d < space.pos_vars.size() && budget > 0; ++d) {
      std::uniform_int_distribution<int> take(0, budget);
      term.orders[d] = take(rng);
      budget -= term.orders[d];
    }
    terms.push_back(std::move(term));
  }
  return DiffOperator(space, std::move(terms));
}

GridFunction gaussian_nd(const std::vector<Axis>& axes, double sigma = 1.0) {
  return GridFunction::sample(axes, [sigma](const std::vector<double>& pt) {
    double s = 0.0;
    for (double v : pt) s += v * v;
    return Complex(std::exp(-s / (2 * sigma * sigma)), 0.0);
  });
}

}  // namespace

TEST_CASE("quantize_symbol on affR") {
  auto c = chart_affR(+1);
  const double alpha = 1.3, beta = -0.4;
  auto zt = c.hamiltonian(AlgebraElement(c.algebra, Eigen::Vector2d(alpha, beta)));
  auto op = quantize_symbol(zt, c);

  const VariableSpace os = c.operator_space();
  auto expected =
      DiffOperator::monomial(os, ExpPolySymbol::constant(os, alpha / 2), {{"q", 1}}) +
      DiffOperator::monomial(os, ExpPolySymbol::constant(os, -alpha), {{"x", 1}}) +
      DiffOperator::monomial(os, parse_symbol("exp(q - 0.5*x)", os).scaled(I * beta), {});
  CHECK(max_coeff_deviation(op, expected) < 1e-15);

  // a constant symbol quantizes to multiplication by i c
  auto cop = quantize_symbol(ExpPolySymbol::constant(c.phase_space, Complex(2.0, 1.0)), c);
  CHECK(max_coeff_deviation(cop, DiffOperator::monomial(
                                     os, ExpPolySymbol::constant(os, Complex(-1.0, 2.0)), {})) <
        1e-15);

  CHECK_THROWS_AS(quantize_symbol(parse_symbol("p^2", c.phase_space), c), UnsupportedError);
  CHECK_THROWS_AS(quantize_symbol(parse_symbol("p*exp(q)", c.phase_space), c),
                  UnsupportedError);
}

TEST_CASE("shear turns the affR quantized operator into transport form") {
  auto c = chart_affR(+1);
  const double alpha = 0.8, beta = 1.1;
  auto op = quantize_symbol(
      c.hamiltonian(AlgebraElement(c.algebra, Eigen::Vector2d(alpha, beta))), c);
  auto sheared = change_vars_shear(op, c);

  const VariableSpace ss = c.sheared_space();
  auto expected =
      DiffOperator::monomial(ss, ExpPolySymbol::constant(ss, alpha), {{"s", 1}}) +
      DiffOperator::monomial(ss, ExpPolySymbol::exponential(ss, {{"s", 1.0}}, I * beta), {});
  CHECK(max_coeff_deviation(sheared, expected) < 1e-14);

  // identity is untouched; round trip is exact
  CHECK(max_coeff_deviation(change_vars_shear(DiffOperator::identity(c.operator_space()), c),
                            DiffOperator::identity(ss)) == 0.0);
  std::mt19937_64 rng(1);
  for (int k = 0; k < 20; ++k) {
    auto r = random_operator(c.operator_space(), rng);
    auto back = change_vars_shear_inverse(change_vars_shear(r, c), c);
    CHECK(max_coeff_deviation(back, r) < 1e-12);
  }
}

TEST_CASE("affC quantized operator reduces to the complex transport form") {
  auto c = chart_affC(0);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> d(-1.5, 1.5);
  for (int k = 0; k < 10; ++k) {
    const Complex alpha(d(rng), d(rng)), beta(d(rng), d(rng));
    Eigen::VectorXd coords(4);
    coords << alpha.real(), alpha.imag(), beta.real(), beta.imag();
    auto op = change_vars_shear(
        quantize_symbol(c.hamiltonian(AlgebraElement(c.algebra, coords)), c), c);

    // alpha d_u + conj(alpha) d_ubar + (i/2)(beta e^u + conj(beta) e^ubar)
    // written in the real coordinates u = s1 + i s2:
    const VariableSpace ss = c.sheared_space();
    auto expected =
        DiffOperator::monomial(ss, ExpPolySymbol::constant(ss, alpha.real()), {{"s1", 1}}) +
        DiffOperator::monomial(ss, ExpPolySymbol::constant(ss, alpha.imag()), {{"s2", 1}}) +
        DiffOperator::monomial(
            ss,
            (ExpPolySymbol::exponential(ss, {{"s1", 1.0}, {"s2", I}}, beta) +
             ExpPolySymbol::exponential(ss, {{"s1", 1.0}, {"s2", -I}}, std::conj(beta)))
                .scaled(I * 0.5),
            {});
    CHECK(max_coeff_deviation(op, expected) < 1e-13);
  }
}

TEST_CASE("operator commutators realize the bracket for both charts") {
  for (const auto& id : {"affR+", "affR-", "affC:0"}) {
    auto c = chart_by_id(id);
    const int n = c.algebra->dim();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        auto a = AlgebraElement::basis(c.algebra, i);
        auto b = AlgebraElement::basis(c.algebra, j);
        auto lhs = commutator(quantize_symbol(c.hamiltonian(a), c),
                              quantize_symbol(c.hamiltonian(b), c));
        auto rhs = quantize_symbol(c.hamiltonian(bracket(a, b)), c);
        CHECK(max_coeff_deviation(lhs, rhs) < 1e-13);
      }
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (int k = 0; k < 50; ++k) {
      Eigen::VectorXd a(n), b(n);
      for (int i = 0; i < n; ++i) { a[i] = d(rng); b[i] = d(rng); }
      AlgebraElement A(c.algebra, a), B(c.algebra, b);
      auto lhs = commutator(quantize_symbol(c.hamiltonian(A), c),
                            quantize_symbol(c.hamiltonian(B), c));
      auto rhs = quantize_symbol(c.hamiltonian(bracket(A, B)), c);
      CHECK(max_coeff_deviation(lhs, rhs) < 1e-12);
    }
  }
}

TEST_CASE("compose obeys Leibniz and associativity") {
  VariableSpace ss{{}, {"s", "t"}};
  auto ds = DiffOperator::monomial(ss, ExpPolySymbol::constant(ss, 1.0), {{"s", 1}});
  auto es = DiffOperator::monomial(ss, ExpPolySymbol::exponential(ss, {{"s", 1.0}}), {});
  auto prod = compose(ds, es);
  auto expected =
      DiffOperator::monomial(ss, ExpPolySymbol::exponential(ss, {{"s", 1.0}}), {{"s", 1}}) + es;
  CHECK(max_coeff_deviation(prod, expected) == 0.0);

  std::mt19937_64 rng(4);
  for (int k = 0; k < 15; ++k) {
    auto a = random_operator(ss, rng);
    auto b = random_operator(ss, rng);
    auto c = random_operator(ss, rng);
    CHECK(max_coeff_deviation(compose(compose(a, b), c), compose(a, compose(b, c))) < 1e-10);
    CHECK(commutator(a, a).is_zero());
    auto u = random_symbol(ss, rng, 2, 0);
    CHECK(max_coeff_deviation(apply_symbolic(compose(a, b), u),
                              apply_symbolic(a, apply_symbolic(b, u))) < 1e-10);
  }
}

TEST_CASE("apply_symbolic examples") {
  VariableSpace ss{{}, {"s", "t"}};
  const double alpha = 0.9, beta = -1.2, a = 0.6;
  auto op = DiffOperator::monomial(ss, ExpPolySymbol::constant(ss, alpha), {{"s", 1}}) +
            DiffOperator::monomial(ss, ExpPolySymbol::exponential(ss, {{"s", 1.0}}, I * beta), {});
  auto u = ExpPolySymbol::exponential(ss, {{"s", a}});
  auto result = apply_symbolic(op, u);
  auto expected = u.scaled(alpha * a) + ExpPolySymbol::exponential(ss, {{"s", a + 1.0}}, I * beta);
  CHECK(max_coeff_deviation(result, expected) < 1e-15);

  CHECK(apply_symbolic(op, ExpPolySymbol::zero(ss)).is_zero());
}

TEST_CASE("partial fourier is unitary and inverts") {
  Axis p{"p", -16.0, 16.0, 256};
  Axis q{"q", -4.0, 4.0, 16};
  auto f = GridFunction::sample({p, q}, [](const std::vector<double>& pt) {
    return std::exp(Complex(-pt[0] * pt[0] / 2 - pt[1] * pt[1], 0.3 * pt[0]));
  });
  auto fx = partial_fourier(f, "p", "x");
  CHECK(fx.axes()[0].name == "x");
  CHECK(std::abs(fx.l2_norm() - f.l2_norm()) < 1e-10 * f.l2_norm());  // Parseval
  auto back = partial_fourier_inverse(fx, "x", "p");
  CHECK(back.axes() == f.axes());
  CHECK(l2_difference(back, f) < 1e-10 * f.l2_norm());
}

TEST_CASE("partial fourier matches the continuous transform of a Gaussian") {
  // F(e^{-p^2/2}) = e^{-x^2/2} under the e^{-ipx}/sqrt(2pi) kernel.
  Axis p{"p", -24.0, 24.0, 512};
  auto f = GridFunction::sample(
      {p}, [](const std::vector<double>& pt) { return Complex(std::exp(-pt[0] * pt[0] / 2)); });
  auto fx = partial_fourier(f, "p", "x");
  auto expected = GridFunction::sample(fx.axes(), [](const std::vector<double>& pt) {
    return Complex(std::exp(-pt[0] * pt[0] / 2));
  });
  CHECK(sup_difference(fx, expected) < 1e-12);
}

TEST_CASE("fourier multiplier rules") {
  Axis p{"p", -16.0, 16.0, 256};
  auto g = GridFunction::sample({p}, [](const std::vector<double>& pt) {
    return std::exp(Complex(-pt[0] * pt[0] / 2, 0.7 * pt[0]));
  });
  // F(d_p g) = i x F(g)
  auto lhs1 = partial_fourier(spectral_derivative(g, "p", 1), "p", "x");
  auto rhs1 = partial_fourier(g, "p", "x");
  rhs1.multiply_pointwise([](const std::vector<double>& pt) { return Complex(0, pt[0]); });
  CHECK(sup_difference(lhs1, rhs1) < 1e-9);
  // F(p g) = i d_x F(g)
  auto pg = g;
  pg.multiply_pointwise([](const std::vector<double>& pt) { return Complex(pt[0], 0.0); });
  auto lhs2 = partial_fourier(pg, "p", "x");
  auto rhs2 = spectral_derivative(partial_fourier(g, "p", "x"), "x", 1);
  rhs2 *= I;
  CHECK(sup_difference(lhs2, rhs2) < 1e-9);
}

TEST_CASE("spectral derivative and band-limited shift") {
  Axis s{"s", -10.0, 10.0, 256};
  auto f = GridFunction::sample({s}, [](const std::vector<double>& pt) {
    return Complex(std::exp(-pt[0] * pt[0] / 2) * std::sin(2 * pt[0]), 0.0);
  });
  auto df = spectral_derivative(f, "s", 1);
  auto expected = GridFunction::sample({s}, [](const std::vector<double>& pt) {
    const double x = pt[0];
    return Complex(std::exp(-x * x / 2) * (2 * std::cos(2 * x) - x * std::sin(2 * x)), 0.0);
  });
  CHECK(sup_difference(df, expected) < 1e-10);

  const double d = 0.37;
  auto shifted = bandlimited_shift(f, "s", d);
  auto expected2 = GridFunction::sample({s}, [d](const std::vector<double>& pt) {
    const double x = pt[0] + d;
    return Complex(std::exp(-x * x / 2) * std::sin(2 * x), 0.0);
  });
  CHECK(sup_difference_interior(shifted, expected2) < 1e-10);
  CHECK(std::abs(shifted.l2_norm() - f.l2_norm()) < 1e-12 * f.l2_norm());
}

TEST_CASE("apply_numeric matches hand-differentiated windowed exponentials") {
  VariableSpace os{{}, {"x", "q"}};
  Axis x{"x", -12.0, 12.0, 128};
  Axis q{"q", -6.0, 6.0, 64};
  // op = 0.5 d_q - d_x + i e^{q - x/2}
  auto op = DiffOperator::monomial(os, ExpPolySymbol::constant(os, 0.5), {{"q", 1}}) +
            DiffOperator::monomial(os, ExpPolySymbol::constant(os, -1.0), {{"x", 1}}) +
            DiffOperator::monomial(os, parse_symbol("exp(q - 0.5*x)", os).scaled(I), {});
  const double a = 0.4;
  auto f = GridFunction::sample({x, q}, [a](const std::vector<double>& pt) {
    return std::exp(Complex(-pt[0] * pt[0] / 4 - pt[1] * pt[1] / 2 + a * pt[1], 0.0));
  });
  auto numeric = apply_numeric(op, f);
  auto oracle = GridFunction::sample({x, q}, [a](const std::vector<double>& pt) {
    const double xx = pt[0], qq = pt[1];
    const Complex fv = std::exp(Complex(-xx * xx / 4 - qq * qq / 2 + a * qq, 0.0));
    const Complex dq = (a - qq) * fv;
    const Complex dx = (-xx / 2) * fv;
    return 0.5 * dq - dx + I * std::exp(qq - xx / 2) * fv;
  });
  CHECK(sup_difference_interior(numeric, oracle) < 1e-6);
  CHECK(apply_numeric(op, GridFunction({x, q})).sup_norm() == 0.0);

  // second-order check against the closed form
  auto op2 = DiffOperator::monomial(os, ExpPolySymbol::constant(os, 1.0), {{"q", 2}});
  auto numeric2 = apply_numeric(op2, f);
  auto oracle2 = GridFunction::sample({x, q}, [a](const std::vector<double>& pt) {
    const double xx = pt[0], qq = pt[1];
    const Complex fv = std::exp(Complex(-xx * xx / 4 - qq * qq / 2 + a * qq, 0.0));
    return ((a - qq) * (a - qq) - 1.0) * fv;
  });
  CHECK(sup_difference_interior(numeric2, oracle2) < 1e-6);
}

TEST_CASE("star_apply_numeric matches the quantized closed form (affR)") {
  auto c = chart_affR(+1);
  Axis x{"x", -12.0, 12.0, 1024};
  Axis q{"q", -6.0, 6.0, 128};
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  for (int k = 0; k < 5; ++k) {
    const double alpha = d(rng), beta = d(rng);
    auto zt = c.hamiltonian(AlgebraElement(c.algebra, Eigen::Vector2d(alpha, beta)));
    auto f = gaussian_nd({x, q});
    CHECK(f.boundary_mass_fraction() < 1e-8);
    auto series_route = star_apply_numeric(zt, f, c);
    auto closed_route = apply_numeric(quantize_symbol(zt, c), f);
    CHECK(sup_difference_interior(series_route, closed_route) < 1e-6);
  }
}

TEST_CASE("star_apply_numeric matches the quantized closed form (affC)") {
  auto c = chart_affC(0);
  Axis x1{"x1", -8.0, 8.0, 48};
  Axis x2{"x2", -8.0, 8.0, 48};
  Axis q1{"q1", -5.0, 5.0, 24};
  Axis q2{"q2", -5.0, 5.0, 24};
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (int k = 0; k < 2; ++k) {
    Eigen::VectorXd coords(4);
    coords << d(rng), d(rng), d(rng), d(rng);
    auto zt = c.hamiltonian(AlgebraElement(c.algebra, coords));
    auto f = gaussian_nd({x1, x2, q1, q2});
    auto series_route = star_apply_numeric(zt, f, c);
    auto closed_route = apply_numeric(quantize_symbol(zt, c), f);
    CHECK(sup_difference_interior(series_route, closed_route) < 1e-6);
  }
}

TEST_CASE("boundary mass flags poorly windowed data") {
  Axis s{"s", -5.0, 5.0, 64};
  auto wide = GridFunction::sample({s}, [](const std::vector<double>&) { return Complex(1.0); });
  CHECK(wide.boundary_mass_fraction() > 1e-8);
  auto narrow = GridFunction::sample(
      {s}, [](const std::vector<double>& pt) { return Complex(std::exp(-pt[0] * pt[0])); });
  CHECK(narrow.boundary_mass_fraction() < 1e-8);

  // star_apply_numeric surfaces the same estimate for its input
  auto c = chart_affR(+1);
  Axis x{"x", -6.0, 6.0, 64};
  Axis q{"q", -6.0, 6.0, 32};
  auto fat = GridFunction::sample(
      {x, q}, [](const std::vector<double>& pt) { return Complex(std::exp(-pt[1] * pt[1])); });
  double reported = 0.0;
  star_apply_numeric(parse_symbol("p", c.phase_space), fat, c, &reported);
  CHECK(reported == doctest::Approx(fat.boundary_mass_fraction()));
  CHECK(reported > 1e-8);
}

TEST_CASE("grid save/load round trip") {
  Axis s{"s", -2.0, 2.0, 16};
  Axis t{"t", 0.0, 6.283185307179586, 8};
  t.periodic = true;
  auto f = GridFunction::sample({s, t}, [](const std::vector<double>& pt) {
    return Complex(std::sin(pt[0]), std::cos(pt[1]));
  });
  const std::string path = "/tmp/qorbit_grid_test.json";
  f.save(path);
  auto g = GridFunction::load(path);
  CHECK(g.axes() == f.axes());
  CHECK(sup_difference(f, g) == 0.0);

  f.save(path, /*single_precision=*/true);
  auto h = GridFunction::load(path);
  CHECK(sup_difference(f, h) < 1e-6);
  std::remove(path.c_str());
  std::remove((path + ".bin").c_str());

  CHECK_THROWS_AS(GridFunction::load("/nonexistent.json"), ParseError);
}

TEST_CASE("operator format") {
  auto c = chart_affR(+1);
  auto op = quantize_symbol(c.hamiltonian(AlgebraElement::basis(c.algebra, 0)), c);
  CHECK(op.format() == "0.5*d_q - d_x");
  CHECK(DiffOperator::zero(c.operator_space()).format() == "0");
  CHECK(DiffOperator::identity(c.operator_space()).format() == "1");
}
