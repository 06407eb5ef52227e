#include "doctest.h"

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "kraw/analytic.hpp"
#include "oracle.hpp"

using namespace kraw;
using testing::rational_vector;

namespace {

VectorD vec(std::initializer_list<double> values) {
  VectorD v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

VectorD random_z(std::mt19937_64& engine, int d) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  VectorD z(d);
  for (int i = 0; i < d; ++i) z(i) = dist(engine);
  return z;
}

// A = [[1, 1/2], [1, -1/2]] with p = (1/2, 1/2); C = [[1/2, 1/2], [1, -1]].
ExactSystem symmetric_binomial() { return testing::binomial(Rational(1, 2)); }

}  // namespace

TEST_CASE("H") {
  const AnalyticContext bin(symmetric_binomial());
  CHECK(bin.H(vec({0.0})) == doctest::Approx(0.0));
  CHECK(bin.H(vec({std::log(2.0)})) == doctest::Approx(std::log(1.5)));
  const AnalyticContext tri(testing::trinomial());
  CHECK(tri.H(vec({0.0, 0.0})) == doctest::Approx(0.0));
}

TEST_CASE("U") {
  const AnalyticContext bin(symmetric_binomial());
  CHECK(bin.U(vec({0.0}))(0) == doctest::Approx(0.0));
  CHECK(bin.U(vec({0.5}))(0) == doctest::Approx(std::log(3.0 / 5.0)));
  CHECK_THROWS_AS(bin.U(vec({-2.0})), Error);
  try {
    bin.U(vec({-2.0}));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DomainError);
  }
  CHECK_THROWS_AS(bin.U(vec({0.0, 0.0})), Error);
}

TEST_CASE("V and the round trip through U") {
  const AnalyticContext bin(symmetric_binomial());
  CHECK(bin.V(vec({0.0}))(0) == doctest::Approx(0.0));
  CHECK(bin.V(vec({std::log(2.0)}))(0) == doctest::Approx(-2.0 / 3.0));

  std::mt19937_64 engine(7);
  for (const auto& sys : {symmetric_binomial(), testing::trinomial(), testing::quadrinomial()}) {
    const AnalyticContext ctx(sys);
    CHECK(ctx.V(VectorD::Zero(sys.d)).norm() == doctest::Approx(0.0));
    for (int trial = 0; trial < 10; ++trial) {
      const VectorD z = random_z(engine, sys.d);
      CHECK((ctx.U(ctx.V(z)) - z).cwiseAbs().maxCoeff() <= 1e-9);
    }
  }
}

TEST_CASE("Riccati residuals") {
  const AnalyticContext bin(symmetric_binomial());
  CHECK(bin.riccati_residual(vec({0.0}), 1e-4).maxCoeff() <= 1e-8);
  // V_1'(0) = -1 by hand; the residual compares against C_11 = -1.
  const double h = 1e-5;
  const double slope = (bin.V(vec({h}))(0) - bin.V(vec({-h}))(0)) / (2 * h);
  CHECK(slope == doctest::Approx(-1.0).epsilon(1e-8));

  std::mt19937_64 engine(42);
  for (const auto& sys : {symmetric_binomial(), testing::binomial(Rational(1, 3)), testing::trinomial()}) {
    const AnalyticContext ctx(sys);
    for (int trial = 0; trial < 10; ++trial) {
      const VectorD z = random_z(engine, sys.d);
      CHECK(ctx.riccati_residual(z, kDefaultDifferenceStep).maxCoeff() <= 1e-6);
      CHECK(ctx.exp_ratio_residual(z) <= 1e-9);
      CHECK(ctx.cumulant_residual(z) <= 1e-9);
      CHECK(ctx.gradient_residual(z, kDefaultDifferenceStep) <= 1e-6);
    }
  }
  CHECK_THROWS_AS(bin.riccati_residual(vec({0.0}), 0.0), Error);
}

TEST_CASE("Leibniz function examples") {
  const auto bin1 = kravchouk_level(symmetric_binomial(), 1);
  const auto tri2 = kravchouk_level(testing::trinomial(), 2);
  const VectorQ zero1 = VectorQ::Zero(1);
  CHECK(leibniz(bin1, zero1, zero1) == 1);
  CHECK(leibniz_bruteforce(bin1, zero1, zero1) == 1);
  const VectorQ b = rational_vector({Rational(2, 3)});
  const VectorQ v = rational_vector({Rational(-5, 2)});
  CHECK(leibniz(bin1, b, v) == 1 + b(0) * v(0) / 4);
  const VectorQ ones1 = rational_vector({1});
  CHECK(leibniz(bin1, ones1, ones1) == Rational(5, 4));
  CHECK(leibniz_bruteforce(bin1, ones1, ones1) == Rational(5, 4));
  const VectorQ ones2 = rational_vector({1, 1});
  CHECK(leibniz(tri2, ones2, ones2) == Rational(25, 4));
  CHECK(leibniz_bruteforce(tri2, ones2, ones2) == Rational(25, 4));
  CHECK(coherent_overlap(tri2, ones2, ones2) == Rational(25, 4));
  CHECK_THROWS_AS(leibniz(tri2, ones1, ones2), Error);
}

TEST_CASE("Leibniz closed form equals both expansions on random rationals") {
  testing::RationalSource src(11);
  for (const auto& sys : {symmetric_binomial(), testing::binomial(Rational(1, 3)), testing::trinomial()}) {
    for (int n = 0; n <= 4; ++n) {
      const auto lvl = kravchouk_level(sys, n);
      for (int trial = 0; trial < 10; ++trial) {
        const VectorQ b = src.vector(sys.d);
        const VectorQ v = src.vector(sys.d);
        const Rational closed = leibniz(lvl, b, v);
        CHECK(leibniz_bruteforce(lvl, b, v) == closed);
        CHECK(coherent_overlap(lvl, b, v) == closed);
      }
    }
  }
}

TEST_CASE("psi residual") {
  const AnalyticContext bin(symmetric_binomial());
  CHECK(bin.psi_residual(vec({0.0}), vec({0.0})) <= 1e-15);
  CHECK(bin.psi_residual(vec({0.25}), vec({0.25})) <= 1e-10);
  const AnalyticContext tri(testing::trinomial());
  std::mt19937_64 engine(3);
  std::uniform_real_distribution<double> dist(-0.2, 0.2);
  for (int trial = 0; trial < 10; ++trial) {
    const VectorD b = vec({dist(engine), dist(engine)});
    const VectorD v = vec({dist(engine), dist(engine)});
    CHECK(tri.psi_residual(b, v) <= 1e-9);
  }
}

TEST_CASE("generating function examples") {
  const auto bin4 = kravchouk_level(symmetric_binomial(), 4);
  CHECK(generating_function(bin4, MultiIndex{0}, VectorQ(VectorQ::Zero(1))) == 1);
  for (const Rational& v : {Rational(1, 3), Rational(-2), Rational(5, 7)}) {
    const Rational base = 1 + v / 2;
    CHECK(generating_function(bin4, MultiIndex{0}, rational_vector({v})) == base * base * base * base);
  }
  const auto tri2 = kravchouk_level(testing::trinomial(), 2);
  const VectorQ ones2 = rational_vector({1, 1});
  CHECK(generating_function(tri2, MultiIndex{1, 0}, ones2) == 3);
  CHECK(generating_series(tri2, MultiIndex{1, 0}, ones2) == 3);
  CHECK_THROWS_AS(generating_function(tri2, MultiIndex{2, 1}, ones2), Error);
}

TEST_CASE("generating function: product form, series and brute-force expansion agree") {
  testing::RationalSource src(17);
  for (const auto& sys : {symmetric_binomial(), testing::binomial(Rational(1, 3)), testing::trinomial()}) {
    for (int n = 0; n <= 4; ++n) {
      const auto lvl = kravchouk_level(sys, n);
      for (Eigen::Index pos = 0; pos < lvl.dim(); ++pos) {
        const MultiIndex x = lvl.tail_at(pos);
        const MultiIndex& m = lvl.basis[static_cast<std::size_t>(pos)];
        const auto poly = testing::expand_power(sys.A, {m.exponents().begin(), m.exponents().end()}, true);
        for (Eigen::Index k = 0; k < lvl.dim(); ++k) {
          const MultiIndex nk = lvl.tail_at(k);
          CHECK(testing::coefficient(poly, {nk.exponents().begin(), nk.exponents().end()}) *
                    Rational(multi_factorial(nk)) ==
                evaluate(lvl, nk, x, Normalization::Bernoulli));
        }
        const VectorQ v = src.vector(sys.d);
        CHECK(generating_function(lvl, x, v) == generating_series(lvl, x, v));
      }
    }
  }
}

TEST_CASE("exponential form agrees with the product form inside the domain") {
  const auto sys = testing::trinomial();
  const AnalyticContext ctx(sys);
  const auto lvl = kravchouk_level(to_approx(sys), 3);
  const VectorD v = vec({0.1, -0.15});
  for (Eigen::Index pos = 0; pos < lvl.dim(); ++pos) {
    const MultiIndex x = lvl.tail_at(pos);
    CHECK(ctx.generating_function_exp(x, 3, v) == doctest::Approx(generating_function(lvl, x, v)).epsilon(1e-12));
  }
}
