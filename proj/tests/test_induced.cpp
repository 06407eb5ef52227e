#include "doctest.h"

#include "fixtures.hpp"
#include "kraw/induced.hpp"
#include "oracle.hpp"

using namespace kraw;
using kraw::testing::rational_matrix;

TEST_CASE("induced matrix of a diagonal matrix is the diagonal of monomials") {
  const MatrixQ v = rational_matrix({{2, 0, 0}, {0, 3, 0}, {0, 0, 5}});
  const auto ind = induced_matrix(v, 2);
  MatrixQ expected = MatrixQ::Zero(6, 6);
  const Rational diag[] = {4, 6, 10, 9, 15, 25};  // a^2, ab, ac, b^2, bc, c^2
  for (int i = 0; i < 6; ++i) expected(i, i) = diag[i];
  CHECK(ind.matrix == expected);
  CHECK(ind.base_dim == 3);
  CHECK(ind.level == 2);
}

TEST_CASE("induced matrix of the identity is the identity") {
  const auto ind = induced_matrix(MatrixQ(MatrixQ::Identity(3, 3)), 5);
  CHECK(ind.matrix.rows() == 21);
  CHECK(ind.matrix == MatrixQ::Identity(21, 21));
}

TEST_CASE("hand-expanded 2x2 example and the level 0 / level 1 edge cases") {
  const MatrixQ a = rational_matrix({{1, 1}, {1, -1}});
  CHECK(induced_matrix(a, 2).matrix == rational_matrix({{1, 2, 1}, {1, 0, -1}, {1, -2, 1}}));
  CHECK(induced_matrix(a, 0).matrix == rational_matrix({{1}}));
  CHECK(induced_matrix(a, 1).matrix == a);
}

TEST_CASE("induced_matrix rejects non-square input") {
  MatrixQ bad(2, 3);
  bad.setZero();
  CHECK_THROWS_AS(induced_matrix(bad, 2), Error);
}

TEST_CASE("binomial_diag") {
  CHECK(binomial_diag(1, 4).diagonal() == testing::rational_vector({1, 4, 6, 4, 1}));
  CHECK(binomial_diag(2, 2).diagonal() == testing::rational_vector({1, 2, 2, 1, 2, 1}));
  CHECK(binomial_diag(3, 0) == rational_matrix({{1}}));
  for (int d = 1; d <= 3; ++d) {
    for (int n = 0; n <= 4; ++n) {
      const MatrixQ ones = MatrixQ::Constant(d + 1, d + 1, Rational(1));
      CHECK(binomial_diag(d, n).diagonal() == induced_matrix(ones, n).matrix.diagonal());
    }
  }
}

TEST_CASE("homomorphism examples") {
  const MatrixQ id = MatrixQ::Identity(3, 3);
  CHECK(check_homomorphism(id, id, 4).passed());

  const MatrixQ a1 = rational_matrix({{1, 1}, {1, -1}});
  const MatrixQ a2 = rational_matrix({{1, Rational(1, 2)}, {1, Rational(-1, 2)}});
  CHECK(check_homomorphism(a1, a2, 3).passed());

  // Negative control: the induced product against a perturbed factor.
  MatrixQ perturbed = a1;
  perturbed(1, 1) = Rational(-9, 10);
  const MatrixQ lhs = induced_matrix(MatrixQ(a1 * a1), 2).matrix;
  const MatrixQ rhs = induced_matrix(a1, 2).matrix * induced_matrix(perturbed, 2).matrix;
  const auto witness = first_mismatch(lhs, rhs);
  REQUIRE(witness.has_value());
  CHECK_FALSE(witness->location.empty());

  CHECK_THROWS_AS(check_homomorphism(a1, id, 2), Error);
}

TEST_CASE("transpose lemma examples") {
  CHECK(check_transpose_lemma(rational_matrix({{2, 1}, {1, 3}}), 2).passed());
  CHECK(check_transpose_lemma(MatrixQ(MatrixQ::Identity(2, 2)), 3).passed());
  CHECK(check_transpose_lemma(rational_matrix({{1, 1, 1}, {1, 1, -1}, {1, -1, 0}}), 2).passed());
  // For symmetric A both sides equal the induced matrix itself.
  const MatrixQ s = rational_matrix({{2, 1}, {1, 3}});
  const auto ind = induced_matrix(s, 2);
  const MatrixQ b = binomial_diag(1, 2);
  CHECK(MatrixQ(inverse<Rational>(b) * ind.matrix.transpose() * b) == ind.matrix);
}

TEST_CASE("induced entries agree with brute-force polynomial expansion") {
  testing::RationalSource src(2024);
  for (int d = 1; d <= 3; ++d) {
    for (int n = 0; n <= 3; ++n) {
      for (int trial = 0; trial < 3; ++trial) {
        const MatrixQ a = src.matrix(d + 1);
        const auto ind = induced_matrix(a, n);
        for (std::size_t r = 0; r < ind.basis.size(); ++r) {
          const auto& m = ind.basis[r];
          const auto poly = testing::expand_power(a, {m.exponents().begin(), m.exponents().end()}, false);
          for (std::size_t c = 0; c < ind.basis.size(); ++c) {
            const auto& e = ind.basis[c].exponents();
            REQUIRE(ind.matrix(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) ==
                    testing::coefficient(poly, {e.begin(), e.end()}));
          }
        }
      }
    }
  }
}

TEST_CASE("structural laws on random rational matrices") {
  testing::RationalSource src(99);
  for (int d = 1; d <= 3; ++d) {
    for (int trial = 0; trial < 5; ++trial) {
      const MatrixQ a = src.matrix(d + 1);
      const MatrixQ b = src.matrix(d + 1);
      CHECK(induced_matrix(a, 1).matrix == a);
      for (int n = 0; n <= 3; ++n) {
        CHECK(check_homomorphism(a, b, n).passed());
        CHECK(check_transpose_lemma(a, n).passed());
      }
      // Inverse transport, when A is invertible.
      if (matrix_rank<Rational>(a) == d + 1) {
        const MatrixQ inv = inverse<Rational>(a);
        CHECK(MatrixQ(a * inv) == MatrixQ::Identity(d + 1, d + 1));
        for (int n = 0; n <= 3; ++n) {
          const auto lhs = induced_matrix(a, n);
          const MatrixQ prod = lhs.matrix * induced_matrix(inv, n).matrix;
          CHECK(prod == MatrixQ::Identity(lhs.matrix.rows(), lhs.matrix.cols()));
        }
      }
    }
  }
}

TEST_CASE("diagonal transport") {
  testing::RationalSource src(5);
  for (int d = 1; d <= 3; ++d) {
    const VectorQ diag = src.vector(d + 1);
    const MatrixQ a = diag.asDiagonal();
    for (int n = 0; n <= 4; ++n) {
      const auto ind = induced_matrix(a, n);
      MatrixQ expected = MatrixQ::Zero(ind.matrix.rows(), ind.matrix.cols());
      for (std::size_t i = 0; i < ind.basis.size(); ++i) {
        expected(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = monomial(diag, ind.basis[i]);
      }
      CHECK(ind.matrix == expected);
    }
  }
}

TEST_CASE("approximate flavor agrees with the exact one") {
  const MatrixQ a = rational_matrix({{1, Rational(1, 3)}, {1, Rational(-2, 3)}});
  const auto exact = induced_matrix(a, 4);
  const auto approx = induced_matrix(to_double(a), 4);
  CHECK(matrices_equal(to_double(exact.matrix), approx.matrix));
  CHECK(check_homomorphism(to_double(a), MatrixD(to_double(a).transpose()), 3).passed());
  CHECK(check_transpose_lemma(to_double(a), 3).passed());
}
