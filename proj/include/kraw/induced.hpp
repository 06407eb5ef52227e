// Symmetric powers: the level-N induced matrix of a (d+1)x(d+1) matrix A.
//
// With y = A v, row m of the induced matrix holds the coefficients of
// y^m = y_0^{m_0} ... y_d^{m_d} on the monomials v^n of degree N, both indexed
// in LevelBasis order.
#pragma once

#include <vector>

#include "kraw/matrix.hpp"
#include "kraw/multi_index.hpp"
#include "kraw/report.hpp"

namespace kraw {

template <KrawScalar Scalar>
struct InducedMatrix {
  int base_dim;
  int level;
  LevelBasis basis;
  Matrix<Scalar> matrix;
};

namespace detail {

// successors[k][pos][j] = rank at level k+1 of (basis_k[pos] + e_j)
inline std::vector<std::vector<std::vector<std::size_t>>> successor_tables(int d, int level) {
  std::vector<std::vector<std::vector<std::size_t>>> tables;
  tables.reserve(static_cast<std::size_t>(level));
  LevelBasis current(d, 0);
  for (int k = 0; k < level; ++k) {
    LevelBasis next(d, k + 1);
    std::vector<std::vector<std::size_t>> table(current.size());
    for (std::size_t pos = 0; pos < current.size(); ++pos) {
      table[pos].resize(static_cast<std::size_t>(d) + 1);
      for (int j = 0; j <= d; ++j) {
        table[pos][static_cast<std::size_t>(j)] =
            next.rank(current[pos].shifted(static_cast<std::size_t>(j), 1));
      }
    }
    tables.push_back(std::move(table));
    current = std::move(next);
  }
  return tables;
}

}  // namespace detail

template <KrawScalar Scalar>
InducedMatrix<Scalar> induced_matrix(const Matrix<Scalar>& a, int level) {
  require_square(a, "induced_matrix input");
  if (level < 0) throw Error(ErrorKind::DegreeMismatch, "level must be >= 0");
  const int d = static_cast<int>(a.rows()) - 1;
  if (d < 1) throw Error(ErrorKind::ShapeMismatch, "induced_matrix needs at least a 2x2 matrix");

  LevelBasis basis(d, level);
  const auto successors = detail::successor_tables(d, level);
  const auto dim = static_cast<Eigen::Index>(basis.size());
  Matrix<Scalar> out = Matrix<Scalar>::Zero(dim, dim);

  std::vector<Scalar> poly;
  std::vector<Scalar> next;
  for (Eigen::Index row = 0; row < dim; ++row) {
    const MultiIndex& m = basis[static_cast<std::size_t>(row)];
    poly.assign(1, from_int<Scalar>(1));
    int degree = 0;
    for (int l = 0; l <= d; ++l) {
      for (int rep = 0; rep < m[static_cast<std::size_t>(l)]; ++rep) {
        const auto& table = successors[static_cast<std::size_t>(degree)];
        next.assign(compositions(degree + 1, d + 1), from_int<Scalar>(0));
        for (std::size_t pos = 0; pos < poly.size(); ++pos) {
          if (poly[pos] == 0) continue;
          for (int j = 0; j <= d; ++j) {
            if (a(l, j) == 0) continue;
            next[table[pos][static_cast<std::size_t>(j)]] += poly[pos] * a(l, j);
          }
        }
        poly.swap(next);
        ++degree;
      }
    }
    for (Eigen::Index col = 0; col < dim; ++col) out(row, col) = poly[static_cast<std::size_t>(col)];
  }
  return {d + 1, level, std::move(basis), std::move(out)};
}

/// Multinomial coefficients of the level basis, as a vector (the diagonal of B).
template <KrawScalar Scalar>
Vector<Scalar> binomial_vector(int d, int level) {
  LevelBasis basis(d, level);
  Vector<Scalar> out(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = from_integer<Scalar>(multinomial_coeff(basis[i]));
  }
  return out;
}

/// B: diagonal matrix of multinomial coefficients in LevelBasis order.
template <KrawScalar Scalar = Rational>
Matrix<Scalar> binomial_diag(int d, int level) {
  return binomial_vector<Scalar>(d, level).asDiagonal();
}

/// induced(A1 A2) == induced(A1) induced(A2)
template <KrawScalar Scalar>
CheckResult check_homomorphism(const Matrix<Scalar>& a1, const Matrix<Scalar>& a2, int level,
                               const Tolerance& tol = {}) {
  require_square(a1, "check_homomorphism A1");
  require_square(a2, "check_homomorphism A2");
  if (a1.rows() != a2.rows()) {
    throw Error(ErrorKind::ShapeMismatch, "check_homomorphism needs matrices of equal size");
  }
  const Matrix<Scalar> prod = a1 * a2;
  const auto lhs = induced_matrix(prod, level);
  const auto r1 = induced_matrix(a1, level);
  const auto r2 = induced_matrix(a2, level);
  const Matrix<Scalar> rhs = r1.matrix * r2.matrix;
  return CheckResult::from_witness("homomorphism",
                                   first_mismatch(lhs.matrix, rhs, tol, &lhs.basis));
}

/// induced(A^T) == B^{-1} induced(A)^T B
template <KrawScalar Scalar>
CheckResult check_transpose_lemma(const Matrix<Scalar>& a, int level, const Tolerance& tol = {}) {
  require_square(a, "check_transpose_lemma input");
  const Matrix<Scalar> at = a.transpose();
  const auto lhs = induced_matrix(at, level);
  const auto ind = induced_matrix(a, level);
  const Vector<Scalar> b = binomial_vector<Scalar>(static_cast<int>(a.rows()) - 1, level);
  const Vector<Scalar> b_inv = b.unaryExpr([](const Scalar& x) { return from_int<Scalar>(1) / x; });
  const Matrix<Scalar> rhs = b_inv.asDiagonal() * ind.matrix.transpose() * b.asDiagonal();
  return CheckResult::from_witness("transpose", first_mismatch(lhs.matrix, rhs, tol, &lhs.basis));
}

}  // namespace kraw
