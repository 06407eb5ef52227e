// Dense matrix aliases and the few linear-algebra kernels that must stay exact
// over Rational (rank, inverse). Everything else is plain Eigen.
#pragma once

#include <Eigen/Core>

#include <optional>
#include <string>
#include <utility>

#include "kraw/multi_index.hpp"
#include "kraw/report.hpp"
#include "kraw/scalar.hpp"

namespace kraw {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatrixQ = Matrix<Rational>;
using MatrixD = Matrix<double>;
using VectorQ = Vector<Rational>;
using VectorD = Vector<double>;

/// Explicit, lossy Rational -> double conversion.
template <typename Derived>
MatrixD to_double(const Eigen::MatrixBase<Derived>& m) {
  return m.unaryExpr([](const auto& x) { return kraw::to_double(x); });
}

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorKind::ShapeMismatch, std::string(what) + " must be square and non-empty, got " +
                                              std::to_string(m.rows()) + "x" +
                                              std::to_string(m.cols()));
  }
}

inline std::string cell_label(Eigen::Index i, Eigen::Index j, const LevelBasis* basis) {
  if (basis != nullptr && static_cast<std::size_t>(i) < basis->size() &&
      static_cast<std::size_t>(j) < basis->size()) {
    return "(" + (*basis)[static_cast<std::size_t>(i)].label() + ", " +
           (*basis)[static_cast<std::size_t>(j)].label() + ")";
  }
  return "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
}

/// First entry (row-major scan) where `actual` differs from `expected`, or nullopt.
/// Exact scalars compare literally; doubles use `tol`. The witness of a double
/// comparison also carries the max absolute residual over all entries.
template <KrawScalar Scalar>
std::optional<Witness> first_mismatch(const Matrix<Scalar>& expected, const Matrix<Scalar>& actual,
                                      const Tolerance& tol = {},
                                      const LevelBasis* basis = nullptr) {
  if (expected.rows() != actual.rows() || expected.cols() != actual.cols()) {
    return Witness{"shape",
                   std::to_string(expected.rows()) + "x" + std::to_string(expected.cols()),
                   std::to_string(actual.rows()) + "x" + std::to_string(actual.cols()),
                   std::nullopt};
  }
  std::optional<Witness> first;
  double max_residual = 0.0;
  for (Eigen::Index i = 0; i < expected.rows(); ++i) {
    for (Eigen::Index j = 0; j < expected.cols(); ++j) {
      if constexpr (!is_exact_v<Scalar>) {
        max_residual = std::max(max_residual, std::abs(expected(i, j) - actual(i, j)));
      }
      if (!first && !scalar_equal(expected(i, j), actual(i, j), tol)) {
        first = Witness{cell_label(i, j, basis), to_string(expected(i, j)),
                        to_string(actual(i, j)), std::nullopt};
        if constexpr (is_exact_v<Scalar>) return first;
      }
    }
  }
  if (first) first->max_residual = max_residual;
  return first;
}

template <KrawScalar Scalar>
bool matrices_equal(const Matrix<Scalar>& a, const Matrix<Scalar>& b, const Tolerance& tol = {}) {
  return !first_mismatch(a, b, tol).has_value();
}

namespace detail {

// Row-reduces `m` in place to echelon form; returns the rank. Rational pivots on
// the first nonzero entry, double on the largest magnitude above `threshold`.
template <KrawScalar Scalar>
Eigen::Index row_reduce(Matrix<Scalar>& m, double threshold, Matrix<Scalar>* companion) {
  Eigen::Index rank = 0;
  for (Eigen::Index col = 0; col < m.cols() && rank < m.rows(); ++col) {
    Eigen::Index pivot = -1;
    if constexpr (is_exact_v<Scalar>) {
      for (Eigen::Index r = rank; r < m.rows(); ++r) {
        if (m(r, col) != 0) {
          pivot = r;
          break;
        }
      }
    } else {
      double best = threshold;
      for (Eigen::Index r = rank; r < m.rows(); ++r) {
        if (std::abs(m(r, col)) > best) {
          best = std::abs(m(r, col));
          pivot = r;
        }
      }
    }
    if (pivot < 0) continue;
    m.row(rank).swap(m.row(pivot));
    if (companion) companion->row(rank).swap(companion->row(pivot));
    const Scalar inv = from_int<Scalar>(1) / m(rank, col);
    m.row(rank) *= inv;
    if (companion) companion->row(rank) *= inv;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == rank || m(r, col) == 0) continue;
      const Scalar factor = m(r, col);
      m.row(r) -= factor * m.row(rank);
      if (companion) companion->row(r) -= factor * companion->row(rank);
    }
    ++rank;
  }
  return rank;
}

}  // namespace detail

/// Rank by Gauss-Jordan elimination; exact for Rational.
template <KrawScalar Scalar>
Eigen::Index matrix_rank(Matrix<Scalar> m, double threshold = 1e-9) {
  return detail::row_reduce<Scalar>(m, threshold, nullptr);
}

/// Inverse by Gauss-Jordan elimination; exact for Rational. Throws
/// DomainError when the matrix is singular.
template <KrawScalar Scalar>
Matrix<Scalar> inverse(Matrix<Scalar> m, double threshold = 1e-12) {
  require_square(m, "matrix to invert");
  Matrix<Scalar> inv = Matrix<Scalar>::Identity(m.rows(), m.cols());
  if (detail::row_reduce<Scalar>(m, threshold, &inv) != m.rows()) {
    throw Error(ErrorKind::DomainError, "matrix is singular");
  }
  return inv;
}

/// [a, b] = ab - ba
template <typename Scalar>
Matrix<Scalar> commutator(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  return a * b - b * a;
}

}  // namespace kraw
