// Systems shared by the unit and acceptance suites.
#pragma once

#include "kraw/system.hpp"

namespace kraw::testing {

/// A = [[1, p], [1, -q]], probabilities (q, p), D = (1, pq).
inline ExactSystem binomial(const Rational& p) {
  const Rational q = 1 - p;
  MatrixQ a(2, 2);
  a << Rational(1), p, Rational(1), -q;
  VectorQ probs(2);
  probs << q, p;
  return build_exact(a, probs);
}

/// A = [[1,1,1],[1,1,-1],[1,-1,0]], p = (1/4, 1/4, 1/2), D = (1, 1, 1/2).
inline ExactSystem trinomial() {
  MatrixQ a(3, 3);
  a << 1, 1, 1, 1, 1, -1, 1, -1, 0;
  VectorQ p(3);
  p << Rational(1, 4), Rational(1, 4), Rational(1, 2);
  return build_exact(a, p);
}

/// A d=3 system: Hadamard-type columns under the uniform distribution.
inline ExactSystem quadrinomial() {
  MatrixQ a(4, 4);
  a << 1, 1, 1, 1,
       1, 1, -1, -1,
       1, -1, 1, -1,
       1, -1, -1, 1;
  VectorQ p = VectorQ::Constant(4, Rational(1, 4));
  return build_exact(a, p);
}

inline MatrixQ rational_matrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  MatrixQ m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (const auto& x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

inline VectorQ rational_vector(std::initializer_list<Rational> values) {
  VectorQ v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (const auto& x : values) v(i++) = x;
  return v;
}

}  // namespace kraw::testing
