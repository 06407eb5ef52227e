// Krawtchouk-Griffiths systems: K-condition certification, the Kravchouk
// matrix at a given level, multinomial weights, and polynomial evaluation.
//
// Indices: a "point" x and a "polynomial index" n are both d-component tuples
// with entries summing to at most N. Each is identified with the level-N
// multi-index (N - |.|, .) and stored at its LevelBasis rank.
#pragma once

#include <string>

#include "kraw/induced.hpp"
#include "kraw/matrix.hpp"
#include "kraw/multi_index.hpp"
#include "kraw/report.hpp"

namespace kraw {

/// A matrix A certified to satisfy A^T diag(p) A = diag(D), A_{l0} = 1,
/// p a positive probability vector and D_0 = 1. C = A^{-1}.
template <KrawScalar Scalar>
struct KGSystem {
  int d = 0;
  Matrix<Scalar> A;
  Matrix<Scalar> C;
  Vector<Scalar> p;
  Vector<Scalar> D;

  /// alpha_l = A_{0l}
  Vector<Scalar> alpha() const { return A.row(0).transpose(); }
};

using ExactSystem = KGSystem<Rational>;
using ApproxSystem = KGSystem<double>;

template <KrawScalar Scalar>
KGSystem<Scalar> certify_system(const Matrix<Scalar>& a, const Vector<Scalar>& p,
                                const Tolerance& tol = {}) {
  require_square(a, "A");
  const auto size = a.rows();
  if (size < 2) throw Error(ErrorKind::ShapeMismatch, "A must be at least 2x2");
  if (p.size() != size) {
    throw Error(ErrorKind::LengthMismatch, "p has " + std::to_string(p.size()) +
                                               " entries, A has " + std::to_string(size) + " rows");
  }
  const Scalar one = from_int<Scalar>(1);
  for (Eigen::Index l = 0; l < size; ++l) {
    if (!scalar_equal(a(l, 0), one, tol)) {
      throw Error(ErrorKind::FirstColumnNotOnes,
                  "A(" + std::to_string(l) + ",0) = " + to_string(a(l, 0)) + ", expected 1");
    }
  }
  Scalar total = from_int<Scalar>(0);
  for (Eigen::Index l = 0; l < size; ++l) {
    if (!(p(l) > 0)) {
      throw Error(ErrorKind::ProbabilitiesInvalid,
                  "p[" + std::to_string(l) + "] = " + to_string(p(l)) + " is not positive");
    }
    total += p(l);
  }
  if (!scalar_equal(total, one, tol)) {
    throw Error(ErrorKind::ProbabilitiesInvalid, "probabilities sum to " + to_string(total));
  }

  const Matrix<Scalar> gram = a.transpose() * p.asDiagonal() * a;
  for (Eigen::Index i = 0; i < size; ++i) {
    for (Eigen::Index j = 0; j < size; ++j) {
      if (i != j && !scalar_equal(gram(i, j), from_int<Scalar>(0), tol)) {
        throw Error(ErrorKind::KConditionViolated,
                    "A^T P A has off-diagonal entry (" + std::to_string(i) + ", " +
                        std::to_string(j) + ") = " + to_string(gram(i, j)));
      }
    }
  }
  for (Eigen::Index i = 0; i < size; ++i) {
    if (!(gram(i, i) > 0) || scalar_equal(gram(i, i), from_int<Scalar>(0), tol)) {
      throw Error(ErrorKind::KConditionViolated,
                  "A^T P A has non-positive diagonal entry " + std::to_string(i) + " = " +
                      to_string(gram(i, i)));
    }
  }
  if (!scalar_equal(gram(0, 0), one, tol)) {
    throw Error(ErrorKind::DNotNormalized, "D_0 = " + to_string(gram(0, 0)) + ", expected 1");
  }

  KGSystem<Scalar> sys;
  sys.d = static_cast<int>(size) - 1;
  sys.A = a;
  sys.p = p;
  sys.D = gram.diagonal();
  const Vector<Scalar> d_inv = sys.D.unaryExpr([](const Scalar& x) { return from_int<Scalar>(1) / x; });
  sys.C = d_inv.asDiagonal() * a.transpose() * p.asDiagonal();
  return sys;
}

/// Certifies an exact system; recomputes A^T P A rather than trusting inputs.
inline ExactSystem build_exact(const MatrixQ& a, const VectorQ& p) {
  return certify_system<Rational>(a, p);
}

/// A = diag(p)^{-1/2} O diag(Ddiag)^{1/2} with p_l = O_{l0}^2.
ApproxSystem build_from_orthogonal(const MatrixD& orthogonal, const VectorD& d_diag,
                                   const Tolerance& tol = {});

/// Lossy view of an exact system in doubles.
inline ApproxSystem to_approx(const ExactSystem& sys) {
  return {sys.d, to_double(sys.A), to_double(sys.C), to_double(sys.p), to_double(sys.D)};
}
inline const ApproxSystem& to_approx(const ApproxSystem& sys) { return sys; }

/// p_j A_ji == D_i C_ij for all i, j (the entrywise form of D C = A^T P).
template <KrawScalar Scalar>
std::optional<Witness> lemma_identity_mismatch(const KGSystem<Scalar>& sys, const Tolerance& tol = {}) {
  const Matrix<Scalar> lhs = (sys.p.asDiagonal() * sys.A).transpose();
  const Matrix<Scalar> rhs = sys.D.asDiagonal() * sys.C;
  return first_mismatch(lhs, rhs, tol);
}

/// Re-verifies every invariant of a certified system: first column of ones,
/// A^T P A = diag(D), C A = I, p A = e_0, row 0 of C equals p, and
/// p_j A_ji = D_i C_ij.
template <KrawScalar Scalar>
CheckResult kcondition_check(const KGSystem<Scalar>& sys, const Tolerance& tol = {}) {
  auto fail = [](std::string where, Witness w) {
    w.location = std::move(where) + " " + w.location;
    return CheckResult::from_witness("kcondition", std::move(w));
  };
  const auto size = sys.A.rows();
  const Matrix<Scalar> ones = Matrix<Scalar>::Constant(size, 1, from_int<Scalar>(1));
  if (auto w = first_mismatch(ones, Matrix<Scalar>(sys.A.col(0)), tol)) return fail("A column 0", *w);
  const Matrix<Scalar> gram = sys.A.transpose() * sys.p.asDiagonal() * sys.A;
  if (auto w = first_mismatch(Matrix<Scalar>(sys.D.asDiagonal()), gram, tol)) return fail("A^T P A", *w);
  const Matrix<Scalar> identity = Matrix<Scalar>::Identity(size, size);
  if (auto w = first_mismatch(identity, Matrix<Scalar>(sys.C * sys.A), tol)) return fail("C A", *w);
  const Matrix<Scalar> e0 = identity.row(0);
  if (auto w = first_mismatch(e0, Matrix<Scalar>(sys.p.transpose() * sys.A), tol)) return fail("p A", *w);
  if (auto w = first_mismatch(Matrix<Scalar>(sys.p.transpose()), Matrix<Scalar>(sys.C.row(0)), tol)) {
    return fail("C row 0", *w);
  }
  if (auto w = lemma_identity_mismatch(sys, tol)) return fail("p_j A_ji = D_i C_ij", *w);
  return CheckResult::from_witness("kcondition", std::nullopt);
}

enum class Normalization {
  Matrix,     ///< K_n = row n of Phi (generating function without 1/n!)
  Bernoulli,  ///< K_n = n! * row n of Phi (generating function with v^n / n!)
};

template <KrawScalar Scalar>
struct KravchoukLevel {
  KGSystem<Scalar> system;
  int level = 0;
  LevelBasis basis{1, 0};
  Matrix<Scalar> phi;      ///< transpose of the induced matrix of A
  Vector<Scalar> B;        ///< multinomial coefficients
  Vector<Scalar> W;        ///< multinomial weights B * p^m
  Vector<Scalar> Dbar;     ///< D^m

  int d() const noexcept { return system.d; }
  Eigen::Index dim() const noexcept { return static_cast<Eigen::Index>(basis.size()); }

  /// Lattice point / polynomial index stored at position pos (coordinate 0 dropped).
  MultiIndex tail_at(Eigen::Index pos) const { return basis[static_cast<std::size_t>(pos)].tail(); }
};

template <KrawScalar Scalar>
Scalar monomial(const Vector<Scalar>& base, const MultiIndex& m) {
  Scalar out = from_int<Scalar>(1);
  for (std::size_t l = 0; l < m.size(); ++l) out *= ipow(base(static_cast<Eigen::Index>(l)), m[l]);
  return out;
}

template <KrawScalar Scalar>
KravchoukLevel<Scalar> kravchouk_level(const KGSystem<Scalar>& sys, int level) {
  auto induced = induced_matrix(sys.A, level);
  KravchoukLevel<Scalar> out;
  out.system = sys;
  out.level = level;
  out.basis = induced.basis;
  out.phi = induced.matrix.transpose();
  out.B = binomial_vector<Scalar>(sys.d, level);
  out.W.resize(out.dim());
  out.Dbar.resize(out.dim());
  for (Eigen::Index i = 0; i < out.dim(); ++i) {
    const MultiIndex& m = out.basis[static_cast<std::size_t>(i)];
    out.W(i) = out.B(i) * monomial(sys.p, m);
    out.Dbar(i) = monomial(sys.D, m);
  }
  return out;
}

/// Phi W Phi^T == diag(B Dbar)
template <KrawScalar Scalar>
CheckResult orthogonality_check(const KravchoukLevel<Scalar>& lvl, const Tolerance& tol = {}) {
  const Matrix<Scalar> lhs = lvl.phi * lvl.W.asDiagonal() * lvl.phi.transpose();
  const Matrix<Scalar> rhs = lvl.B.cwiseProduct(lvl.Dbar).asDiagonal();
  return CheckResult::from_witness("orthogonality", first_mismatch(rhs, lhs, tol, &lvl.basis));
}

/// n! per basis slot (product over the d tail coordinates).
template <KrawScalar Scalar>
Vector<Scalar> tail_factorials(const KravchoukLevel<Scalar>& lvl) {
  Vector<Scalar> out(lvl.dim());
  for (Eigen::Index i = 0; i < lvl.dim(); ++i) {
    out(i) = from_integer<Scalar>(multi_factorial(lvl.tail_at(i)));
  }
  return out;
}

/// Rows n, columns x: K_n(x) in the requested normalization.
template <KrawScalar Scalar>
Matrix<Scalar> value_table(const KravchoukLevel<Scalar>& lvl, Normalization norm) {
  if (norm == Normalization::Matrix) return lvl.phi;
  return tail_factorials(lvl).asDiagonal() * lvl.phi;
}

/// K_n(x) at a lattice point. |n| > N yields 0.
template <KrawScalar Scalar>
Scalar evaluate(const KravchoukLevel<Scalar>& lvl, const MultiIndex& n, const MultiIndex& x,
                Normalization norm) {
  const auto col = lvl.basis.rank_tail(x);
  if (n.size() != static_cast<std::size_t>(lvl.d())) {
    throw Error(ErrorKind::DimensionMismatch, "index " + n.label() + " does not have d components");
  }
  if (!n.nonnegative()) {
    throw Error(ErrorKind::IndexOutOfRange, "index " + n.label() + " has a negative entry");
  }
  if (n.degree() > lvl.level) return from_int<Scalar>(0);
  const auto row = lvl.basis.rank_tail(n);
  Scalar value = lvl.phi(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
  if (norm == Normalization::Bernoulli) value *= from_integer<Scalar>(multi_factorial(n));
  return value;
}

/// Squared norms of K_n, indexed by basis position of (N - |n|, n).
template <KrawScalar Scalar>
Vector<Scalar> gram_diagonal(const KravchoukLevel<Scalar>& lvl, Normalization norm) {
  Vector<Scalar> g = lvl.B.cwiseProduct(lvl.Dbar);
  if (norm == Normalization::Bernoulli) {
    const Vector<Scalar> f = tail_factorials(lvl);
    g = g.cwiseProduct(f).cwiseProduct(f);
  }
  return g;
}

/// Expectation of f g under the multinomial distribution; f, g are indexed by
/// lattice points in basis order.
template <KrawScalar Scalar>
Scalar inner_product(const KravchoukLevel<Scalar>& lvl, const Vector<Scalar>& f,
                     const Vector<Scalar>& g) {
  if (f.size() != lvl.dim() || g.size() != lvl.dim()) {
    throw Error(ErrorKind::LengthMismatch, "inner_product expects vectors of length " +
                                               std::to_string(lvl.dim()));
  }
  Scalar acc = from_int<Scalar>(0);
  for (Eigen::Index i = 0; i < lvl.dim(); ++i) acc += lvl.W(i) * f(i) * g(i);
  return acc;
}

}  // namespace kraw
