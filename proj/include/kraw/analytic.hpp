// The analytic layer of a Krawtchouk system viewed as a Bernoulli system:
// the cumulant function H, the velocity map V and its inverse U, the Riccati
// equations for V, the Leibniz function and the generating function.
//
// Conventions: z_0 = 0 and v_0 = V_0 = 1 are adjoined; user-facing vectors
// carry only the d components 1..d.
#pragma once

#include "kraw/matrix.hpp"
#include "kraw/system.hpp"

namespace kraw {

/// Central-difference step used by the derivative checks.
inline constexpr double kDefaultDifferenceStep = 1e-5;

class AnalyticContext {
 public:
  explicit AnalyticContext(ApproxSystem sys);
  explicit AnalyticContext(const ExactSystem& sys) : AnalyticContext(to_approx(sys)) {}

  const ApproxSystem& system() const noexcept { return sys_; }
  int d() const noexcept { return sys_.d; }

  /// log(p_0 + sum_i p_i e^{z_i})
  double H(const VectorD& z) const;
  /// U_k(v) = log((A_k0 + sum_j A_kj v_j) / (1 + sum_j alpha_j v_j)). Throws
  /// DomainError when either affine form is not strictly positive.
  VectorD U(const VectorD& v) const;
  /// V_k(z) = (C_k0 + sum_j C_kj e^{z_j}) / (p_0 + sum_j p_j e^{z_j})
  VectorD V(const VectorD& z) const;

  /// |central difference dV_i/dz_j - (C_ij - p_j V_i) A_{j mu} V_mu|
  MatrixD riccati_residual(const VectorD& z, double h) const;

  /// max_k |e^{z_k} / (p_mu e^{z_mu}) - A_{k mu} V_mu(z)| over k = 0..d
  double exp_ratio_residual(const VectorD& z) const;
  /// |H(z) - log(1 / (alpha_mu V_mu(z)))|
  double cumulant_residual(const VectorD& z) const;
  /// max_j |central difference dH/dz_j - p_j A_{j mu} V_mu(z)|
  double gradient_residual(const VectorD& z, double h) const;
  /// |H(U(B)+U(V)) - H(U(B)) - H(U(V)) - log(1 + sum_i B_i D_i V_i)|
  double psi_residual(const VectorD& b, const VectorD& v) const;

  /// e^{x U(v) - N H(U(v))}, defined only inside the U-domain.
  double generating_function_exp(const MultiIndex& x, int level, const VectorD& v) const;

 private:
  void check_length(const VectorD& v, const char* what) const;

  ApproxSystem sys_;
};

/// Upsilon = (1 + sum_i B_i D_i V_i)^N
template <KrawScalar Scalar>
Scalar leibniz(const KravchoukLevel<Scalar>& lvl, const Vector<Scalar>& b, const Vector<Scalar>& v) {
  if (b.size() != lvl.d() || v.size() != lvl.d()) {
    throw Error(ErrorKind::LengthMismatch, "leibniz expects d-vectors");
  }
  Scalar base = from_int<Scalar>(1);
  for (int i = 1; i <= lvl.d(); ++i) base += b(i - 1) * lvl.system.D(i) * v(i - 1);
  return ipow(base, lvl.level);
}

/// sum over |n| <= N of (B^n / n!) (V^n / n!) ||K_n||^2, Bernoulli norms.
template <KrawScalar Scalar>
Scalar leibniz_bruteforce(const KravchoukLevel<Scalar>& lvl, const Vector<Scalar>& b,
                          const Vector<Scalar>& v) {
  if (b.size() != lvl.d() || v.size() != lvl.d()) {
    throw Error(ErrorKind::LengthMismatch, "leibniz_bruteforce expects d-vectors");
  }
  const Vector<Scalar> norms = gram_diagonal(lvl, Normalization::Bernoulli);
  const Vector<Scalar> fact = tail_factorials(lvl);
  Scalar acc = from_int<Scalar>(0);
  for (Eigen::Index pos = 0; pos < lvl.dim(); ++pos) {
    const MultiIndex n = lvl.tail_at(pos);
    acc += (monomial(b, n) / fact(pos)) * (monomial(v, n) / fact(pos)) * norms(pos);
  }
  return acc;
}

/// Point values of the coherent state e^{B R} Omega = sum_n (B^n/n!) K_n.
template <KrawScalar Scalar>
Vector<Scalar> coherent_state(const KravchoukLevel<Scalar>& lvl, const Vector<Scalar>& b) {
  const Matrix<Scalar> values = value_table(lvl, Normalization::Bernoulli);
  const Vector<Scalar> fact = tail_factorials(lvl);
  Vector<Scalar> coeffs(lvl.dim());
  for (Eigen::Index pos = 0; pos < lvl.dim(); ++pos) coeffs(pos) = monomial(b, lvl.tail_at(pos)) / fact(pos);
  return values.transpose() * coeffs;
}

/// <e^{BR} Omega, e^{VR} Omega> as an expectation over the multinomial lattice.
template <KrawScalar Scalar>
Scalar coherent_overlap(const KravchoukLevel<Scalar>& lvl, const Vector<Scalar>& b,
                        const Vector<Scalar>& v) {
  return inner_product(lvl, coherent_state(lvl, b), coherent_state(lvl, v));
}

/// prod_l (A_{l0} + sum_j A_{lj} v_j)^{m_l} with m = (N - |x|, x).
template <KrawScalar Scalar>
Scalar generating_function(const KravchoukLevel<Scalar>& lvl, const MultiIndex& x,
                           const Vector<Scalar>& v) {
  if (v.size() != lvl.d()) throw Error(ErrorKind::LengthMismatch, "generating_function expects a d-vector");
  const MultiIndex m = lvl.basis[lvl.basis.rank_tail(x)];
  const auto& a = lvl.system.A;
  Scalar out = from_int<Scalar>(1);
  for (int l = 0; l <= lvl.d(); ++l) {
    Scalar form = a(l, 0);
    for (int j = 1; j <= lvl.d(); ++j) form += a(l, j) * v(j - 1);
    out *= ipow(form, m[static_cast<std::size_t>(l)]);
  }
  return out;
}

/// sum over |n| <= N of (v^n / n!) K_n(x), Bernoulli normalization.
template <KrawScalar Scalar>
Scalar generating_series(const KravchoukLevel<Scalar>& lvl, const MultiIndex& x,
                         const Vector<Scalar>& v) {
  if (v.size() != lvl.d()) throw Error(ErrorKind::LengthMismatch, "generating_series expects a d-vector");
  Scalar acc = from_int<Scalar>(0);
  for (Eigen::Index pos = 0; pos < lvl.dim(); ++pos) {
    const MultiIndex n = lvl.tail_at(pos);
    acc += monomial(v, n) / from_integer<Scalar>(multi_factorial(n)) *
           evaluate(lvl, n, x, Normalization::Bernoulli);
  }
  return acc;
}

}  // namespace kraw
