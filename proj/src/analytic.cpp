#include "kraw/analytic.hpp"

#include <cmath>

namespace kraw {

AnalyticContext::AnalyticContext(ApproxSystem sys) : sys_(std::move(sys)) {}

void AnalyticContext::check_length(const VectorD& v, const char* what) const {
  if (v.size() != d()) {
    throw Error(ErrorKind::LengthMismatch, std::string(what) + " expects a vector of length " +
                                               std::to_string(d()));
  }
  for (Eigen::Index i = 0; i < v.size(); ++i) require_finite(v(i), what);
}

namespace {

// p_mu e^{z_mu} with z_0 = 0
double partition(const ApproxSystem& sys, const VectorD& z) {
  double acc = sys.p(0);
  for (int i = 1; i <= sys.d; ++i) acc += sys.p(i) * std::exp(z(i - 1));
  return acc;
}

// A_{k mu} V_mu with V_0 = 1
double affine_row(const ApproxSystem& sys, int k, const VectorD& v) {
  double acc = sys.A(k, 0);
  for (int j = 1; j <= sys.d; ++j) acc += sys.A(k, j) * v(j - 1);
  return acc;
}

double checked(double value, const char* what) {
  require_finite(value, what);
  return value;
}

}  // namespace

double AnalyticContext::H(const VectorD& z) const {
  check_length(z, "H");
  return checked(std::log(partition(sys_, z)), "H");
}

VectorD AnalyticContext::U(const VectorD& v) const {
  check_length(v, "U");
  const double denom = affine_row(sys_, 0, v);
  if (!(denom > 0)) {
    throw Error(ErrorKind::DomainError, "alpha_nu v_nu = " + to_string(denom) + " is not positive");
  }
  VectorD out(d());
  for (int k = 1; k <= d(); ++k) {
    const double num = affine_row(sys_, k, v);
    if (!(num > 0)) {
      throw Error(ErrorKind::DomainError, "A_{" + std::to_string(k) + " mu} v_mu = " +
                                              to_string(num) + " is not positive");
    }
    out(k - 1) = checked(std::log(num / denom), "U");
  }
  return out;
}

VectorD AnalyticContext::V(const VectorD& z) const {
  check_length(z, "V");
  const double denom = partition(sys_, z);
  VectorD out(d());
  for (int k = 1; k <= d(); ++k) {
    double num = sys_.C(k, 0);
    for (int j = 1; j <= d(); ++j) num += sys_.C(k, j) * std::exp(z(j - 1));
    out(k - 1) = checked(num / denom, "V");
  }
  return out;
}

MatrixD AnalyticContext::riccati_residual(const VectorD& z, double h) const {
  if (!(h > 0)) throw Error(ErrorKind::DomainError, "difference step must be positive");
  const VectorD vz = V(z);
  MatrixD out(d(), d());
  for (int j = 1; j <= d(); ++j) {
    VectorD plus = z;
    VectorD minus = z;
    plus(j - 1) += h;
    minus(j - 1) -= h;
    const VectorD derivative = (V(plus) - V(minus)) / (2.0 * h);
    const double row_j = affine_row(sys_, j, vz);
    for (int i = 1; i <= d(); ++i) {
      const double rhs = (sys_.C(i, j) - sys_.p(j) * vz(i - 1)) * row_j;
      out(i - 1, j - 1) = checked(std::abs(derivative(i - 1) - rhs), "riccati_residual");
    }
  }
  return out;
}

double AnalyticContext::exp_ratio_residual(const VectorD& z) const {
  const VectorD vz = V(z);
  const double denom = partition(sys_, z);
  double worst = 0.0;
  for (int k = 0; k <= d(); ++k) {
    const double lhs = (k == 0 ? 1.0 : std::exp(z(k - 1))) / denom;
    worst = std::max(worst, std::abs(lhs - affine_row(sys_, k, vz)));
  }
  return checked(worst, "exp_ratio_residual");
}

double AnalyticContext::cumulant_residual(const VectorD& z) const {
  const double alpha_v = affine_row(sys_, 0, V(z));
  return checked(std::abs(H(z) - std::log(1.0 / alpha_v)), "cumulant_residual");
}

double AnalyticContext::gradient_residual(const VectorD& z, double h) const {
  if (!(h > 0)) throw Error(ErrorKind::DomainError, "difference step must be positive");
  const VectorD vz = V(z);
  double worst = 0.0;
  for (int j = 1; j <= d(); ++j) {
    VectorD plus = z;
    VectorD minus = z;
    plus(j - 1) += h;
    minus(j - 1) -= h;
    const double derivative = (H(plus) - H(minus)) / (2.0 * h);
    worst = std::max(worst, std::abs(derivative - sys_.p(j) * affine_row(sys_, j, vz)));
  }
  return checked(worst, "gradient_residual");
}

double AnalyticContext::psi_residual(const VectorD& b, const VectorD& v) const {
  const VectorD ub = U(b);
  const VectorD uv = U(v);
  double bdv = 1.0;
  for (int i = 1; i <= d(); ++i) bdv += b(i - 1) * sys_.D(i) * v(i - 1);
  if (!(bdv > 0)) throw Error(ErrorKind::DomainError, "B_mu D_mu V_mu is not positive");
  const double lhs = H(ub + uv) - H(ub) - H(uv);
  return checked(std::abs(lhs - std::log(bdv)), "psi_residual");
}

double AnalyticContext::generating_function_exp(const MultiIndex& x, int level,
                                                const VectorD& v) const {
  if (x.size() != static_cast<std::size_t>(d()) || !x.nonnegative() || x.degree() > level) {
    throw Error(ErrorKind::OutOfSimplex, "point " + x.label() + " is outside the simplex");
  }
  const VectorD u = U(v);
  double xu = 0.0;
  for (int i = 0; i < d(); ++i) xu += x[static_cast<std::size_t>(i)] * u(i);
  return checked(std::exp(xu - level * H(u)), "generating_function_exp");
}

}  // namespace kraw
