#include "kraw/system.hpp"

#include <cmath>

namespace kraw {

ApproxSystem build_from_orthogonal(const MatrixD& orthogonal, const VectorD& d_diag,
                                   const Tolerance& tol) {
  require_square(orthogonal, "orthogonal matrix");
  const auto size = orthogonal.rows();
  if (size < 2) throw Error(ErrorKind::ShapeMismatch, "orthogonal matrix must be at least 2x2");
  for (Eigen::Index i = 0; i < orthogonal.size(); ++i) {
    require_finite(orthogonal.data()[i], "orthogonal matrix");
  }
  if (d_diag.size() != size) {
    throw Error(ErrorKind::DdiagInvalid, "D has " + std::to_string(d_diag.size()) +
                                             " entries, expected " + std::to_string(size));
  }
  for (Eigen::Index i = 0; i < size; ++i) {
    if (!std::isfinite(d_diag(i)) || !(d_diag(i) > 0)) {
      throw Error(ErrorKind::DdiagInvalid,
                  "D[" + std::to_string(i) + "] = " + to_string(d_diag(i)) + " is not positive");
    }
  }
  if (!scalar_equal(d_diag(0), 1.0, tol)) {
    throw Error(ErrorKind::DdiagInvalid, "D[0] = " + to_string(d_diag(0)) + ", expected 1");
  }

  const MatrixD gram = orthogonal.transpose() * orthogonal;
  const MatrixD identity = MatrixD::Identity(size, size);
  if (auto w = first_mismatch(identity, gram, tol)) {
    throw Error(ErrorKind::NotOrthogonal,
                "O^T O differs from I at " + w->location + ": " + w->actual);
  }
  for (Eigen::Index l = 0; l < size; ++l) {
    if (!(orthogonal(l, 0) > 0)) {
      throw Error(ErrorKind::FirstColumnNotPositive,
                  "O(" + std::to_string(l) + ",0) = " + to_string(orthogonal(l, 0)));
    }
  }

  const VectorD p = orthogonal.col(0).cwiseAbs2();
  MatrixD a = p.cwiseSqrt().cwiseInverse().asDiagonal() * orthogonal *
              d_diag.cwiseSqrt().asDiagonal();
  for (Eigen::Index l = 0; l < size; ++l) {
    if (!scalar_equal(a(l, 0), 1.0, tol)) {
      throw Error(ErrorKind::FirstColumnNotOnes,
                  "A(" + std::to_string(l) + ",0) = " + to_string(a(l, 0)));
    }
    a(l, 0) = 1.0;
  }
  return certify_system<double>(a, p, tol);
}

}  // namespace kraw
