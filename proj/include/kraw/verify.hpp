// The full identity suite run by `krawtchouk verify`.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kraw/io.hpp"
#include "kraw/report.hpp"

namespace kraw {

struct VerifyOptions {
  int level = 3;
  std::vector<std::string> checks;  ///< empty means all, in declaration order
  std::uint64_t seed = 0;
  Tolerance tol;
  int analytic_samples = 10;         ///< random z in [-1, 1]^d for the Riccati check
  double difference_step = 1e-5;
  double riccati_tolerance = 1e-6;
  double identity_tolerance = 1e-9;  ///< pointwise bound for the analytic identities
  int leibniz_samples = 10;
};

/// kcondition, homomorphism, transpose, orthogonality, ladder, lie,
/// observables, recurrence, riccati, leibniz, ccr-interior
const std::vector<std::string>& all_check_names();

/// Runs the requested checks. K-condition clause failures (off-diagonal Gram
/// entries, D_0 != 1, non-orthogonal O) are reported as a failing
/// "kcondition" check with every other check skipped; malformed input throws.
VerificationReport run_verification(const SystemInput& input, const VerifyOptions& options);

}  // namespace kraw
