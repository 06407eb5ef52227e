#pragma once

#include <optional>
#include <string>
#include <vector>

namespace kraw {

/// Where a check failed: first violated entry and/or the largest residual.
struct Witness {
  std::string location;
  std::string expected;
  std::string actual;
  std::optional<double> max_residual;
};

enum class CheckStatus { Pass, Fail, Skipped };

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::optional<Witness> witness;
  std::string detail;
  double elapsed_ms = 0.0;

  bool passed() const noexcept { return status == CheckStatus::Pass; }
  bool failed() const noexcept { return status == CheckStatus::Fail; }

  static CheckResult from_witness(std::string name, std::optional<Witness> w) {
    CheckResult r;
    r.name = std::move(name);
    r.status = w ? CheckStatus::Fail : CheckStatus::Pass;
    r.witness = std::move(w);
    return r;
  }
};

struct VerificationReport {
  std::vector<CheckResult> checks;

  /// Fails iff any check failed; skipped checks do not count.
  bool passed() const noexcept {
    for (const auto& c : checks) {
      if (c.failed()) return false;
    }
    return true;
  }
};

inline const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skipped: return "skipped";
  }
  return "unknown";
}

}  // namespace kraw
