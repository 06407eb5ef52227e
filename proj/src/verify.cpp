#include "kraw/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>

#include "kraw/analytic.hpp"
#include "kraw/fock.hpp"
#include "kraw/induced.hpp"
#include "kraw/sampling.hpp"

namespace kraw {

const std::vector<std::string>& all_check_names() {
  static const std::vector<std::string> names = {
      "kcondition", "homomorphism", "transpose",  "orthogonality", "ladder",      "lie",
      "observables", "recurrence",  "riccati",    "leibniz",       "ccr-interior"};
  return names;
}

namespace {

template <KrawScalar Scalar>
Scalar random_entry(Rng& rng) {
  if constexpr (is_exact_v<Scalar>) {
    const auto num = static_cast<long long>(rng.uniform() * 13.0) - 6;
    const auto den = static_cast<long long>(rng.uniform() * 5.0) + 1;
    return Rational(num, den);
  } else {
    return 2.0 * rng.uniform() - 1.0;
  }
}

template <KrawScalar Scalar>
Matrix<Scalar> random_matrix(Eigen::Index size, Rng& rng) {
  Matrix<Scalar> m(size, size);
  for (Eigen::Index i = 0; i < size; ++i) {
    for (Eigen::Index j = 0; j < size; ++j) m(i, j) = random_entry<Scalar>(rng);
  }
  return m;
}

CheckResult first_failure(std::initializer_list<CheckResult> results, std::string name) {
  for (const auto& r : results) {
    if (!r.passed()) {
      CheckResult out = r;
      out.name = std::move(name);
      return out;
    }
  }
  CheckResult ok;
  ok.name = std::move(name);
  return ok;
}

CheckResult residual_check(std::string name, double worst, double bound, const std::string& where) {
  CheckResult r;
  r.name = std::move(name);
  if (!(worst <= bound)) {
    r.status = CheckStatus::Fail;
    r.witness = Witness{where, "<= " + to_string(bound), to_string(worst), worst};
  } else {
    r.detail = "max residual " + to_string(worst);
  }
  return r;
}

CheckResult riccati_suite(const ApproxSystem& sys, const VerifyOptions& opt, Rng& rng) {
  const AnalyticContext ctx(sys);
  double riccati = 0.0;
  double identities = 0.0;
  std::string riccati_where = "none";
  std::string identity_where = "none";
  for (int s = 0; s < opt.analytic_samples; ++s) {
    VectorD z(sys.d);
    for (int i = 0; i < sys.d; ++i) z(i) = 2.0 * rng.uniform() - 1.0;
    const double r = ctx.riccati_residual(z, opt.difference_step).maxCoeff();
    if (r > riccati) {
      riccati = r;
      riccati_where = "sample " + std::to_string(s) + " Riccati";
    }
    for (const auto& [value, label] :
         {std::pair{ctx.exp_ratio_residual(z), "exp-ratio"},
          std::pair{ctx.cumulant_residual(z), "cumulant"},
          std::pair{ctx.gradient_residual(z, opt.difference_step), "gradient"}}) {
      if (value > identities) {
        identities = value;
        identity_where = "sample " + std::to_string(s) + " " + label;
      }
    }
  }
  auto first = residual_check("riccati", riccati, opt.riccati_tolerance, riccati_where);
  if (!first.passed()) return first;
  auto second = residual_check("riccati", identities, opt.identity_tolerance, identity_where);
  if (!second.passed()) return second;
  first.detail = "max Riccati residual " + to_string(riccati) + ", max identity residual " +
                 to_string(identities);
  return first;
}

template <KrawScalar Scalar>
CheckResult leibniz_suite(const KravchoukLevel<Scalar>& lvl, const VerifyOptions& opt, Rng& rng) {
  for (int s = 0; s < opt.leibniz_samples; ++s) {
    Vector<Scalar> b(lvl.d());
    Vector<Scalar> v(lvl.d());
    for (int i = 0; i < lvl.d(); ++i) {
      b(i) = random_entry<Scalar>(rng);
      v(i) = random_entry<Scalar>(rng);
    }
    const Scalar closed = leibniz(lvl, b, v);
    const Scalar brute = leibniz_bruteforce(lvl, b, v);
    const Scalar overlap = coherent_overlap(lvl, b, v);
    for (const auto& [other, label] : {std::pair{brute, "expansion"}, std::pair{overlap, "coherent overlap"}}) {
      if (!scalar_equal(closed, other, opt.tol)) {
        return CheckResult::from_witness(
            "leibniz", Witness{"sample " + std::to_string(s) + " " + label, to_string(closed),
                               to_string(other), std::nullopt});
      }
    }
  }
  // psi identity in floating point at small arguments inside the U-domain.
  const AnalyticContext ctx(to_approx(lvl.system));
  double worst = 0.0;
  for (int s = 0; s < opt.leibniz_samples; ++s) {
    VectorD b(lvl.d());
    VectorD v(lvl.d());
    for (int i = 0; i < lvl.d(); ++i) {
      b(i) = 0.1 * (2.0 * rng.uniform() - 1.0);
      v(i) = 0.1 * (2.0 * rng.uniform() - 1.0);
    }
    try {
      worst = std::max(worst, ctx.psi_residual(b, v));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DomainError) throw;
    }
  }
  auto r = residual_check("leibniz", worst, opt.identity_tolerance, "psi identity");
  if (r.passed()) {
    r.detail = std::to_string(opt.leibniz_samples) + " closed-form samples, psi residual " + to_string(worst);
  }
  return r;
}

template <KrawScalar Scalar>
VerificationReport run_checks(const KGSystem<Scalar>& sys, const VerifyOptions& opt,
                              const std::vector<std::string>& wanted) {
  const auto lvl = kravchouk_level(sys, opt.level);
  const FockRep<Scalar> rep(lvl);
  const Tolerance& tol = opt.tol;
  Rng rng(opt.seed);

  const std::vector<std::pair<std::string, std::function<CheckResult()>>> table = {
      {"kcondition", [&] { return kcondition_check(sys, tol); }},
      {"homomorphism",
       [&] {
         const Matrix<Scalar> random = random_matrix<Scalar>(sys.A.rows(), rng);
         return first_failure({check_homomorphism(sys.A, sys.C, opt.level, tol),
                               check_homomorphism(Matrix<Scalar>(sys.A.transpose()), sys.A, opt.level, tol),
                               check_homomorphism(sys.A, random, opt.level, tol)},
                              "homomorphism");
       }},
      {"transpose",
       [&] {
         return first_failure({check_transpose_lemma(sys.A, opt.level, tol),
                               check_transpose_lemma(sys.C, opt.level, tol)},
                              "transpose");
       }},
      {"orthogonality", [&] { return orthogonality_check(lvl, tol); }},
      {"ladder", [&] { return ladder_check(rep, tol); }},
      {"lie", [&] { return lie_closure_check(rep, tol); }},
      {"observables", [&] { return observables_check(rep, tol); }},
      {"recurrence", [&] { return recurrence_check(rep, tol); }},
      {"riccati", [&] { return riccati_suite(to_approx(sys), opt, rng); }},
      {"leibniz", [&] { return leibniz_suite(lvl, opt, rng); }},
      {"ccr-interior", [&] { return ccr_interior_check(rep, tol); }},
  };

  VerificationReport report;
  for (const auto& [name, run] : table) {
    if (std::find(wanted.begin(), wanted.end(), name) == wanted.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    CheckResult result = run();
    result.name = name;
    result.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    report.checks.push_back(std::move(result));
  }
  return report;
}

bool is_kcondition_clause(ErrorKind kind) {
  return kind == ErrorKind::KConditionViolated || kind == ErrorKind::DNotNormalized ||
         kind == ErrorKind::NotOrthogonal;
}

}  // namespace

VerificationReport run_verification(const SystemInput& input, const VerifyOptions& options) {
  std::vector<std::string> wanted = options.checks.empty() ? all_check_names() : options.checks;
  for (const auto& name : wanted) {
    if (std::find(all_check_names().begin(), all_check_names().end(), name) == all_check_names().end()) {
      throw Error(ErrorKind::ParseError, "unknown check '" + name + "'");
    }
  }
  if (options.level < 0) throw Error(ErrorKind::DegreeMismatch, "level must be >= 0");

  AnySystem sys;
  try {
    sys = certify(input, options.tol);
  } catch (const Error& e) {
    if (!is_kcondition_clause(e.kind())) throw;
    VerificationReport report;
    for (const auto& name : all_check_names()) {
      // kcondition is always reported when certification fails.
      if (name != "kcondition" && std::find(wanted.begin(), wanted.end(), name) == wanted.end()) {
        continue;
      }
      CheckResult r;
      r.name = name;
      if (name == "kcondition") {
        r.status = CheckStatus::Fail;
        r.witness = Witness{std::string(error_code(e.kind())), "", e.what(), std::nullopt};
      } else {
        r.status = CheckStatus::Skipped;
        r.detail = "system is not certified";
      }
      report.checks.push_back(std::move(r));
    }
    return report;
  }
  return std::visit([&](const auto& s) { return run_checks(s, options, wanted); }, sys);
}

}  // namespace kraw
