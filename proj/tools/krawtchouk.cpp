// krawtchouk: generate, verify, eval and sample from the command line.
//
// Exit codes: 0 success / all checks pass, 1 a check failed, 2 invalid input,
// 3 I/O failure.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "kraw/fock.hpp"
#include "kraw/io.hpp"
#include "kraw/sampling.hpp"
#include "kraw/verify.hpp"

namespace {

using namespace kraw;
using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;
constexpr int kExitIo = 3;

struct GlobalOptions {
  std::string system;
  int level = 3;
  std::string format = "json";
  std::string out;
  std::uint64_t seed = 0;
  double atol = Tolerance{}.atol;
  double rtol = Tolerance{}.rtol;

  Tolerance tolerance() const { return {atol, rtol}; }
};

struct GenerateOptions {
  std::vector<std::string> targets{"phi"};
  bool rational_csv = false;
};

struct EvalOptions {
  std::vector<int> n;
  std::vector<int> x;
  std::string normalization = "matrix";
};

struct SampleOptions {
  std::vector<int> m;
  std::vector<int> n;
  long long trials = 100000;
};

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!std::cout) throw Error(ErrorKind::Io, "cannot write to standard output");
    return;
  }
  std::ofstream file(path);
  if (!file) throw Error(ErrorKind::Io, "cannot open " + path + " for writing");
  file << text;
  if (!file) throw Error(ErrorKind::Io, "write to " + path + " failed");
}

// "<dir>/<stem>_<name><ext>" for the multi-matrix CSV layout.
std::string sibling_path(const std::string& path, const std::string& name) {
  const std::filesystem::path p(path);
  std::filesystem::path out = p.parent_path() / (p.stem().string() + "_" + name);
  out += p.has_extension() ? p.extension().string() : std::string(".csv");
  return out.string();
}

MultiIndex index_arg(const std::vector<int>& values, int d, const char* flag) {
  if (static_cast<int>(values.size()) != d) {
    throw Error(ErrorKind::DimensionMismatch, std::string(flag) + " needs " + std::to_string(d) +
                                                  " comma-separated entries, got " +
                                                  std::to_string(values.size()));
  }
  return MultiIndex(values);
}

template <KrawScalar Scalar>
std::vector<std::pair<std::string, Matrix<Scalar>>> collect_targets(const KGSystem<Scalar>& sys,
                                                                    int level,
                                                                    const std::vector<std::string>& targets) {
  const auto lvl = kravchouk_level(sys, level);
  std::vector<std::pair<std::string, Matrix<Scalar>>> out;
  for (const auto& target : targets) {
    if (target == "phi") {
      out.emplace_back("phi", lvl.phi);
    } else if (target == "B") {
      out.emplace_back("B", Matrix<Scalar>(lvl.B.asDiagonal()));
    } else if (target == "weights") {
      out.emplace_back("weights", Matrix<Scalar>(lvl.W.asDiagonal()));
    } else if (target == "Dbar") {
      out.emplace_back("Dbar", Matrix<Scalar>(lvl.Dbar.asDiagonal()));
    } else if (target == "operators") {
      const FockRep<Scalar> rep(lvl);
      const int d = sys.d;
      for (int i = 1; i <= d; ++i) out.emplace_back("R" + std::to_string(i), rep.raising(i));
      for (int i = 1; i <= d; ++i) out.emplace_back("V" + std::to_string(i), rep.velocity(i));
      for (int i = 1; i <= d; ++i) out.emplace_back("L" + std::to_string(i), rep.lowering(i));
      out.emplace_back("N", rep.number_op());
      for (int i = 1; i <= d; ++i) {
        for (int j = 1; j <= d; ++j) out.emplace_back("rho" + std::to_string(i) + std::to_string(j), rep.rho(i, j));
      }
      for (int j = 1; j <= d; ++j) out.emplace_back("X" + std::to_string(j), rep.observable(j));
    } else {
      throw Error(ErrorKind::ParseError, "unknown target '" + target + "'");
    }
  }
  return out;
}

template <KrawScalar Scalar>
void run_generate(const KGSystem<Scalar>& sys, const GlobalOptions& g, const GenerateOptions& opt) {
  if (g.level < 0) throw Error(ErrorKind::DegreeMismatch, "level must be >= 0");
  if (opt.rational_csv && !is_exact_v<Scalar>) {
    throw Error(ErrorKind::ParseError, "--rational-csv needs an exact system");
  }
  const auto matrices = collect_targets(sys, g.level, opt.targets);
  const LevelBasis basis(sys.d, g.level);

  if (g.format == "json") {
    json labels = json::array();
    for (const auto& m : basis) labels.push_back(m.label());
    json doc = {{"d", sys.d}, {"level", g.level}, {"basis", labels}};
    for (const auto& [name, matrix] : matrices) doc[name] = matrix_to_json(matrix);
    write_text(g.out, doc.dump(2) + "\n");
    return;
  }
  auto render = [&](const Matrix<Scalar>& m) {
    if constexpr (is_exact_v<Scalar>) {
      return matrix_to_csv(m, basis, opt.rational_csv ? CsvEntries::Rational : CsvEntries::Decimal);
    } else {
      return matrix_to_csv(m, basis);
    }
  };
  if (matrices.size() == 1) {
    write_text(g.out, render(matrices.front().second));
    return;
  }
  if (g.out.empty() || g.out == "-") {
    std::string text;
    for (const auto& [name, matrix] : matrices) text += "# " + name + "\n" + render(matrix);
    write_text("", text);
    return;
  }
  for (const auto& [name, matrix] : matrices) write_text(sibling_path(g.out, name), render(matrix));
}

template <KrawScalar Scalar>
json scalar_json(const Scalar& value) {
  if constexpr (is_exact_v<Scalar>) {
    return to_string(value);
  } else {
    return value;
  }
}

template <KrawScalar Scalar>
void run_eval(const KGSystem<Scalar>& sys, const GlobalOptions& g, const EvalOptions& opt) {
  if (g.level < 0) throw Error(ErrorKind::DegreeMismatch, "level must be >= 0");
  Normalization norm;
  if (opt.normalization == "matrix") {
    norm = Normalization::Matrix;
  } else if (opt.normalization == "bernoulli") {
    norm = Normalization::Bernoulli;
  } else {
    throw Error(ErrorKind::ParseError, "unknown normalization '" + opt.normalization + "'");
  }
  const auto lvl = kravchouk_level(sys, g.level);
  const Scalar value = evaluate(lvl, index_arg(opt.n, sys.d, "--n"), index_arg(opt.x, sys.d, "--x"), norm);
  write_text(g.out, json{{"value", scalar_json(value)}}.dump() + "\n");
}

template <KrawScalar Scalar>
void run_sample(const KGSystem<Scalar>& sys, const GlobalOptions& g, const SampleOptions& opt) {
  if (g.level < 0) throw Error(ErrorKind::DegreeMismatch, "level must be >= 0");
  const auto lvl = kravchouk_level(sys, g.level);
  const MultiIndex m = index_arg(opt.m, sys.d, "--m");
  const MultiIndex n = index_arg(opt.n, sys.d, "--n");
  for (const auto* idx : {&m, &n}) {
    if (!idx->nonnegative() || idx->degree() > g.level) {
      throw Error(ErrorKind::IndexOutOfRange, "index " + idx->label() + " outside the level");
    }
  }
  Rng rng(g.seed);
  const auto est = empirical_gram(lvl, m, n, opt.trials, rng);
  write_text(g.out, json{{"estimate", est.estimate}, {"stderr", est.standard_error}}.dump() + "\n");
}

AnySystem load_certified(const GlobalOptions& g) {
  if (g.system.empty()) throw Error(ErrorKind::ParseError, "--system is required");
  return certify(load_system(g.system), g.tolerance());
}

int exit_code_for(const Error& e) { return e.kind() == ErrorKind::Io ? kExitIo : kExitInput; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multivariate Krawtchouk polynomial systems: construction and identity checks"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--system", g.system, "System file (JSON)");
  app.add_option("--level", g.level, "Level N (total degree)")->capture_default_str();
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_option("--out", g.out, "Output path (default: standard output)");
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--atol", g.atol, "Absolute tolerance for approximate systems")->capture_default_str();
  app.add_option("--rtol", g.rtol, "Relative tolerance for approximate systems")->capture_default_str();

  GenerateOptions gen;
  auto* generate = app.add_subcommand("generate", "Write Kravchouk matrices or Fock operators");
  generate->add_option("--target", gen.targets, "phi, B, weights, Dbar, operators")
      ->delimiter(',')
      ->check(CLI::IsMember({"phi", "B", "weights", "Dbar", "operators"}))
      ->capture_default_str();
  generate->add_flag("--rational-csv", gen.rational_csv, "Write exact CSV entries as a/b");

  VerifyOptions ver;
  auto* verify = app.add_subcommand("verify", "Run the identity checks and print a JSON report");
  verify->add_option("--checks", ver.checks, "Comma-separated check names (default: all)")->delimiter(',');

  EvalOptions ev;
  auto* eval = app.add_subcommand("eval", "Evaluate K_n at a lattice point");
  eval->add_option("--n", ev.n, "Polynomial index, d comma-separated entries")->delimiter(',')->required();
  eval->add_option("--x", ev.x, "Lattice point, d comma-separated entries")->delimiter(',')->required();
  eval->add_option("--normalization", ev.normalization, "matrix or bernoulli")->capture_default_str();

  SampleOptions smp;
  auto* sample = app.add_subcommand("sample", "Monte Carlo estimate of <K_m, K_n>");
  sample->add_option("--m", smp.m, "First index")->delimiter(',')->required();
  sample->add_option("--n", smp.n, "Second index")->delimiter(',')->required();
  sample->add_option("--trials", smp.trials, "Number of sampled points")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitInput;
  }

  try {
    if (*verify) {
      if (g.system.empty()) throw Error(ErrorKind::ParseError, "--system is required");
      ver.level = g.level;
      ver.seed = g.seed;
      ver.tol = g.tolerance();
      const auto report = run_verification(load_system(g.system), ver);
      const std::string text = report_to_json(report).dump(2) + "\n";
      std::cout << text;
      if (!g.out.empty() && g.out != "-") write_text(g.out, text);
      return report.passed() ? kExitPass : kExitFail;
    }
    const AnySystem sys = load_certified(g);
    std::visit(
        [&](const auto& s) {
          if (*generate) run_generate(s, g, gen);
          if (*eval) run_eval(s, g, ev);
          if (*sample) run_sample(s, g, smp);
        },
        sys);
    return kExitPass;
  } catch (const Error& e) {
    std::cerr << "krawtchouk: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "krawtchouk: " << e.what() << "\n";
    return kExitInput;
  }
}
