// Monte Carlo realization of the multinomial counting process: at each of N
// steps one of d+1 outcomes is drawn with probabilities p_0..p_d, and outcomes
// 1..d increment their counters.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "kraw/system.hpp"

namespace kraw {

/// Seeded mt19937_64 stream. Uniforms use the top 53 bits of each draw, so the
/// sequence is identical on every conforming platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Stream `index` of a family seeded by `seed` (seed + index).
  static Rng stream(std::uint64_t seed, std::uint64_t index) { return Rng(seed + index); }

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

struct ProcessSample {
  MultiIndex counts;  ///< x_1..x_d after `steps` steps
  int steps = 0;
};

struct GramEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
};

/// Inverse-CDF categorical draw over probs (index-ascending comparison).
std::size_t draw_categorical(const std::vector<double>& cumulative, Rng& rng);

/// Running sums p_0, p_0+p_1, ...
std::vector<double> cumulative_probabilities(const VectorD& p);

ProcessSample sample_counts(const VectorD& p, int steps, Rng& rng);

template <KrawScalar Scalar>
ProcessSample sample_counts(const KGSystem<Scalar>& sys, int steps, Rng& rng) {
  return sample_counts(to_double(sys.p), steps, rng);
}

/// Mean of K_m(x) K_n(x) (matrix normalization) over `trials` sampled points,
/// with its standard error.
template <KrawScalar Scalar>
GramEstimate empirical_gram(const KravchoukLevel<Scalar>& lvl, const MultiIndex& m,
                            const MultiIndex& n, long long trials, Rng& rng) {
  if (trials < 1) throw Error(ErrorKind::DomainError, "trials must be >= 1");
  // Value rows of K_m and K_n as doubles, indexed by lattice point rank.
  VectorD km = VectorD::Zero(lvl.dim());
  VectorD kn = VectorD::Zero(lvl.dim());
  for (Eigen::Index pos = 0; pos < lvl.dim(); ++pos) {
    const MultiIndex x = lvl.tail_at(pos);
    km(pos) = to_double(evaluate(lvl, m, x, Normalization::Matrix));
    kn(pos) = to_double(evaluate(lvl, n, x, Normalization::Matrix));
  }
  const VectorD p = to_double(lvl.system.p);
  const auto cumulative = cumulative_probabilities(p);
  // Welford accumulation.
  double mean = 0.0;
  double m2 = 0.0;
  std::vector<int> counts(static_cast<std::size_t>(lvl.d()));
  for (long long t = 0; t < trials; ++t) {
    std::fill(counts.begin(), counts.end(), 0);
    for (int s = 0; s < lvl.level; ++s) {
      const std::size_t outcome = draw_categorical(cumulative, rng);
      if (outcome > 0) ++counts[outcome - 1];
    }
    const auto pos = static_cast<Eigen::Index>(lvl.basis.rank_tail(MultiIndex(counts)));
    const double value = km(pos) * kn(pos);
    const double delta = value - mean;
    mean += delta / static_cast<double>(t + 1);
    m2 += delta * (value - mean);
  }
  GramEstimate out;
  out.estimate = mean;
  if (trials > 1) {
    const double variance = m2 / static_cast<double>(trials - 1);
    out.standard_error = std::sqrt(variance / static_cast<double>(trials));
  }
  return out;
}

template <KrawScalar Scalar>
GramEstimate empirical_gram(const KGSystem<Scalar>& sys, int level, const MultiIndex& m,
                            const MultiIndex& n, long long trials, Rng& rng) {
  return empirical_gram(kravchouk_level(sys, level), m, n, trials, rng);
}

/// Histogram of `trials` sampled points over the lattice, in basis order.
std::vector<long long> sample_histogram(const VectorD& p, int steps, long long trials, Rng& rng);

}  // namespace kraw
