#include "kraw/sampling.hpp"

namespace kraw {

std::vector<double> cumulative_probabilities(const VectorD& p) {
  std::vector<double> out(static_cast<std::size_t>(p.size()));
  double acc = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    acc += p(i);
    out[static_cast<std::size_t>(i)] = acc;
  }
  return out;
}

std::size_t draw_categorical(const std::vector<double>& cumulative, Rng& rng) {
  const double u = rng.uniform();
  for (std::size_t i = 0; i + 1 < cumulative.size(); ++i) {
    if (u < cumulative[i]) return i;
  }
  return cumulative.size() - 1;
}

ProcessSample sample_counts(const VectorD& p, int steps, Rng& rng) {
  if (steps < 0) throw Error(ErrorKind::DomainError, "steps must be >= 0");
  if (p.size() < 2) throw Error(ErrorKind::LengthMismatch, "need at least two outcomes");
  const auto cumulative = cumulative_probabilities(p);
  std::vector<int> counts(static_cast<std::size_t>(p.size() - 1), 0);
  for (int s = 0; s < steps; ++s) {
    const std::size_t outcome = draw_categorical(cumulative, rng);
    if (outcome > 0) ++counts[outcome - 1];
  }
  return {MultiIndex(std::move(counts)), steps};
}

std::vector<long long> sample_histogram(const VectorD& p, int steps, long long trials, Rng& rng) {
  const LevelBasis basis(static_cast<int>(p.size()) - 1, steps);
  std::vector<long long> hist(basis.size(), 0);
  for (long long t = 0; t < trials; ++t) {
    ++hist[basis.rank_tail(sample_counts(p, steps, rng).counts)];
  }
  return hist;
}

}  // namespace kraw
