#include "kraw/multi_index.hpp"

#include <numeric>

namespace kraw {

MultiIndex::MultiIndex(std::vector<int> exponents) : exponents_(std::move(exponents)) {
  degree_ = std::accumulate(exponents_.begin(), exponents_.end(), 0);
}

MultiIndex MultiIndex::shifted(std::size_t i, int delta) const {
  MultiIndex out = *this;
  out.exponents_.at(i) += delta;
  out.degree_ += delta;
  return out;
}

bool MultiIndex::nonnegative() const noexcept {
  for (int e : exponents_) {
    if (e < 0) return false;
  }
  return true;
}

MultiIndex MultiIndex::homogenized(int level) const {
  std::vector<int> out;
  out.reserve(exponents_.size() + 1);
  out.push_back(level - degree_);
  out.insert(out.end(), exponents_.begin(), exponents_.end());
  return MultiIndex(std::move(out));
}

MultiIndex MultiIndex::tail() const {
  if (exponents_.empty()) return {};
  return MultiIndex(std::vector<int>(exponents_.begin() + 1, exponents_.end()));
}

std::string MultiIndex::label() const {
  std::string out;
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    if (i) out += '|';
    out += std::to_string(exponents_[i]);
  }
  return out;
}

std::size_t compositions(int total, int parts) {
  if (total < 0 || parts <= 0) return parts == 0 && total == 0 ? 1 : 0;
  // C(total + parts - 1, parts - 1)
  std::size_t k = static_cast<std::size_t>(parts - 1);
  std::size_t n = static_cast<std::size_t>(total) + k;
  std::size_t result = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
  }
  return result;
}

namespace {

void fill_level(int remaining, std::size_t slot, std::vector<int>& current,
                std::vector<MultiIndex>& out) {
  if (slot + 1 == current.size()) {
    current[slot] = remaining;
    out.emplace_back(current);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    current[slot] = e;
    fill_level(remaining - e, slot + 1, current, out);
  }
}

}  // namespace

LevelBasis::LevelBasis(int d, int level) : d_(d), level_(level) {
  if (d < 1) throw Error(ErrorKind::DimensionMismatch, "dimension parameter d must be >= 1");
  if (level < 0) throw Error(ErrorKind::DegreeMismatch, "level must be >= 0");
  indices_.reserve(compositions(level, d + 1));
  std::vector<int> current(static_cast<std::size_t>(d) + 1, 0);
  fill_level(level, 0, current, indices_);
}

std::size_t LevelBasis::rank(const MultiIndex& m) const {
  if (m.size() != static_cast<std::size_t>(d_) + 1) {
    throw Error(ErrorKind::DimensionMismatch,
                "multi-index " + m.label() + " does not have d+1 = " + std::to_string(d_ + 1) +
                    " components");
  }
  if (!m.nonnegative()) {
    throw Error(ErrorKind::DegreeMismatch, "multi-index " + m.label() + " has a negative entry");
  }
  if (m.degree() != level_) {
    throw Error(ErrorKind::DegreeMismatch,
                "multi-index " + m.label() + " has degree " + std::to_string(m.degree()) +
                    ", level is " + std::to_string(level_));
  }
  // Count the tuples preceding m in descending lexicographic order.
  std::size_t pos = 0;
  int remaining = level_;
  for (std::size_t slot = 0; slot + 1 < m.size(); ++slot) {
    const int parts_after = static_cast<int>(m.size() - slot - 1);
    for (int e = remaining; e > m[slot]; --e) {
      pos += compositions(remaining - e, parts_after);
    }
    remaining -= m[slot];
  }
  return pos;
}

std::size_t LevelBasis::rank_tail(const MultiIndex& n) const {
  if (n.size() != static_cast<std::size_t>(d_)) {
    throw Error(ErrorKind::DimensionMismatch,
                "index " + n.label() + " does not have d = " + std::to_string(d_) + " components");
  }
  if (!n.nonnegative() || n.degree() > level_) {
    throw Error(ErrorKind::OutOfSimplex,
                "index " + n.label() + " is outside the level-" + std::to_string(level_) +
                    " simplex");
  }
  return rank(n.homogenized(level_));
}

Integer multinomial_coeff(const MultiIndex& m) {
  Integer result = factorial(m.degree());
  for (int e : m.exponents()) result /= factorial(e);
  return result;
}

Integer multi_factorial(const MultiIndex& n) {
  Integer result = 1;
  for (int e : n.exponents()) result *= factorial(e);
  return result;
}

}  // namespace kraw
