// Multi-indices and the level basis (all exponent tuples of a fixed degree).
#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "kraw/scalar.hpp"

namespace kraw {

/// A tuple of nonnegative integer exponents with its degree cached.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exponents);
  MultiIndex(std::initializer_list<int> exponents)
      : MultiIndex(std::vector<int>(exponents)) {}

  std::size_t size() const noexcept { return exponents_.size(); }
  int degree() const noexcept { return degree_; }
  int operator[](std::size_t i) const { return exponents_[i]; }
  std::span<const int> exponents() const noexcept { return exponents_; }

  /// Copy with component i changed by delta. May go negative; callers check.
  MultiIndex shifted(std::size_t i, int delta) const;
  bool nonnegative() const noexcept;

  /// Prefix the homogenizing coordinate: (level - |n|, n_1, ..., n_d).
  MultiIndex homogenized(int level) const;
  /// Drop coordinate 0.
  MultiIndex tail() const;

  /// "m0|m1|...|md"
  std::string label() const;

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) {
    return a.exponents_ == b.exponents_;
  }
  friend auto operator<=>(const MultiIndex& a, const MultiIndex& b) {
    return a.exponents_ <=> b.exponents_;
  }

 private:
  std::vector<int> exponents_;
  int degree_ = 0;
};

/// Number of exponent tuples with `parts` components summing to `total`.
std::size_t compositions(int total, int parts);

/// All multi-indices with d+1 components and degree N, in dictionary order
/// (coordinate 0 ranking first): (N,0,...,0) comes first, (0,...,0,N) last.
class LevelBasis {
 public:
  LevelBasis(int d, int level);

  int d() const noexcept { return d_; }
  int level() const noexcept { return level_; }
  std::size_t size() const noexcept { return indices_.size(); }
  const MultiIndex& operator[](std::size_t pos) const { return indices_.at(pos); }
  const std::vector<MultiIndex>& indices() const noexcept { return indices_; }

  /// Position of m. Throws DimensionMismatch / DegreeMismatch.
  std::size_t rank(const MultiIndex& m) const;
  /// Position of (N - |n|, n) for a d-component n with |n| <= N.
  std::size_t rank_tail(const MultiIndex& n) const;

  auto begin() const noexcept { return indices_.begin(); }
  auto end() const noexcept { return indices_.end(); }

 private:
  int d_;
  int level_;
  std::vector<MultiIndex> indices_;
};

inline LevelBasis enumerate_level(int d, int level) { return LevelBasis(d, level); }

/// |m|! / (m_0! ... m_d!)
Integer multinomial_coeff(const MultiIndex& m);

/// n_1! ... n_k!
Integer multi_factorial(const MultiIndex& n);

}  // namespace kraw
