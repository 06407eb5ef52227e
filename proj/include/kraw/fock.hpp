// Level-N Fock representation in the K-basis.
//
// Basis vector n (a d-component index with |n| <= N) is the polynomial K_n in
// the Bernoulli normalization, stored at the LevelBasis rank of (N - |n|, n).
// Column n of every operator matrix lists the K-coefficients of the image of
// K_n. Because K_{n+e_i} vanishes on the level-N lattice when |n| = N, the
// raising operators map the top level to zero.
#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "kraw/matrix.hpp"
#include "kraw/report.hpp"
#include "kraw/system.hpp"

namespace kraw {

template <KrawScalar Scalar>
class FockRep {
 public:
  explicit FockRep(KravchoukLevel<Scalar> level)
      : level_(std::move(level)), cache_(std::make_unique<Cache>()) {}

  const KravchoukLevel<Scalar>& level() const noexcept { return level_; }
  const KGSystem<Scalar>& system() const noexcept { return level_.system; }
  int d() const noexcept { return level_.d(); }
  int N() const noexcept { return level_.level; }
  Eigen::Index dim() const noexcept { return level_.dim(); }

  Eigen::Index position(const MultiIndex& n) const {
    return static_cast<Eigen::Index>(level_.basis.rank_tail(n));
  }
  MultiIndex index_at(Eigen::Index pos) const { return level_.tail_at(pos); }

  /// Gram diagonal of the K-basis (Bernoulli normalization).
  const Vector<Scalar>& gram() const {
    std::call_once(cache_->gram_once,
                   [&] { cache_->gram = gram_diagonal(level_, Normalization::Bernoulli); });
    return cache_->gram;
  }

  Matrix<Scalar> identity() const { return Matrix<Scalar>::Identity(dim(), dim()); }

  /// R_i K_n = K_{n+e_i}, zero on |n| = N.
  const Matrix<Scalar>& raising(int i) const {
    check_index(i, "raising");
    return cached("R" + std::to_string(i), [&] {
      Matrix<Scalar> r = Matrix<Scalar>::Zero(dim(), dim());
      for (Eigen::Index col = 0; col < dim(); ++col) {
        const MultiIndex n = index_at(col);
        if (n.degree() == N()) continue;
        r(position(n.shifted(static_cast<std::size_t>(i - 1), 1)), col) = from_int<Scalar>(1);
      }
      return r;
    });
  }

  /// V_j K_n = n_j K_{n-e_j}
  const Matrix<Scalar>& velocity(int j) const {
    check_index(j, "velocity");
    return cached("V" + std::to_string(j), [&] {
      Matrix<Scalar> v = Matrix<Scalar>::Zero(dim(), dim());
      const auto slot = static_cast<std::size_t>(j - 1);
      for (Eigen::Index col = 0; col < dim(); ++col) {
        const MultiIndex n = index_at(col);
        if (n[slot] == 0) continue;
        v(position(n.shifted(slot, -1)), col) = from_int<Scalar>(n[slot]);
      }
      return v;
    });
  }

  /// Diagonal with entry |n|.
  const Matrix<Scalar>& number_op() const {
    return cached("Nhat", [&] {
      Matrix<Scalar> out = Matrix<Scalar>::Zero(dim(), dim());
      for (Eigen::Index col = 0; col < dim(); ++col) {
        out(col, col) = from_int<Scalar>(index_at(col).degree());
      }
      return out;
    });
  }

  /// L_i = D_i (N - Nhat) V_i, the Gram adjoint of R_i.
  const Matrix<Scalar>& lowering(int i) const {
    check_index(i, "lowering");
    return cached("L" + std::to_string(i), [&] {
      return Matrix<Scalar>(system().D(i) * (level_shift() * velocity(i)));
    });
  }

  /// rho_ij = [L_i, R_j], as a matrix commutator.
  const Matrix<Scalar>& rho(int i, int j) const {
    check_index(i, "rho");
    check_index(j, "rho");
    return cached("rho" + std::to_string(i) + "_" + std::to_string(j),
                  [&] { return commutator(lowering(i), raising(j)); });
  }

  /// rho_ii = D_i (N - R_i V_i - Nhat); rho_ij = -D_i R_j V_i for i != j.
  Matrix<Scalar> rho_closed_form(int i, int j) const {
    check_index(i, "rho");
    check_index(j, "rho");
    if (i == j) {
      return system().D(i) * (level_shift() - raising(i) * velocity(i));
    }
    return -system().D(i) * (raising(j) * velocity(i));
  }

  /// X_j = (N p_j + sum_i R_i (C_ij - p_j V_i)) (1 + sum_k A_jk V_k)
  const Matrix<Scalar>& observable(int j) const {
    check_index(j, "observable");
    return cached("X" + std::to_string(j), [&] {
      const auto& sys = system();
      const Scalar pj = sys.p(j);
      Matrix<Scalar> left = (from_int<Scalar>(N()) * pj) * identity();
      Matrix<Scalar> right = identity();
      for (int i = 1; i <= d(); ++i) {
        left += raising(i) * (sys.C(i, j) * identity() - pj * velocity(i));
        right += sys.A(j, i) * velocity(i);
      }
      return Matrix<Scalar>(left * right);
    });
  }

  /// Multiplication by x_j built in the point basis and conjugated into the
  /// K-basis through the value table. Independent of the ladder operators.
  Matrix<Scalar> observable_point_basis(int j) const {
    check_index(j, "observable_point_basis");
    const Matrix<Scalar> values_t = value_table(level_, Normalization::Bernoulli).transpose();
    Vector<Scalar> coords(dim());
    for (Eigen::Index x = 0; x < dim(); ++x) {
      coords(x) = from_int<Scalar>(index_at(x)[static_cast<std::size_t>(j - 1)]);
    }
    return inverse<Scalar>(values_t) * coords.asDiagonal() * values_t;
  }

  /// X_j = sum_i (R_i + L_i) C_ij + (N - Nhat) - (1/p_j) sum_{i,k} C_ij C_kj rho_ik
  Matrix<Scalar> observable_selfadjoint(int j) const {
    check_index(j, "observable_selfadjoint");
    const auto& sys = system();
    Matrix<Scalar> out = level_shift();
    Matrix<Scalar> rho_sum = Matrix<Scalar>::Zero(dim(), dim());
    for (int i = 1; i <= d(); ++i) {
      out += sys.C(i, j) * (raising(i) + lowering(i));
      for (int k = 1; k <= d(); ++k) rho_sum += (sys.C(i, j) * sys.C(k, j)) * rho(i, k);
    }
    out -= (from_int<Scalar>(1) / sys.p(j)) * rho_sum;
    return out;
  }

  /// Expansion of x_j K_n by the five-term recurrence, terms leaving the level
  /// dropped, like terms merged, ordered by basis position.
  std::vector<std::pair<Scalar, MultiIndex>> recurrence_apply(int j, const MultiIndex& n) const {
    check_index(j, "recurrence_apply");
    if (n.size() != static_cast<std::size_t>(d()) || !n.nonnegative() || n.degree() > N()) {
      throw Error(ErrorKind::IndexOutOfRange,
                  "index " + n.label() + " is outside |n| <= " + std::to_string(N()));
    }
    const auto& sys = system();
    const Scalar pj = sys.p(j);
    const Scalar big_n = from_int<Scalar>(N());
    const Scalar deg = from_int<Scalar>(n.degree());
    std::map<Eigen::Index, Scalar> acc;
    auto add = [&](const MultiIndex& m, const Scalar& c) {
      if (m.degree() > N() || c == 0) return;
      auto [it, inserted] = acc.try_emplace(position(m), c);
      if (!inserted) it->second += c;
    };

    add(n, pj * (big_n - deg));
    for (int i = 1; i <= d(); ++i) add(n.shifted(static_cast<std::size_t>(i - 1), 1), sys.C(i, j));
    for (int k = 1; k <= d(); ++k) {
      const auto slot = static_cast<std::size_t>(k - 1);
      if (n[slot] == 0) continue;
      const Scalar nk = from_int<Scalar>(n[slot]);
      const MultiIndex lowered = n.shifted(slot, -1);
      add(lowered, pj * big_n * sys.A(j, k) * nk);
      add(lowered, -pj * sys.A(j, k) * (deg - from_int<Scalar>(1)) * nk);
      for (int i = 1; i <= d(); ++i) {
        add(lowered.shifted(static_cast<std::size_t>(i - 1), 1), sys.C(i, j) * sys.A(j, k) * nk);
      }
    }

    std::vector<std::pair<Scalar, MultiIndex>> out;
    for (const auto& [pos, c] : acc) {
      if (c != 0) out.emplace_back(c, index_at(pos));
    }
    return out;
  }

  /// Observable assembled column by column from recurrence_apply.
  Matrix<Scalar> recurrence_matrix(int j) const {
    Matrix<Scalar> out = Matrix<Scalar>::Zero(dim(), dim());
    for (Eigen::Index col = 0; col < dim(); ++col) {
      for (const auto& [c, m] : recurrence_apply(j, index_at(col))) out(position(m), col) += c;
    }
    return out;
  }

  /// G * op == other^T * G, i.e. <op f, g>_G = <f, other g>_G.
  std::optional<Witness> adjoint_mismatch(const Matrix<Scalar>& op, const Matrix<Scalar>& other,
                                          const Tolerance& tol = {}) const {
    const Matrix<Scalar> lhs = gram().asDiagonal() * op;
    const Matrix<Scalar> rhs = other.transpose() * gram().asDiagonal();
    return first_mismatch(lhs, rhs, tol, &level_.basis);
  }

 private:
  struct Cache {
    std::mutex mutex;
    std::map<std::string, std::shared_ptr<const Matrix<Scalar>>> matrices;
    std::once_flag gram_once;
    Vector<Scalar> gram;
  };

  void check_index(int i, const char* what) const {
    if (i < 1 || i > d()) {
      throw Error(ErrorKind::IndexOutOfRange, std::string(what) + " index " + std::to_string(i) +
                                                  " outside 1.." + std::to_string(d()));
    }
  }

  Matrix<Scalar> level_shift() const {
    return from_int<Scalar>(N()) * identity() - number_op();
  }

  // Write-once per key. Concurrent misses may both build; the first insert wins
  // and every caller sees that same matrix.
  template <typename Build>
  const Matrix<Scalar>& cached(const std::string& key, Build&& build) const {
    {
      std::lock_guard lock(cache_->mutex);
      if (auto it = cache_->matrices.find(key); it != cache_->matrices.end()) return *it->second;
    }
    auto built = std::make_shared<const Matrix<Scalar>>(build());
    std::lock_guard lock(cache_->mutex);
    auto [it, inserted] = cache_->matrices.try_emplace(key, std::move(built));
    return *it->second;
  }

  KravchoukLevel<Scalar> level_;
  std::unique_ptr<Cache> cache_;
};

/// Interior canonical commutation: [V_j, R_i] e_n = delta_ij e_n for |n| < N,
/// and -n_j e_{n-e_j+e_i} on the top level.
template <KrawScalar Scalar>
CheckResult ccr_interior_check(const FockRep<Scalar>& rep, const Tolerance& tol = {}) {
  for (int i = 1; i <= rep.d(); ++i) {
    for (int j = 1; j <= rep.d(); ++j) {
      const Matrix<Scalar> actual = commutator(rep.velocity(j), rep.raising(i));
      Matrix<Scalar> expected = Matrix<Scalar>::Zero(rep.dim(), rep.dim());
      for (Eigen::Index col = 0; col < rep.dim(); ++col) {
        const MultiIndex n = rep.index_at(col);
        if (n.degree() < rep.N()) {
          if (i == j) expected(col, col) = from_int<Scalar>(1);
          continue;
        }
        const auto sj = static_cast<std::size_t>(j - 1);
        if (n[sj] == 0) continue;
        const MultiIndex target = n.shifted(sj, -1).shifted(static_cast<std::size_t>(i - 1), 1);
        expected(rep.position(target), col) -= from_int<Scalar>(n[sj]);
      }
      if (auto w = first_mismatch(expected, actual, tol, &rep.level().basis)) {
        w->location = "[V" + std::to_string(j) + ",R" + std::to_string(i) + "] " + w->location;
        return CheckResult::from_witness("ccr-interior", std::move(w));
      }
    }
  }
  return CheckResult::from_witness("ccr-interior", std::nullopt);
}

/// Adjointness G L_i = R_i^T G, rho commutators against closed forms, rho_ij^* = rho_ji,
/// selfadjointness of rho_ii, Nhat and R_i V_i.
template <KrawScalar Scalar>
CheckResult ladder_check(const FockRep<Scalar>& rep, const Tolerance& tol = {}) {
  auto fail = [](std::string where, Witness w) {
    w.location = std::move(where) + " " + w.location;
    return CheckResult::from_witness("ladder", std::move(w));
  };
  for (int i = 1; i <= rep.d(); ++i) {
    const std::string si = std::to_string(i);
    if (auto w = rep.adjoint_mismatch(rep.lowering(i), rep.raising(i), tol)) {
      return fail("adjoint L" + si + "/R" + si, *w);
    }
    for (int j = 1; j <= rep.d(); ++j) {
      const std::string sj = std::to_string(j);
      if (auto w = first_mismatch(rep.rho_closed_form(i, j), rep.rho(i, j), tol,
                                  &rep.level().basis)) {
        return fail("rho" + si + sj + " closed form", *w);
      }
      if (auto w = rep.adjoint_mismatch(rep.rho(i, j), rep.rho(j, i), tol)) {
        return fail("rho" + si + sj + " adjoint", *w);
      }
    }
    const Matrix<Scalar> rv = rep.raising(i) * rep.velocity(i);
    if (auto w = rep.adjoint_mismatch(rv, rv, tol)) return fail("R" + si + "V" + si + " selfadjoint", *w);
  }
  if (auto w = rep.adjoint_mismatch(rep.number_op(), rep.number_op(), tol)) {
    return fail("Nhat selfadjoint", *w);
  }
  return CheckResult::from_witness("ladder", std::nullopt);
}

/// The d^2 + 2d generators {R_i, L_i, rho_ij} are independent and bracket-closed,
/// and [Nhat, R_i] = R_i, [V_j, Nhat] = V_j.
template <KrawScalar Scalar>
CheckResult lie_closure_check(const FockRep<Scalar>& rep, const Tolerance& tol = {}) {
  CheckResult result;
  result.name = "lie";
  if (rep.N() < 1) {
    result.status = CheckStatus::Skipped;
    result.detail = "level 0 representation is trivial";
    return result;
  }
  std::vector<std::pair<std::string, const Matrix<Scalar>*>> gens;
  for (int i = 1; i <= rep.d(); ++i) gens.emplace_back("R" + std::to_string(i), &rep.raising(i));
  for (int i = 1; i <= rep.d(); ++i) gens.emplace_back("L" + std::to_string(i), &rep.lowering(i));
  for (int i = 1; i <= rep.d(); ++i) {
    for (int j = 1; j <= rep.d(); ++j) {
      gens.emplace_back("rho" + std::to_string(i) + std::to_string(j), &rep.rho(i, j));
    }
  }
  const auto count = static_cast<Eigen::Index>(gens.size());
  const Eigen::Index flat = rep.dim() * rep.dim();
  Matrix<Scalar> span(flat, count + 1);
  for (Eigen::Index g = 0; g < count; ++g) {
    span.col(g) = Eigen::Map<const Vector<Scalar>>(gens[static_cast<std::size_t>(g)].second->data(), flat);
  }
  const double threshold = tol.atol * 1e3;
  const Eigen::Index rank = matrix_rank<Scalar>(span.leftCols(count), threshold);
  if (rank != count) {
    result.status = CheckStatus::Fail;
    result.witness = Witness{"generator rank", std::to_string(count), std::to_string(rank), std::nullopt};
    return result;
  }
  for (Eigen::Index a = 0; a < count; ++a) {
    for (Eigen::Index b = a + 1; b < count; ++b) {
      const auto& ga = gens[static_cast<std::size_t>(a)];
      const auto& gb = gens[static_cast<std::size_t>(b)];
      const Matrix<Scalar> bracket = commutator(*ga.second, *gb.second);
      span.col(count) = Eigen::Map<const Vector<Scalar>>(bracket.data(), flat);
      if (matrix_rank<Scalar>(span, threshold) != count) {
        result.status = CheckStatus::Fail;
        result.witness = Witness{"[" + ga.first + "," + gb.first + "]", "in span", "outside span",
                                 std::nullopt};
        return result;
      }
    }
  }
  for (int i = 1; i <= rep.d(); ++i) {
    const std::string si = std::to_string(i);
    if (auto w = first_mismatch(rep.raising(i), commutator(rep.number_op(), rep.raising(i)), tol)) {
      w->location = "[Nhat,R" + si + "] " + w->location;
      result.status = CheckStatus::Fail;
      result.witness = std::move(w);
      return result;
    }
    if (auto w = first_mismatch(rep.velocity(i), commutator(rep.velocity(i), rep.number_op()), tol)) {
      w->location = "[V" + si + ",Nhat] " + w->location;
      result.status = CheckStatus::Fail;
      result.witness = std::move(w);
      return result;
    }
  }
  result.detail = std::to_string(count) + " generators, closed";
  return result;
}

/// observable == recurrence matrix == point-basis conjugation == selfadjoint form,
/// the X_j pairwise commute and are G-selfadjoint.
template <KrawScalar Scalar>
CheckResult observables_check(const FockRep<Scalar>& rep, const Tolerance& tol = {}) {
  auto fail = [](std::string where, Witness w) {
    w.location = std::move(where) + " " + w.location;
    return CheckResult::from_witness("observables", std::move(w));
  };
  const auto* basis = &rep.level().basis;
  for (int j = 1; j <= rep.d(); ++j) {
    const std::string sj = std::to_string(j);
    const auto& x = rep.observable(j);
    if (auto w = first_mismatch(x, rep.observable_point_basis(j), tol, basis)) {
      return fail("X" + sj + " point basis", *w);
    }
    if (auto w = first_mismatch(x, rep.observable_selfadjoint(j), tol, basis)) {
      return fail("X" + sj + " selfadjoint form", *w);
    }
    if (auto w = rep.adjoint_mismatch(x, x, tol)) return fail("X" + sj + " G-selfadjoint", *w);
    for (int k = j + 1; k <= rep.d(); ++k) {
      const Matrix<Scalar> zero = Matrix<Scalar>::Zero(rep.dim(), rep.dim());
      if (auto w = first_mismatch(zero, commutator(x, rep.observable(k)), tol, basis)) {
        return fail("[X" + sj + ",X" + std::to_string(k) + "]", *w);
      }
    }
  }
  return CheckResult::from_witness("observables", std::nullopt);
}

/// The recurrence expansion reproduces every column of X_j.
template <KrawScalar Scalar>
CheckResult recurrence_check(const FockRep<Scalar>& rep, const Tolerance& tol = {}) {
  for (int j = 1; j <= rep.d(); ++j) {
    if (auto w = first_mismatch(rep.observable(j), rep.recurrence_matrix(j), tol,
                                &rep.level().basis)) {
      w->location = "X" + std::to_string(j) + " " + w->location;
      return CheckResult::from_witness("recurrence", std::move(w));
    }
  }
  return CheckResult::from_witness("recurrence", std::nullopt);
}

}  // namespace kraw
