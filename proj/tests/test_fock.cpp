#include "doctest.h"

#include <thread>

#include "fixtures.hpp"
#include "kraw/fock.hpp"

using namespace kraw;
using testing::rational_matrix;

namespace {

FockRep<Rational> rep_of(const ExactSystem& sys, int level) { return FockRep<Rational>(kravchouk_level(sys, level)); }

MultiIndex idx(std::initializer_list<int> v) { return MultiIndex(std::vector<int>(v)); }

VectorQ unit(const FockRep<Rational>& rep, const MultiIndex& n) {
  VectorQ e = VectorQ::Zero(rep.dim());
  e(rep.position(n)) = 1;
  return e;
}

const Rational half(1, 2);
const Rational quarter(1, 4);

}  // namespace

TEST_CASE("raising operator") {
  const auto one = rep_of(testing::binomial(half), 1);
  CHECK(one.raising(1) == rational_matrix({{0, 0}, {1, 0}}));

  const auto tri = rep_of(testing::trinomial(), 2);
  CHECK(VectorQ(tri.raising(1) * unit(tri, idx({1, 0}))) == unit(tri, idx({2, 0})));
  CHECK(VectorQ(tri.raising(1) * unit(tri, idx({2, 0}))) == VectorQ::Zero(tri.dim()));

  const auto bin = rep_of(testing::binomial(half), 4);
  MatrixQ power = bin.identity();
  for (int k = 0; k < 5; ++k) power = power * bin.raising(1);
  CHECK(power == MatrixQ::Zero(5, 5));

  CHECK_THROWS_AS(bin.raising(2), Error);
  CHECK_THROWS_AS(bin.raising(0), Error);
}

TEST_CASE("velocity operator") {
  const auto one = rep_of(testing::binomial(half), 1);
  CHECK(one.velocity(1) == rational_matrix({{0, 1}, {0, 0}}));

  const auto tri = rep_of(testing::trinomial(), 2);
  for (int j = 1; j <= 2; ++j) {
    CHECK(VectorQ(tri.velocity(j) * unit(tri, idx({0, 0}))) == VectorQ::Zero(tri.dim()));
  }
  CHECK(VectorQ(tri.velocity(1) * unit(tri, idx({2, 0}))) == VectorQ(2 * unit(tri, idx({1, 0}))));
}

TEST_CASE("number operator") {
  const auto tri = rep_of(testing::trinomial(), 2);
  CHECK(VectorQ(tri.number_op().diagonal()) == testing::rational_vector({0, 1, 1, 2, 2, 2}));
  CHECK(rep_of(testing::binomial(half), 1).number_op() == rational_matrix({{0, 0}, {0, 1}}));

  const auto tri3 = rep_of(testing::trinomial(), 3);
  MatrixQ sum = MatrixQ::Zero(tri3.dim(), tri3.dim());
  for (int k = 1; k <= 2; ++k) sum += tri3.raising(k) * tri3.velocity(k);
  CHECK(sum == tri3.number_op());
}

TEST_CASE("lowering operator and adjointness") {
  const auto one = rep_of(testing::binomial(half), 1);
  CHECK(one.lowering(1) == rational_matrix({{0, quarter}, {0, 0}}));
  CHECK(one.gram() == testing::rational_vector({1, quarter}));
  CHECK_FALSE(one.adjoint_mismatch(one.lowering(1), one.raising(1)).has_value());
  // <L K_1, K_0> = pq = <K_1, R K_0>
  const MatrixQ g = one.gram().asDiagonal();
  CHECK(Rational(unit(one, idx({0})).dot(g * one.lowering(1) * unit(one, idx({1})))) == quarter);
  CHECK(Rational(unit(one, idx({0})).dot(one.raising(1).transpose() * g * unit(one, idx({1})))) == quarter);

  for (const auto& sys : {testing::binomial(Rational(1, 3)), testing::trinomial(), testing::quadrinomial()}) {
    for (int n = 0; n <= (sys.d == 3 ? 3 : 5); ++n) {
      const auto rep = rep_of(sys, n);
      for (int i = 1; i <= rep.d(); ++i) {
        CHECK(VectorQ(rep.lowering(i) * unit(rep, MultiIndex(std::vector<int>(sys.d, 0)))) ==
              VectorQ::Zero(rep.dim()));
        CHECK_FALSE(rep.adjoint_mismatch(rep.lowering(i), rep.raising(i)).has_value());
      }
    }
  }
}

TEST_CASE("rho commutators") {
  const auto one = rep_of(testing::binomial(half), 1);
  CHECK(one.rho(1, 1) == rational_matrix({{quarter, 0}, {0, -quarter}}));
  CHECK(one.rho_closed_form(1, 1) == one.rho(1, 1));

  const auto tri = rep_of(testing::trinomial(), 2);
  CHECK(tri.rho(1, 2) == tri.rho_closed_form(1, 2));
  CHECK(tri.rho(1, 2) == MatrixQ(-tri.system().D(1) * tri.raising(2) * tri.velocity(1)));

  for (int n = 0; n <= 4; ++n) {
    const auto rep = rep_of(testing::trinomial(), n);
    for (int i = 1; i <= 2; ++i) {
      for (int j = 1; j <= 2; ++j) {
        CHECK(rep.rho(i, j) == rep.rho_closed_form(i, j));
        CHECK_FALSE(rep.adjoint_mismatch(rep.rho(i, j), rep.rho(j, i)).has_value());
      }
      CHECK_FALSE(rep.adjoint_mismatch(MatrixQ(rep.raising(i) * rep.velocity(i)),
                                       MatrixQ(rep.raising(i) * rep.velocity(i)))
                      .has_value());
    }
  }
}

TEST_CASE("observable in the symmetric binomial at N=1, all three routes") {
  const auto one = rep_of(testing::binomial(half), 1);
  const MatrixQ expected = rational_matrix({{half, -quarter}, {-1, half}});
  CHECK(one.observable(1) == expected);
  CHECK(one.observable_point_basis(1) == expected);
  CHECK(one.observable_selfadjoint(1) == expected);
  CHECK(one.recurrence_matrix(1) == expected);
  const MatrixQ gx = one.gram().asDiagonal() * expected;
  CHECK(gx == rational_matrix({{half, -quarter}, {-quarter, Rational(1, 8)}}));
  CHECK(gx == MatrixQ(gx.transpose()));
}

TEST_CASE("observable applied to the vacuum") {
  const auto rep = rep_of(testing::trinomial(), 3);
  const auto& sys = rep.system();
  for (int j = 1; j <= 2; ++j) {
    VectorQ expected = VectorQ::Zero(rep.dim());
    expected(rep.position(idx({0, 0}))) = 3 * sys.p(j);
    expected(rep.position(idx({1, 0}))) = sys.C(1, j);
    expected(rep.position(idx({0, 1}))) = sys.C(2, j);
    CHECK(VectorQ(rep.observable(j).col(rep.position(idx({0, 0})))) == expected);
  }
  CHECK(MatrixQ(rep.observable(1) * rep.observable(2)) == MatrixQ(rep.observable(2) * rep.observable(1)));
}

TEST_CASE("observables agree across routes and commute") {
  for (const auto& sys : {testing::binomial(half), testing::binomial(Rational(1, 3)), testing::trinomial()}) {
    for (int n = 0; n <= 5; ++n) {
      const auto rep = rep_of(sys, n);
      CHECK(observables_check(rep).passed());
    }
  }
  CHECK(observables_check(rep_of(testing::quadrinomial(), 2)).passed());
}

TEST_CASE("point-basis vectors are simultaneous eigenvectors") {
  const auto rep = rep_of(testing::trinomial(), 3);
  const MatrixQ table = value_table(rep.level(), Normalization::Bernoulli);
  const MatrixQ coeffs = inverse<Rational>(MatrixQ(table.transpose()));  // column x: delta_x in the K-basis
  for (Eigen::Index pos = 0; pos < rep.dim(); ++pos) {
    const MultiIndex x = rep.index_at(pos);
    const VectorQ delta = coeffs.col(pos);
    for (int j = 1; j <= 2; ++j) {
      CHECK(VectorQ(rep.observable(j) * delta) == VectorQ(Rational(x[static_cast<std::size_t>(j - 1)]) * delta));
    }
  }
}

TEST_CASE("vacuum normalization") {
  const auto lvl = kravchouk_level(testing::trinomial(), 3);
  const MatrixQ table = value_table(lvl, Normalization::Bernoulli);
  for (Eigen::Index n = 0; n < lvl.dim(); ++n) {
    const Rational expected = lvl.tail_at(n).degree() == 0 ? Rational(1) : Rational(0);
    CHECK(inner_product(lvl, VectorQ(table.row(0).transpose()), VectorQ(table.row(n).transpose())) == expected);
  }
}

TEST_CASE("recurrence_apply") {
  const auto one = rep_of(testing::binomial(half), 1);
  const auto at0 = one.recurrence_apply(1, idx({0}));
  REQUIRE(at0.size() == 2);
  CHECK(at0[0].first == half);
  CHECK(at0[0].second == idx({0}));
  CHECK(at0[1].first == -1);
  CHECK(at0[1].second == idx({1}));
  const auto at1 = one.recurrence_apply(1, idx({1}));
  REQUIRE(at1.size() == 2);
  CHECK(at1[0].first == -quarter);
  CHECK(at1[0].second == idx({0}));
  CHECK(at1[1].first == half);
  CHECK(at1[1].second == idx({1}));

  const auto rep = rep_of(testing::trinomial(), 3);
  for (int j = 1; j <= 2; ++j) {
    std::vector<std::pair<Rational, MultiIndex>> expected{{3 * rep.system().p(j), idx({0, 0})},
                                                          {rep.system().C(1, j), idx({1, 0})},
                                                          {rep.system().C(2, j), idx({0, 1})}};
    std::erase_if(expected, [](const auto& t) { return t.first == 0; });  // C_22 = 0 is dropped
    CHECK(rep.recurrence_apply(j, idx({0, 0})) == expected);
  }
}

TEST_CASE("interior CCR and the top-level defect") {
  for (int n = 0; n <= 4; ++n) {
    const auto rep = rep_of(testing::trinomial(), n);
    CHECK(ccr_interior_check(rep).passed());
  }
  const auto rep = rep_of(testing::trinomial(), 2);
  const MatrixQ comm = commutator(rep.velocity(1), rep.raising(2));
  // [V_1, R_2] K_(2,0) = -2 K_(1,1) on the top level.
  CHECK(VectorQ(comm * unit(rep, idx({2, 0}))) == VectorQ(-2 * unit(rep, idx({1, 1}))));
  const MatrixQ diag = commutator(rep.velocity(1), rep.raising(1));
  CHECK(VectorQ(diag * unit(rep, idx({1, 0}))) == unit(rep, idx({1, 0})));
}

TEST_CASE("ladder and Lie checks") {
  for (int n = 0; n <= 4; ++n) CHECK(ladder_check(rep_of(testing::trinomial(), n)).passed());

  const auto bin = lie_closure_check(rep_of(testing::binomial(half), 2));
  CHECK(bin.passed());
  CHECK(bin.detail == "3 generators, closed");
  const auto tri = lie_closure_check(rep_of(testing::trinomial(), 2));
  CHECK(tri.passed());
  CHECK(tri.detail == "8 generators, closed");
  CHECK(lie_closure_check(rep_of(testing::binomial(half), 0)).status == CheckStatus::Skipped);

  const auto rep = rep_of(testing::trinomial(), 3);
  CHECK(commutator(rep.number_op(), rep.raising(1)) == rep.raising(1));
  CHECK(commutator(rep.velocity(2), rep.number_op()) == rep.velocity(2));
}

TEST_CASE("approximate flavor passes the same checks") {
  const FockRep<double> rep(kravchouk_level(to_approx(testing::trinomial()), 3));
  CHECK(ladder_check(rep).passed());
  CHECK(observables_check(rep).passed());
  CHECK(ccr_interior_check(rep).passed());
  CHECK(lie_closure_check(rep).passed());
}

TEST_CASE("operator cache returns one matrix under concurrent requests") {
  const auto rep = rep_of(testing::trinomial(), 4);
  const MatrixQ reference = rep_of(testing::trinomial(), 4).observable(2);
  std::vector<const MatrixQ*> seen(8, nullptr);
  std::vector<std::thread> threads;
  for (std::size_t t = 0; t < seen.size(); ++t) {
    threads.emplace_back([&, t] { seen[t] = &rep.observable(2); });
  }
  for (auto& th : threads) th.join();
  for (const auto* m : seen) {
    CHECK(m == seen[0]);
    CHECK(*m == reference);
  }
}
