#include "crk/constructions.hpp"
#include "crk/verification.hpp"
#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace crk;

namespace {

// closed form of the attained maximum, written out per regime
std::size_t expected_dim(std::size_t n, std::size_t r) {
  if (n == 2 * r) return r * r - r;
  if (n == 2 * r + 1) return r * r + r;
  return r * n - r * r - r;
}

MatrixQ random_2x2(Rng& rng) {
  MatrixQ a = zeros(2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) a(i, j) = rng.rational();
  return a;
}

}  // namespace

TEST_CASE("notation builders", "[constructions]") {
  CHECK(build_J() == matrix_of({{0, 1}, {-1, 0}}));
  CHECK(build_Jbar(4) == direct_sum(build_J(), build_J()));
  CHECK(det(build_Jbar(4)) == Rational(1));
  CHECK(build_T({Rational(1), Rational(1), Rational(1)}) == build_Jbar(6));

  const MatrixQ e = build_E(3, 1, 2);
  std::size_t nonzero = 0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) nonzero += !e(i, j).is_zero();
  CHECK(nonzero == 1);
  CHECK(e(0, 1) == Rational(1));
  CHECK_THROWS_AS(build_E(3, 0, 2), std::out_of_range);
  CHECK_THROWS_AS(build_E(3, 1, 4), std::out_of_range);
  CHECK_THROWS_AS(build_Jbar(3), std::invalid_argument);

  CHECK(build_Jtilde(6, 2) == direct_sum(build_Jbar(4), zeros(2, 2)));
}

TEST_CASE("block builders", "[constructions]") {
  const auto z = BlockGrid::zero(3);
  CHECK(build_R(z).matrix().is_zero());
  CHECK(build_X(z).is_zero());

  BlockGrid g(2);
  g.set(1, 2, identity(2));
  CHECK(build_R(g).matrix().is_skew());
  CHECK(build_X(g).is_symmetric());
  CHECK(build_X(g)(2, 0) == Rational(1));
  CHECK(build_R(g).matrix()(2, 0) == Rational(-1));

  BlockGrid partial(3);
  partial.set(1, 2, identity(2));
  CHECK_THROWS_AS(build_R(partial), std::invalid_argument);
  CHECK_THROWS_AS(partial.set(2, 2, identity(2)), std::out_of_range);
  CHECK_THROWS_AS(partial.set(1, 3, identity(3)), std::invalid_argument);

  Rng rng(31);
  for (int k = 0; k < 20; ++k) {
    BlockGrid h(3);
    for (std::size_t i = 1; i <= 3; ++i)
      for (std::size_t j = i + 1; j <= 3; ++j) h.set(i, j, random_2x2(rng));
    const MatrixQ rm = build_R(h).matrix();
    CHECK((rm + rm.transpose()).is_zero());
    CHECK(build_X(h) == build_X(h).transpose());
  }
}

TEST_CASE("pinco and antipinco", "[constructions]") {
  CHECK(is_pinco(matrix_of({{1, 2}, {2, -1}})));
  CHECK_FALSE(is_pinco(matrix_of({{1, 2}, {-2, 1}})));
  CHECK(is_antipinco(matrix_of({{1, 2}, {-2, 1}})));
  CHECK_FALSE(is_antipinco(matrix_of({{1, 2}, {2, -1}})));
  CHECK(pinco_tilde(matrix_of({{1, 2}, {2, -1}})) == matrix_of({{2, -1}, {-1, -2}}));
  CHECK_THROWS_AS(pinco_tilde(matrix_of({{1, 2}, {-2, 1}})), std::invalid_argument);
  CHECK_THROWS_AS(is_pinco(identity(3)), std::invalid_argument);
  CHECK(is_antipinco(antipinco(Rational(3), Rational(-1, 2))));
}

TEST_CASE("dimension formulas", "[constructions]") {
  CHECK(max_dim_antisym(6, 4) == 6);
  CHECK(max_dim_antisym(4, 4) == 2);
  CHECK(max_dim_antisym(5, 4) == 6);
  CHECK_THROWS_AS(max_dim_antisym(6, 3), std::invalid_argument);
  CHECK_THROWS_AS(max_dim_antisym(4, 6), std::invalid_argument);

  CHECK(a_sym_upper_bound(5, 3) == 4);
  for (std::size_t r = 0; r <= 6; ++r) CHECK(a_rect(r, r, r) == r * (r - (r ? 1 : 0)) / 2);
  CHECK(a_rect(3, 5, 0) == 0);
  CHECK_THROWS_AS(a_rect(3, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(a_sym_upper_bound(2, 3), std::invalid_argument);
}

TEST_CASE("witness subspaces attain the formula", "[constructions][witness]") {
  CHECK(witness_subspace({6, 2}).dim() == 6);
  CHECK(witness_subspace({5, 2}).dim() == 6);
  CHECK(witness_subspace({4, 2}).dim() == 2);
  CHECK(witness_subspace({6, 2}).base() == build_Jtilde(6, 2));
  CHECK_THROWS_AS(WitnessParams(3, 2), std::invalid_argument);
  CHECK_THROWS_AS(WitnessParams(4, 0), std::invalid_argument);

  Rng rng(32);
  for (std::size_t n = 2; n <= 10; ++n)
    for (std::size_t r = 1; 2 * r <= n; ++r) {
      const auto w = witness_subspace({n, r});
      INFO("n=" << n << " r=" << r);
      CHECK(w.dim() == expected_dim(n, r));
      CHECK(w.dim() == max_dim_antisym(n, 2 * r));
      for (int k = 0; k < 10; ++k) CHECK(oracle::echelon_rank(w.sample(rng.rationals(w.dim()))) == 2 * r);
    }
}

TEST_CASE("U and Z", "[constructions]") {
  CHECK(build_U(2).dim() == 4);
  CHECK(build_U(1).dim() == 1);
  CHECK(build_U(3).dim() == 9);
  const auto u3 = build_U(3);
  for (const auto& b : u3.basis()) CHECK(b.is_skew());

  const auto z = build_Z(4, 1, 1, 2);
  REQUIRE(z.size() == 2);
  for (const auto& v : z) CHECK(quadratic_form_defpos(c_block(v, 1), 1, 2) == Rational(1));
  CHECK_THROWS_AS(build_Z(6, 2, 1, 1), std::invalid_argument);

  // positive on all of span(Z)
  Rng rng(33);
  for (std::size_t r = 1; r <= 3; ++r) {
    const std::size_t n = 2 * r + 3;
    const auto basis = build_Z(n, r, 1, 3);
    CHECK(basis.size() == 2 * r);
    for (int k = 0; k < 20; ++k) {
      const auto coeffs = rng.rationals(basis.size());
      MatrixQ v = zeros(n, n);
      bool any = false;
      for (std::size_t i = 0; i < basis.size(); ++i) {
        v += basis[i] * coeffs[i];
        any = any || !coeffs[i].is_zero();
      }
      const Rational q = quadratic_form_defpos(c_block(v, r), 1, 3);
      if (any) CHECK(q > Rational(0));
    }
  }
}

TEST_CASE("the form and its Gram matrix", "[constructions]") {
  CHECK(quadratic_form_defpos(zeros(2, 3), 1, 2) == Rational(0));
  MatrixQ c = zeros(2, 2);
  c(0, 1) = Rational(1);
  c(1, 0) = Rational(1);
  CHECK(quadratic_form_defpos(c, 1, 2) == Rational(1));
  CHECK_THROWS_AS(quadratic_form_defpos(c, 1, 3), std::out_of_range);

  for (std::size_t r = 1; r <= 3; ++r) {
    const Inertia in = symmetric_signature(defpos_gram(r));
    CHECK(in == Inertia{2 * r, 2 * r});
    const auto [p, q] = oracle::descartes_inertia(defpos_gram(r));
    CHECK(p == 2 * r);
    CHECK(q == 2 * r);
  }

  // the Gram matrix reproduces the form on random column pairs
  Rng rng(34);
  for (int k = 0; k < 30; ++k) {
    const std::size_t r = 1 + rng.index(3);
    MatrixQ cc = zeros(2 * r, 3);
    for (std::size_t i = 0; i < 2 * r; ++i)
      for (std::size_t j = 0; j < 3; ++j) cc(i, j) = rng.rational();
    std::vector<Rational> x;
    for (std::size_t i = 0; i < 2 * r; ++i) x.push_back(cc(i, 0));
    for (std::size_t i = 0; i < 2 * r; ++i) x.push_back(cc(i, 2));
    CHECK(dot(x, mat_vec(defpos_gram(r), x)) == quadratic_form_defpos(cc, 1, 3));
  }
}

TEST_CASE("the (I + sA) identity", "[constructions][ss]") {
  const auto zero = identity_ss_check({Rational(0), Rational(0)}, BlockGrid::zero(2), Rational(0));
  CHECK(zero.lhs == identity(4));
  CHECK(zero.rhs == identity(4));
  CHECK(zero.holds());

  const auto one = identity_ss_check({Rational(1)}, BlockGrid::zero(1), Rational(1));
  CHECK(one.lhs == identity(2) * Rational(2));
  CHECK(one.holds());

  BlockGrid bad(2);
  bad.set(1, 2, matrix_of({{1, 2}, {2, -1}}));
  CHECK_THROWS_AS(identity_ss_check({Rational(1), Rational(1)}, bad, Rational(1)), std::invalid_argument);

  Rng rng(35);
  for (int k = 0; k < 40; ++k) {
    const std::size_t r = 1 + rng.index(4);
    const auto ls = rng.rationals(r);
    const BlockGrid g = random_antipinco_grid(rng, r);
    const Rational s = rng.nonzero_rational();
    const auto chk = identity_ss_check(ls, g, s);
    CHECK(chk.holds());
    // direct multiplication, independent of the library's assembly
    const MatrixQ jb = build_Jbar(2 * r);
    const MatrixQ u = build_T(ls) + build_R(g).matrix();
    const MatrixQ lhs = -(jb * jb) - jb * u * s;
    CHECK(lhs == chk.lhs);
    const MatrixQ a = (lhs - identity(2 * r)) * s.inverse();
    CHECK(a.is_symmetric());
  }
}

TEST_CASE("bound ledger", "[constructions]") {
  const auto b = bound_ledger(6, 2);
  CHECK(b.dim_p == 14);
  CHECK(b.dim_u == 4);
  CHECK(b.dim_z == 4);
  CHECK(b.bound == 6);
  CHECK(bound_ledger(8, 2).bound == 10);
  for (std::size_t r = 1; r <= 5; ++r) CHECK(bound_ledger(2 * r + 2, r).bound == r * (r + 1));
  CHECK_THROWS_AS(bound_ledger(5, 2), std::invalid_argument);
  CHECK_THROWS_AS(bound_ledger(4, 2), std::invalid_argument);
}
