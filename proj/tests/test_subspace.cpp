#include "crk/constructions.hpp"
#include "crk/subspace.hpp"
#include "crk/verification.hpp"
#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <set>

using namespace crk;

namespace {

// every point of {-2..2}^dim
std::set<std::size_t> grid_ranks(const AffineMatrixSubspace& s) {
  std::set<std::size_t> out;
  std::vector<Rational> x(s.dim(), Rational(-2));
  for (;;) {
    out.insert(oracle::echelon_rank(s.sample(x)));
    std::size_t k = 0;
    while (k < x.size() && x[k] == Rational(2)) x[k++] = Rational(-2);
    if (k == x.size()) break;
    x[k] += Rational(1);
  }
  return out;
}

// L (E + sum t_k F_k) R with E = I_r ⊕ 0.  When `structured`, each F_k lives
// in the top-right block, so the rank stays r everywhere.
AffineMatrixSubspace random_general(Rng& rng, std::size_t n, std::size_t r, std::size_t dim, bool structured) {
  const MatrixQ l = random_invertible(rng, n), rr = random_invertible(rng, n);
  MatrixQ e = zeros(n, n);
  for (std::size_t i = 0; i < r; ++i) e(i, i) = Rational(1);
  for (;;) {
    std::vector<MatrixQ> basis;
    for (std::size_t k = 0; k < dim; ++k) {
      MatrixQ f = zeros(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          if (structured && !(i < r && j >= r)) continue;
          if (rng.coin()) f(i, j) = rng.uniform(-2, 2);
        }
      basis.push_back(l * f * rr);
    }
    try {
      return AffineMatrixSubspace(Ambient::general, l * e * rr, std::move(basis));
    } catch (const std::invalid_argument&) {
      // dependent draw, try again
    }
  }
}

}  // namespace

TEST_CASE("dimension and sampling", "[subspace]") {
  const AffineMatrixSubspace point(Ambient::antisymmetric, direct_sum(build_Jbar(4), zeros(2, 2)));
  CHECK(point.dim() == 0);
  CHECK(witness_subspace({6, 2}).dim() == 6);
  CHECK(witness_subspace({4, 2}).dim() == 2);

  const auto w = witness_subspace({6, 2});
  CHECK(w.sample(std::vector<Rational>(6, Rational(0))) == w.base());
  const AffineMatrixSubspace line(Ambient::general, identity(2), {matrix_of({{0, 1}, {0, 0}})});
  CHECK(line.sample({Rational(1)}) == matrix_of({{1, 1}, {0, 1}}));
  CHECK_THROWS_AS(line.sample({}), std::invalid_argument);

  Rng rng(21);
  for (int k = 0; k < 20; ++k) CHECK(oracle::echelon_rank(w.sample(rng.rationals(6))) == 4);
}

TEST_CASE("subspace validation", "[subspace]") {
  CHECK_THROWS_AS(AffineMatrixSubspace(Ambient::general, identity(2), {identity(2), identity(2) * Rational(2)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(AffineMatrixSubspace(Ambient::antisymmetric, identity(2)), std::invalid_argument);
  CHECK_THROWS_AS(AffineMatrixSubspace(Ambient::symmetric, build_J()), std::invalid_argument);
  CHECK_THROWS_AS(AffineMatrixSubspace(Ambient::general, identity(2), {identity(3)}), std::invalid_argument);
  CHECK(ambient_from_string("antisymmetric") == Ambient::antisymmetric);
  CHECK_THROWS_AS(ambient_from_string("skew"), std::invalid_argument);
}

TEST_CASE("congruence transform", "[subspace]") {
  const auto w = witness_subspace({6, 2});
  CHECK(w.congruence_transform(identity(6)).base() == w.base());
  CHECK(w.congruence_transform(identity(6)).basis() == w.basis());
  CHECK_THROWS_AS(w.congruence_transform(zeros(6, 6)), std::domain_error);

  Rng rng(22);
  for (int k = 0; k < 5; ++k) {
    const MatrixQ q = random_invertible(rng, 6);
    const auto t = w.congruence_transform(q);
    CHECK(t.dim() == w.dim());
    CHECK(t.base() == q.transpose() * w.base() * q);
    for (int p = 0; p < 20; ++p) {
      const auto x = rng.rationals(6);
      CHECK(oracle::echelon_rank(t.sample(x)) == oracle::echelon_rank(w.sample(x)));
    }
  }
}

TEST_CASE("coordinate projection", "[subspace]") {
  const std::size_t m = 2;
  std::vector<std::vector<Rational>> full;
  for (std::size_t i = 0; i < 3 * m; ++i) {
    std::vector<Rational> e(3 * m, Rational(0));
    e[i] = Rational(1);
    full.push_back(e);
  }
  CHECK(coordinate_projection(full, {1, 2, 3, 4}) == 2 * m);
  CHECK(coordinate_projection({}, {1, 2, 3, 4}) == 0);
  CHECK(coordinate_projection({full[0], full[2 * m]}, {1, 2, 3, 4}) == 1);
  CHECK_THROWS_AS(coordinate_projection(full, {0}), std::out_of_range);
  CHECK_THROWS_AS(coordinate_projection(full, {7}), std::out_of_range);
}

TEST_CASE("line rank drop", "[subspace][sturm]") {
  auto a = line_rank_drop(build_J(), build_J());
  CHECK(a.drops);
  CHECK(a.polynomial == UniPoly({Rational(1), Rational(2), Rational(1)}));
  REQUIRE(a.root);
  CHECK(a.root->contains(Rational(-1)));

  CHECK_FALSE(line_rank_drop(build_J(), zeros(2, 2)).drops);
  CHECK(line_rank_drop(build_J(), zeros(2, 2)).polynomial == UniPoly(Rational(1)));

  auto b = line_rank_drop(build_Jbar(4), build_T({Rational(1), Rational(0)}));
  CHECK(b.drops);
  CHECK(b.polynomial == UniPoly({Rational(1), Rational(2), Rational(1)}));
  CHECK(b.root->contains(Rational(-1)));

  CHECK_THROWS_AS(line_rank_drop(zeros(2, 2), build_J()), std::domain_error);
}

TEST_CASE("line drop is a sign change of the square-free part", "[subspace][property]") {
  Rng rng(23);
  for (int k = 0; k < 80; ++k) {
    const std::size_t n = 2 + rng.index(4);
    const MatrixQ m0 = random_invertible(rng, n);
    const MatrixQ d = k % 2 ? random_matrix(rng, n, n) : random_skew(rng, n);
    const auto res = line_rank_drop(m0, d);
    CHECK(res.polynomial(Rational(0)) == det(m0));
    if (!res.drops) continue;
    const UniPoly sf = res.polynomial.square_free();
    const auto iv = refine(sf, *res.root, Rational(1, 1 << 20));
    if (iv.exact()) {
      CHECK(oracle::echelon_rank(m0 + d * iv.lo) < n);
    } else {
      CHECK(sf(iv.lo).sign() * sf(iv.hi).sign() < 0);
    }
  }
}

TEST_CASE("certify: named examples", "[certify]") {
  const auto w = witness_subspace({6, 2});
  const auto rep = certify_constant_rank(w, 4, CertMode::symbolic);
  CHECK(rep.verdict == Verdict::constant_rank);
  CHECK(rep.rank == 4);
  REQUIRE(rep.witness_rows);
  CHECK(!rep.witness_value->is_zero());

  const AffineMatrixSubspace point(Ambient::antisymmetric, direct_sum(build_Jbar(4), zeros(2, 2)));
  CHECK(certify_constant_rank(point, 4, CertMode::symbolic).verdict == Verdict::constant_rank);

  const AffineMatrixSubspace bad(Ambient::antisymmetric, build_Jtilde(6, 2), {skew_unit(6, 5, 6)});
  const auto neg = certify_constant_rank(bad, 4, CertMode::symbolic);
  CHECK(neg.verdict == Verdict::not_constant_rank);
  REQUIRE(neg.counterexample);
  CHECK(oracle::echelon_rank(bad.sample(*neg.counterexample)) == *neg.counterexample_rank);
  CHECK(*neg.counterexample_rank == 6);
  CHECK(oracle::echelon_rank(bad.sample({Rational(1)})) == 6);

  const auto sampled = certify_constant_rank(w, 4, CertMode::sampled);
  CHECK(sampled.verdict == Verdict::inconclusive);
  CHECK(sampled.samples == 200);
  CHECK(certify_constant_rank(bad, 4, CertMode::sampled).verdict == Verdict::not_constant_rank);
}

TEST_CASE("certify: error paths", "[certify]") {
  const auto w = witness_subspace({6, 2});
  CHECK_THROWS_AS(certify_constant_rank(w, 7, CertMode::symbolic), std::invalid_argument);
  const auto big = witness_subspace({9, 2});
  CHECK_THROWS_WITH(certify_constant_rank(big, 4, CertMode::symbolic), Catch::Matchers::ContainsSubstring("sampled"));
  CHECK_NOTHROW(certify_constant_rank(big, 4, CertMode::sampled));
}

TEST_CASE("certify agrees with brute force on a small grid", "[certify][oracle]") {
  Rng rng(24);
  std::size_t positive = 0, negative = 0;
  for (int k = 0; k < 150; ++k) {
    const std::size_t n = 2 + rng.index(4);
    const std::size_t r = 1 + rng.index(n - 1);
    const std::size_t dim = 1 + rng.index(3);
    const bool structured = k % 2 == 0 && r * (n - r) >= dim;
    AffineMatrixSubspace s = k % 3 == 2 ? AffineMatrixSubspace(Ambient::antisymmetric, build_Jtilde(std::max<std::size_t>(n, 4), 1),
                                                               {random_skew(rng, std::max<std::size_t>(n, 4))})
                                        : random_general(rng, n, r, dim, structured);
    const std::size_t target = k % 3 == 2 ? 2 : r;
    const auto rep = certify_constant_rank(s, target, CertMode::symbolic);
    const auto ranks = grid_ranks(s);
    INFO("k=" << k << " n=" << n << " dim=" << s.dim() << " target=" << target << " ranks=" << ranks.size() << " min=" << *ranks.begin() << " note=" << rep.note);
    if (rep.verdict == Verdict::constant_rank) {
      ++positive;
      CHECK(ranks == std::set<std::size_t>{target});
    } else if (rep.verdict == Verdict::not_constant_rank) {
      ++negative;
      if (rep.counterexample) CHECK(oracle::echelon_rank(s.sample(*rep.counterexample)) != target);
      else CHECK(verify_line_witness(s, *rep.line_witness, target));
    }
    if (ranks.size() > 1 || *ranks.begin() != target) CHECK(rep.verdict == Verdict::not_constant_rank);
  }
  CHECK(positive > 5);
  CHECK(negative > 5);
}

TEST_CASE("constant rank survives congruence", "[certify][property]") {
  Rng rng(25);
  for (const auto& [n, r] : std::vector<std::pair<std::size_t, std::size_t>>{{4, 1}, {5, 2}, {6, 2}, {4, 2}}) {
    const auto w = witness_subspace({n, r});
    for (int k = 0; k < 10; ++k) {
      const auto t = w.congruence_transform(random_invertible(rng, n));
      CHECK(certify_constant_rank(t, 2 * r, CertMode::symbolic).verdict == Verdict::constant_rank);
    }
  }
}
