#include "crk/json_io.hpp"
#include "crk/verification.hpp"
#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace crk;

namespace {

std::vector<Rational> vec(std::initializer_list<long> xs) {
  std::vector<Rational> v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

std::vector<Rational> oracle_scaled(std::vector<Rational> v, const Rational& s) {
  for (auto& x : v) x *= s;
  return v;
}

}  // namespace

TEST_CASE("bordered determinant form", "[lemma4]") {
  CHECK(check_lemma4(vec({1, 0}), vec({0, 1})).ok());
  CHECK(lemma4_form(vec({1, 0}), vec({0, 1})) == Rational(1));
  CHECK(oracle::cofactor_det(bordered(build_Jbar(2), vec({1, 0}), vec({0, 1}))) == Rational(1));
  CHECK(lemma4_form(vec({0, 0, 0, 0}), vec({1, 2, 3, 4})) == Rational(0));
  CHECK(check_lemma4(vec({0, 0, 0, 0}), vec({1, 2, 3, 4})).ok());
  CHECK_THROWS_AS(check_lemma4(vec({1, 2, 3}), vec({1, 2, 3})), std::invalid_argument);

  Rng rng(41);
  for (int k = 0; k < 30; ++k) {
    const std::size_t r = 1 + rng.index(3);
    const auto b = rng.rationals(2 * r), c = rng.rationals(2 * r);
    CHECK(oracle::cofactor_det(bordered(build_Jbar(2 * r), b, c)) == lemma4_form(b, c));
  }
  for (std::size_t r = 1; r <= 5; ++r) CHECK(lemma4_suite(r, 20, 0).ok());
}

TEST_CASE("bordered pencil coefficients", "[corollary5]") {
  const auto b = vec({1, 0}), c = vec({0, 1});
  CHECK(corollary5_polynomial(identity(2), b, c) == UniPoly::monomial(Rational(1), 2));
  CHECK(check_corollary5(identity(2), b, c).ok());

  Rng rng(42);
  for (int k = 0; k < 20; ++k) {
    const std::size_t r = 1 + rng.index(3);
    const auto bb = nonzero_vector(rng, 2 * r), cc = nonzero_vector(rng, 2 * r);
    const UniPoly p = corollary5_polynomial(zeros(2 * r, 2 * r), bb, cc);
    CHECK(p == UniPoly::monomial(lemma4_form(bb, cc), 2));

    // evaluation oracle: p(s) = det of the bordered pencil at rational s
    const MatrixQ a = random_matrix(rng, 2 * r, 2 * r);
    const UniPoly q = corollary5_polynomial(a, bb, cc);
    for (int t = 0; t < 3; ++t) {
      const Rational s = rng.rational();
      const MatrixQ at = bordered(build_Jbar(2 * r) + a * s, oracle_scaled(bb, s), oracle_scaled(cc, s));
      CHECK(q(s) == oracle::cofactor_det(at));
    }
    CHECK(check_corollary5(a, bb, cc).ok());
  }
  CHECK_THROWS_AS(check_corollary5(identity(2), vec({0, 0}), c), std::invalid_argument);
  CHECK(corollary5_suite(2, 20, 0).ok());
}

TEST_CASE("Schur complement", "[schur]") {
  CHECK(check_schur_bordered(identity(2), vec({1, 0}), vec({1, 0})).ok());
  CHECK(det(bordered(identity(2), vec({1, 0}), vec({1, 0}))) == Rational(-1));
  CHECK(det(bordered(identity(3), vec({1, 2, 3}), vec({0, 0, 0}))) == Rational(0));
  CHECK_THROWS_AS(check_schur_bordered(zeros(2, 2), vec({1, 0}), vec({1, 0})), std::domain_error);

  // with M = Jbar it reproduces the Lemma 4 form, using Jbar^{-1} = -Jbar
  Rng rng(43);
  for (int k = 0; k < 10; ++k) {
    const std::size_t r = 1 + rng.index(3);
    const auto b = rng.rationals(2 * r), c = rng.rationals(2 * r);
    CHECK(inverse(build_Jbar(2 * r)) == -build_Jbar(2 * r));
    CHECK(dot(b, mat_vec(build_Jbar(2 * r), c)) == lemma4_form(b, c));
    CHECK(check_schur_bordered(build_Jbar(2 * r), b, c).ok());
  }
  CHECK(schur_suite(8, 30, 0).ok());
}

TEST_CASE("projection lemmas", "[lemma2][lemma3]") {
  // boundary case m = r = 1, V = Q^3
  std::vector<std::vector<Rational>> full{vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1})};
  CHECK(coordinate_projection(full, {1, 2}) == 2);
  CHECK(coordinate_projection(full, {2, 3}) == 2);
  CHECK(coordinate_projection(full, {1, 3}) == 2);
  CHECK(span_dimension(full, 3) == 3);

  for (std::size_t m = 1; m <= 3; ++m)
    for (std::size_t r = 1; r <= m; ++r) {
      INFO("m=" << m << " r=" << r);
      const auto res = check_lemma2(m, r, 20, 0);
      CHECK(res.ok());
      CHECK(res.attempted >= 20);
    }
  CHECK(check_lemma2(3, 1, 100, 7).ok());
  CHECK(check_lemma3(2, 1, {2, 3}, {1, 2}, 20, 0).ok());
  CHECK(check_lemma3(3, 2, {1}, {0}, 20, 0).ok());
  CHECK_THROWS_AS(check_lemma3(2, 1, {2}, {3}, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(check_lemma3(2, 1, {2, 1}, {1}, 1, 0), std::invalid_argument);
}

TEST_CASE("(I + sA) suites", "[ss]") {
  for (std::size_t r = 1; r <= 3; ++r) {
    CHECK(ss_identity_suite(r, 20, 0).ok());
    CHECK(ss_rank_drop_suite(r, 10, 0).ok());
  }
}

TEST_CASE("V inside P after normalization", "[vinp]") {
  CHECK(check_V_in_P(witness_subspace({6, 2}), 4).ok());
  CHECK(check_V_in_P(witness_subspace({5, 2}), 4).ok());
  CHECK(check_V_in_P(witness_subspace({4, 2}), 4).ok());

  Rng rng(44);
  for (const auto& [n, r] : std::vector<std::pair<std::size_t, std::size_t>>{{6, 2}, {5, 2}, {7, 2}, {5, 1}}) {
    const auto scrambled = witness_subspace({n, r}).congruence_transform(random_invertible(rng, n));
    CHECK(check_V_in_P(scrambled, 2 * r).ok());
    const auto norm = normalize_base(scrambled, 2 * r);
    CHECK(norm.subspace.base() == build_Jtilde(n, r));
  }
  CHECK_THROWS_AS(check_V_in_P(witness_subspace({6, 2}), 2), std::invalid_argument);

  // a lower-right entry in the linear part is reported
  const auto bad = AffineMatrixSubspace(Ambient::antisymmetric, build_Jtilde(6, 2), {skew_unit(6, 5, 6)});
  CHECK_FALSE(check_V_in_P(bad, 4).ok());
}

TEST_CASE("structural refutation", "[falsifier]") {
  const auto w = witness_subspace({6, 2});

  // nonzero lower-right block
  const auto a = refute_by_structure(w.extended(skew_unit(6, 5, 6)), 2);
  REQUIRE(a.found());
  CHECK(a.mechanism == Mechanism::outside_p);
  CHECK(*a.observed_rank != 4);

  // a direction in U: the leading block drops rank at s = -1
  const auto ext = w.extended(embed_top_left(build_T({Rational(1), Rational(0)}), 6));
  const auto c = refute_by_structure(ext, 2);
  REQUIRE(c.found());
  CHECK(c.mechanism == Mechanism::u_line_drop);
  REQUIRE(c.point);
  CHECK(oracle::echelon_rank(ext.sample(*c.point)) < 4);

  // a C entry in an even row meets Z
  const auto zdir = w.extended(skew_unit(6, 2, 5));
  const auto b = refute_by_structure(zdir, 2);
  REQUIRE(b.found());
  REQUIRE(b.point);
  CHECK(oracle::echelon_rank(zdir.sample(*b.point)) != 4);

  // already in the linear part
  CHECK_THROWS_AS(w.extended(w.basis().front()), std::invalid_argument);
}

TEST_CASE("line witnesses are re-verified", "[falsifier]") {
  // T(1, 2) keeps a rational drop; a U-direction with an off-diagonal block
  // gives irrational roots
  const auto w = witness_subspace({4, 2});
  for (const auto& ab : std::vector<std::pair<long, long>>{{1, 1}, {0, 1}, {2, 3}}) {
    BlockGrid g(2);
    g.set(1, 2, antipinco(Rational(ab.first), Rational(ab.second)));
    const MatrixQ u = build_T({Rational(1), Rational(2)}) + build_R(g).matrix();
    const auto ext = w.extended(u);
    const auto ref = refute_by_structure(ext, 2);
    REQUIRE(ref.found());
    CHECK(ref.mechanism == Mechanism::u_line_drop);
    if (ref.line) {
      CHECK(verify_line_witness(ext, *ref.line, 4));
    } else {
      CHECK(oracle::echelon_rank(ext.sample(*ref.point)) < 4);
    }
  }
}

TEST_CASE("falsifier over small witness families", "[falsifier]") {
  for (const auto& [n, r] : std::vector<std::pair<std::size_t, std::size_t>>{{4, 1}, {4, 2}, {5, 2}, {6, 2}, {3, 1}}) {
    INFO("n=" << n << " r=" << r);
    const auto rep = falsify_extensions({n, r}, 24, 0);
    CHECK(rep.tried == 24);
    CHECK(rep.consistent());
    CHECK(rep.survivors == 0);
    CHECK(rep.refuted_by_sampling + rep.refuted_symbolically == rep.tried);
  }
}

TEST_CASE("reports serialize deterministically", "[json]") {
  const auto a = to_json(falsify_extensions({5, 2}, 12, 3)).dump();
  const auto b = to_json(falsify_extensions({5, 2}, 12, 3)).dump();
  CHECK(a == b);

  const auto w = witness_subspace({5, 2});
  const auto back = subspace_from_json(to_json(w));
  CHECK(back.base() == w.base());
  CHECK(back.basis() == w.basis());

  const std::vector<LemmaResult> rs{lemma4_suite(1, 5, 0)};
  CHECK(lemma_csv(rs) == "lemma,trials,passed,status\nlemma4,5,5,pass\n");
  CHECK_THROWS(matrix_from_json(json{{"rows", 2}, {"cols", 2}, {"entries", json::array({json::array({"1"})})}}));
}
