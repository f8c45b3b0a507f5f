#pragma once

// The full battery of randomized lemma checks, as run by `crk lemmas` and the
// acceptance binary.  Every suite derives its streams from (seed, trial).

#include "crk/verification.hpp"

#include <string>
#include <vector>

namespace crk {

namespace detail {

inline LemmaResult renamed(LemmaResult r, std::string id) {
  r.id = std::move(id);
  return r;
}

inline std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) { return splitmix64(seed ^ (salt * 0x9e3779b97f4a7c15ULL)); }

}  // namespace detail

inline std::vector<LemmaResult> lemma4_suites(std::size_t trials, std::uint64_t seed) {
  std::vector<LemmaResult> out;
  for (std::size_t r = 1; r <= 5; ++r)
    out.push_back(detail::renamed(lemma4_suite(r, trials, detail::mix(seed, 100 + r)), "lemma4[r=" + std::to_string(r) + "]"));
  return out;
}

inline std::vector<LemmaResult> corollary5_suites(std::size_t trials, std::uint64_t seed) {
  std::vector<LemmaResult> out;
  for (std::size_t r = 1; r <= 3; ++r)
    out.push_back(
        detail::renamed(corollary5_suite(r, trials, detail::mix(seed, 200 + r)), "corollary5[r=" + std::to_string(r) + "]"));
  return out;
}

/// Lemma 2 for every 1 <= r <= m <= 4, and Lemma 3 with two extra blocks.
inline std::vector<LemmaResult> projection_suites(std::size_t trials, std::uint64_t seed) {
  std::vector<LemmaResult> out;
  for (std::size_t m = 1; m <= 4; ++m)
    for (std::size_t r = 1; r <= m; ++r) {
      const std::string tag = "[m=" + std::to_string(m) + ",r=" + std::to_string(r) + "]";
      out.push_back(detail::renamed(check_lemma2(m, r, trials, detail::mix(seed, 300 + 10 * m + r)), "lemma2" + tag));
      out.push_back(detail::renamed(check_lemma3(m, r, {2, 3}, {1, 2}, trials, detail::mix(seed, 400 + 10 * m + r)),
                                    "lemma3" + tag));
    }
  return out;
}

inline std::vector<LemmaResult> ss_suites(std::size_t trials, std::size_t drop_trials, std::uint64_t seed) {
  std::vector<LemmaResult> out;
  LemmaResult id("identity-ss"), drop("identity-ss-rank-drop");
  // spread the trials over r = 1..4
  for (std::size_t r = 1; r <= 4; ++r) {
    const std::size_t share = trials / 4 + (r <= trials % 4 ? 1 : 0);
    const std::size_t dshare = drop_trials / 4 + (r <= drop_trials % 4 ? 1 : 0);
    id.merge(ss_identity_suite(r, share, detail::mix(seed, 500 + r)));
    drop.merge(ss_rank_drop_suite(r, dshare, detail::mix(seed, 600 + r)));
  }
  out.push_back(std::move(id));
  out.push_back(std::move(drop));
  return out;
}

/// V ⊆ P on witness families scrambled by random congruences.
inline LemmaResult v_in_p_suite(std::size_t max_n, std::size_t per_family, std::uint64_t seed) {
  LemmaResult res("V-in-P");
  for (std::size_t n = 2; n <= max_n; ++n)
    for (std::size_t r = 1; 2 * r <= n; ++r) {
      const auto w = witness_subspace({n, r});
      for (std::size_t t = 0; t < per_family; ++t) {
        Rng rng = Rng::stream(detail::mix(seed, 700 + 16 * n + r), t);
        res.merge(check_V_in_P(w.congruence_transform(random_invertible(rng, n)), 2 * r));
      }
    }
  return res;
}

/// Everything `crk lemmas` reports, in a fixed order.
inline std::vector<LemmaResult> all_lemma_suites(std::size_t trials, std::uint64_t seed) {
  std::vector<LemmaResult> out;
  auto append = [&](std::vector<LemmaResult> v) { out.insert(out.end(), v.begin(), v.end()); };
  append(lemma4_suites(trials, seed));
  append(corollary5_suites(trials, seed));
  out.push_back(schur_suite(8, trials, detail::mix(seed, 800)));
  append(projection_suites(trials, seed));
  append(ss_suites(trials, trials / 2, seed));
  out.push_back(v_in_p_suite(8, 2, seed));
  return out;
}

}  // namespace crk
