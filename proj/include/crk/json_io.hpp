#pragma once

// JSON and CSV serialization.  Rationals travel as "p/q" strings so that no
// precision is lost; matrix indices in reports are 1-based.

#include "crk/constructions.hpp"
#include "crk/subspace.hpp"
#include "crk/verification.hpp"

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

namespace crk {

using json = nlohmann::ordered_json;

inline json to_json(const Rational& r) { return r.str(); }

inline Rational rational_from_json(const json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw std::invalid_argument("expected a rational string \"p/q\" or an integer");
}

inline json to_json(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

inline json to_json(const MatrixQ& m) {
  json entries = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
    entries.push_back(std::move(row));
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

inline MatrixQ matrix_from_json(const json& j) {
  const auto rows = j.at("rows").get<std::size_t>();
  const auto cols = j.at("cols").get<std::size_t>();
  const auto& entries = j.at("entries");
  if (!entries.is_array() || entries.size() != rows) throw std::invalid_argument("matrix JSON: row count mismatch");
  MatrixQ m = zeros(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!entries[i].is_array() || entries[i].size() != cols)
      throw std::invalid_argument("matrix JSON: row " + std::to_string(i + 1) + " has the wrong length");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = rational_from_json(entries[i][k]);
  }
  return m;
}

inline json to_json(const AffineMatrixSubspace& s) {
  json basis = json::array();
  for (const auto& b : s.basis()) basis.push_back(to_json(b));
  return json{{"ambient", to_string(s.ambient())}, {"base", to_json(s.base())}, {"basis", std::move(basis)}};
}

inline AffineMatrixSubspace subspace_from_json(const json& j) {
  const Ambient amb = ambient_from_string(j.value("ambient", std::string("general")));
  std::vector<MatrixQ> basis;
  for (const auto& b : j.at("basis")) basis.push_back(matrix_from_json(b));
  return AffineMatrixSubspace(amb, matrix_from_json(j.at("base")), std::move(basis));
}

inline json to_json(const RootInterval& iv) { return json{{"lo", iv.lo.str()}, {"hi", iv.hi.str()}, {"exact", iv.exact()}}; }

inline json to_json(const CertificationReport& r) {
  json j{{"mode", to_string(r.mode)}, {"verdict", to_string(r.verdict)}, {"rank", r.rank}};
  json ev = json::object();
  if (r.mode == CertMode::symbolic) ev["minors_checked"] = r.minors_checked;
  if (r.witness_rows) {
    ev["witness_minor"] = json{{"rows", *r.witness_rows}, {"cols", *r.witness_cols}, {"value", r.witness_value->str()}};
  }
  if (r.combined_minors) ev["combined_minors"] = r.combined_minors;
  if (r.counterexample) {
    ev["counterexample"] = json{{"coords", to_json(*r.counterexample)}, {"rank", *r.counterexample_rank}};
  }
  if (r.line_witness) {
    const auto& w = *r.line_witness;
    ev["line_witness"] = json{{"point", to_json(w.point)},
                              {"direction", to_json(w.direction)},
                              {"polynomial", w.polynomial.str()},
                              {"root", to_json(w.root)}};
  }
  if (r.mode == CertMode::sampled) ev["samples"] = r.samples;
  j["evidence"] = std::move(ev);
  j["note"] = r.note;
  return j;
}

inline json to_json(const LemmaResult& r) {
  json j{{"id", r.id}, {"attempted", r.attempted}, {"passed", r.passed}, {"ok", r.ok()}};
  if (!r.failure.empty()) {
    json f = json::object();
    for (const auto& [k, v] : r.failure) f[k] = v;
    j["failure"] = std::move(f);
  }
  return j;
}

inline json to_json(const FalsifierReport& r) {
  json mech = json::object();
  for (const auto& [k, v] : r.mechanisms) mech[k] = v;
  json surv = json::array();
  for (const auto& s : r.survivor_details) surv.push_back(json{{"trial", s.trial}, {"direction", to_json(s.direction)}});
  return json{{"n", r.n},
              {"r", r.r},
              {"regime", to_string(r.regime)},
              {"tried", r.tried},
              {"refuted_by_sampling", r.refuted_by_sampling},
              {"refuted_symbolically", r.refuted_symbolically},
              {"survivors", r.survivors},
              {"rejected_dependent", r.rejected_dependent},
              {"line_witnesses_verified", r.line_witnesses_verified},
              {"mechanisms", std::move(mech)},
              {"survivor_details", std::move(surv)}};
}

inline json to_json(const BoundLedger& b) {
  return json{{"dim_P", b.dim_p}, {"dim_U", b.dim_u}, {"dim_Z", b.dim_z}, {"bound", b.bound}};
}

/// lemma id, attempted, passed, status
inline std::string lemma_csv(const std::vector<LemmaResult>& results) {
  std::ostringstream os;
  os << "lemma,trials,passed,status\n";
  for (const auto& r : results) os << r.id << "," << r.attempted << "," << r.passed << "," << (r.ok() ? "pass" : "fail") << "\n";
  return os.str();
}

}  // namespace crk
