// crk: command-line front end for the constant-rank toolkit.
//
// Exit codes: 0 full pass, 1 refutation or failed check, 2 usage error.

#include "crk/crk.hpp"
#include "crk/json_io.hpp"
#include "crk/suite.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace crk;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct RunConfig {
  std::size_t n = 0;
  std::size_t r = 0;
  std::size_t rank = 0;
  std::uint64_t seed = 0;
  std::size_t trials = 100;
  std::string mode = "auto";
  std::string in;
  std::string out;
  std::string format;
};

std::uint64_t default_seed() {
  if (const char* env = std::getenv("CRK_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw CLI::ValidationError("CRK_SEED", std::string("not an unsigned integer: ") + env);
    }
  }
  return 0;
}

json read_json(const std::string& path) {
  if (path.empty()) throw std::invalid_argument("--in is required");
  if (path == "-") return json::parse(std::cin);
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open " + path);
  return json::parse(f);
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot write " + cfg.out);
  f << text;
}

std::string dumped(const json& j) { return j.dump(2) + "\n"; }

std::string lemma_table(const std::vector<LemmaResult>& rs) {
  std::size_t w = 5;
  for (const auto& r : rs) w = std::max(w, r.id.size());
  std::ostringstream os;
  os << std::left << std::setw(static_cast<int>(w)) << "lemma" << "  trials  passed  status\n";
  for (const auto& r : rs)
    os << std::left << std::setw(static_cast<int>(w)) << r.id << "  " << std::right << std::setw(6) << r.attempted
       << "  " << std::setw(6) << r.passed << "  " << (r.ok() ? "pass" : "FAIL") << "\n";
  return os.str();
}

int cmd_bound(const RunConfig& cfg) {
  const std::size_t d = max_dim_antisym(cfg.n, cfg.rank);
  const std::size_t r = cfg.rank / 2;
  json j{{"n", cfg.n}, {"rank", cfg.rank}, {"max_dim", d}};
  if (cfg.n >= 2 * r + 2) j["ledger"] = to_json(bound_ledger(cfg.n, r));
  if (cfg.format == "json") {
    emit(cfg, dumped(j));
  } else {
    std::ostringstream os;
    os << d << "\n";
    if (j.contains("ledger")) {
      const auto b = bound_ledger(cfg.n, r);
      os << "dim P = " << b.dim_p << ", dim U = " << b.dim_u << ", dim Z = " << b.dim_z << ", dim P - dim U - dim Z = "
         << b.bound << "\n";
    }
    emit(cfg, os.str());
  }
  return kPass;
}

int cmd_construct(const RunConfig& cfg) {
  const auto s = witness_subspace({cfg.n, cfg.r});
  if (cfg.format == "pretty") {
    std::ostringstream os;
    os << "witness n=" << cfg.n << " r=" << cfg.r << " dim=" << s.dim() << "\nbase:\n" << s.base().str();
    for (std::size_t k = 0; k < s.dim(); ++k) os << "basis " << k + 1 << ":\n" << s.basis()[k].str();
    emit(cfg, os.str());
  } else {
    emit(cfg, dumped(to_json(s)));
  }
  return kPass;
}

int cmd_certify(const RunConfig& cfg) {
  const auto s = subspace_from_json(read_json(cfg.in));
  CertifyOptions opt;
  opt.seed = cfg.seed;
  opt.samples = cfg.trials;
  CertMode mode;
  if (cfg.mode == "symbolic")
    mode = CertMode::symbolic;
  else if (cfg.mode == "sampled")
    mode = CertMode::sampled;
  else
    mode = symbolic_within_cap(s, opt) ? CertMode::symbolic : CertMode::sampled;
  const auto rep = certify_constant_rank(s, cfg.rank, mode, opt);
  if (cfg.format == "pretty") {
    std::ostringstream os;
    os << "verdict: " << to_string(rep.verdict) << " (" << to_string(rep.mode) << ", rank " << rep.rank << ")\n"
       << rep.note << "\n";
    if (rep.counterexample)
      os << "counterexample t = " << vec_str(*rep.counterexample) << " has rank " << *rep.counterexample_rank << "\n";
    emit(cfg, os.str());
  } else {
    emit(cfg, dumped(to_json(rep)));
  }
  // a sampled run that saw no failure is a pass; a symbolic inconclusive is not
  if (rep.verdict == Verdict::constant_rank) return kPass;
  if (rep.verdict == Verdict::inconclusive && rep.mode == CertMode::sampled) return kPass;
  return kFail;
}

int cmd_lemmas(const RunConfig& cfg) {
  const auto rs = all_lemma_suites(cfg.trials, cfg.seed);
  bool ok = true;
  for (const auto& r : rs) ok = ok && r.ok();
  const std::string fmt = cfg.format.empty() ? "csv" : cfg.format;
  if (fmt == "json") {
    json a = json::array();
    for (const auto& r : rs) a.push_back(to_json(r));
    emit(cfg, dumped(json{{"seed", cfg.seed}, {"trials", cfg.trials}, {"results", a}, {"ok", ok}}));
  } else if (fmt == "pretty") {
    emit(cfg, lemma_table(rs));
  } else {
    emit(cfg, lemma_csv(rs));
  }
  return ok ? kPass : kFail;
}

int cmd_falsify(const RunConfig& cfg) {
  const auto rep = falsify_extensions({cfg.n, cfg.r}, cfg.trials, cfg.seed);
  if (cfg.format == "pretty") {
    std::ostringstream os;
    os << "n=" << rep.n << " r=" << rep.r << " (" << to_string(rep.regime) << ")\n"
       << "tried " << rep.tried << ", refuted by sampling " << rep.refuted_by_sampling << ", refuted symbolically "
       << rep.refuted_symbolically << ", survivors " << rep.survivors << "\n";
    for (const auto& [k, v] : rep.mechanisms) os << "  " << k << ": " << v << "\n";
    emit(cfg, os.str());
  } else {
    emit(cfg, dumped(to_json(rep)));
  }
  return rep.survivors == 0 && rep.consistent() ? kPass : kFail;
}

int cmd_normal_form(const RunConfig& cfg) {
  const SkewMatrixQ m(matrix_from_json(read_json(cfg.in)));
  const auto nf = skew_normal_form(m);
  const MatrixQ t = nf.q.transpose() * m.matrix() * nf.q;
  if (cfg.format == "pretty") {
    emit(cfg, "rank " + std::to_string(2 * nf.k) + "\nQ:\n" + nf.q.str() + "Q^T M Q:\n" + t.str());
  } else {
    emit(cfg, dumped(json{{"rank", 2 * nf.k}, {"q", to_json(nf.q)}, {"normal_form", to_json(t)}}));
  }
  return kPass;
}

int cmd_pfaffian(const RunConfig& cfg) {
  const SkewMatrixQ m(matrix_from_json(read_json(cfg.in)));
  const Rational pf = pfaffian(m);
  if (cfg.format == "pretty")
    emit(cfg, pf.str() + "\n");
  else
    emit(cfg, dumped(json{{"size", m.size()}, {"pfaffian", pf.str()}}));
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "crk: exact constant-rank computations for affine spaces of antisymmetric matrices.\n"
      "Rationals are read and written as \"p/q\" strings. Matrix indices in all output are 1-based."};
  app.require_subcommand(1);
  app.set_version_flag("--version", "crk 1.0");

  RunConfig cfg;
  std::uint64_t seed_flag = 0;
  auto common = [&](CLI::App* sub, bool seeded) {
    sub->add_option("--out", cfg.out, "Write output to this file instead of stdout");
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "pretty"}));
    if (seeded)
      sub->add_option("--seed", seed_flag, "RNG seed (default 0, or $CRK_SEED)");
  };

  auto* bound = app.add_subcommand("bound", "Maximal dimension of a constant-rank affine space of n x n antisymmetric matrices");
  bound->add_option("--n", cfg.n, "Matrix size")->required()->check(CLI::PositiveNumber);
  bound->add_option("--rank", cfg.rank, "The (even) rank 2r")->required();
  common(bound, false);

  auto* construct = app.add_subcommand("construct", "Write the witness subspace attaining the bound, as JSON");
  construct->add_option("--n", cfg.n, "Matrix size")->required();
  construct->add_option("--r", cfg.r, "Half the rank")->required();
  common(construct, false);

  auto* certify = app.add_subcommand("certify", "Certify that every element of a subspace has the given rank");
  certify->add_option("--in", cfg.in, "Subspace JSON ({ambient, base, basis}); '-' reads stdin")->required();
  certify->add_option("--rank", cfg.rank, "Target rank")->required();
  certify->add_option("--mode", cfg.mode, "symbolic, sampled, or auto (symbolic when within the size cap)")
      ->check(CLI::IsMember({"symbolic", "sampled", "auto"}));
  certify->add_option("--trials", cfg.trials, "Sample count in sampled mode")->default_val(200);
  common(certify, true);

  auto* lemmas = app.add_subcommand("lemmas", "Run the randomized lemma suites (CSV summary by default)");
  lemmas->add_option("--trials", cfg.trials, "Trials per suite")->default_val(100);
  common(lemmas, true);

  auto* falsify = app.add_subcommand("falsify", "Try random one-dimensional extensions of the witness subspace");
  falsify->add_option("--n", cfg.n, "Matrix size")->required();
  falsify->add_option("--r", cfg.r, "Half the rank")->required();
  falsify->add_option("--trials", cfg.trials, "Number of extensions")->default_val(200);
  common(falsify, true);

  auto* normal = app.add_subcommand("normal-form", "Congruence Q with Q^T M Q = Jbar_2k + 0 for an antisymmetric M");
  normal->add_option("--in", cfg.in, "Matrix JSON ({rows, cols, entries}); '-' reads stdin")->required();
  common(normal, false);

  auto* pf = app.add_subcommand("pfaffian", "Pfaffian of an antisymmetric matrix (Pf(Jbar) = 1)");
  pf->add_option("--in", cfg.in, "Matrix JSON ({rows, cols, entries}); '-' reads stdin")->required();
  common(pf, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    cfg.seed = default_seed();
    for (auto* sub : app.get_subcommands())
      if (auto* opt = sub->get_option_no_throw("--seed"); opt && opt->count()) cfg.seed = seed_flag;

    if (bound->parsed()) return cmd_bound(cfg);
    if (construct->parsed()) return cmd_construct(cfg);
    if (certify->parsed()) return cmd_certify(cfg);
    if (lemmas->parsed()) return cmd_lemmas(cfg);
    if (falsify->parsed()) return cmd_falsify(cfg);
    if (normal->parsed()) return cmd_normal_form(cfg);
    if (pf->parsed()) return cmd_pfaffian(cfg);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const json::exception& e) {
    std::cerr << "error: malformed JSON input: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
