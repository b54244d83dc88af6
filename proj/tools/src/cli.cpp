#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "brent/bundled.hpp"
#include "brent/challenge.hpp"
#include "brent/encoder.hpp"
#include "brent/rng.hpp"
#include "brent/scheme_io.hpp"
#include "brent/search.hpp"
#include "brent/sls.hpp"
#include "brent/streamliner.hpp"

namespace brent::cli {
namespace {

namespace fs = std::filesystem;

constexpr const char* kExternalSolverEnv = "BRENT_EXTERNAL_SOLVER";

// Failure that is not a usage error, e.g. a scheme that does not verify.
struct CommandFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolverFlags {
  std::uint64_t seed = 1;
  std::uint64_t max_flips = SolverConfig{}.max_flips;
  int tries = SolverConfig{}.tries;
  double cb = SolverConfig{}.cb;
  double timeout = 0.0;
  bool plain = false;

  void add(CLI::App* app) {
    app->add_option("--seed", seed, "Solver seed")->capture_default_str();
    app->add_option("--max-flips", max_flips, "Flips in the first try")->capture_default_str()->check(CLI::PositiveNumber);
    app->add_option("--tries", tries, "Number of tries (cutoff doubles each try)")->capture_default_str()->check(CLI::PositiveNumber);
    app->add_option("--cb", cb, "Base of the break weighting cb^-break")->capture_default_str();
    app->add_option("--timeout", timeout, "Wall-clock limit in seconds (0 = none)")->capture_default_str();
    app->add_flag("--plain", plain, "Plain probSAT on the clauses, without definition tracking");
  }

  SolverConfig config() const {
    SolverConfig cfg;
    cfg.seed = seed;
    cfg.max_flips = max_flips;
    cfg.tries = tries;
    cfg.cb = cb;
    cfg.timeout_seconds = timeout;
    cfg.dependency_aware = !plain;
    return cfg;
  }
};

// Constraints that can be layered on top of encode(n, m).
struct FormulaFlags {
  int n = 0;
  int m = 0;
  std::string scheme_path;
  double fraction = 1.0;
  std::uint64_t fix_seed = 1;
  std::string pairing_path;
  bool no_block = false;
  bool streamline = false;
  bool even = false;

  void add(CLI::App* app, bool required) {
    auto* on = app->add_option("-n", n, "Matrix dimension")->check(CLI::Range(1, kMaxDimension));
    auto* om = app->add_option("-m", m, "Number of multiplications")->check(CLI::PositiveNumber);
    if (required) {
      on->required();
      om->required();
    }
    app->add_option("--scheme", scheme_path, "Fix base variables from this scheme")->check(CLI::ExistingFile);
    app->add_option("--fraction", fraction, "Fraction of base variables to fix from --scheme")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 1.0));
    app->add_option("--fix-seed", fix_seed, "Seed for choosing the fixed variables")->capture_default_str();
    app->add_option("--pairing", pairing_path, "Hardcode this pairing of type-3 terms")->check(CLI::ExistingFile);
    app->add_flag("--no-block", no_block, "Do not forbid type-3 terms outside the pairing");
    app->add_flag("--streamline", streamline, "Streamline every summand with one paired term");
    app->add_flag("--even-occurrence", even, "Allow each non-type-3 term in at most two summands");
  }

  CnfFormula build() const {
    CnfFormula f = encode(n, m);
    if (!scheme_path.empty()) f = fix_from_scheme(f, load_scheme(scheme_path), fraction, fix_seed);
    if (!pairing_path.empty()) f = hardcode_pairing(f, Pairing::parse(read_file(pairing_path)), !no_block);
    if (streamline) f = streamline_singletons(f);
    if (even) f = streamline_even_occurrence(f);
    return f;
  }
};

void write_scheme(const fs::path& path, const Scheme& s) {
  write_file(path, path.extension() == ".json" ? scheme_to_json(s) : render_scheme(s));
}

std::string describe(const Scheme& s) {
  return "n=" + std::to_string(s.n) + " m=" + std::to_string(s.m()) + " support=" + std::to_string(support(s)) +
         " core=" + signature_string(core_signature(s));
}

std::string map_path_for(const fs::path& cnf) {
  fs::path p = cnf;
  p.replace_extension(".map");
  return p.string();
}

void report_outcome(std::ostream& out, const SolveOutcome& o) {
  out << (o.sat() ? "s SATISFIABLE" : "s UNKNOWN") << "\n";
  out << "c flips " << o.flips << " tries " << o.tries << " propagated " << o.propagated << " seconds "
      << o.seconds << "\n";
}

std::vector<Scheme> load_corpus(const std::vector<std::string>& paths) {
  std::vector<Scheme> out;
  for (const auto& p : paths) {
    if (fs::is_directory(p)) {
      std::vector<fs::path> files;
      for (const auto& entry : fs::recursive_directory_iterator(p)) {
        const auto ext = entry.path().extension();
        if (entry.is_regular_file() && (ext == ".json" || ext == ".scheme")) files.push_back(entry.path());
      }
      std::sort(files.begin(), files.end());
      for (const auto& f : files) out.push_back(load_scheme(f));
    } else {
      out.push_back(load_scheme(p));
    }
  }
  return out;
}

Scheme bundled_scheme(const std::string& name) {
  if (name == "strassen") return strassen();
  if (name == "fig1_a") return fig1_scheme_a();
  if (name == "fig1_b") return fig1_scheme_b();
  if (name.rfind("naive", 0) == 0 && name.size() > 5) {
    const int n = std::stoi(name.substr(5));
    if (n >= 1 && n <= kMaxDimension) return naive_scheme(n);
  }
  throw CLI::ValidationError("unknown scheme '" + name + "' (strassen, fig1_a, fig1_b, naive<n>)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Search for matrix multiplication schemes over GF(2) with SAT", "brent"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  // encode
  auto* encode_cmd = app.add_subcommand("encode", "Write the Brent equations as DIMACS plus a variable map");
  FormulaFlags encode_flags;
  std::string encode_out;
  encode_flags.add(encode_cmd, true);
  encode_cmd->add_option("-o,--output", encode_out, "Output .cnf path; the map goes next to it")->required();

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "Solve encode(n, m) or a DIMACS file with local search");
  FormulaFlags solve_formula;
  SolverFlags solve_solver;
  std::string solve_cnf, solve_out, solve_model, solve_hint;
  solve_formula.add(solve_cmd, false);
  solve_solver.add(solve_cmd);
  solve_cmd->add_option("--cnf", solve_cnf, "Solve this DIMACS file instead of encode(n, m)")->check(CLI::ExistingFile);
  solve_cmd->add_option("-o,--output", solve_out, "Write the decoded scheme (.json for JSON)");
  solve_cmd->add_option("--model", solve_model, "Write the model as v lines");
  solve_cmd->add_option("--hint", solve_hint, "Start the first try from this scheme")->check(CLI::ExistingFile);

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Check a scheme against the Brent equations");
  std::string verify_path;
  verify_cmd->add_option("scheme", verify_path, "Scheme file")->required()->check(CLI::ExistingFile);

  // neighbor
  auto* neighbor_cmd = app.add_subcommand("neighbor", "Fix part of a scheme and solve for the rest");
  std::string neighbor_in, neighbor_out;
  double neighbor_fraction = 2.0 / 3.0;
  SolverFlags neighbor_solver;
  neighbor_solver.max_flips = 200'000;
  neighbor_cmd->add_option("--scheme", neighbor_in, "Start scheme")->required()->check(CLI::ExistingFile);
  neighbor_cmd->add_option("--fraction", neighbor_fraction, "Fraction of base variables to fix")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  neighbor_cmd->add_option("-o,--output", neighbor_out, "Write the neighbor (.json for JSON)");
  neighbor_solver.add(neighbor_cmd);

  // walk
  auto* walk_cmd = app.add_subcommand("walk", "Random walk through neighboring schemes");
  std::string walk_start, walk_dir = "walk-out", walk_resume;
  WalkConfig walk_cfg;
  walk_cmd->add_option("--start", walk_start, "Start scheme")->required()->check(CLI::ExistingFile);
  auto* walk_seconds = walk_cmd->add_option("--seconds", walk_cfg.seconds, "Wall-clock budget");
  auto* walk_flips = walk_cmd->add_option("--flips", walk_cfg.flips, "Per-thread flip budget (deterministic)");
  walk_seconds->excludes(walk_flips);
  walk_cmd->add_option("--threads", walk_cfg.threads, "Worker chains")->capture_default_str()->check(CLI::PositiveNumber);
  walk_cmd->add_option("--seed", walk_cfg.master_seed, "Master seed")->capture_default_str();
  walk_cmd->add_option("--fraction", walk_cfg.fix_fraction, "Fraction of base variables fixed per step")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  walk_cmd->add_option("--step-flips", walk_cfg.solver.max_flips, "Solver flips per step")->capture_default_str();
  walk_cmd->add_option("--retry-cap", walk_cfg.retry_cap, "Failed steps in a row before a chain halts")
      ->capture_default_str();
  walk_cmd->add_option("--sample-every", walk_cfg.sample_every, "Series spacing (0 = every discovery)")
      ->capture_default_str();
  walk_cmd->add_option("--out-dir", walk_dir, "Output directory")->capture_default_str();
  walk_cmd->add_option("--resume", walk_resume, "keys.txt of earlier runs")->check(CLI::ExistingFile);

  // pairsearch
  auto* pair_cmd = app.add_subcommand("pairsearch", "Extend random pairings of type-3 terms to schemes");
  PairingSearchConfig pair_cfg;
  SolverFlags pair_solver;
  pair_solver.max_flips = 100'000;
  pair_solver.tries = 1;
  int pair_count = 10;
  std::uint64_t pair_first = 1;
  bool pair_no_stream = false, pair_no_block = false;
  std::string pair_dir;
  pair_cmd->add_option("-n", pair_cfg.n, "Matrix dimension")->capture_default_str()->check(CLI::Range(1, kMaxDimension));
  pair_cmd->add_option("-m", pair_cfg.m, "Number of multiplications")->capture_default_str()->check(CLI::PositiveNumber);
  pair_cmd->add_option("--count", pair_count, "Number of pairings")->capture_default_str()->check(CLI::PositiveNumber);
  pair_cmd->add_option("--first-seed", pair_first, "Pairing seeds are first-seed, first-seed + 1, ...")
      ->capture_default_str();
  pair_cmd->add_flag("--no-streamline", pair_no_stream, "Do not streamline single-term summands");
  pair_cmd->add_flag("--no-block", pair_no_block, "Allow type-3 terms outside the pairing");
  pair_cmd->add_option("--out-dir", pair_dir, "Write attempts.csv and found schemes here");
  pair_solver.add(pair_cmd);

  // stats
  auto* stats_cmd = app.add_subcommand("stats", "Support histogram and core signatures of a corpus");
  std::vector<std::string> stats_inputs;
  std::string stats_dir;
  stats_cmd->add_option("inputs", stats_inputs, "Scheme files or directories")->required();
  stats_cmd->add_option("--out-dir", stats_dir, "Write support.csv and cores.csv here instead of stdout");

  // challenge
  auto* challenge_cmd = app.add_subcommand("challenge", "Generate challenge formulas");
  int challenge_id = 0;
  std::uint64_t challenge_seed = 1;
  int challenge_count = 10;
  int challenge_summand = 23;
  int challenge_m = 22;
  std::string challenge_dir = ".", challenge_pairing;
  challenge_cmd->add_option("id", challenge_id, "Challenge 1, 2, 3 or 4")->required()->check(CLI::Range(1, 4));
  challenge_cmd->add_option("--out-dir", challenge_dir, "Output directory")->capture_default_str();
  challenge_cmd->add_option("--seed", challenge_seed, "First pairing seed (challenges 1 and 2)")->capture_default_str();
  challenge_cmd->add_option("--count", challenge_count, "Instances for challenges 1 and 2")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  challenge_cmd->add_option("--pairing", challenge_pairing, "Emit one instance with this pairing")
      ->check(CLI::ExistingFile);
  challenge_cmd->add_option("--summand", challenge_summand, "Blocked summand for challenge 3 (1-based)")
      ->capture_default_str()
      ->check(CLI::Range(1, 23));
  challenge_cmd->add_option("--m", challenge_m, "Multiplications for challenge 4")->capture_default_str();

  // export
  auto* export_cmd = app.add_subcommand("export", "Write a bundled scheme");
  std::string export_name, export_format = "text", export_conv = "flipped", export_out;
  export_cmd->add_option("name", export_name, "strassen, fig1_a, fig1_b or naive<n>")->required();
  export_cmd->add_option("--format", export_format, "text or json")
      ->capture_default_str()
      ->check(CLI::IsMember({"text", "json"}));
  export_cmd->add_option("--convention", export_conv, "Gamma convention for JSON output")
      ->capture_default_str()
      ->check(CLI::IsMember({"flipped", "application"}));
  export_cmd->add_option("-o,--output", export_out, "Output file (default stdout)");

  // decode
  auto* decode_cmd = app.add_subcommand("decode", "Read a scheme off an external solver's model");
  std::string decode_model, decode_map, decode_cnf, decode_out;
  decode_cmd->add_option("--model", decode_model, "Solver output with v lines")->required()->check(CLI::ExistingFile);
  decode_cmd->add_option("--map", decode_map, "Variable map written by encode")->required()->check(CLI::ExistingFile);
  decode_cmd->add_option("--cnf", decode_cnf, "Formula the model must satisfy")->required()->check(CLI::ExistingFile);
  decode_cmd->add_option("-o,--output", decode_out, "Write the scheme (.json for JSON)");

  try {
    std::vector<std::string> rest(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*encode_cmd) {
      const CnfFormula f = encode_flags.build();
      write_file(encode_out, to_dimacs(f.cnf));
      write_file(map_path_for(encode_out), f.base.render());
      out << "vars " << f.cnf.var_count() << " clauses " << f.cnf.clause_count() + f.cnf.assumptions().size()
          << " base " << f.base.size() << " assumptions " << f.cnf.assumptions().size() << "\n";
      return kOk;
    }

    if (*solve_cmd) {
      const SolverConfig cfg = solve_solver.config();
      const char* external = std::getenv(kExternalSolverEnv);
      if (!solve_cnf.empty()) {
        const Cnf cnf = parse_dimacs(read_file(solve_cnf));
        const SolveOutcome o = external && *external ? solve_external(cnf, external) : solve(cnf, cfg);
        report_outcome(out, o);
        if (!o.sat()) return kFailure;
        if (!solve_model.empty()) write_file(solve_model, render_model(*o.model));
        return kOk;
      }
      if (solve_formula.n == 0 || solve_formula.m == 0) {
        throw CLI::ValidationError("solve needs either --cnf or both -n and -m");
      }
      const CnfFormula f = solve_formula.build();
      SolverConfig run_cfg = cfg;
      if (!solve_hint.empty()) {
        const auto lits = scheme_literals(f.base, load_scheme(solve_hint));
        Model hint(f.cnf.var_count());
        for (Literal lit : lits) hint.set(var_of(lit), lit > 0);
        run_cfg.hint = extend_assignment(f, hint);
      }
      const SolveOutcome o = external && *external ? solve_external(f.cnf, external) : solve(f, run_cfg);
      report_outcome(out, o);
      if (!o.sat()) return kFailure;
      const Scheme s = decode(f, *o.model);
      if (!verify(s)) throw IntegrityError("decoded scheme does not verify");
      out << "c scheme " << describe(s) << "\n";
      if (!solve_out.empty()) write_scheme(solve_out, s);
      if (!solve_model.empty()) write_file(solve_model, render_model(*o.model));
      return kOk;
    }

    if (*verify_cmd) {
      const Scheme s = load_scheme(verify_path);
      const auto bad = brent_residual(s);
      if (bad.empty()) {
        out << "OK " << describe(s) << "\n";
        return kOk;
      }
      const auto& first = bad.front();
      out << "FAIL " << bad.size() << " violated equations; first " << first.term.to_string() << " (type "
          << term_type(first.term, s.n) << ", sum " << first.lhs << ", expected " << first.rhs << ")\n";
      return kFailure;
    }

    if (*neighbor_cmd) {
      const Scheme s = load_scheme(neighbor_in);
      SolverConfig cfg = neighbor_solver.config();
      cfg.seed = mix_seed(neighbor_solver.seed, 1);
      const auto r = neighbor(s, neighbor_fraction, cfg, neighbor_solver.seed);
      if (!r) {
        out << "no neighbor found\n";
        return kFailure;
      }
      const bool same = canonical_key(r->scheme) == canonical_key(s);
      out << (same ? "same scheme " : "new scheme ") << describe(r->scheme) << " fixed " << r->fixed.size()
          << " flips " << r->outcome.flips << "\n";
      if (!neighbor_out.empty()) write_scheme(neighbor_out, r->scheme);
      return kOk;
    }

    if (*walk_cmd) {
      if (walk_cfg.flips == 0 && !(walk_cfg.seconds > 0)) {
        throw CLI::ValidationError("walk needs --seconds or --flips");
      }
      if (!walk_resume.empty()) walk_cfg.known_keys = read_keys(walk_resume);
      const WalkStats stats = random_walk(load_scheme(walk_start), walk_cfg);
      write_walk_output(walk_dir, stats);
      out << "distinct " << stats.discoveries.size() << " steps " << stats.steps << " failed " << stats.failed_steps
          << " halted " << stats.halted_chains << "\n";
      return kOk;
    }

    if (*pair_cmd) {
      pair_cfg.streamline = !pair_no_stream;
      pair_cfg.block_extra = !pair_no_block;
      pair_cfg.solver = pair_solver.config();
      for (int i = 0; i < pair_count; ++i) pair_cfg.seeds.push_back(pair_first + static_cast<std::uint64_t>(i));
      const auto attempts = pairing_search(pair_cfg);
      std::string csv = "seed,found,flips,seconds,best_unsat,signature\n";
      int found = 0;
      for (const auto& a : attempts) {
        found += a.scheme.has_value();
        std::ostringstream row;
        row << a.seed << "," << a.scheme.has_value() << "," << a.outcome.flips << "," << a.outcome.seconds << ","
            << (a.outcome.sat() ? 0 : a.outcome.best_unsat) << ","
            << (a.scheme ? signature_string(core_signature(*a.scheme)) : "") << "\n";
        csv += row.str();
        if (!pair_dir.empty()) {
          write_file(fs::path(pair_dir) / ("pairing-" + std::to_string(a.seed) + ".pairing"), a.pairing.render());
          if (a.scheme) write_scheme(fs::path(pair_dir) / ("pairing-" + std::to_string(a.seed) + ".json"), *a.scheme);
        }
      }
      if (!pair_dir.empty()) write_file(fs::path(pair_dir) / "attempts.csv", csv);
      out << csv << "found " << found << " of " << attempts.size() << "\n";
      return found > 0 ? kOk : kFailure;
    }

    if (*stats_cmd) {
      const auto corpus = load_corpus(stats_inputs);
      const CorpusStats cs = corpus_stats(corpus);
      if (stats_dir.empty()) {
        out << support_csv(cs) << "\n" << cores_csv(cs);
      } else {
        write_file(fs::path(stats_dir) / "support.csv", support_csv(cs));
        write_file(fs::path(stats_dir) / "cores.csv", cores_csv(cs));
        out << "schemes " << cs.size << "\n";
      }
      return kOk;
    }

    if (*challenge_cmd) {
      std::vector<ChallengeInstance> instances;
      if (!challenge_pairing.empty()) {
        if (challenge_id > 2) throw CLI::ValidationError("--pairing applies to challenges 1 and 2");
        ChallengeSpec spec;
        spec.id = challenge_id;
        spec.pairing = Pairing::parse(read_file(challenge_pairing));
        instances.push_back(generate_challenge(spec));
      } else if (challenge_id == 3 || challenge_id == 4) {
        ChallengeSpec spec;
        spec.id = challenge_id;
        spec.blocked_summand = challenge_summand - 1;
        spec.m = challenge_m;
        instances.push_back(generate_challenge(spec));
      } else {
        instances = generate_challenge_set(challenge_id, challenge_seed, challenge_count);
      }
      for (const auto& inst : instances) {
        write_challenge(challenge_dir, inst);
        out << inst.name << " vars " << inst.formula.cnf.var_count() << " clauses "
            << inst.formula.cnf.clause_count() + inst.formula.cnf.assumptions().size() << "\n";
      }
      return kOk;
    }

    if (*export_cmd) {
      const Scheme s = bundled_scheme(export_name);
      const std::string text =
          export_format == "json" ? scheme_to_json(s, parse_convention(export_conv)) : render_scheme(s);
      if (export_out.empty()) {
        out << text;
      } else {
        write_file(export_out, text);
      }
      return kOk;
    }

    if (*decode_cmd) {
      const Cnf cnf = parse_dimacs(read_file(decode_cnf));
      const BaseVarMap map = BaseVarMap::parse(read_file(decode_map));
      const Model model = parse_model(read_file(decode_model), cnf.var_count());
      const long bad = first_violation(cnf, model);
      if (bad >= 0) throw CommandFailure("model violates clause " + std::to_string(bad));
      const Scheme s = read_scheme(map, model);
      if (!verify(s)) throw CommandFailure("decoded scheme does not verify");
      out << "OK " << describe(s) << "\n";
      if (!decode_out.empty()) write_scheme(decode_out, s);
      return kOk;
    }
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}

}  // namespace brent::cli
