// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "brent/bundled.hpp"
#include "brent/challenge.hpp"
#include "brent/encoder.hpp"
#include "brent/rng.hpp"
#include "brent/scheme_io.hpp"
#include "brent/search.hpp"
#include "brent/sls.hpp"
#include "brent/streamliner.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace brent;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

fs::path g_work;

std::string cli_path() {
#ifdef BRENT_CLI_PATH
  return BRENT_CLI_PATH;
#else
  return "brent";
#endif
}

int run_cli(const std::string& args, const std::string& log_name) {
  const std::string cmd = "'" + cli_path() + "' " + args + " > '" + (g_work / log_name).string() + "' 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string fmt(const char* format, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, value);
  return buf;
}

Model scheme_model(const CnfFormula& f, const Scheme& s) {
  Model m(f.cnf.var_count());
  for (Literal lit : scheme_literals(f.base, s)) m.set(var_of(lit), lit > 0);
  return m;
}

// 1. Encoder shape.
Verdict encoder_shape() {
  Verdict v;
  const auto t0 = Clock::now();
  const CnfFormula f = encode(3, 23);
  const double secs = since(t0);
  v.require(f.base.size() == 621, "base vars " + std::to_string(f.base.size()));
  v.require(f.parity_groups == 729, "parity groups " + std::to_string(f.parity_groups));
  v.require(secs < 5.0, "took " + fmt("%.2f s", secs));
  v.note("621 base, 729 groups in " + fmt("%.3f s", secs));
  return v;
}

// 2. Oracle validation of bundled schemes.
Verdict bundled_schemes() {
  Verdict v;
  const auto t0 = Clock::now();
  v.require(verify(strassen()), "strassen");
  for (int n = 1; n <= 3; ++n) v.require(verify(naive_scheme(n)), "naive" + std::to_string(n));
  const Scheme a = fig1_scheme_a();
  const Scheme b = fig1_scheme_b();
  v.require(verify(a), "fig1 A");
  v.require(verify(b), "fig1 B");
  const double secs = since(t0);
  v.require(secs < 1.0, "took " + fmt("%.2f s", secs));
  int shared = 0;
  for (int l = 0; l < std::min(a.m(), b.m()); ++l) shared += a.summands[l] == b.summands[l];
  v.require(a.m() == 23 && b.m() == 23 && shared == 19, "shared summands " + std::to_string(shared));
  v.note("7 schemes verify in " + fmt("%.3f s", secs) + ", A/B share 19, differ in 4");
  return v;
}

// 3. Encoding soundness.
Verdict encoding_soundness() {
  Verdict v;
  int counterexamples = 0;
  const CnfFormula one = encode(1, 1);
  for (int bits = 0; bits < 8; ++bits) {
    Model m(one.cnf.var_count());
    for (int var = 1; var <= 3; ++var) m.set(var, (bits >> (var - 1)) & 1);
    const Model ext = extend_assignment(one, m);
    const Scheme s = read_scheme(one.base, ext);
    if (check_model(one.cnf, ext) != brent_residual(s).empty()) ++counterexamples;
  }
  const CnfFormula f = encode(2, 7);
  int accepted = 0;
  const int samples = 1200;
  for (int t = 0; t < samples; ++t) {
    Scheme s;
    if (t % 4 == 0) {
      // Perturbed valid schemes so both outcomes occur.
      Rng rng(static_cast<std::uint64_t>(t));
      s = strassen();
      const int flips = static_cast<int>(rng.below(3));
      for (int k = 0; k < flips; ++k)
        s = testing::with_flipped_bit(s, static_cast<int>(rng.below(3)), static_cast<int>(rng.below(7)),
                                      static_cast<int>(rng.below(2)), static_cast<int>(rng.below(2)));
    } else {
      s = testing::random_scheme(2, 7, 1000 + static_cast<std::uint64_t>(t), 0.5);
    }
    const Model ext = extend_assignment(f, scheme_model(f, s));
    const bool cnf_ok = check_model(f.cnf, ext);
    if (cnf_ok != brent_residual(read_scheme(f.base, ext)).empty()) ++counterexamples;
    accepted += cnf_ok;
  }
  v.require(counterexamples == 0, std::to_string(counterexamples) + " counterexamples");
  v.note("8 + " + std::to_string(samples) + " assignments, " + std::to_string(accepted) +
         " satisfying, 0 counterexamples");
  return v;
}

// 4. End-to-end solve of encode(2,7).
Verdict small_solve() {
  Verdict v;
  const CnfFormula f = encode(2, 7);
  int solved = 0;
  double worst = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    SolverConfig cfg;
    cfg.seed = seed;
    cfg.timeout_seconds = 60;
    const SolveOutcome o = solve(f, cfg);
    worst = std::max(worst, o.seconds);
    if (o.sat() && verify(decode(f, *o.model))) ++solved;
  }
  v.require(solved >= 9, std::to_string(solved) + "/10 solved");
  v.note(std::to_string(solved) + "/10 seeds, slowest " + fmt("%.2f s", worst));
  return v;
}

// 5. Neighborhood method.
Verdict neighborhood() {
  Verdict v;
  const CnfFormula plain = encode(3, 23);
  const Scheme a = fig1_scheme_a();
  const double fraction = 2.0 / 3.0;
  v.require(fixed_count(plain.base.size(), fraction) == 414, "fixed count");
  std::vector<double> times;
  int ok = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    SolverConfig cfg;
    cfg.seed = mix_seed(seed, 1);
    cfg.timeout_seconds = 60;
    SolveOutcome outcome;
    const auto t0 = Clock::now();
    const auto r = neighbor(plain, a, fraction, cfg, seed, &outcome);
    const double secs = since(t0);
    times.push_back(r ? secs : 1e9);
    if (!r) continue;
    bool agrees = r->fixed.size() == 414 && verify(r->scheme);
    for (Literal lit : r->fixed) {
      const BaseVar b = plain.base.lookup(var_of(lit));
      agrees = agrees && r->scheme.summands[b.summand].matrix(b.role).get(b.row, b.col) == (lit > 0) &&
               a.summands[b.summand].matrix(b.role).get(b.row, b.col) == (lit > 0);
    }
    v.require(agrees, "seed " + std::to_string(seed) + " disagrees with fixed set");
    ok += agrees;
  }
  std::sort(times.begin(), times.end());
  const double median = (times[4] + times[5]) / 2;
  v.require(ok >= 8, std::to_string(ok) + "/10 succeeded");
  v.require(median <= 60, "median " + fmt("%.2f s", median));
  v.note(std::to_string(ok) + "/10 seeds, median " + fmt("%.3f s", median));
  return v;
}

struct WalkDir {
  std::vector<Scheme> schemes;
  std::vector<std::pair<double, long>> series;
};

WalkDir read_walk_dir(const fs::path& dir) {
  WalkDir w;
  if (fs::exists(dir / "schemes")) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir / "schemes")) files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& p : files) w.schemes.push_back(load_scheme(p));
  }
  std::istringstream in(read_file(dir / "walk.csv"));
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    w.series.emplace_back(std::stod(line.substr(0, comma)), std::stol(line.substr(comma + 1)));
  }
  return w;
}

fs::path g_walk6;

// 6. Random walk, desk scale.
Verdict random_walk_run() {
  Verdict v;
  write_file(g_work / "fig1_a.json", scheme_to_json(fig1_scheme_a()));
  g_walk6 = g_work / "walk6";
  fs::remove_all(g_walk6);
  const int code = run_cli("walk --start '" + (g_work / "fig1_a.json").string() +
                               "' --threads 4 --seconds 120 --sample-every 10 --seed 1 --out-dir '" +
                               g_walk6.string() + "'",
                           "walk6.log");
  v.require(code == 0, "walk exit " + std::to_string(code));
  if (code != 0) return v;
  const WalkDir w = read_walk_dir(g_walk6);
  std::set<std::string> keys;
  bool all_valid = true;
  for (const Scheme& s : w.schemes) {
    all_valid = all_valid && verify(s);
    keys.insert(canonical_key(s));
  }
  keys.erase(canonical_key(fig1_scheme_a()));
  v.require(!w.schemes.empty(), "no schemes stored");
  v.require(all_valid, "stored scheme fails verification");
  v.require(keys.size() == w.schemes.size(), "duplicate or start key stored");
  bool monotone = true;
  for (std::size_t i = 1; i < w.series.size(); ++i)
    monotone = monotone && w.series[i].second >= w.series[i - 1].second && w.series[i].first >= w.series[i - 1].first;
  v.require(monotone, "discovery curve decreases");
  v.require(!w.series.empty() && w.series.back().second == static_cast<long>(w.schemes.size()),
            "curve end differs from stored count");
  v.note(std::to_string(w.schemes.size()) + " distinct verified schemes in 120 s on 4 threads");
  return v;
}

// 7. Streamlining effect at a fixed flip budget.
Verdict streamlining_effect() {
  Verdict v;
  constexpr std::uint64_t kBudget = 15'000;
  PairingSearchConfig cfg;
  for (std::uint64_t s = 1; s <= 20; ++s) cfg.seeds.push_back(s);
  cfg.solver.max_flips = kBudget;
  cfg.solver.tries = 1;
  cfg.solver.seed = 7;
  int counts[2] = {0, 0};
  double best[2] = {1e9, 1e9};
  for (int streamline = 0; streamline < 2; ++streamline) {
    cfg.streamline = streamline == 1;
    for (const PairingAttempt& a : pairing_search(cfg)) {
      best[streamline] = std::min(best[streamline], static_cast<double>(a.outcome.best_unsat));
      if (!a.scheme) continue;
      ++counts[streamline];
      v.require(verify(*a.scheme) && core_matches(*a.scheme, a.pairing),
                "seed " + std::to_string(a.seed) + " scheme does not match its pairing");
    }
  }
  v.require(counts[1] >= counts[0], "streamlined " + std::to_string(counts[1]) + " < plain " + std::to_string(counts[0]));
  v.note("20 pairings at " + std::to_string(kBudget) + " flips: streamlined " + std::to_string(counts[1]) +
         " solved (fewest unsat " + fmt("%.0f", best[1]) + "), unstreamlined " + std::to_string(counts[0]) +
         " solved (fewest unsat " + fmt("%.0f", best[0]) + ")");
  return v;
}

// 8. Challenge generator, checked on the emitted files.
Verdict challenges() {
  Verdict v;
  const fs::path dir = g_work / "challenges";
  fs::remove_all(dir);
  for (const char* id : {"1", "2", "3", "4"}) {
    const int code = run_cli(std::string("challenge ") + id + " --count 2 --out-dir '" + dir.string() + "'",
                             std::string("challenge") + id + ".log");
    v.require(code == 0, std::string("challenge ") + id + " exit " + std::to_string(code));
  }
  if (!v.pass) return v;
  const CnfFormula plain = encode(3, 23);
  const Cnf plain_cnf = parse_dimacs(to_dimacs(plain.cnf));

  v.require(BaseVarMap::parse(read_file(dir / "challenge4-m22.map")).size() == 594, "challenge 4 base vars");

  const Cnf c3 = parse_dimacs(read_file(dir / "challenge3-summand23.cnf"));
  bool c3_ok = c3.clause_count() == plain_cnf.clause_count() + 27 && c3.var_count() == plain_cnf.var_count();
  for (std::size_t i = 0; c3_ok && i < plain_cnf.clause_count(); ++i) {
    const auto x = c3.clause(i);
    const auto y = plain_cnf.clause(i);
    c3_ok = std::equal(x.begin(), x.end(), y.begin(), y.end());
  }
  for (std::size_t i = plain_cnf.clause_count(); c3_ok && i < c3.clause_count(); ++i)
    for (Literal lit : c3.clause(i)) c3_ok = c3_ok && lit < 0 && plain.base.lookup(-lit).summand == 22;
  v.require(c3_ok, "challenge 3 is not plain + 27 blocking clauses on summand 23");

  int checked = 0;
  for (const auto& e : fs::directory_iterator(dir)) {
    const std::string name = e.path().filename().string();
    if (e.path().extension() != ".cnf" || (name.rfind("challenge1", 0) != 0 && name.rfind("challenge2", 0) != 0))
      continue;
    const Cnf c = parse_dimacs(read_file(e.path()));
    int units = 0;
    std::set<int> unit_vars;
    for (std::size_t i = 0; i < c.clause_count(); ++i)
      if (c.clause(i).size() == 1) {
        ++units;
        unit_vars.insert(var_of(c.clause(i)[0]));
      }
    const Pairing p = Pairing::parse(read_file(fs::path(e.path()).replace_extension(".pairing")));
    bool covers = true;
    for (int l = 0; l < p.m(); ++l)
      for (const TermIndex& t : p.slots[l]) {
        covers = covers && unit_vars.count(plain.base.id(Role::kAlpha, l, t.i1, t.i2)) &&
                 unit_vars.count(plain.base.id(Role::kBeta, l, t.j1, t.j2)) &&
                 unit_vars.count(plain.base.id(Role::kGamma, l, t.k1, t.k2));
      }
    v.require(units == 81 && covers, name + ": " + std::to_string(units) + " units");
    v.require(c.var_count() == plain_cnf.var_count(), name + ": extra variables");
    ++checked;
  }
  v.require(checked == 4, "expected 4 pairing instances, found " + std::to_string(checked));
  v.note("594 base vars; +27 blocks; " + std::to_string(checked) + " pairing files with 81 units, no extra vars");
  return v;
}

// 9. Statistics.
Verdict statistics() {
  Verdict v;
  const std::vector<Scheme> naive = {naive_scheme(3)};
  const CorpusStats ns = corpus_stats(naive);
  v.require(ns.support_histogram == std::map<int, std::size_t>{{81, 1}}, "naive3 histogram");

  std::vector<Scheme> corpus;
  if (!g_walk6.empty() && fs::exists(g_walk6 / "schemes")) corpus = read_walk_dir(g_walk6).schemes;
  const CorpusStats ws = corpus_stats(corpus);
  std::size_t bins = 0;
  for (const auto& [value, count] : ws.support_histogram) bins += count;
  v.require(bins == ws.size && ws.size == corpus.size(), "walk histogram sum");
  if (!g_walk6.empty()) {
    long file_sum = 0;
    std::istringstream in(read_file(g_walk6 / "support.csv"));
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) file_sum += std::stol(line.substr(line.find(',') + 1));
    v.require(file_sum == static_cast<long>(corpus.size()), "support.csv sum");
  }
  corpus.push_back(fig1_scheme_a());
  corpus.push_back(fig1_scheme_b());
  int lo = 621, hi = 0;
  for (const Scheme& s : corpus) {
    lo = std::min(lo, support(s));
    hi = std::max(hi, support(s));
  }
  v.require(lo > 0 && hi <= 621, "support outside [1, 621]");

  struct Golden {
    Scheme s;
    int support;
    const char* signature;
  };
  const std::vector<Golden> golden = {{strassen(), 36, "2"},         {naive_scheme(1), 3, "none"},
                                      {naive_scheme(2), 24, "none"}, {naive_scheme(3), 81, "none"},
                                      {fig1_scheme_a(), 151, "2-2-2-2"}, {fig1_scheme_b(), 156, "2-2-2-2-3"}};
  for (const Golden& g : golden) {
    v.require(support(g.s) == g.support && signature_string(core_signature(g.s)) == g.signature,
              "golden mismatch for support " + std::to_string(g.support));
  }
  v.note("walk corpus " + std::to_string(ws.size) + " schemes, support range [" + std::to_string(lo) + ", " +
         std::to_string(hi) + "], golden values match");
  return v;
}

bool same_tree(const fs::path& x, const fs::path& y) {
  std::vector<std::string> fx, fy;
  for (const auto& e : fs::recursive_directory_iterator(x))
    if (e.is_regular_file()) fx.push_back(fs::relative(e.path(), x).string());
  for (const auto& e : fs::recursive_directory_iterator(y))
    if (e.is_regular_file()) fy.push_back(fs::relative(e.path(), y).string());
  std::sort(fx.begin(), fx.end());
  std::sort(fy.begin(), fy.end());
  if (fx != fy) return false;
  for (const auto& f : fx)
    if (read_file(x / f) != read_file(y / f)) return false;
  return true;
}

// 10. Determinism of encode, flip-budgeted solve and flip-budgeted walk.
Verdict determinism() {
  Verdict v;
  const fs::path dir = g_work / "determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string start = (g_work / "fig1_a.json").string();
  write_file(start, scheme_to_json(fig1_scheme_a()));
  for (const std::string run : {"r1", "r2"}) {
    const fs::path d = dir / run;
    fs::create_directories(d);
    v.require(run_cli("encode -n 3 -m 23 --scheme '" + start + "' --fraction 0.6667 --fix-seed 3 -o '" +
                          (d / "encode" / "f.cnf").string() + "'",
                      "det-encode-" + run + ".log") == 0,
              "encode failed");
    v.require(run_cli("solve -n 2 -m 7 --seed 4 --max-flips 300000 --tries 2 -o '" + (d / "solve" / "s.json").string() +
                          "' --model '" + (d / "solve" / "s.model").string() + "'",
                      "det-solve-" + run + ".log") == 0,
              "solve failed");
    v.require(run_cli("walk --start '" + start + "' --flips 4000 --threads 2 --seed 5 --out-dir '" +
                          (d / "walk").string() + "'",
                      "det-walk-" + run + ".log") == 0,
              "walk failed");
  }
  if (!v.pass) return v;
  for (const char* part : {"encode", "solve", "walk"})
    v.require(same_tree(dir / "r1" / part, dir / "r2" / part), std::string(part) + " outputs differ");
  v.note("encode, solve and walk outputs byte-identical across two runs");
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  g_work = fs::temp_directory_path() / "brent_acceptance";
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--work-dir" && i + 1 < argc) {
      g_work = argv[++i];
    } else if (arg == "--only" && i + 1 < argc) {
      only.push_back(std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: acceptance [--work-dir DIR] [--only N]...\n");
      return 2;
    }
  }
  fs::create_directories(g_work);

  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"encoder shape", encoder_shape},
      {"bundled schemes verify", bundled_schemes},
      {"encoding soundness", encoding_soundness},
      {"end-to-end solve 2x2 rank 7", small_solve},
      {"neighborhood method", neighborhood},
      {"random walk", random_walk_run},
      {"streamlining effect", streamlining_effect},
      {"challenge generator", challenges},
      {"statistics", statistics},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    const auto t0 = Clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    failed += !v.pass;
    std::printf("%s criterion %d (%s): %s [%.1f s]\n", v.pass ? "PASS" : "FAIL", id, criteria[i].first,
                v.detail.c_str(), since(t0));
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
