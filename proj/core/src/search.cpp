#include "brent/search.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "brent/rng.hpp"
#include "brent/scheme_io.hpp"

namespace brent {

std::optional<NeighborResult> neighbor(const Scheme& s, double fix_fraction, const SolverConfig& cfg,
                                       std::uint64_t seed) {
  return neighbor(encode(s.n, s.m()), s, fix_fraction, cfg, seed);
}

std::optional<NeighborResult> neighbor(const CnfFormula& plain, const Scheme& s, double fix_fraction,
                                       const SolverConfig& cfg, std::uint64_t seed,
                                       SolveOutcome* outcome_out) {
  if (plain.n != s.n || plain.m != s.m() || !plain.cnf.assumptions().empty()) {
    throw std::invalid_argument("neighbor: formula is not the plain encoding for this shape");
  }
  if (!verify(s)) throw std::invalid_argument("neighbor: input scheme does not verify");
  CnfFormula f = fix_from_scheme(plain, s, fix_fraction, seed);
  SolveOutcome outcome = solve(f, cfg);
  if (outcome_out) *outcome_out = outcome;
  if (!outcome.sat()) return std::nullopt;
  Scheme found = decode(f, *outcome.model);
  if (!verify(found)) throw IntegrityError("neighbor: decoded scheme does not verify");
  found.label = s.label;
  const auto& fixed = f.cnf.assumptions();
  return NeighborResult{std::move(found), fixed, std::move(outcome)};
}

void WalkConfig::validate() const {
  if (threads < 1) throw std::invalid_argument("walk: threads must be positive");
  if (flips == 0 && !(seconds > 0)) throw std::invalid_argument("walk: set a flip or a time budget");
  if (!(fix_fraction >= 0 && fix_fraction <= 1)) throw std::invalid_argument("walk: fix fraction must lie in [0, 1]");
  if (retry_cap < 1) throw std::invalid_argument("walk: retry cap must be positive");
  if (sample_every < 0) throw std::invalid_argument("walk: negative sample spacing");
  solver.validate();
}

namespace {

using Clock = std::chrono::steady_clock;

struct Event {
  double at = 0.0;
  int thread = 0;
  std::uint64_t seq = 0;
  Scheme scheme;
  std::string key;

  auto order() const { return std::tie(at, thread, seq); }
};

// The one structure shared by the walk threads. For each key it keeps the
// earliest report by (at, thread, seq), which does not depend on the order
// in which threads arrive.
class DiscoveryStore {
 public:
  explicit DiscoveryStore(std::set<std::string> excluded) : excluded_(std::move(excluded)) {}

  void report(Event e) {
    if (!verify(e.scheme)) throw IntegrityError("walk: refusing to store a scheme that does not verify");
    std::lock_guard lock(mu_);
    if (excluded_.count(e.key)) return;
    auto it = events_.find(e.key);
    if (it == events_.end()) {
      std::string key = e.key;
      events_.emplace(std::move(key), std::move(e));
    } else if (e.order() < it->second.order()) {
      it->second = std::move(e);
    }
  }

  std::vector<Event> take() {
    std::lock_guard lock(mu_);
    std::vector<Event> out;
    out.reserve(events_.size());
    for (auto& [key, e] : events_) out.push_back(std::move(e));
    events_.clear();
    std::sort(out.begin(), out.end(), [](const Event& a, const Event& b) { return a.order() < b.order(); });
    return out;
  }

 private:
  std::mutex mu_;
  const std::set<std::string> excluded_;
  std::map<std::string, Event> events_;
};

struct ChainResult {
  std::uint64_t steps = 0;
  std::uint64_t failed = 0;
  std::uint64_t flips = 0;
  bool halted = false;
};

ChainResult run_chain(const CnfFormula& plain, const Scheme& start, const WalkConfig& cfg, int thread,
                      std::uint64_t thread_seed, Clock::time_point t0, DiscoveryStore& store) {
  ChainResult r;
  std::set<std::string> seen = {canonical_key(start)};
  Scheme current = start;
  int fails = 0;
  for (std::uint64_t step = 0;; ++step) {
    SolverConfig solver = cfg.solver;
    solver.seed = mix_seed(thread_seed, 2 * step + 1);
    if (cfg.deterministic()) {
      // One unit for the step itself and at least one flip.
      if (r.flips + 2 > cfg.flips) break;
      solver.max_flips = std::min(solver.max_flips, cfg.flips - r.flips - 1);
      solver.tries = 1;
      solver.timeout_seconds = 0;
    } else {
      const double remaining = cfg.seconds - std::chrono::duration<double>(Clock::now() - t0).count();
      if (remaining <= 0) break;
      solver.timeout_seconds = solver.timeout_seconds > 0 ? std::min(solver.timeout_seconds, remaining) : remaining;
    }
    SolveOutcome outcome;
    const auto result =
        neighbor(plain, current, cfg.fix_fraction, solver, mix_seed(thread_seed, 2 * step), &outcome);
    ++r.steps;
    r.flips += 1 + outcome.flips;
    if (!result) {
      ++r.failed;
      if (++fails >= cfg.retry_cap) {
        r.halted = true;
        break;
      }
      continue;
    }
    fails = 0;
    std::string key = canonical_key(result->scheme);
    if (seen.insert(key).second) {
      const double at = cfg.deterministic() ? static_cast<double>(r.flips)
                                            : std::chrono::duration<double>(Clock::now() - t0).count();
      store.report(Event{at, thread, step, result->scheme, std::move(key)});
    }
    current = result->scheme;
  }
  return r;
}

std::vector<WalkPoint> build_series(const std::vector<WalkDiscovery>& found, double end, double every) {
  std::vector<WalkPoint> series;
  if (every > 0) {
    std::size_t i = 0;
    const auto samples = static_cast<std::uint64_t>(end / every + 1e-9);
    for (std::uint64_t k = 0; k <= samples; ++k) {
      const double t = static_cast<double>(k) * every;
      while (i < found.size() && found[i].at <= t) ++i;
      series.push_back({t, i});
    }
    if (series.back().at < end) series.push_back({end, found.size()});
    return series;
  }
  series.push_back({0.0, 0});
  for (std::size_t i = 0; i < found.size(); ++i) series.push_back({found[i].at, i + 1});
  series.push_back({std::max(end, found.empty() ? 0.0 : found.back().at), found.size()});
  return series;
}

}  // namespace

WalkStats random_walk(const Scheme& start, const WalkConfig& cfg) {
  cfg.validate();
  if (!verify(start)) throw std::invalid_argument("walk: start scheme does not verify");
  const auto t0 = Clock::now();
  const CnfFormula plain = encode(start.n, start.m());

  std::set<std::string> excluded(cfg.known_keys.begin(), cfg.known_keys.end());
  excluded.insert(canonical_key(start));
  DiscoveryStore store(excluded);

  WalkStats stats;
  stats.deterministic = cfg.deterministic();
  for (int t = 0; t < cfg.threads; ++t) stats.thread_seeds.push_back(mix_seed(cfg.master_seed, t));

  std::vector<ChainResult> chains(cfg.threads);
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(cfg.threads);
  for (int t = 0; t < cfg.threads; ++t) {
    workers.emplace_back([&, t] {
      try {
        chains[t] = run_chain(plain, start, cfg, t, stats.thread_seeds[t], t0, store);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  for (const ChainResult& c : chains) {
    stats.steps += c.steps;
    stats.failed_steps += c.failed;
    stats.flips += c.flips;
    stats.halted_chains += c.halted;
  }
  for (Event& e : store.take()) {
    WalkDiscovery d;
    d.support = support(e.scheme);
    d.core_signature = core_signature(e.scheme);
    d.scheme = std::move(e.scheme);
    d.key = std::move(e.key);
    d.thread = e.thread;
    d.at = e.at;
    stats.discoveries.push_back(std::move(d));
  }
  stats.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  const double end = cfg.deterministic() ? static_cast<double>(cfg.flips) : cfg.seconds;
  stats.series = build_series(stats.discoveries, end, cfg.sample_every);
  stats.all_keys.assign(excluded.begin(), excluded.end());
  for (const auto& d : stats.discoveries) stats.all_keys.push_back(d.key);
  std::sort(stats.all_keys.begin(), stats.all_keys.end());
  return stats;
}

std::vector<PairingAttempt> pairing_search(const PairingSearchConfig& cfg) {
  cfg.solver.validate();
  const CnfFormula plain = encode(cfg.n, cfg.m);
  std::vector<PairingAttempt> out;
  for (std::uint64_t seed : cfg.seeds) {
    PairingAttempt attempt;
    attempt.seed = seed;
    attempt.pairing = random_pairing(cfg.n, cfg.m, seed);
    CnfFormula f = hardcode_pairing(plain, attempt.pairing, cfg.block_extra);
    if (cfg.streamline) f = streamline_singletons(f);
    SolverConfig solver = cfg.solver;
    solver.seed = mix_seed(cfg.solver.seed, seed);
    attempt.outcome = solve(f, solver);
    if (attempt.outcome.sat()) {
      Scheme s = decode(f, *attempt.outcome.model);
      if (!verify(s)) throw IntegrityError("pairing_search: decoded scheme does not verify");
      s.label = "pairing-" + std::to_string(seed);
      attempt.scheme = std::move(s);
    }
    out.push_back(std::move(attempt));
  }
  return out;
}

CorpusStats corpus_stats(std::span<const Scheme> schemes) {
  CorpusStats stats;
  for (const Scheme& s : schemes) {
    if (!verify(s)) throw std::invalid_argument("corpus_stats: scheme '" + s.label + "' does not verify");
    ++stats.size;
    ++stats.support_histogram[support(s)];
    ++stats.signature_counts[signature_string(core_signature(s))];
  }
  return stats;
}

std::string support_csv(const CorpusStats& stats) {
  std::string out = "support,count\n";
  for (const auto& [value, count] : stats.support_histogram) {
    out += std::to_string(value) + "," + std::to_string(count) + "\n";
  }
  return out;
}

std::string cores_csv(const CorpusStats& stats) {
  std::vector<std::pair<std::string, std::size_t>> rows(stats.signature_counts.begin(),
                                                        stats.signature_counts.end());
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  std::string out = "signature,count,percent\n";
  char buf[32];
  for (const auto& [sig, count] : rows) {
    std::snprintf(buf, sizeof buf, "%.2f", 100.0 * static_cast<double>(count) / static_cast<double>(stats.size));
    out += sig + "," + std::to_string(count) + "," + buf + "\n";
  }
  return out;
}

std::string walk_csv(const WalkStats& stats) {
  std::string out = stats.deterministic ? "flips,distinct_count\n" : "elapsed_s,distinct_count\n";
  char buf[48];
  for (const WalkPoint& p : stats.series) {
    if (stats.deterministic) {
      std::snprintf(buf, sizeof buf, "%.0f,%zu\n", p.at, p.distinct);
    } else {
      std::snprintf(buf, sizeof buf, "%.3f,%zu\n", p.at, p.distinct);
    }
    out += buf;
  }
  return out;
}

std::string key_file_stem(const std::string& key) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : key) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_walk_output(const std::filesystem::path& dir, const WalkStats& stats) {
  std::filesystem::create_directories(dir / "schemes");
  std::vector<Scheme> corpus;
  for (const auto& d : stats.discoveries) {
    Scheme s = d.scheme;
    s.label = key_file_stem(d.key);
    write_file(dir / "schemes" / (s.label + ".json"), scheme_to_json(s));
    corpus.push_back(std::move(s));
  }
  const CorpusStats cs = corpus_stats(corpus);
  write_file(dir / "walk.csv", walk_csv(stats));
  write_file(dir / "support.csv", support_csv(cs));
  write_file(dir / "cores.csv", cores_csv(cs));
  std::string keys;
  for (const auto& k : stats.all_keys) keys += key_to_hex(k) + "\n";
  write_file(dir / "keys.txt", keys);
}

std::vector<std::string> read_keys(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) {
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
    if (line.empty()) continue;
    out.push_back(key_from_hex(line));
  }
  return out;
}

}  // namespace brent
