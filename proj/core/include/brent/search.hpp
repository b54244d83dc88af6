#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "brent/encoder.hpp"
#include "brent/scheme.hpp"
#include "brent/sls.hpp"
#include "brent/streamliner.hpp"

namespace brent {

struct NeighborResult {
  Scheme scheme;
  /// Base literals that were fixed to their value in the input scheme.
  std::vector<Literal> fixed;
  SolveOutcome outcome;
};

/// Fixes a random fix_fraction of the base variables of s to their values in
/// s, solves for the rest and decodes. The result verifies and agrees with s on
/// the fixed set; it may equal s. Returns nullopt when the solver gives up.
/// Throws std::invalid_argument when s does not verify.
std::optional<NeighborResult> neighbor(const Scheme& s, double fix_fraction, const SolverConfig& cfg,
                                       std::uint64_t seed);

/// Same, reusing an already built encode(s.n, s.m()). When `outcome` is
/// given it receives the solver outcome, including on failure.
std::optional<NeighborResult> neighbor(const CnfFormula& plain, const Scheme& s, double fix_fraction,
                                       const SolverConfig& cfg, std::uint64_t seed,
                                       SolveOutcome* outcome = nullptr);

/// Random-walk budget. With `flips` set the run is deterministic: every
/// thread stops after spending that many units (solver flips plus one per
/// step) and the time axis of the series is in those units. Otherwise `seconds`
/// bounds the wall time.
struct WalkConfig {
  int threads = 1;
  double seconds = 0.0;
  std::uint64_t flips = 0;
  double fix_fraction = 2.0 / 3.0;
  /// Consecutive failed steps from the same scheme before a chain halts.
  int retry_cap = 20;
  /// Spacing of the sampled series on the time axis; 0 gives one point per discovery.
  double sample_every = 0.0;
  std::uint64_t master_seed = 1;
  /// Per-step solver settings; seed and timeout are overridden per step.
  SolverConfig solver = [] {
    SolverConfig c;
    c.max_flips = 200'000;
    c.tries = 1;
    return c;
  }();
  /// Canonical keys (raw bytes) that count as already known.
  std::vector<std::string> known_keys;

  void validate() const;
  bool deterministic() const { return flips > 0; }
};

struct WalkDiscovery {
  Scheme scheme;
  std::string key;
  int thread = 0;
  /// Position on the time axis (seconds, or flip units in deterministic mode).
  double at = 0.0;
  int support = 0;
  std::vector<int> core_signature;
};

struct WalkPoint {
  double at = 0.0;
  std::size_t distinct = 0;
};

struct WalkStats {
  bool deterministic = false;
  std::vector<std::uint64_t> thread_seeds;
  /// New distinct schemes in discovery order; never contains the start or a known key.
  std::vector<WalkDiscovery> discoveries;
  /// Cumulative distinct count; nondecreasing.
  std::vector<WalkPoint> series;
  std::uint64_t steps = 0;
  std::uint64_t failed_steps = 0;
  std::uint64_t flips = 0;
  int halted_chains = 0;
  double seconds = 0.0;

  /// Known, start and discovered keys, sorted.
  std::vector<std::string> all_keys;
};

/// Runs cfg.threads independent neighbor chains from start. Thread t uses
/// seed mix_seed(master_seed, t). Discoveries are deduplicated by
/// canonical_key under a shared lock and verified before they are stored.
WalkStats random_walk(const Scheme& start, const WalkConfig& cfg);

struct PairingSearchConfig {
  int n = 3;
  int m = 23;
  std::vector<std::uint64_t> seeds;
  bool streamline = true;
  bool block_extra = true;
  SolverConfig solver;
};

struct PairingAttempt {
  std::uint64_t seed = 0;
  Pairing pairing;
  SolveOutcome outcome;
  /// Set when the pairing was extended to a verified scheme.
  std::optional<Scheme> scheme;
};

/// For each seed: random_pairing, hardcode it, optionally streamline every
/// summand with one term, solve and decode. Failures are kept.
std::vector<PairingAttempt> pairing_search(const PairingSearchConfig& cfg);

struct CorpusStats {
  std::size_t size = 0;
  std::map<int, std::size_t> support_histogram;
  std::map<std::string, std::size_t> signature_counts;
};

/// Throws std::invalid_argument if a scheme does not verify.
CorpusStats corpus_stats(std::span<const Scheme> schemes);

/// "support,count" rows in increasing support.
std::string support_csv(const CorpusStats& stats);
/// "signature,count,percent" rows in decreasing count.
std::string cores_csv(const CorpusStats& stats);
/// "elapsed_s,distinct_count" (or "flips,distinct_count" in deterministic mode).
std::string walk_csv(const WalkStats& stats);

/// File name stem for a scheme: 16 hex digits of a hash of its canonical key.
std::string key_file_stem(const std::string& key);

/// Writes walk.csv, support.csv, cores.csv, keys.txt and schemes/<stem>.json.
void write_walk_output(const std::filesystem::path& dir, const WalkStats& stats);

/// Reads keys.txt (one hex key per line).
std::vector<std::string> read_keys(const std::filesystem::path& path);

}  // namespace brent
