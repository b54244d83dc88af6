#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "brent/encoder.hpp"
#include "brent/streamliner.hpp"

namespace brent {

/// Parameters of one challenge formula.
///  1: encode(3,23) with a hardcoded pairing that is known to extend.
///  2: encode(3,23) with a hardcoded random pairing (expected unsatisfiable).
///  3: encode(3,23) with every type-3 term blocked in one summand.
///  4: plain encode(3,22).
struct ChallengeSpec {
  int id = 1;
  std::uint64_t pairing_seed = 0;
  /// Explicit pairing for challenges 1 and 2; overrides pairing_seed.
  std::optional<Pairing> pairing;
  /// 0-based summand for challenge 3; defaults to the last one.
  int blocked_summand = 22;
  int m = 22;

  /// Throws std::invalid_argument for an unknown id or a bad parameter.
  void validate() const;
};

struct ChallengeInstance {
  std::string name;
  CnfFormula formula;
  std::optional<Pairing> pairing;
};

/// Core of fig1_scheme_a(): four pairs and nineteen singles, extended by that scheme.
Pairing demonstration_pairing();

ChallengeInstance generate_challenge(const ChallengeSpec& spec);

/// Ten instances for challenges 1 and 2, one for 3 and 4. Challenge 1 uses the
/// demonstration pairing first and then random pairings from base_seed + i;
/// challenge 2 uses random pairings from base_seed + i throughout.
std::vector<ChallengeInstance> generate_challenge_set(int id, std::uint64_t base_seed, int count = 10);

/// Writes <name>.cnf, <name>.map and, for pairings, <name>.pairing into dir.
void write_challenge(const std::filesystem::path& dir, const ChallengeInstance& instance);

}  // namespace brent
