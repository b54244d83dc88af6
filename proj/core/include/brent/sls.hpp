#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "brent/cnf.hpp"
#include "brent/encoder.hpp"

namespace brent {

/// Parameters of the probSAT-style local search.
///
/// A try runs for `max_flips` flips; when `restart_doubling` is set each
/// subsequent try gets twice the cutoff of the previous one. A variable in the
/// picked clause is chosen with probability proportional to cb^-break.
/// `timeout_seconds <= 0` disables the wall-clock limit (the only source of
/// run-to-run variation).
struct SolverConfig {
  std::uint64_t seed = 1;
  std::uint64_t max_flips = 1'000'000;
  int tries = 8;
  bool restart_doubling = true;
  double cb = 3.0;
  double timeout_seconds = 0.0;
  /// On formulas with Tseitin definitions, flip only independent variables and
  /// recompute definition outputs (see solve(const CnfFormula&, ...)).
  bool dependency_aware = true;
  /// Initial values for the non-fixed variables of the first try.
  std::optional<Model> hint;

  /// Throws std::invalid_argument when a budget is non-positive or cb <= 1.
  void validate() const;
  /// Upper bound on flips over all tries.
  std::uint64_t total_flip_budget() const;
};

enum class SolveStatus { kSat, kUnknown };

struct SolveOutcome {
  SolveStatus status = SolveStatus::kUnknown;
  std::optional<Model> model;
  std::uint64_t flips = 0;
  int tries = 0;
  double seconds = 0.0;
  /// Variables fixed by unit propagation before the search.
  int propagated = 0;
  /// Fewest falsified clauses seen during the search.
  std::size_t best_unsat = static_cast<std::size_t>(-1);
  /// Unit propagation already refuted the formula.
  bool refuted = false;

  bool sat() const { return status == SolveStatus::kSat; }
  double flips_per_second() const { return seconds > 0 ? static_cast<double>(flips) / seconds : 0.0; }
};

/// Local search on `cnf`. Assumptions and unit clauses are propagated first
/// and the resulting values are never flipped. A kSat outcome always carries
/// a model that passes check_model; results are identical for identical
/// inputs unless the timeout fires.
SolveOutcome solve(const Cnf& cnf, const SolverConfig& cfg);

/// Same contract as solve(const Cnf&, ...). With cfg.dependency_aware the
/// search flips only variables that are not outputs of f.gates; every gate
/// output is kept equal to its definition, and a step picks a falsified
/// non-definition clause, tries each free variable in its fan-in, and picks
/// among those that satisfy the clause with probability proportional to
/// cb^-break.
SolveOutcome solve(const CnfFormula& f, const SolverConfig& cfg);

/// Writes the formula to a temporary DIMACS file, runs `command <file>` and
/// reads the solver's "s"/"v" output. The returned model is checked like
/// solve()'s.
SolveOutcome solve_external(const Cnf& cnf, const std::string& command);

}  // namespace brent
