#include "brent/sls.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <stdexcept>
#include <vector>

#include <unistd.h>

#include "brent/rng.hpp"

namespace brent {

void SolverConfig::validate() const {
  if (max_flips == 0) throw std::invalid_argument("SolverConfig: max_flips must be positive");
  if (tries < 1) throw std::invalid_argument("SolverConfig: tries must be positive");
  if (!(cb > 1.0)) throw std::invalid_argument("SolverConfig: cb must exceed 1");
}

std::uint64_t SolverConfig::total_flip_budget() const {
  std::uint64_t total = 0;
  std::uint64_t cutoff = max_flips;
  for (int t = 0; t < tries; ++t) {
    total += cutoff;
    if (restart_doubling && cutoff < (std::uint64_t{1} << 62)) cutoff *= 2;
  }
  return total;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Clauses left after unit propagation, over densely renumbered free variables.
// Literal code: 2 * var + negated.
struct Reduced {
  int vars = 0;
  std::vector<int> original;  // dense id -> original variable
  std::vector<std::uint32_t> lits;
  std::vector<std::uint32_t> starts;  // clause_count + 1 entries
  std::vector<std::uint32_t> occ_start;  // 2 * vars + 1 entries
  std::vector<std::uint32_t> occ;

  std::size_t clauses() const { return starts.size() - 1; }
};

Reduced reduce(const Cnf& cnf, const Propagation& prop) {
  Reduced r;
  std::vector<int> dense(static_cast<std::size_t>(cnf.var_count()) + 1, -1);
  for (int v = 1; v <= cnf.var_count(); ++v) {
    if (prop.value[v] == -1) {
      dense[v] = r.vars++;
      r.original.push_back(v);
    }
  }
  r.starts.push_back(0);
  for (std::size_t c = 0; c < cnf.clause_count(); ++c) {
    bool satisfied = false;
    const std::size_t mark = r.lits.size();
    for (Literal lit : cnf.clause(c)) {
      const int v = var_of(lit);
      if (prop.value[v] == -1) {
        r.lits.push_back(2 * static_cast<std::uint32_t>(dense[v]) + (lit < 0));
      } else if ((prop.value[v] == 1) == (lit > 0)) {
        satisfied = true;
        break;
      }
    }
    if (satisfied) {
      r.lits.resize(mark);
      continue;
    }
    r.starts.push_back(static_cast<std::uint32_t>(r.lits.size()));
  }
  r.occ_start.assign(2 * static_cast<std::size_t>(r.vars) + 1, 0);
  for (std::uint32_t code : r.lits) ++r.occ_start[code + 1];
  for (std::size_t i = 1; i < r.occ_start.size(); ++i) r.occ_start[i] += r.occ_start[i - 1];
  r.occ.resize(r.lits.size());
  auto fill = r.occ_start;
  for (std::size_t c = 0; c < r.clauses(); ++c) {
    for (std::uint32_t i = r.starts[c]; i < r.starts[c + 1]; ++i) {
      r.occ[fill[r.lits[i]]++] = static_cast<std::uint32_t>(c);
    }
  }
  return r;
}

class ProbSat {
 public:
  ProbSat(const Reduced& r, const SolverConfig& cfg)
      : r_(r), cfg_(cfg), rng_(cfg.seed), value_(r.vars), breaks_(r.vars),
        true_count_(r.clauses()), crit_(r.clauses()), unsat_pos_(r.clauses()) {
    weight_.resize(64);
    for (std::size_t b = 0; b < weight_.size(); ++b) weight_[b] = std::pow(cfg.cb, -static_cast<double>(b));
  }

  // Returns true when every clause is satisfied.
  bool run(const std::optional<Model>& hint, Clock::time_point start, SolveOutcome& outcome) {
    std::uint64_t cutoff = cfg_.max_flips;
    for (int t = 0; t < cfg_.tries; ++t) {
      ++outcome.tries;
      initialize(t == 0 ? hint : std::nullopt);
      for (std::uint64_t f = 0; f < cutoff; ++f) {
        if (unsat_.empty()) return true;
        if ((outcome.flips & 0xFFFF) == 0 && cfg_.timeout_seconds > 0 &&
            seconds_since(start) > cfg_.timeout_seconds) {
          return false;
        }
        flip(pick(unsat_[rng_.below(unsat_.size())]));
        ++outcome.flips;
        if (unsat_.size() < outcome.best_unsat) outcome.best_unsat = unsat_.size();
      }
      if (unsat_.empty()) return true;
      if (cfg_.restart_doubling) cutoff *= 2;
    }
    return false;
  }

  bool value(int dense) const { return value_[dense] != 0; }

 private:
  static int var_of_code(std::uint32_t code) { return static_cast<int>(code >> 1); }
  bool is_true(std::uint32_t code) const { return value_[code >> 1] != (code & 1U); }

  void initialize(const std::optional<Model>& hint) {
    for (int v = 0; v < r_.vars; ++v) {
      value_[v] = hint ? static_cast<std::uint8_t>(hint->value(r_.original[v])) : static_cast<std::uint8_t>(rng_.coin());
    }
    std::fill(breaks_.begin(), breaks_.end(), 0);
    unsat_.clear();
    for (std::size_t c = 0; c < r_.clauses(); ++c) {
      std::uint32_t count = 0, crit = 0;
      for (std::uint32_t i = r_.starts[c]; i < r_.starts[c + 1]; ++i) {
        if (is_true(r_.lits[i])) {
          ++count;
          crit ^= static_cast<std::uint32_t>(var_of_code(r_.lits[i]));
        }
      }
      true_count_[c] = count;
      crit_[c] = crit;
      if (count == 0) add_unsat(static_cast<std::uint32_t>(c));
      else if (count == 1) ++breaks_[crit];
    }
  }

  int pick(std::uint32_t clause) {
    const std::uint32_t begin = r_.starts[clause];
    const std::uint32_t end = r_.starts[clause + 1];
    const std::uint32_t size = end - begin;
    std::array<double, 16> local{};
    double* probs = local.data();
    std::vector<double> wide;
    if (size > local.size()) {
      wide.resize(size);
      probs = wide.data();
    }
    double sum = 0.0;
    for (std::uint32_t i = 0; i < size; ++i) {
      const auto b = breaks_[var_of_code(r_.lits[begin + i])];
      sum += probs[i] = b < weight_.size() ? weight_[b] : 0.0;
    }
    if (sum <= 0.0) return var_of_code(r_.lits[begin + rng_.below(size)]);
    double x = rng_.uniform() * sum;
    for (std::uint32_t i = 0; i + 1 < size; ++i) {
      x -= probs[i];
      if (x < 0) return var_of_code(r_.lits[begin + i]);
    }
    return var_of_code(r_.lits[end - 1]);
  }

  void flip(int v) {
    value_[v] ^= 1U;
    const std::uint32_t now_true = 2 * static_cast<std::uint32_t>(v) + (value_[v] ? 0U : 1U);
    const std::uint32_t now_false = now_true ^ 1U;
    const auto uv = static_cast<std::uint32_t>(v);
    for (std::uint32_t i = r_.occ_start[now_true]; i < r_.occ_start[now_true + 1]; ++i) {
      const std::uint32_t c = r_.occ[i];
      const std::uint32_t count = ++true_count_[c];
      crit_[c] ^= uv;
      if (count == 1) {
        remove_unsat(c);
        ++breaks_[uv];
      } else if (count == 2) {
        --breaks_[crit_[c] ^ uv];
      }
    }
    for (std::uint32_t i = r_.occ_start[now_false]; i < r_.occ_start[now_false + 1]; ++i) {
      const std::uint32_t c = r_.occ[i];
      const std::uint32_t count = --true_count_[c];
      crit_[c] ^= uv;
      if (count == 0) {
        add_unsat(c);
        --breaks_[uv];
      } else if (count == 1) {
        ++breaks_[crit_[c]];
      }
    }
  }

  void add_unsat(std::uint32_t c) {
    unsat_pos_[c] = static_cast<std::uint32_t>(unsat_.size());
    unsat_.push_back(c);
  }

  void remove_unsat(std::uint32_t c) {
    const std::uint32_t last = unsat_.back();
    unsat_[unsat_pos_[c]] = last;
    unsat_pos_[last] = unsat_pos_[c];
    unsat_.pop_back();
  }

  const Reduced& r_;
  const SolverConfig& cfg_;
  Rng rng_;
  std::vector<std::uint8_t> value_;
  std::vector<std::uint32_t> breaks_;
  std::vector<std::uint32_t> true_count_;
  std::vector<std::uint32_t> crit_;
  std::vector<std::uint32_t> unsat_;
  std::vector<std::uint32_t> unsat_pos_;
  std::vector<double> weight_;
};


// Search over the independent variables of a formula with known Tseitin
// definitions. Gate outputs always equal their definition, so only the
// remaining ("tracked") clauses can be falsified; a flip re-evaluates the
// fan-out cone of the flipped variable.
class DependencySearch {
 public:
  DependencySearch(const CnfFormula& f, const Propagation& prop, const SolverConfig& cfg)
      : f_(f), cfg_(cfg), rng_(cfg.seed) {
    const int nv = f.cnf.var_count();
    value_.assign(static_cast<std::size_t>(nv) + 1, 0);
    gate_of_.assign(static_cast<std::size_t>(nv) + 1, -1);
    for (std::size_t g = 0; g < f.gates.size(); ++g) gate_of_[f.gates[g].output] = static_cast<int>(g);
    fixed_.assign(static_cast<std::size_t>(nv) + 1, -1);
    for (int v = 1; v <= nv; ++v) {
      if (gate_of_[v] < 0) fixed_[v] = prop.value[v];
    }
    for (int v = 1; v <= nv; ++v) {
      if (gate_of_[v] < 0 && fixed_[v] == -1) free_.push_back(v);
    }

    // Fan-out lists.
    fan_start_.assign(static_cast<std::size_t>(nv) + 2, 0);
    for (const Gate& g : f.gates)
      for (int k = 0; k < arity(g); ++k) ++fan_start_[g.inputs[k] + 1];
    for (std::size_t i = 1; i < fan_start_.size(); ++i) fan_start_[i] += fan_start_[i - 1];
    fan_.resize(fan_start_.back());
    {
      auto fill = fan_start_;
      for (std::size_t g = 0; g < f.gates.size(); ++g)
        for (int k = 0; k < arity(f.gates[g]); ++k) fan_[fill[f.gates[g].inputs[k]]++] = static_cast<std::uint32_t>(g);
    }

    // Tracked clauses: everything except gate definitions, minus literals on
    // fixed independent variables.
    std::vector<std::uint8_t> definitional(f.cnf.clause_count(), 0);
    for (const Gate& g : f.gates)
      for (std::uint32_t c = g.first_clause; c < g.first_clause + g.clause_count; ++c) definitional[c] = 1;
    starts_.push_back(0);
    auto add_tracked = [&](std::span<const Literal> clause) {
      const std::size_t mark = lits_.size();
      for (Literal lit : clause) {
        const int v = var_of(lit);
        if (fixed_[v] == -1 || gate_of_[v] >= 0) {
          lits_.push_back(lit);
        } else if ((fixed_[v] == 1) == (lit > 0)) {
          lits_.resize(mark);
          return;
        }
      }
      if (lits_.size() == mark) {
        contradiction_ = true;
        return;
      }
      starts_.push_back(static_cast<std::uint32_t>(lits_.size()));
    };
    for (std::size_t c = 0; c < f.cnf.clause_count(); ++c) {
      if (!definitional[c]) add_tracked(f.cnf.clause(c));
    }
    for (Literal a : f.cnf.assumptions()) {
      if (gate_of_[var_of(a)] >= 0) add_tracked(std::span<const Literal>(&a, 1));
    }
    const std::size_t nc = starts_.size() - 1;

    occ_start_.assign(2 * static_cast<std::size_t>(nv) + 3, 0);
    for (Literal lit : lits_) ++occ_start_[code(lit) + 1];
    for (std::size_t i = 1; i < occ_start_.size(); ++i) occ_start_[i] += occ_start_[i - 1];
    occ_.resize(lits_.size());
    {
      auto fill = occ_start_;
      for (std::size_t c = 0; c < nc; ++c)
        for (std::uint32_t i = starts_[c]; i < starts_[c + 1]; ++i) occ_[fill[code(lits_[i])]++] = static_cast<std::uint32_t>(c);
    }

    // Flip candidates of each clause: free independent variables in the
    // transitive fan-in of its literals.
    std::vector<std::uint32_t> stamp(static_cast<std::size_t>(nv) + 1, 0);
    std::vector<int> stack;
    cand_start_.push_back(0);
    for (std::size_t c = 0; c < nc; ++c) {
      const auto tag = static_cast<std::uint32_t>(c + 1);
      for (std::uint32_t i = starts_[c]; i < starts_[c + 1]; ++i) stack.push_back(var_of(lits_[i]));
      while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        if (stamp[v] == tag) continue;
        stamp[v] = tag;
        if (gate_of_[v] >= 0) {
          const Gate& g = f.gates[gate_of_[v]];
          for (int k = 0; k < arity(g); ++k) stack.push_back(g.inputs[k]);
        } else if (fixed_[v] == -1) {
          cand_.push_back(v);
        }
      }
      cand_start_.push_back(static_cast<std::uint32_t>(cand_.size()));
    }

    true_count_.assign(nc, 0);
    unsat_pos_.assign(nc, 0);
    queued_.assign(f.gates.size(), 0);
    // Gate depth above the independent variables; gates are topologically ordered.
    level_.assign(f.gates.size(), 0);
    int depth = 0;
    for (std::size_t g = 0; g < f.gates.size(); ++g) {
      int level = 0;
      for (int k = 0; k < arity(f.gates[g]); ++k) {
        const int in = gate_of_[f.gates[g].inputs[k]];
        if (in >= 0) level = std::max(level, level_[in] + 1);
      }
      if (level > 255) throw std::invalid_argument("solve: definition chain too deep");
      level_[g] = static_cast<std::uint8_t>(level);
      depth = std::max(depth, level + 1);
    }
    buckets_.resize(depth);
    weight_.resize(64);
    for (std::size_t b = 0; b < weight_.size(); ++b) weight_[b] = std::pow(cfg.cb, -static_cast<double>(b));
  }

  int free_vars() const { return static_cast<int>(free_.size()); }

  bool run(const std::optional<Model>& hint, Clock::time_point start, SolveOutcome& outcome) {
    if (contradiction_) {
      outcome.refuted = true;
      return false;
    }
    std::uint64_t cutoff = cfg_.max_flips;
    std::vector<double> probs;
    std::vector<int> picks;
    for (int t = 0; t < cfg_.tries; ++t) {
      ++outcome.tries;
      initialize(t == 0 ? hint : std::nullopt);
      for (std::uint64_t step = 0; step < cutoff; ++step) {
        if (unsat_.empty()) return true;
        if ((outcome.flips & 0x3FF) == 0 && cfg_.timeout_seconds > 0 &&
            seconds_since(start) > cfg_.timeout_seconds) {
          return false;
        }
        const std::uint32_t c = unsat_[rng_.below(unsat_.size())];
        const std::uint32_t begin = cand_start_[c];
        const std::uint32_t end = cand_start_[c + 1];
        if (begin == end) {
          // Only fixed variables feed this clause, so it stays falsified.
          outcome.refuted = true;
          return false;
        }
        probs.clear();
        picks.clear();
        double sum = 0.0;
        for (std::uint32_t i = begin; i < end; ++i) {
          const int v = cand_[i];
          breaks_ = 0;
          flip(v);
          const bool made = true_count_[c] > 0;
          const std::uint32_t b = breaks_;
          undo();
          if (!made) continue;
          const double w = b < weight_.size() ? weight_[b] : 0.0;
          picks.push_back(v);
          probs.push_back(w);
          sum += w;
        }
        int chosen;
        if (picks.empty() || sum <= 0.0) {
          chosen = cand_[begin + rng_.below(end - begin)];
        } else {
          double x = rng_.uniform() * sum;
          chosen = picks.back();
          for (std::size_t i = 0; i + 1 < picks.size(); ++i) {
            x -= probs[i];
            if (x < 0) {
              chosen = picks[i];
              break;
            }
          }
        }
        flip(chosen);
        ++outcome.flips;
        if (unsat_.size() < outcome.best_unsat) outcome.best_unsat = unsat_.size();
      }
      if (unsat_.empty()) return true;
      if (cfg_.restart_doubling) cutoff *= 2;
    }
    return false;
  }

  Model model() const {
    Model m(f_.cnf.var_count());
    for (int v = 1; v <= f_.cnf.var_count(); ++v) m.set(v, value_[v] != 0);
    return m;
  }

 private:
  static int arity(const Gate& g) { return g.kind == GateKind::kAnd2 ? 2 : 3; }
  static std::size_t code(Literal lit) { return 2 * static_cast<std::size_t>(var_of(lit)) + (lit < 0); }

  bool evaluate(const Gate& g) const {
    const bool a = value_[g.inputs[0]] != 0;
    const bool b = value_[g.inputs[1]] != 0;
    return g.kind == GateKind::kAnd2 ? (a && b) : ((a != b) != (value_[g.inputs[2]] != 0));
  }

  void initialize(const std::optional<Model>& hint) {
    const int nv = f_.cnf.var_count();
    for (int v = 1; v <= nv; ++v) {
      if (gate_of_[v] >= 0) continue;
      if (fixed_[v] != -1) value_[v] = static_cast<std::uint8_t>(fixed_[v]);
      else value_[v] = hint ? static_cast<std::uint8_t>(hint->value(v)) : static_cast<std::uint8_t>(rng_.coin());
    }
    for (const Gate& g : f_.gates) value_[g.output] = evaluate(g) ? 1 : 0;
    unsat_.clear();
    for (std::size_t c = 0; c + 1 < starts_.size(); ++c) {
      std::uint32_t count = 0;
      for (std::uint32_t i = starts_[c]; i < starts_[c + 1]; ++i) {
        const Literal lit = lits_[i];
        count += (value_[var_of(lit)] != 0) == (lit > 0);
      }
      true_count_[c] = count;
      if (count == 0) add_unsat(static_cast<std::uint32_t>(c));
    }
  }

  // Flips v and re-evaluates its fan-out cone level by level, so every gate
  // output changes at most once. Changed variables are journaled for undo().
  void flip(int v) {
    journal_.assign(1, v);
    toggle(v);
    queue_fan_out(v);
    for (std::size_t level = 0; level < buckets_.size(); ++level) {
      auto& bucket = buckets_[level];
      for (std::size_t i = 0; i < bucket.size(); ++i) {
        const std::uint32_t g = bucket[i];
        queued_[g] = 0;
        const Gate& gate = f_.gates[g];
        if (evaluate(gate) != (value_[gate.output] != 0)) {
          journal_.push_back(gate.output);
          toggle(gate.output);
          queue_fan_out(gate.output);
        }
      }
      bucket.clear();
    }
  }

  void undo() {
    for (auto it = journal_.rbegin(); it != journal_.rend(); ++it) toggle(*it);
    journal_.clear();
  }

  void queue_fan_out(int v) {
    for (std::uint32_t i = fan_start_[v]; i < fan_start_[v + 1]; ++i) {
      const std::uint32_t g = fan_[i];
      if (queued_[g]) continue;
      queued_[g] = 1;
      buckets_[level_[g]].push_back(g);
    }
  }

  void toggle(int v) {
    value_[v] ^= 1U;
    const std::size_t now_true = 2 * static_cast<std::size_t>(v) + (value_[v] ? 0 : 1);
    const std::size_t now_false = now_true ^ 1U;
    for (std::uint32_t i = occ_start_[now_true]; i < occ_start_[now_true + 1]; ++i) {
      const std::uint32_t c = occ_[i];
      if (++true_count_[c] == 1) remove_unsat(c);
    }
    for (std::uint32_t i = occ_start_[now_false]; i < occ_start_[now_false + 1]; ++i) {
      const std::uint32_t c = occ_[i];
      if (--true_count_[c] == 0) {
        add_unsat(c);
        ++breaks_;
      }
    }
  }

  void add_unsat(std::uint32_t c) {
    unsat_pos_[c] = static_cast<std::uint32_t>(unsat_.size());
    unsat_.push_back(c);
  }

  void remove_unsat(std::uint32_t c) {
    const std::uint32_t last = unsat_.back();
    unsat_[unsat_pos_[c]] = last;
    unsat_pos_[last] = unsat_pos_[c];
    unsat_.pop_back();
  }

  const CnfFormula& f_;
  const SolverConfig& cfg_;
  Rng rng_;
  std::vector<std::uint8_t> value_;
  std::vector<int> gate_of_;
  std::vector<std::int8_t> fixed_;
  std::vector<int> free_;
  std::vector<std::uint32_t> fan_start_, fan_;
  std::vector<Literal> lits_;
  std::vector<std::uint32_t> starts_;
  std::vector<std::uint32_t> occ_start_, occ_;
  std::vector<std::uint32_t> cand_start_;
  std::vector<int> cand_;
  std::vector<std::uint32_t> true_count_;
  std::vector<std::uint32_t> unsat_, unsat_pos_;
  std::vector<double> weight_;
  std::vector<int> journal_;
  std::vector<std::uint8_t> level_;
  std::vector<std::vector<std::uint32_t>> buckets_;
  std::vector<std::uint8_t> queued_;
  std::uint32_t breaks_ = 0;
  bool contradiction_ = false;
};

}  // namespace

SolveOutcome solve(const Cnf& cnf, const SolverConfig& cfg) {
  cfg.validate();
  const auto start = Clock::now();
  SolveOutcome outcome;
  const Propagation prop = propagate_units(cnf);
  outcome.propagated = prop.assigned;
  if (prop.conflict) {
    outcome.refuted = true;
    outcome.seconds = seconds_since(start);
    return outcome;
  }
  const Reduced reduced = reduce(cnf, prop);
  ProbSat search(reduced, cfg);
  const bool found = search.run(cfg.hint, start, outcome);
  outcome.seconds = seconds_since(start);
  if (!found) return outcome;

  Model model(cnf.var_count());
  for (int v = 1; v <= cnf.var_count(); ++v) {
    if (prop.value[v] != -1) model.set(v, prop.value[v] == 1);
  }
  for (int d = 0; d < reduced.vars; ++d) model.set(reduced.original[d], search.value(d));
  if (!check_model(cnf, model)) {
    throw std::logic_error("local search produced a model that fails the clause check");
  }
  outcome.status = SolveStatus::kSat;
  outcome.model = std::move(model);
  return outcome;
}

SolveOutcome solve(const CnfFormula& f, const SolverConfig& cfg) {
  if (!cfg.dependency_aware || f.gates.empty()) return solve(f.cnf, cfg);
  cfg.validate();
  const auto start = Clock::now();
  SolveOutcome outcome;
  const Propagation prop = propagate_units(f.cnf);
  outcome.propagated = prop.assigned;
  if (prop.conflict) {
    outcome.refuted = true;
    outcome.seconds = seconds_since(start);
    return outcome;
  }
  DependencySearch search(f, prop, cfg);
  const bool found = search.run(cfg.hint, start, outcome);
  outcome.seconds = seconds_since(start);
  if (!found) return outcome;
  Model model = search.model();
  if (!check_model(f.cnf, model)) {
    throw std::logic_error("local search produced a model that fails the clause check");
  }
  outcome.status = SolveStatus::kSat;
  outcome.model = std::move(model);
  return outcome;
}

SolveOutcome solve_external(const Cnf& cnf, const std::string& command) {
  const auto start = Clock::now();
  namespace fs = std::filesystem;
  std::string pattern = (fs::temp_directory_path() / "brent-XXXXXX.cnf").string();
  const int fd = ::mkstemps(pattern.data(), 4);
  if (fd < 0) throw std::runtime_error("cannot create temporary DIMACS file");
  const std::string text = to_dimacs(cnf);
  const bool wrote = ::write(fd, text.data(), text.size()) == static_cast<ssize_t>(text.size());
  ::close(fd);
  struct Cleanup {
    std::string path;
    ~Cleanup() { std::error_code ec; fs::remove(path, ec); }
  } cleanup{pattern};
  if (!wrote) throw std::runtime_error("cannot write temporary DIMACS file");

  const std::string full = command + " '" + pattern + "'";
  FILE* pipe = ::popen(full.c_str(), "r");
  if (!pipe) throw std::runtime_error("cannot run external solver: " + command);
  std::string output;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) output.append(buf.data(), got);
  ::pclose(pipe);

  SolveOutcome outcome;
  outcome.seconds = seconds_since(start);
  if (output.find("s SATISFIABLE") == std::string::npos) return outcome;
  Model model = parse_model(output, cnf.var_count());
  if (!check_model(cnf, model)) {
    throw IntegrityError("external solver returned a model that violates the formula");
  }
  outcome.status = SolveStatus::kSat;
  outcome.model = std::move(model);
  return outcome;
}

}  // namespace brent
