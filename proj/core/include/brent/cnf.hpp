#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "brent/error.hpp"

namespace brent {

/// DIMACS-style literal: +v / -v for variable v >= 1.
using Literal = int;

inline int var_of(Literal lit) { return lit < 0 ? -lit : lit; }

/// Total assignment indexed by variable id (index 0 unused).
class Model {
 public:
  Model() = default;
  explicit Model(int var_count) : values_(static_cast<std::size_t>(var_count) + 1, 0) {}

  int var_count() const { return static_cast<int>(values_.size()) - 1; }
  bool value(int var) const { return values_[var] != 0; }
  void set(int var, bool v) { values_[var] = v ? 1 : 0; }
  bool satisfies(Literal lit) const { return value(var_of(lit)) == (lit > 0); }

  friend bool operator==(const Model&, const Model&) = default;

 private:
  std::vector<std::uint8_t> values_;
};

/// Flat clause database plus a list of fixed literals (assumptions). The
/// assumptions are part of the formula; they are kept apart so that solvers
/// can treat them as frozen and so they can be counted separately.
class Cnf {
 public:
  int var_count() const { return var_count_; }
  std::size_t clause_count() const { return starts_.size(); }
  std::size_t literal_count() const { return lits_.size(); }

  std::span<const Literal> clause(std::size_t i) const {
    const std::size_t begin = starts_[i];
    const std::size_t end = i + 1 < starts_.size() ? starts_[i + 1] : lits_.size();
    return {lits_.data() + begin, end - begin};
  }

  const std::vector<Literal>& assumptions() const { return assumptions_; }

  int new_var() { return ++var_count_; }
  void reserve_vars(int count);

  /// Throws std::invalid_argument on an empty clause, a zero literal, or a
  /// literal above var_count().
  void add_clause(std::span<const Literal> clause);
  void add_clause(std::initializer_list<Literal> clause) {
    add_clause(std::span<const Literal>(clause.begin(), clause.size()));
  }
  void add_assumption(Literal lit);
  void clear_assumptions() { assumptions_.clear(); }

 private:
  int var_count_ = 0;
  std::vector<Literal> lits_;
  std::vector<std::size_t> starts_;
  std::vector<Literal> assumptions_;
};

/// True iff every clause and every assumption has a satisfied literal.
bool check_model(const Cnf& cnf, const Model& model);

/// Index of the first falsified clause, or clause_count() + index of the
/// first falsified assumption, or -1.
long first_violation(const Cnf& cnf, const Model& model);

/// Unit propagation over clauses and assumptions.
struct Propagation {
  bool conflict = false;
  /// -1 unassigned, 0 false, 1 true; indexed by variable id.
  std::vector<std::int8_t> value;
  int assigned = 0;
};

Propagation propagate_units(const Cnf& cnf);

/// "p cnf V C" followed by one 0-terminated clause per line; assumptions come
/// last as unit clauses.
std::string to_dimacs(const Cnf& cnf);

/// Reads DIMACS CNF; every clause becomes a regular clause (no assumptions).
Cnf parse_dimacs(std::string_view text);

/// Reads solver output: "v" lines carry literals, "s"/"c" lines are skipped.
/// Variables not mentioned default to false. Throws ParseError on malformed
/// input or when a literal exceeds var_count.
Model parse_model(std::string_view text, int var_count);

/// "v" lines for a model, terminated by "v 0".
std::string render_model(const Model& model);

}  // namespace brent
