#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "brent/cnf.hpp"
#include "brent/scheme.hpp"

namespace brent {

/// Coefficient variable: cell (row, col) of matrix `role` in summand `summand`
/// (all 0-based).
struct BaseVar {
  Role role = Role::kAlpha;
  int summand = 0;
  int row = 0;
  int col = 0;

  friend bool operator==(const BaseVar&, const BaseVar&) = default;
};

/// Numbering of the 3 m n^2 coefficient variables as ids 1..3 m n^2:
/// role-major, then summand, then row-major cell.
class BaseVarMap {
 public:
  BaseVarMap() = default;
  BaseVarMap(int n, int m);

  int n() const { return n_; }
  int m() const { return m_; }
  int size() const { return 3 * m_ * n_ * n_; }
  bool contains(int var) const { return var >= 1 && var <= size(); }

  int id(Role role, int summand, int row, int col) const {
    return 1 + ((static_cast<int>(role) * m_ + summand) * n_ + row) * n_ + col;
  }
  int id(const BaseVar& b) const { return id(b.role, b.summand, b.row, b.col); }
  /// Throws std::out_of_range for a non-base variable.
  BaseVar lookup(int var) const;

  /// "<id> <role> <summand> <row> <col>" per line, 1-based.
  std::string render() const;
  static BaseVarMap parse(std::string_view text);

 private:
  int n_ = 0;
  int m_ = 0;
};

enum class GateKind : std::uint8_t { kAnd2, kXor3 };

/// Tseitin definition output <-> f(inputs); the And2 gate ignores inputs[2].
/// Its clauses are cnf.clause(first_clause .. first_clause + clause_count - 1).
struct Gate {
  GateKind kind;
  int output;
  std::array<int, 3> inputs;
  std::uint32_t first_clause = 0;
  std::uint32_t clause_count = 0;
};

/// Brent equations for (n, m) in CNF, together with the bookkeeping needed
/// to decode models and to attach further constraints.
struct CnfFormula {
  int n = 0;
  int m = 0;
  BaseVarMap base;
  Cnf cnf;
  /// Definitions in topological order.
  std::vector<Gate> gates;
  /// cube_vars[eq * m + l] is the variable for alpha*beta*gamma of equation eq in summand l.
  std::vector<int> cube_vars;
  /// Number of parity constraints (one per Brent equation).
  std::size_t parity_groups = 0;
  int and_vars = 0;
  int cube_var_count = 0;
  int xor_vars = 0;
  /// Type-3 terms forced into each summand by hardcode_pairing; empty otherwise.
  std::vector<std::vector<TermIndex>> hardcoded_core;

  int cube_var(std::size_t equation, int summand) const {
    return cube_vars[equation * static_cast<std::size_t>(m) + summand];
  }
};

BaseVarMap build_base_map(int n, int m);

/// Encodes all n^6 Brent equations. Each cube alpha*beta*gamma becomes
/// u <-> (alpha & beta) and v <-> (u & gamma), with u shared across the n^2
/// equations that use the same (alpha, beta) pair. The parity of v_1..v_m is
/// split as w <-> (v1 ^ v2 ^ v3) followed by the remaining list with w
/// appended, until at most three literals remain; those get the direct
/// parity clauses.
CnfFormula encode(int n, int m);

/// Adds fixed literals on base variables. Throws std::invalid_argument for a
/// literal outside the base range.
CnfFormula assume_base(const CnfFormula& f, std::span<const Literal> literals);

/// Fixes floor(fraction * 3 m n^2) base variables, chosen uniformly without
/// replacement, to their values in s.
CnfFormula fix_from_scheme(const CnfFormula& f, const Scheme& s, double fraction,
                           std::uint64_t seed);

/// Number of base variables fix_from_scheme fixes.
int fixed_count(int base_size, double fraction);

/// Literals that set every base variable to its value in s.
std::vector<Literal> scheme_literals(const BaseVarMap& base, const Scheme& s);

/// Extends an assignment of the base variables (other entries ignored) by
/// evaluating every definition gate. Variables that are neither base nor
/// gate outputs keep their input value.
Model extend_assignment(const CnfFormula& f, const Model& base_values);

/// Reads the scheme off the base variables. Throws IntegrityError when the
/// model does not satisfy f.
Scheme decode(const CnfFormula& f, const Model& model);

/// Decodes without checking the formula.
Scheme read_scheme(const BaseVarMap& base, const Model& model);

}  // namespace brent
