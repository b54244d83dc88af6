#include "oracles.hpp"

#include <random>

namespace brent::testing {

EncodingSize expected_encoding_size(int n, int m) {
  const long long n2 = static_cast<long long>(n) * n;
  const long long equations = n2 * n2 * n2;
  // A parity over L >= 4 literals becomes one 3-input chunk plus a parity over
  // L - 2 literals; the terminal width is 3 for odd m >= 3 and 2 for even m >= 4.
  const long long chunks = m >= 4 ? (m - 2) / 2 : 0;
  const long long width = m - 2 * chunks;
  EncodingSize e;
  e.base = 3LL * m * n2;
  e.and_vars = static_cast<long long>(m) * n2 * n2;
  e.cube_vars = static_cast<long long>(m) * equations;
  e.xor_vars = chunks * equations;
  e.vars = e.base + e.and_vars + e.cube_vars + e.xor_vars;
  e.clauses = 3 * e.and_vars + 3 * e.cube_vars + 8 * e.xor_vars + equations * (1LL << (width - 1));
  return e;
}

std::vector<int> production_counts(const Scheme& s) {
  const int n = s.n;
  const int cells = n * n;
  std::vector<int> counts(static_cast<std::size_t>(cells) * cells * cells, 0);
  for (const Summand& sm : s.summands) {
    for (int a = 0; a < cells; ++a) {
      if (!sm.alpha.get(a / n, a % n)) continue;
      for (int b = 0; b < cells; ++b) {
        if (!sm.beta.get(b / n, b % n)) continue;
        for (int c = 0; c < cells; ++c) {
          if (sm.gamma.get(c / n, c % n)) ++counts[(static_cast<std::size_t>(a) * cells + b) * cells + c];
        }
      }
    }
  }
  return counts;
}

bool valid_by_expansion(const Scheme& s) {
  const int n = s.n;
  const int cells = n * n;
  const auto counts = production_counts(s);
  for (int a = 0; a < cells; ++a)
    for (int b = 0; b < cells; ++b)
      for (int c = 0; c < cells; ++c) {
        // a = (i1, i2), b = (j1, j2), c = (k1, k2); type 3 iff i2 = j1, j2 = k1, k2 = i1.
        const bool type3 = a % n == b / n && b % n == c / n && c % n == a / n;
        const int count = counts[(static_cast<std::size_t>(a) * cells + b) * cells + c];
        if ((count % 2 == 1) != type3) return false;
      }
  return true;
}

Scheme random_scheme(int n, int m, std::uint64_t seed, double density) {
  std::mt19937_64 gen(seed);
  std::bernoulli_distribution coin(density);
  Scheme s(n, m, "random");
  for (Summand& sm : s.summands)
    for (Role role : kRoles)
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
          if (coin(gen)) sm.matrix(role).set(r, c);
  return s;
}

Scheme with_flipped_bit(const Scheme& s, int role, int summand, int row, int col) {
  Scheme out = s;
  out.summands[summand].matrix(static_cast<Role>(role)).flip(row, col);
  return out;
}

bool satisfiable(const Cnf& cnf) {
  const Propagation p = propagate_units(cnf);
  if (p.conflict) return false;
  // Polarity of each open variable over the clauses not yet satisfied.
  std::vector<int> polarity(cnf.var_count() + 1, 0);
  for (std::size_t i = 0; i < cnf.clause_count(); ++i) {
    bool sat = false;
    for (Literal lit : cnf.clause(i)) sat = sat || p.value[var_of(lit)] == (lit > 0 ? 1 : 0);
    if (sat) continue;
    for (Literal lit : cnf.clause(i))
      if (p.value[var_of(lit)] < 0) polarity[var_of(lit)] |= lit > 0 ? 1 : 2;
  }
  Cnf reduced = cnf;
  bool pure = false;
  for (int v = 1; v <= cnf.var_count(); ++v) {
    if (polarity[v] == 1 || polarity[v] == 2) {
      reduced.add_assumption(polarity[v] == 1 ? v : -v);
      pure = true;
    }
  }
  if (pure) return satisfiable(reduced);
  for (int v = 1; v <= cnf.var_count(); ++v) {
    if (p.value[v] >= 0 || polarity[v] == 0) continue;
    for (Literal lit : {-v, v}) {
      Cnf branch = cnf;
      branch.add_assumption(lit);
      if (satisfiable(branch)) return true;
    }
    return false;
  }
  return true;
}

Cnf clause_suffix(const Cnf& cnf, std::size_t first, const std::vector<Literal>& fixed) {
  Cnf out;
  out.reserve_vars(cnf.var_count());
  for (std::size_t i = first; i < cnf.clause_count(); ++i) out.add_clause(cnf.clause(i));
  for (Literal lit : fixed) out.add_assumption(lit);
  return out;
}

}  // namespace brent::testing
