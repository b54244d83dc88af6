#include "brent/encoder.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "brent/rng.hpp"

namespace brent {

BaseVarMap::BaseVarMap(int n, int m) : n_(n), m_(m) {
  if (n < 1 || n > kMaxDimension || m < 1) throw std::invalid_argument("BaseVarMap: bad (n, m)");
}

BaseVar BaseVarMap::lookup(int var) const {
  if (!contains(var)) throw std::out_of_range("BaseVarMap: not a base variable");
  int rest = var - 1;
  BaseVar b;
  b.col = rest % n_;
  rest /= n_;
  b.row = rest % n_;
  rest /= n_;
  b.summand = rest % m_;
  b.role = static_cast<Role>(rest / m_);
  return b;
}

std::string BaseVarMap::render() const {
  std::string out;
  out.reserve(static_cast<std::size_t>(size()) * 20);
  for (int v = 1; v <= size(); ++v) {
    const BaseVar b = lookup(v);
    out += std::to_string(v) + ' ' + role_name(b.role) + ' ' + std::to_string(b.summand + 1) + ' ' +
           std::to_string(b.row + 1) + ' ' + std::to_string(b.col + 1) + '\n';
  }
  return out;
}

BaseVarMap BaseVarMap::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<BaseVar> entries;
  int line_no = 0;
  int n = 0, m = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    int id = 0, l = 0, r = 0, c = 0;
    std::string role;
    if (!(ls >> id)) continue;
    if (!(ls >> role >> l >> r >> c) || l < 1 || r < 1 || c < 1) {
      throw ParseError("bad variable map entry", line_no);
    }
    if (id != static_cast<int>(entries.size()) + 1) throw ParseError("variable ids must be consecutive", line_no);
    BaseVar b;
    if (role == "alpha") b.role = Role::kAlpha;
    else if (role == "beta") b.role = Role::kBeta;
    else if (role == "gamma") b.role = Role::kGamma;
    else throw ParseError("unknown role '" + role + "'", line_no);
    b.summand = l - 1;
    b.row = r - 1;
    b.col = c - 1;
    n = std::max({n, r, c});
    m = std::max(m, l);
    entries.push_back(b);
  }
  if (entries.empty()) throw ParseError("empty variable map", line_no);
  BaseVarMap map(n, m);
  if (map.size() != static_cast<int>(entries.size())) throw ParseError("incomplete variable map", line_no);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (map.lookup(static_cast<int>(i) + 1) != entries[i]) {
      throw ParseError("variable map does not follow the standard numbering", static_cast<int>(i) + 1);
    }
  }
  return map;
}

BaseVarMap build_base_map(int n, int m) { return BaseVarMap(n, m); }

namespace {

void add_and_definition(Cnf& cnf, int out, int x, int y) {
  cnf.add_clause({-out, x});
  cnf.add_clause({-out, y});
  cnf.add_clause({out, -x, -y});
}

// Forbids every assignment of `vars` whose parity differs from `parity`.
void add_parity(Cnf& cnf, std::span<const int> vars, bool parity) {
  const std::size_t k = vars.size();
  std::vector<Literal> clause(k);
  for (std::uint32_t mask = 0; mask < (1U << k); ++mask) {
    const bool odd = std::popcount(mask) & 1U;
    if (odd == parity) continue;
    for (std::size_t i = 0; i < k; ++i) {
      // The clause rejects exactly the assignment encoded by mask.
      clause[i] = ((mask >> i) & 1U) ? -vars[i] : vars[i];
    }
    cnf.add_clause(clause);
  }
}

std::uint32_t clause_mark(const CnfFormula& f) {
  return static_cast<std::uint32_t>(f.cnf.clause_count());
}

}  // namespace

CnfFormula encode(int n, int m) {
  CnfFormula f;
  f.n = n;
  f.m = m;
  f.base = BaseVarMap(n, m);
  f.cnf.reserve_vars(f.base.size());

  const int cells = n * n;
  const std::size_t equations = static_cast<std::size_t>(cells) * cells * cells;
  f.parity_groups = equations;

  // u-variables in first-use order; index (l, alpha cell, beta cell).
  std::vector<int> and_var(static_cast<std::size_t>(m) * cells * cells, 0);
  for (std::size_t eq = 0; eq < equations; ++eq) {
    const TermIndex t = term_from_equation(eq, n);
    const int acell = t.i1 * n + t.i2;
    const int bcell = t.j1 * n + t.j2;
    for (int l = 0; l < m; ++l) {
      int& u = and_var[(static_cast<std::size_t>(l) * cells + acell) * cells + bcell];
      if (u != 0) continue;
      u = f.cnf.new_var();
      ++f.and_vars;
      const int x = f.base.id(Role::kAlpha, l, t.i1, t.i2);
      const int y = f.base.id(Role::kBeta, l, t.j1, t.j2);
      f.gates.push_back({GateKind::kAnd2, u, {x, y, 0}, clause_mark(f), 3});
      add_and_definition(f.cnf, u, x, y);
    }
  }

  f.cube_vars.resize(equations * m);
  for (std::size_t eq = 0; eq < equations; ++eq) {
    const TermIndex t = term_from_equation(eq, n);
    const int acell = t.i1 * n + t.i2;
    const int bcell = t.j1 * n + t.j2;
    for (int l = 0; l < m; ++l) {
      const int u = and_var[(static_cast<std::size_t>(l) * cells + acell) * cells + bcell];
      const int z = f.base.id(Role::kGamma, l, t.k1, t.k2);
      const int v = f.cnf.new_var();
      ++f.cube_var_count;
      f.cube_vars[eq * m + l] = v;
      f.gates.push_back({GateKind::kAnd2, v, {u, z, 0}, clause_mark(f), 3});
      add_and_definition(f.cnf, v, u, z);
    }
  }

  std::vector<int> pending;
  for (std::size_t eq = 0; eq < equations; ++eq) {
    const bool rhs = term_type(term_from_equation(eq, n), n) == 3;
    pending.assign(f.cube_vars.begin() + static_cast<std::ptrdiff_t>(eq * m),
                   f.cube_vars.begin() + static_cast<std::ptrdiff_t>((eq + 1) * m));
    std::size_t head = 0;
    while (pending.size() - head >= 4) {
      const int w = f.cnf.new_var();
      ++f.xor_vars;
      const std::array<int, 4> chunk = {pending[head], pending[head + 1], pending[head + 2], w};
      f.gates.push_back({GateKind::kXor3, w, {chunk[0], chunk[1], chunk[2]}, clause_mark(f), 8});
      add_parity(f.cnf, chunk, false);
      head += 3;
      pending.push_back(w);
    }
    add_parity(f.cnf, std::span<const int>(pending).subspan(head), rhs);
  }
  return f;
}

CnfFormula assume_base(const CnfFormula& f, std::span<const Literal> literals) {
  for (Literal lit : literals) {
    if (!f.base.contains(var_of(lit))) throw std::invalid_argument("assume_base: not a base literal");
  }
  CnfFormula out = f;
  for (Literal lit : literals) out.cnf.add_assumption(lit);
  return out;
}

int fixed_count(int base_size, double fraction) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw std::invalid_argument("fraction must lie in [0, 1]");
  // The epsilon keeps exact products such as 2/3 * 621 from rounding down.
  return std::min(base_size, static_cast<int>(std::floor(fraction * base_size + 1e-9)));
}

std::vector<Literal> scheme_literals(const BaseVarMap& base, const Scheme& s) {
  if (s.n != base.n() || s.m() != base.m()) throw std::invalid_argument("scheme shape does not match formula");
  std::vector<Literal> lits;
  lits.reserve(static_cast<std::size_t>(base.size()));
  for (int v = 1; v <= base.size(); ++v) {
    const BaseVar b = base.lookup(v);
    lits.push_back(s.summands[b.summand].matrix(b.role).get(b.row, b.col) ? v : -v);
  }
  return lits;
}

CnfFormula fix_from_scheme(const CnfFormula& f, const Scheme& s, double fraction,
                           std::uint64_t seed) {
  const int count = fixed_count(f.base.size(), fraction);
  const auto lits = scheme_literals(f.base, s);
  std::vector<int> ids(lits.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
  Rng rng(seed);
  // Partial Fisher-Yates: the first `count` slots are a uniform sample.
  for (int i = 0; i < count; ++i) {
    const auto j = i + static_cast<int>(rng.below(ids.size() - i));
    std::swap(ids[i], ids[j]);
  }
  std::sort(ids.begin(), ids.begin() + count);
  std::vector<Literal> chosen;
  chosen.reserve(count);
  for (int i = 0; i < count; ++i) chosen.push_back(lits[ids[i]]);
  return assume_base(f, chosen);
}

Model extend_assignment(const CnfFormula& f, const Model& base_values) {
  Model out(f.cnf.var_count());
  const int limit = std::min(base_values.var_count(), f.cnf.var_count());
  for (int v = 1; v <= limit; ++v) out.set(v, base_values.value(v));
  for (const Gate& g : f.gates) {
    const bool a = out.value(g.inputs[0]);
    const bool b = out.value(g.inputs[1]);
    out.set(g.output, g.kind == GateKind::kAnd2 ? (a && b) : (a != b) != out.value(g.inputs[2]));
  }
  return out;
}

Scheme read_scheme(const BaseVarMap& base, const Model& model) {
  if (model.var_count() < base.size()) throw std::invalid_argument("model is shorter than the base map");
  Scheme s(base.n(), base.m());
  for (int v = 1; v <= base.size(); ++v) {
    if (!model.value(v)) continue;
    const BaseVar b = base.lookup(v);
    s.summands[b.summand].matrix(b.role).set(b.row, b.col);
  }
  return s;
}

Scheme decode(const CnfFormula& f, const Model& model) {
  const long bad = first_violation(f.cnf, model);
  if (bad >= 0) {
    throw IntegrityError("model violates clause " + std::to_string(bad) + " of the formula");
  }
  return read_scheme(f.base, model);
}

}  // namespace brent
