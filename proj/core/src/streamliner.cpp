#include "brent/streamliner.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "brent/error.hpp"
#include "brent/rng.hpp"

namespace brent {

void Pairing::validate() const {
  if (n < 1 || n > kMaxDimension) throw std::invalid_argument("Pairing: bad dimension");
  std::set<TermIndex> seen;
  for (const auto& slot : slots) {
    if (slot.size() > 2) throw std::invalid_argument("Pairing: more than two terms in one summand");
    for (const TermIndex& t : slot) {
      if (term_type(t, n) != 3) throw std::invalid_argument("Pairing: " + t.to_string() + " is not type 3");
      if (!seen.insert(t).second) throw std::invalid_argument("Pairing: " + t.to_string() + " assigned twice");
    }
  }
  if (seen.size() != static_cast<std::size_t>(n * n * n)) {
    throw std::invalid_argument("Pairing: not every type-3 term is assigned");
  }
}

std::string Pairing::render() const {
  std::string out;
  for (int l = 0; l < m(); ++l) {
    out += std::to_string(l + 1) + ":";
    for (const TermIndex& t : slots[l]) out += " " + t.to_string();
    out += "\n";
  }
  return out;
}

namespace {

TermIndex parse_term(const std::string& word, int line) {
  static constexpr char kLetters[] = {'a', 'b', 'c'};
  if (word.size() != 9) throw ParseError("malformed term '" + word + "'", line);
  int idx[6];
  for (int f = 0; f < 3; ++f) {
    const char* p = word.c_str() + 3 * f;
    if (p[0] != kLetters[f] || !std::isdigit(static_cast<unsigned char>(p[1])) ||
        !std::isdigit(static_cast<unsigned char>(p[2])) || p[1] == '0' || p[2] == '0') {
      throw ParseError("malformed term '" + word + "'", line);
    }
    idx[2 * f] = p[1] - '1';
    idx[2 * f + 1] = p[2] - '1';
  }
  return {idx[0], idx[1], idx[2], idx[3], idx[4], idx[5]};
}

}  // namespace

Pairing Pairing::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  Pairing p;
  int line = 0;
  std::size_t total = 0;
  while (std::getline(in, raw)) {
    ++line;
    raw = raw.substr(0, raw.find('#'));
    std::istringstream ls(raw);
    std::string label;
    if (!(ls >> label)) continue;
    if (label.back() != ':' || std::stoi(label) != p.m() + 1) {
      throw ParseError("expected '" + std::to_string(p.m() + 1) + ":'", line);
    }
    std::vector<TermIndex> slot;
    for (std::string word; ls >> word;) slot.push_back(parse_term(word, line));
    std::sort(slot.begin(), slot.end());
    total += slot.size();
    p.slots.push_back(std::move(slot));
  }
  if (p.slots.empty()) throw ParseError("empty pairing", line);
  p.n = static_cast<int>(std::lround(std::cbrt(static_cast<double>(total))));
  try {
    p.validate();
  } catch (const std::exception& e) {
    throw ParseError(e.what(), line);
  }
  return p;
}

std::vector<int> Pairing::signature() const {
  std::vector<int> sig;
  for (const auto& slot : slots) {
    if (slot.size() >= 2) sig.push_back(static_cast<int>(slot.size()));
  }
  std::sort(sig.begin(), sig.end());
  return sig;
}

Pairing random_pairing(int n, int m, std::uint64_t seed) {
  const int terms_total = n * n * n;
  if (m < 1 || m > terms_total || terms_total > 2 * m) {
    throw std::invalid_argument("random_pairing: need m <= n^3 <= 2m");
  }
  const int pairs = terms_total - m;
  Rng rng(seed);
  auto terms = enumerate_type3(n);
  rng.shuffle(terms.begin(), terms.end());
  std::vector<std::vector<TermIndex>> groups;
  groups.reserve(m);
  for (int i = 0; i < pairs; ++i) groups.push_back({terms[2 * i], terms[2 * i + 1]});
  for (int i = 2 * pairs; i < terms_total; ++i) groups.push_back({terms[i]});
  rng.shuffle(groups.begin(), groups.end());
  for (auto& g : groups) std::sort(g.begin(), g.end());
  return Pairing{n, std::move(groups)};
}

Pairing pairing_from_core(const Scheme& s) {
  Pairing p{s.n, core(s)};
  p.validate();
  return p;
}

bool core_matches(const Scheme& s, const Pairing& p) {
  return s.n == p.n && core(s) == p.slots;
}

namespace {

std::array<int, 3> term_vars(const BaseVarMap& base, const TermIndex& t, int summand) {
  return {base.id(Role::kAlpha, summand, t.i1, t.i2), base.id(Role::kBeta, summand, t.j1, t.j2),
          base.id(Role::kGamma, summand, t.k1, t.k2)};
}

void add_block(Cnf& cnf, const std::array<int, 3>& vars) {
  cnf.add_clause({-vars[0], -vars[1], -vars[2]});
}

}  // namespace

CnfFormula hardcode_pairing(const CnfFormula& f, const Pairing& p, bool block_extra) {
  if (p.n != f.n || p.m() != f.m) throw std::invalid_argument("hardcode_pairing: shape mismatch");
  p.validate();
  CnfFormula out = f;
  for (int l = 0; l < p.m(); ++l) {
    for (const TermIndex& t : p.slots[l]) {
      for (int v : term_vars(f.base, t, l)) out.cnf.add_assumption(v);
    }
  }
  if (block_extra) {
    for (const TermIndex& t : enumerate_type3(f.n)) {
      for (int l = 0; l < f.m; ++l) {
        const auto& slot = p.slots[l];
        if (std::find(slot.begin(), slot.end(), t) == slot.end()) {
          add_block(out.cnf, term_vars(f.base, t, l));
        }
      }
    }
  }
  out.hardcoded_core = p.slots;
  return out;
}

CnfFormula block_type3_in_summand(const CnfFormula& f, int summand) {
  if (summand < 0 || summand >= f.m) throw std::out_of_range("block_type3_in_summand: bad summand");
  CnfFormula out = f;
  for (const TermIndex& t : enumerate_type3(f.n)) add_block(out.cnf, term_vars(f.base, t, summand));
  return out;
}

namespace {

// Cells (row-major) zeroed by each pattern of the first matrix: two rows, two
// columns, or one row and one column.
std::vector<std::vector<int>> zero_patterns(int n) {
  std::vector<std::vector<int>> out;
  auto row = [n](int r, std::vector<int>& cells) {
    for (int c = 0; c < n; ++c) cells.push_back(r * n + c);
  };
  auto col = [n](int c, std::vector<int>& cells) {
    for (int r = 0; r < n; ++r) cells.push_back(r * n + c);
  };
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      std::vector<int> cells;
      row(a, cells);
      row(b, cells);
      out.push_back(cells);
    }
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      std::vector<int> cells;
      col(a, cells);
      col(b, cells);
      out.push_back(cells);
    }
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      std::vector<int> cells;
      row(r, cells);
      col(c, cells);
      std::sort(cells.begin(), cells.end());
      cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
      out.push_back(cells);
    }
  return out;
}

bool has_zero_pattern(const BitMatrix& m) {
  for (const auto& cells : zero_patterns(m.dim())) {
    if (std::none_of(cells.begin(), cells.end(),
                     [&](int cell) { return m.get(cell / m.dim(), cell % m.dim()); })) {
      return true;
    }
  }
  return false;
}

}  // namespace

CnfFormula streamline_single_summand(const CnfFormula& f, int summand) {
  if (summand < 0 || summand >= f.m) throw std::out_of_range("streamline_single_summand: bad summand");
  if (f.hardcoded_core.size() != static_cast<std::size_t>(f.m) ||
      f.hardcoded_core[summand].size() != 1) {
    throw std::invalid_argument("streamline_single_summand: summand does not hold exactly one hardcoded term");
  }
  CnfFormula out = f;
  Cnf& cnf = out.cnf;
  const int n = f.n;
  const int cells = n * n;
  const auto patterns = zero_patterns(n);
  auto cell_var = [&](int role, int cell) {
    return f.base.id(static_cast<Role>(role), summand, cell / n, cell % n);
  };

  // pattern_sel[X][P]: matrix X has every cell of pattern P zero.
  // single_sel[Y][c]: matrix Y is zero outside cell c.
  std::array<std::vector<int>, 3> pattern_sel, single_sel;
  for (int x = 0; x < 3; ++x) {
    for (const auto& zeroed : patterns) {
      const int z = cnf.new_var();
      pattern_sel[x].push_back(z);
      for (int cell : zeroed) cnf.add_clause({-z, -cell_var(x, cell)});
    }
    for (int keep = 0; keep < cells; ++keep) {
      const int e = cnf.new_var();
      single_sel[x].push_back(e);
      for (int cell = 0; cell < cells; ++cell) {
        if (cell != keep) cnf.add_clause({-e, -cell_var(x, cell)});
      }
    }
  }

  std::vector<int> role_sel;
  std::vector<Literal> clause;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) {
      if (x == y) continue;
      const int s = cnf.new_var();
      role_sel.push_back(s);
      clause.assign(1, -s);
      clause.insert(clause.end(), pattern_sel[x].begin(), pattern_sel[x].end());
      cnf.add_clause(clause);
      clause.assign(1, -s);
      clause.insert(clause.end(), single_sel[y].begin(), single_sel[y].end());
      cnf.add_clause(clause);
    }
  cnf.add_clause(role_sel);
  for (std::size_t a = 0; a < role_sel.size(); ++a)
    for (std::size_t b = a + 1; b < role_sel.size(); ++b) cnf.add_clause({-role_sel[a], -role_sel[b]});
  return out;
}

CnfFormula streamline_singletons(const CnfFormula& f) {
  if (f.hardcoded_core.empty()) throw std::invalid_argument("streamline_singletons: no hardcoded pairing");
  CnfFormula out = f;
  for (int l = 0; l < f.m; ++l) {
    if (f.hardcoded_core[l].size() == 1) out = streamline_single_summand(out, l);
  }
  return out;
}

void add_at_most(Cnf& cnf, std::span<const int> vars, int k) {
  const int size = static_cast<int>(vars.size());
  if (k < 0) throw std::invalid_argument("add_at_most: negative bound");
  if (k >= size) return;
  if (size <= 8) {
    std::vector<Literal> clause;
    for (std::uint32_t mask = 0; mask < (1U << size); ++mask) {
      if (std::popcount(mask) != k + 1) continue;
      clause.clear();
      for (int i = 0; i < size; ++i) {
        if ((mask >> i) & 1U) clause.push_back(-vars[i]);
      }
      cnf.add_clause(clause);
    }
    return;
  }
  if (k == 0) {
    for (int v : vars) cnf.add_clause({-v});
    return;
  }
  // count[i][j]: at least j + 1 of vars[0..i] are true.
  std::vector<std::vector<int>> count(size - 1, std::vector<int>(k));
  for (auto& row : count)
    for (int& v : row) v = cnf.new_var();
  cnf.add_clause({-vars[0], count[0][0]});
  for (int j = 1; j < k; ++j) cnf.add_clause({-count[0][j]});
  for (int i = 1; i < size - 1; ++i) {
    cnf.add_clause({-vars[i], count[i][0]});
    cnf.add_clause({-count[i - 1][0], count[i][0]});
    for (int j = 1; j < k; ++j) {
      cnf.add_clause({-vars[i], -count[i - 1][j - 1], count[i][j]});
      cnf.add_clause({-count[i - 1][j], count[i][j]});
    }
    cnf.add_clause({-vars[i], -count[i - 1][k - 1]});
  }
  cnf.add_clause({-vars[size - 1], -count[size - 2][k - 1]});
}

CnfFormula streamline_even_occurrence(const CnfFormula& f) {
  CnfFormula out = f;
  std::vector<int> cubes(f.m);
  for (std::size_t eq = 0; eq < f.parity_groups; ++eq) {
    if (term_type(term_from_equation(eq, f.n), f.n) == 3) continue;
    for (int l = 0; l < f.m; ++l) cubes[l] = f.cube_var(eq, l);
    add_at_most(out.cnf, cubes, 2);
  }
  return out;
}

bool satisfies_single_summand_pattern(const Summand& s) {
  for (Role x : kRoles)
    for (Role y : kRoles) {
      if (x != y && s.matrix(y).popcount() <= 1 && has_zero_pattern(s.matrix(x))) return true;
    }
  return false;
}

bool satisfies_even_occurrence(const Scheme& s) {
  const int n = s.n;
  const std::size_t equations = static_cast<std::size_t>(n) * n * n * n * n * n;
  for (std::size_t eq = 0; eq < equations; ++eq) {
    const TermIndex t = term_from_equation(eq, n);
    if (term_type(t, n) == 3) continue;
    int count = 0;
    for (const Summand& sm : s.summands) count += sm.produces(t);
    if (count > 2) return false;
  }
  return true;
}

}  // namespace brent
