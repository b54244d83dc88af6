#include "brent/cnf.hpp"

#include <charconv>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace brent {

void Cnf::reserve_vars(int count) {
  if (count > var_count_) var_count_ = count;
}

void Cnf::add_clause(std::span<const Literal> clause) {
  if (clause.empty()) throw std::invalid_argument("Cnf: empty clause");
  for (Literal lit : clause) {
    if (lit == 0 || var_of(lit) > var_count_) throw std::invalid_argument("Cnf: literal out of range");
  }
  starts_.push_back(lits_.size());
  lits_.insert(lits_.end(), clause.begin(), clause.end());
}

void Cnf::add_assumption(Literal lit) {
  if (lit == 0 || var_of(lit) > var_count_) throw std::invalid_argument("Cnf: literal out of range");
  assumptions_.push_back(lit);
}

long first_violation(const Cnf& cnf, const Model& model) {
  if (model.var_count() < cnf.var_count()) return 0;
  for (std::size_t i = 0; i < cnf.clause_count(); ++i) {
    bool sat = false;
    for (Literal lit : cnf.clause(i)) {
      if (model.satisfies(lit)) {
        sat = true;
        break;
      }
    }
    if (!sat) return static_cast<long>(i);
  }
  const auto& assumptions = cnf.assumptions();
  for (std::size_t i = 0; i < assumptions.size(); ++i) {
    if (!model.satisfies(assumptions[i])) return static_cast<long>(cnf.clause_count() + i);
  }
  return -1;
}

bool check_model(const Cnf& cnf, const Model& model) { return first_violation(cnf, model) < 0; }

Propagation propagate_units(const Cnf& cnf) {
  const int nv = cnf.var_count();
  const std::size_t nc = cnf.clause_count();
  Propagation out;
  out.value.assign(static_cast<std::size_t>(nv) + 1, -1);

  // Occurrence lists in CSR form, indexed by literal code 2*var + (lit < 0).
  std::vector<std::uint32_t> offset(2 * static_cast<std::size_t>(nv) + 3, 0);
  auto code = [](Literal l) { return 2 * static_cast<std::size_t>(var_of(l)) + (l < 0); };
  for (std::size_t c = 0; c < nc; ++c)
    for (Literal l : cnf.clause(c)) ++offset[code(l) + 1];
  for (std::size_t i = 1; i < offset.size(); ++i) offset[i] += offset[i - 1];
  std::vector<std::uint32_t> occ(offset.back());
  {
    auto fill = offset;
    for (std::size_t c = 0; c < nc; ++c)
      for (Literal l : cnf.clause(c)) occ[fill[code(l)]++] = static_cast<std::uint32_t>(c);
  }

  std::vector<std::uint32_t> open(nc);
  std::vector<std::uint8_t> satisfied(nc, 0);
  std::vector<Literal> queue;
  for (std::size_t c = 0; c < nc; ++c) {
    open[c] = static_cast<std::uint32_t>(cnf.clause(c).size());
    if (open[c] == 1) queue.push_back(cnf.clause(c)[0]);
  }
  for (Literal a : cnf.assumptions()) queue.push_back(a);

  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Literal lit = queue[head];
    const int v = var_of(lit);
    const std::int8_t want = lit > 0 ? 1 : 0;
    if (out.value[v] == want) continue;
    if (out.value[v] != -1) {
      out.conflict = true;
      return out;
    }
    out.value[v] = want;
    ++out.assigned;
    for (std::uint32_t i = offset[code(lit)]; i < offset[code(lit) + 1]; ++i) satisfied[occ[i]] = 1;
    for (std::uint32_t i = offset[code(-lit)]; i < offset[code(-lit) + 1]; ++i) {
      const std::uint32_t c = occ[i];
      if (satisfied[c]) continue;
      if (--open[c] == 0) {
        out.conflict = true;
        return out;
      }
      if (open[c] == 1) {
        for (Literal other : cnf.clause(c)) {
          if (out.value[var_of(other)] == -1) {
            queue.push_back(other);
            break;
          }
        }
      }
    }
  }
  return out;
}

std::string to_dimacs(const Cnf& cnf) {
  std::string out;
  out.reserve(cnf.literal_count() * 7 + cnf.clause_count() * 3 + 64);
  out += "p cnf " + std::to_string(cnf.var_count()) + " " +
         std::to_string(cnf.clause_count() + cnf.assumptions().size()) + "\n";
  char buf[16];
  auto put = [&](Literal l) {
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, l);
    out.append(buf, end);
  };
  for (std::size_t c = 0; c < cnf.clause_count(); ++c) {
    for (Literal l : cnf.clause(c)) {
      put(l);
      out += ' ';
    }
    out += "0\n";
  }
  for (Literal a : cnf.assumptions()) {
    put(a);
    out += " 0\n";
  }
  return out;
}

namespace {

bool parse_int(std::string_view tok, long& value) {
  const char* first = tok.data();
  if (!tok.empty() && tok[0] == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, tok.data() + tok.size(), value);
  return ec == std::errc{} && ptr == tok.data() + tok.size();
}

}  // namespace

Cnf parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  bool have_header = false;
  long declared_clauses = 0;
  Cnf cnf;
  std::vector<Literal> current;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok) || tok[0] == 'c' || tok[0] == '%') continue;
    if (tok == "p") {
      std::string fmt;
      long vars = 0;
      if (have_header || !(ls >> fmt >> vars >> declared_clauses) || fmt != "cnf" || vars < 0) {
        throw ParseError("bad DIMACS header", line_no);
      }
      cnf.reserve_vars(static_cast<int>(vars));
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError("clause before 'p cnf' header", line_no);
    do {
      long v = 0;
      if (!parse_int(tok, v)) throw ParseError("bad literal '" + tok + "'", line_no);
      if (v == 0) {
        if (current.empty()) throw ParseError("empty clause", line_no);
        cnf.add_clause(current);
        current.clear();
      } else {
        if (std::labs(v) > cnf.var_count()) throw ParseError("literal exceeds variable count", line_no);
        current.push_back(static_cast<Literal>(v));
      }
    } while (ls >> tok);
  }
  if (!current.empty()) throw ParseError("unterminated clause", line_no);
  if (!have_header) throw ParseError("missing 'p cnf' header", line_no);
  if (static_cast<long>(cnf.clause_count()) != declared_clauses) {
    throw ParseError("clause count does not match header", line_no);
  }
  return cnf;
}

Model parse_model(std::string_view text, int var_count) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  Model model(var_count);
  bool saw_values = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "c" || tok == "s" || tok[0] == 'c') continue;
    if (tok != "v") throw ParseError("unexpected line in model output", line_no);
    saw_values = true;
    while (ls >> tok) {
      long v = 0;
      if (!parse_int(tok, v)) throw ParseError("bad literal '" + tok + "'", line_no);
      if (v == 0) continue;
      if (std::labs(v) > var_count) throw ParseError("literal exceeds variable count", line_no);
      model.set(static_cast<int>(std::labs(v)), v > 0);
    }
  }
  if (!saw_values) throw ParseError("no 'v' lines in model output", line_no);
  return model;
}

std::string render_model(const Model& model) {
  std::string out;
  std::string line = "v";
  for (int v = 1; v <= model.var_count(); ++v) {
    line += ' ';
    line += std::to_string(model.value(v) ? v : -v);
    if (line.size() > 72) {
      out += line + "\n";
      line = "v";
    }
  }
  out += line + " 0\n";
  return out;
}

}  // namespace brent
