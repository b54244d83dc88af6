#include "brent/scheme.hpp"

#include <algorithm>
#include <utility>
#include <stdexcept>

namespace brent {

const char* role_name(Role role) {
  switch (role) {
    case Role::kAlpha: return "alpha";
    case Role::kBeta: return "beta";
    case Role::kGamma: return "gamma";
  }
  return "?";
}

std::string TermIndex::to_string() const {
  std::string out;
  auto put = [&out](char letter, int row, int col) {
    out += letter;
    out += std::to_string(row + 1);
    out += std::to_string(col + 1);
  };
  put('a', i1, i2);
  put('b', j1, j2);
  put('c', k1, k2);
  return out;
}

int term_type(const TermIndex& t, int n) {
  for (int idx : {t.i1, t.i2, t.j1, t.j2, t.k1, t.k2}) {
    if (idx < 0 || idx >= n) throw std::domain_error("term_type: index out of range");
  }
  return int{t.i2 == t.j1} + int{t.j2 == t.k1} + int{t.k2 == t.i1};
}

std::vector<TermIndex> enumerate_type3(int n) {
  if (n < 1) throw std::invalid_argument("enumerate_type3: n must be positive");
  std::vector<TermIndex> out;
  out.reserve(static_cast<std::size_t>(n) * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) out.push_back(TermIndex::type3(i, j, k));
  return out;
}

std::size_t equation_index(const TermIndex& t, int n) {
  std::size_t idx = 0;
  for (int v : {t.i1, t.i2, t.j1, t.j2, t.k1, t.k2}) idx = idx * n + v;
  return idx;
}

TermIndex term_from_equation(std::size_t index, int n) {
  std::array<int, 6> v{};
  for (int p = 5; p >= 0; --p) {
    v[p] = static_cast<int>(index % n);
    index /= n;
  }
  return {v[0], v[1], v[2], v[3], v[4], v[5]};
}

const BitMatrix& Summand::matrix(Role role) const {
  switch (role) {
    case Role::kAlpha: return alpha;
    case Role::kBeta: return beta;
    case Role::kGamma: break;
  }
  return gamma;
}

BitMatrix& Summand::matrix(Role role) {
  return const_cast<BitMatrix&>(std::as_const(*this).matrix(role));
}

Scheme::Scheme(int dim, int rank, std::string name)
    : n(dim), summands(static_cast<std::size_t>(rank), Summand(dim)), label(std::move(name)) {
  if (dim < 1 || dim > kMaxDimension) throw std::invalid_argument("Scheme: bad dimension");
  if (rank < 0) throw std::invalid_argument("Scheme: negative rank");
}

std::vector<BrentViolation> brent_residual(const Scheme& s) {
  const int n = s.n;
  std::vector<BrentViolation> out;
  TermIndex t;
  for (t.i1 = 0; t.i1 < n; ++t.i1)
    for (t.i2 = 0; t.i2 < n; ++t.i2)
      for (t.j1 = 0; t.j1 < n; ++t.j1)
        for (t.j2 = 0; t.j2 < n; ++t.j2)
          for (t.k1 = 0; t.k1 < n; ++t.k1)
            for (t.k2 = 0; t.k2 < n; ++t.k2) {
              bool lhs = false;
              for (const Summand& sm : s.summands) lhs ^= sm.produces(t);
              const bool rhs = term_type(t, n) == 3;
              if (lhs != rhs) out.push_back({t, lhs, rhs});
            }
  return out;
}

bool verify(const Scheme& s) {
  for (const Summand& sm : s.summands) {
    if (sm.alpha.dim() != s.n || sm.beta.dim() != s.n || sm.gamma.dim() != s.n) return false;
  }
  return brent_residual(s).empty();
}

int support(const Scheme& s) {
  int total = 0;
  for (const Summand& sm : s.summands) {
    total += sm.alpha.popcount() + sm.beta.popcount() + sm.gamma.popcount();
  }
  return total;
}

std::vector<std::vector<TermIndex>> core(const Scheme& s) {
  const auto terms = enumerate_type3(s.n);
  std::vector<std::vector<TermIndex>> out(s.summands.size());
  for (std::size_t l = 0; l < s.summands.size(); ++l) {
    for (const TermIndex& t : terms) {
      if (s.summands[l].produces(t)) out[l].push_back(t);
    }
  }
  return out;
}

std::vector<int> core_signature(const Scheme& s) {
  std::vector<int> sig;
  for (const auto& set : core(s)) {
    if (set.size() >= 2) sig.push_back(static_cast<int>(set.size()));
  }
  std::sort(sig.begin(), sig.end());
  return sig;
}

SchemeStats scheme_stats(const Scheme& s) {
  SchemeStats st;
  st.support = support(s);
  st.core = core(s);
  for (const auto& set : st.core) {
    if (set.size() >= 2) st.core_signature.push_back(static_cast<int>(set.size()));
  }
  std::sort(st.core_signature.begin(), st.core_signature.end());
  return st;
}

std::string signature_string(const std::vector<int>& signature) {
  if (signature.empty()) return "none";
  std::string out;
  for (std::size_t i = 0; i < signature.size(); ++i) {
    if (i) out += '-';
    out += std::to_string(signature[i]);
  }
  return out;
}

namespace {

std::string pack_summand(const Summand& sm, int n) {
  const int cells = n * n;
  std::string bytes(static_cast<std::size_t>((3 * cells + 7) / 8), '\0');
  int pos = 0;
  for (Role role : kRoles) {
    const std::uint64_t bits = sm.matrix(role).bits();
    for (int c = 0; c < cells; ++c, ++pos) {
      if ((bits >> c) & 1U) bytes[pos / 8] = static_cast<char>(bytes[pos / 8] | (0x80 >> (pos % 8)));
    }
  }
  return bytes;
}

}  // namespace

std::string canonical_key(const Scheme& s) {
  std::vector<std::string> parts;
  parts.reserve(s.summands.size());
  for (const Summand& sm : s.summands) parts.push_back(pack_summand(sm, s.n));
  std::sort(parts.begin(), parts.end(), [](const std::string& a, const std::string& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [](char x, char y) {
                                          return static_cast<unsigned char>(x) <
                                                 static_cast<unsigned char>(y);
                                        });
  });
  std::string key;
  key += static_cast<char>(s.n);
  for (const auto& p : parts) key += p;
  return key;
}

std::string key_to_hex(const std::string& key) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(key.size() * 2);
  for (unsigned char c : key) {
    out += kDigits[c >> 4];
    out += kDigits[c & 0xF];
  }
  return out;
}

std::string key_from_hex(const std::string& hex) {
  if (hex.size() % 2) throw std::invalid_argument("key_from_hex: odd length");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw std::invalid_argument("key_from_hex: not a hex digit");
  };
  std::string out;
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    out += static_cast<char>(nibble(hex[i]) * 16 + nibble(hex[i + 1]));
  }
  return out;
}

Scheme naive_scheme(int n) {
  Scheme s(n, n * n * n, "naive" + std::to_string(n));
  int l = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k, ++l) {
        s.summands[l].alpha.set(i, j);
        s.summands[l].beta.set(j, k);
        s.summands[l].gamma.set(k, i);
      }
  return s;
}

}  // namespace brent
