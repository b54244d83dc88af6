#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "brent/bit_matrix.hpp"

namespace brent {

/// The three coefficient matrices of one summand.
enum class Role : std::uint8_t { kAlpha = 0, kBeta = 1, kGamma = 2 };

inline constexpr std::array<Role, 3> kRoles = {Role::kAlpha, Role::kBeta, Role::kGamma};

const char* role_name(Role role);

/// Monomial a_{i1 i2} b_{j1 j2} c_{k1 k2}. Indices are stored 0-based; the
/// textual form (to_string) is 1-based, e.g. "a13b31c11".
struct TermIndex {
  int i1 = 0, i2 = 0, j1 = 0, j2 = 0, k1 = 0, k2 = 0;

  /// Type-3 term a_{ij} b_{jk} c_{ki}.
  static TermIndex type3(int i, int j, int k) { return {i, j, j, k, k, i}; }

  std::string to_string() const;

  friend bool operator==(const TermIndex&, const TermIndex&) = default;
  friend auto operator<=>(const TermIndex&, const TermIndex&) = default;
};

/// Number of Kronecker deltas that fire: delta(i2,j1) + delta(j2,k1) + delta(k2,i1).
/// Throws std::domain_error if an index is outside [0, n).
int term_type(const TermIndex& t, int n);

/// All type-3 terms a_{ij} b_{jk} c_{ki}, ordered by (i, j, k).
std::vector<TermIndex> enumerate_type3(int n);

/// Position of term t among the n^6 Brent equations (row-major over the six indices).
std::size_t equation_index(const TermIndex& t, int n);
TermIndex term_from_equation(std::size_t index, int n);

/// One multiplication M_l. gamma uses the flipped index convention, so the
/// right-hand side of the Brent equations is delta(i2,j1) delta(j2,k1) delta(k2,i1).
struct Summand {
  BitMatrix alpha, beta, gamma;

  explicit Summand(int n = 1) : alpha(n), beta(n), gamma(n) {}

  const BitMatrix& matrix(Role role) const;
  BitMatrix& matrix(Role role);

  /// True iff alpha, beta and gamma all contain the cells of t.
  bool produces(const TermIndex& t) const {
    return alpha.get(t.i1, t.i2) && beta.get(t.j1, t.j2) && gamma.get(t.k1, t.k2);
  }

  friend bool operator==(const Summand&, const Summand&) = default;
};

/// A candidate multiplication scheme. Validity is not enforced here; see verify().
struct Scheme {
  int n = 1;
  std::vector<Summand> summands;
  std::string label;

  Scheme() = default;
  Scheme(int dim, int rank, std::string name = {});

  int m() const { return static_cast<int>(summands.size()); }

  /// Equality ignores the label.
  friend bool operator==(const Scheme& a, const Scheme& b) {
    return a.n == b.n && a.summands == b.summands;
  }
};

struct BrentViolation {
  TermIndex term;
  bool lhs = false;
  bool rhs = false;
};

/// Evaluates all n^6 Brent equations over GF(2) and returns the violated ones.
/// This is the reference oracle for every other component.
std::vector<BrentViolation> brent_residual(const Scheme& s);

bool verify(const Scheme& s);

/// Number of coefficients equal to 1 across all summands.
int support(const Scheme& s);

/// For each summand, the type-3 terms it produces.
std::vector<std::vector<TermIndex>> core(const Scheme& s);

/// Sorted sizes >= 2 of the per-summand core sets, e.g. {2,2,2,2}.
std::vector<int> core_signature(const Scheme& s);

struct SchemeStats {
  int support = 0;
  std::vector<std::vector<TermIndex>> core;
  std::vector<int> core_signature;
};

SchemeStats scheme_stats(const Scheme& s);

/// "2-2-2-2"; "none" for an empty signature.
std::string signature_string(const std::vector<int>& signature);

/// Summand-order-independent identity: each summand packed into 3 n^2 bits
/// (alpha, beta, gamma, row-major, MSB first), sorted and concatenated.
std::string canonical_key(const Scheme& s);

std::string key_to_hex(const std::string& key);
std::string key_from_hex(const std::string& hex);

/// The n^3-multiplication definition of the matrix product.
Scheme naive_scheme(int n);

}  // namespace brent
