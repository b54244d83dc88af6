#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "brent/encoder.hpp"
#include "brent/scheme.hpp"

namespace brent {

/// Assignment of the type-3 terms to summands: slots[l] holds the terms that
/// summand l must produce, sorted.
struct Pairing {
  int n = 3;
  std::vector<std::vector<TermIndex>> slots;

  int m() const { return static_cast<int>(slots.size()); }

  /// Throws std::invalid_argument unless every type-3 term appears in exactly
  /// one slot and no slot holds more than two terms.
  void validate() const;

  /// One line per summand: "<l>: a11b11c11 a12b21c11".
  std::string render() const;
  /// Inverse of render(); n is inferred from the number of terms. Throws ParseError.
  static Pairing parse(std::string_view text);

  /// Sorted slot sizes >= 2, comparable with core_signature().
  std::vector<int> signature() const;

  friend bool operator==(const Pairing&, const Pairing&) = default;
};

/// Picks n^3 - m disjoint pairs of type-3 terms uniformly at random, keeps the
/// rest as singles and shuffles all m groups over the summands. Throws
/// std::invalid_argument unless m <= n^3 <= 2m.
Pairing random_pairing(int n, int m, std::uint64_t seed);

/// The core of s as a pairing. Throws std::invalid_argument when the core is
/// not a valid pairing (a term produced twice, or a summand with three terms).
Pairing pairing_from_core(const Scheme& s);

/// True iff the core of s equals p slot by slot.
bool core_matches(const Scheme& s, const Pairing& p);

/// Fixes the three coefficients of every assigned term to 1 (3 n^3
/// assumptions). With block_extra, also forbids every type-3 term in every
/// summand it is not assigned to, so the core of any model is exactly p.
CnfFormula hardcode_pairing(const CnfFormula& f, const Pairing& p, bool block_extra = true);

/// Forbids every type-3 term in summand `summand` (n^3 clauses).
CnfFormula block_type3_in_summand(const CnfFormula& f, int summand);

/// Requires summand `summand` to have two distinct coefficient matrices such
/// that the first has two rows, two columns, or a row and a column entirely
/// zero, and the second has at most one nonzero entry. Which matrices and
/// which lines are chosen is left to selector variables. The summand must hold
/// exactly one term of the hardcoded pairing; throws std::out_of_range for a
/// bad index and std::invalid_argument otherwise.
CnfFormula streamline_single_summand(const CnfFormula& f, int summand);

/// Applies streamline_single_summand to every summand with one hardcoded term.
CnfFormula streamline_singletons(const CnfFormula& f);

/// Limits every non-type-3 term to at most two producing summands. Together
/// with the parity constraint this means zero or two.
CnfFormula streamline_even_occurrence(const CnfFormula& f);

/// At most k of `vars` true: all (k+1)-subsets negated when vars.size() <= 8,
/// otherwise a sequential counter with fresh variables.
void add_at_most(Cnf& cnf, std::span<const int> vars, int k);

/// Direct checks of the streamlined properties on a scheme.
bool satisfies_single_summand_pattern(const Summand& s);
bool satisfies_even_occurrence(const Scheme& s);

}  // namespace brent
