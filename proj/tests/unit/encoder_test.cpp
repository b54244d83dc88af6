#include <gtest/gtest.h>

#include <set>

#include "brent/bundled.hpp"
#include "brent/encoder.hpp"
#include "brent/rng.hpp"
#include "oracles.hpp"

namespace brent {
namespace {

Model base_model(const CnfFormula& f, std::uint64_t bits) {
  Model m(f.cnf.var_count());
  for (int v = 1; v <= f.base.size(); ++v) m.set(v, (bits >> (v - 1)) & 1U);
  return m;
}

Model scheme_model(const CnfFormula& f, const Scheme& s) {
  Model m(f.cnf.var_count());
  for (Literal lit : scheme_literals(f.base, s)) m.set(var_of(lit), lit > 0);
  return m;
}

TEST(EncodingSize, MatchesClosedFormCount) {
  for (int n = 1; n <= 3; ++n)
    for (int m : {1, 2, 3, 4, 5, 7, 8, 11}) {
      const CnfFormula f = encode(n, m);
      const auto want = testing::expected_encoding_size(n, m);
      EXPECT_EQ(f.base.size(), want.base) << n << "," << m;
      EXPECT_EQ(f.and_vars, want.and_vars) << n << "," << m;
      EXPECT_EQ(f.cube_var_count, want.cube_vars) << n << "," << m;
      EXPECT_EQ(f.xor_vars, want.xor_vars) << n << "," << m;
      EXPECT_EQ(f.cnf.var_count(), want.vars) << n << "," << m;
      EXPECT_EQ(static_cast<long long>(f.cnf.clause_count()), want.clauses) << n << "," << m;
      EXPECT_EQ(f.parity_groups, static_cast<std::size_t>(n * n * n * n * n * n));
      EXPECT_TRUE(f.cnf.assumptions().empty());
    }
}

TEST(EncodingSize, FrozenValues) {
  // Values produced by the closed-form oracle above.
  const CnfFormula small = encode(2, 7);
  EXPECT_EQ(small.cnf.var_count(), 772);
  EXPECT_EQ(small.cnf.clause_count(), 2960u);
  const CnfFormula big = encode(3, 23);
  EXPECT_EQ(big.base.size(), 621);
  EXPECT_EQ(big.parity_groups, 729u);
  EXPECT_EQ(big.cnf.var_count(), 26541);
  EXPECT_EQ(big.cnf.clause_count(), 117126u);
}

TEST(Dimacs, GoldenSingleMultiplication) {
  EXPECT_EQ(to_dimacs(encode(1, 1).cnf),
            "p cnf 5 7\n-4 1 0\n-4 2 0\n4 -1 -2 0\n-5 4 0\n-5 3 0\n5 -4 -3 0\n5 0\n");
}

TEST(Dimacs, ParseRoundTrip) {
  const CnfFormula f = encode(2, 3);
  const Cnf back = parse_dimacs(to_dimacs(f.cnf));
  ASSERT_EQ(back.var_count(), f.cnf.var_count());
  ASSERT_EQ(back.clause_count(), f.cnf.clause_count());
  for (std::size_t i = 0; i < back.clause_count(); ++i) {
    const auto a = back.clause(i);
    const auto b = f.cnf.clause(i);
    EXPECT_TRUE(std::equal(a.begin(), a.end(), b.begin(), b.end()));
  }
  EXPECT_THROW(parse_dimacs("p cnf 2 1\n1 3 0\n"), ParseError);
  EXPECT_THROW(parse_dimacs("1 2 0\n"), ParseError);
}

TEST(Gates, TopologicalAndClauseRanges) {
  const CnfFormula f = encode(2, 7);
  std::set<int> defined;
  for (int v = 1; v <= f.base.size(); ++v) defined.insert(v);
  std::uint32_t next_clause = 0;
  for (const Gate& g : f.gates) {
    const int arity = g.kind == GateKind::kAnd2 ? 2 : 3;
    for (int k = 0; k < arity; ++k) EXPECT_TRUE(defined.count(g.inputs[k])) << g.output;
    EXPECT_TRUE(defined.insert(g.output).second);
    EXPECT_EQ(g.clause_count, g.kind == GateKind::kAnd2 ? 3u : 8u);
    EXPECT_GE(g.first_clause, next_clause);
    next_clause = g.first_clause + g.clause_count;
  }
  EXPECT_EQ(defined.size(), static_cast<std::size_t>(f.cnf.var_count()));
}

TEST(Gates, ClausesDefineTheirFunction) {
  const CnfFormula f = encode(2, 5);
  for (const Gate& g : f.gates) {
    const int arity = g.kind == GateKind::kAnd2 ? 2 : 3;
    for (int in = 0; in < (1 << arity); ++in)
      for (int out = 0; out < 2; ++out) {
        Model m(f.cnf.var_count());
        bool fn = g.kind == GateKind::kAnd2;
        for (int k = 0; k < arity; ++k) {
          const bool bit = (in >> k) & 1;
          m.set(g.inputs[k], bit);
          fn = g.kind == GateKind::kAnd2 ? (fn && bit) : (fn != bit);
        }
        m.set(g.output, out);
        bool all = true;
        for (std::uint32_t c = g.first_clause; c < g.first_clause + g.clause_count; ++c) {
          bool sat = false;
          for (Literal lit : f.cnf.clause(c)) sat = sat || m.satisfies(lit);
          all = all && sat;
        }
        EXPECT_EQ(all, fn == static_cast<bool>(out));
      }
  }
}

TEST(Soundness, ExhaustiveSingleMultiplication) {
  const CnfFormula f = encode(1, 1);
  int accepted = 0;
  for (std::uint64_t bits = 0; bits < 8; ++bits) {
    const Model m = extend_assignment(f, base_model(f, bits));
    const Scheme s = read_scheme(f.base, m);
    const bool cnf_ok = check_model(f.cnf, m);
    EXPECT_EQ(cnf_ok, brent_residual(s).empty()) << bits;
    EXPECT_EQ(cnf_ok, testing::valid_by_expansion(s)) << bits;
    accepted += cnf_ok;
  }
  EXPECT_EQ(accepted, 1);
}

TEST(Soundness, RandomAssignmentsRankSeven) {
  const CnfFormula f = encode(2, 7);
  int accepted = 0;
  for (std::uint64_t trial = 0; trial < 1500; ++trial) {
    Scheme s;
    if (trial % 3 == 0) {
      // Valid schemes and their small perturbations hit both outcomes.
      Rng rng(trial);
      s = strassen();
      const int flips = static_cast<int>(rng.below(3));
      for (int k = 0; k < flips; ++k)
        s = testing::with_flipped_bit(s, static_cast<int>(rng.below(3)), static_cast<int>(rng.below(7)),
                                      static_cast<int>(rng.below(2)), static_cast<int>(rng.below(2)));
    } else {
      s = testing::random_scheme(2, 7, trial, trial % 3 == 1 ? 0.5 : 0.2);
    }
    const Model m = extend_assignment(f, scheme_model(f, s));
    EXPECT_EQ(read_scheme(f.base, m), s);
    const bool cnf_ok = check_model(f.cnf, m);
    EXPECT_EQ(cnf_ok, brent_residual(s).empty()) << trial;
    EXPECT_EQ(cnf_ok, testing::valid_by_expansion(s)) << trial;
    accepted += cnf_ok;
  }
  EXPECT_GT(accepted, 0);
}

TEST(Soundness, Rank23ValidSchemesExtend) {
  const CnfFormula f = encode(3, 23);
  for (const Scheme& s : {fig1_scheme_a(), fig1_scheme_b()}) {
    const Model m = extend_assignment(f, scheme_model(f, s));
    EXPECT_TRUE(check_model(f.cnf, m));
    EXPECT_EQ(decode(f, m), s);
  }
  const Scheme broken = testing::with_flipped_bit(fig1_scheme_a(), 2, 5, 1, 1);
  EXPECT_FALSE(check_model(f.cnf, extend_assignment(f, scheme_model(f, broken))));
}

TEST(Decode, RejectsTamperedModel) {
  const CnfFormula f = encode(2, 7);
  Model m = extend_assignment(f, scheme_model(f, strassen()));
  EXPECT_EQ(decode(f, m), strassen());
  m.set(1, !m.value(1));
  EXPECT_THROW(decode(f, m), IntegrityError);
  Model gate_tamper = extend_assignment(f, scheme_model(f, strassen()));
  const int last = f.cnf.var_count();
  gate_tamper.set(last, !gate_tamper.value(last));
  EXPECT_THROW(decode(f, gate_tamper), IntegrityError);
}

TEST(BaseMap, NumberingAndLookup) {
  const BaseVarMap map = build_base_map(3, 23);
  EXPECT_EQ(map.size(), 621);
  std::set<int> ids;
  for (Role role : kRoles)
    for (int l = 0; l < 23; ++l)
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
          const int id = map.id(role, l, r, c);
          EXPECT_TRUE(ids.insert(id).second);
          EXPECT_EQ(map.lookup(id), (BaseVar{role, l, r, c}));
        }
  EXPECT_EQ(*ids.begin(), 1);
  EXPECT_EQ(*ids.rbegin(), 621);
  EXPECT_THROW(map.lookup(0), std::out_of_range);
  EXPECT_THROW(map.lookup(622), std::out_of_range);
}

TEST(BaseMap, RenderParseRoundTrip) {
  const BaseVarMap map = build_base_map(2, 7);
  const BaseVarMap back = BaseVarMap::parse(map.render());
  EXPECT_EQ(back.n(), 2);
  EXPECT_EQ(back.m(), 7);
  for (int v = 1; v <= map.size(); ++v) EXPECT_EQ(back.lookup(v), map.lookup(v));
  EXPECT_THROW(BaseVarMap::parse("1 alpha 1 1\n"), ParseError);
}

TEST(Fixing, FixesExactCountConsistentWithScheme) {
  const CnfFormula f = encode(3, 23);
  EXPECT_EQ(fixed_count(621, 2.0 / 3.0), 414);
  const Scheme a = fig1_scheme_a();
  const CnfFormula fixed = fix_from_scheme(f, a, 2.0 / 3.0, 5);
  ASSERT_EQ(fixed.cnf.assumptions().size(), 414u);
  std::set<int> vars;
  const Model truth = extend_assignment(f, scheme_model(f, a));
  for (Literal lit : fixed.cnf.assumptions()) {
    EXPECT_TRUE(f.base.contains(var_of(lit)));
    EXPECT_TRUE(vars.insert(var_of(lit)).second);
    EXPECT_TRUE(truth.satisfies(lit));
  }
  EXPECT_TRUE(check_model(fixed.cnf, truth));
  EXPECT_EQ(fix_from_scheme(f, a, 2.0 / 3.0, 5).cnf.assumptions(), fixed.cnf.assumptions());
  EXPECT_NE(fix_from_scheme(f, a, 2.0 / 3.0, 6).cnf.assumptions(), fixed.cnf.assumptions());
  EXPECT_EQ(fix_from_scheme(f, a, 0.0, 1).cnf.assumptions().size(), 0u);
  EXPECT_EQ(fix_from_scheme(f, a, 1.0, 1).cnf.assumptions().size(), 621u);
}

TEST(Fixing, RejectsNonBaseLiterals) {
  const CnfFormula f = encode(1, 1);
  const std::vector<Literal> bad = {4};
  EXPECT_THROW(assume_base(f, bad), std::invalid_argument);
  const std::vector<Literal> good = {1, -2};
  EXPECT_EQ(assume_base(f, good).cnf.assumptions(), good);
}

TEST(Determinism, RepeatedEncodingIsIdentical) {
  EXPECT_EQ(to_dimacs(encode(2, 7).cnf), to_dimacs(encode(2, 7).cnf));
}

TEST(Cnf, RejectsBadClauses) {
  Cnf cnf;
  cnf.reserve_vars(2);
  EXPECT_THROW(cnf.add_clause({}), std::invalid_argument);
  EXPECT_THROW(cnf.add_clause({1, 0}), std::invalid_argument);
  EXPECT_THROW(cnf.add_clause({3}), std::invalid_argument);
  cnf.add_clause({1, -2});
  Model m(2);
  EXPECT_TRUE(check_model(cnf, m));
  cnf.add_assumption(1);
  EXPECT_FALSE(check_model(cnf, m));
  EXPECT_EQ(first_violation(cnf, m), 1);
}

TEST(Cnf, ModelTextRoundTrip) {
  Model m(5);
  m.set(2, true);
  m.set(5, true);
  EXPECT_EQ(parse_model(render_model(m), 5), m);
  EXPECT_EQ(parse_model("s SATISFIABLE\nv -1 2 -3\nv 4 0\n", 4).value(4), true);
  EXPECT_THROW(parse_model("v 9 0\n", 4), ParseError);
  EXPECT_THROW(parse_model("v x 0\n", 4), ParseError);
}

TEST(Propagation, FindsConflictAndForcedValues) {
  Cnf cnf;
  cnf.reserve_vars(3);
  cnf.add_clause({-1, 2});
  cnf.add_clause({-2, 3});
  cnf.add_assumption(1);
  const Propagation p = propagate_units(cnf);
  EXPECT_FALSE(p.conflict);
  EXPECT_EQ(p.value[3], 1);
  cnf.add_clause({-3});
  EXPECT_TRUE(propagate_units(cnf).conflict);
}

}  // namespace
}  // namespace brent
