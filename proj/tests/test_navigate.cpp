#include <gtest/gtest.h>

#include "fuzz.hpp"
#include "oracles.hpp"
#include "reconf/error.hpp"
#include "reconf/gen.hpp"
#include "reconf/navigate.hpp"

using namespace reconf;

namespace {

const Relation kPath = Relation::from_strings({"000", "001", "101", "111", "110"});
const Relation kImp = Relation::from_strings({"00", "10", "11"});
const Relation kOr = Relation::from_strings({"01", "10", "11"});

Formula single(const Relation& r) {
  Formula phi(r.arity());
  phi.add_relation("R", r);
  std::vector<Slot> args;
  for (int p = 1; p <= r.arity(); ++p) args.push_back(Slot::ref(p));
  phi.add_clause(0, args);
  return phi;
}

Formula equality_by_implications() {
  Formula phi(2);
  phi.add_relation("IMP", kImp);
  phi.add_clause("IMP", {Slot::ref(1), Slot::ref(2)});
  phi.add_clause("IMP", {Slot::ref(2), Slot::ref(1)});
  return phi;
}

Assignment A(const char* bits) { return Assignment::from_string(bits); }

}  // namespace

TEST(Navigable, PathRelationCounterexample) {
  const SolveResult r = shortest_path_navigable(single(kPath), A("000"), A("110"));
  ASSERT_EQ(r.outcome, Outcome::Path);
  EXPECT_EQ(format_sequence(r.path), "x3+ x1+ x2+ x3-");
  EXPECT_EQ(hamming(A("000"), A("110")), 2);
  EXPECT_GE(r.stats.levels, 1);
}

TEST(Navigable, TrivialAndDisconnected) {
  const SolveResult same = shortest_path_navigable(single(kPath), A("101"), A("101"));
  EXPECT_EQ(same.outcome, Outcome::Path);
  EXPECT_TRUE(same.path.empty());
  EXPECT_EQ(shortest_path_navigable(equality_by_implications(), A("00"), A("11")).outcome,
            Outcome::NotConnected);
}

TEST(Navigable, Preconditions) {
  EXPECT_THROW(shortest_path_navigable(single(kPath), A("010"), A("000")), Error);
  const Formula vc = gen_vertex_cover_instance(SimpleGraph(2, {{1, 2}})).formula;
  try {
    shortest_path_navigable(vc, Assignment(4), Assignment(4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Precondition);
  }
}

TEST(Navigable, TraceReportsDecreasingEta) {
  std::vector<LevelTrace> levels;
  shortest_path_navigable(single(kPath), A("000"), A("110"),
                          [&](const LevelTrace& l) { levels.push_back(l); });
  ASSERT_EQ(levels.size(), 2u);
  EXPECT_EQ(levels[0].s_lower, (FlipSet{1, 2, 3}));
  EXPECT_TRUE(levels[0].t_lower.empty());
  EXPECT_EQ(levels[1].s.to_string(), "111");
  EXPECT_EQ(levels[1].t_lower, (FlipSet{3}));
  for (std::size_t i = 1; i < levels.size(); ++i) EXPECT_LT(levels[i].eta, levels[i - 1].eta);
}

TEST(Navigable, AgreesWithOracleOnRandomInstances) {
  Rng rng(61);
  int paths = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const Instance inst = fuzz::draw_instance(rng, fuzz::navigable(2, 1, 4), 1, 10, 6);
    const SolveResult r = shortest_path_navigable(inst.formula, *inst.from, *inst.to);
    const auto expect = oracle::shortest(oracle::from(inst.formula), oracle::bits(*inst.from),
                                         oracle::bits(*inst.to));
    ASSERT_EQ(r.outcome == Outcome::Path, expect.has_value()) << serialize_instance(inst);
    if (!expect) continue;
    ++paths;
    ASSERT_EQ(static_cast<int>(r.length()), *expect) << serialize_instance(inst);
    EXPECT_EQ(oracle::replay(oracle::from(inst.formula), oracle::bits(*inst.from), r.path),
              oracle::bits(*inst.to));
  }
  EXPECT_GT(paths, 30);
}

TEST(Dualize, InvolutionAndImages) {
  const Instance inst = random_formula(std::vector<Relation>{kPath, kImp}, 5, 4, 9);
  const DualInstance d = dualize(inst.formula, *inst.from, *inst.to);
  const DualInstance dd = dualize(d.formula, d.s, d.t);
  EXPECT_EQ(dd.formula, inst.formula);
  EXPECT_EQ(dd.s, *inst.from);
  EXPECT_EQ(dd.t, *inst.to);
  EXPECT_EQ(kOr.complement_image(), Relation::from_strings({"10", "01", "00"}));

  // The independent-set clause (y | !z | !x) and its complement image.
  const Relation is_rel = gen_independent_set_instance(SimpleGraph(2, {{1, 2}})).formula.relations()[0].relation;
  const Relation image = is_rel.complement_image();
  EXPECT_EQ(image, Relation::from_strings({"000", "001", "010", "011", "101", "110", "111"}));
  EXPECT_TRUE(is_nand_free(image));
  EXPECT_FALSE(is_dual_horn_free(image));
  EXPECT_TRUE(is_or_free(is_rel));
  EXPECT_FALSE(is_horn_free(is_rel));
}

TEST(Dualize, FlagsExchange) {
  Rng rng(62);
  for (int trial = 0; trial < 200; ++trial) {
    const Relation r = random_relation_attempt(2 + static_cast<int>(rng.below(3)), rng);
    const RelationFlags f = flags_of(r), g = flags_of(r.complement_image());
    EXPECT_EQ(f.or_free, g.nand_free);
    EXPECT_EQ(f.horn_free, g.dual_horn_free);
    EXPECT_EQ(f.horn, g.dual_horn);
  }
}

TEST(OrHornFree, DualPipelineMatchesOracle) {
  Rng rng(63);
  for (int trial = 0; trial < 80; ++trial) {
    const fuzz::RelationSource dual_rels = [](Rng& r) {
      return std::vector<Relation>{random_navigable_relation(3, r.below(~0ull)).complement_image()};
    };
    const Instance inst = fuzz::draw_instance(rng, dual_rels, 1, 8, 4);
    const SolveResult r = shortest_path_or_horn_free(inst.formula, *inst.from, *inst.to);
    const PathResult o = bfs_shortest(inst.formula, *inst.from, *inst.to);
    ASSERT_EQ(r.outcome == Outcome::Path, o.connected());
    if (o.connected()) EXPECT_EQ(r.length(), o.length());
  }
  EXPECT_THROW(shortest_path_or_horn_free(single(kPath), A("000"), A("000")), Error);
}

TEST(Cwb, Examples) {
  const SolveResult r = shortest_path_cwb(single(kOr), A("01"), A("10"));
  ASSERT_EQ(r.outcome, Outcome::Path);
  EXPECT_EQ(format_sequence(r.path), "x1+ x2-");
  EXPECT_TRUE(shortest_path_cwb(single(kOr), A("11"), A("11")).path.empty());
  EXPECT_EQ(shortest_path_cwb(single(Relation::from_strings({"01", "10"})), A("01"), A("10")).outcome,
            Outcome::NotConnected);
  EXPECT_THROW(shortest_path_cwb(single(kPath), A("000"), A("000")), Error);
}

TEST(Solve, Dispatch) {
  const SolveResult path = solve(single(kPath), A("000"), A("110"));
  EXPECT_EQ(path.outcome, Outcome::Path);
  EXPECT_EQ(path.length(), 4u);
  EXPECT_EQ(to_line(path), "PATH 4 x3+ x1+ x2+ x3-");
  EXPECT_EQ(to_line(solve(single(kPath), A("000"), A("000"))), "PATH 0");
  EXPECT_EQ(to_line(solve(equality_by_implications(), A("00"), A("11"))), "NOTCONNECTED");

  const Instance vc = gen_vertex_cover_instance(SimpleGraph(3, {{1, 2}, {2, 3}, {1, 3}}));
  SolveOptions with_oracle;
  with_oracle.allow_oracle = true;
  const SolveResult hard = solve(vc.formula, *vc.from, *vc.to, with_oracle);
  EXPECT_EQ(hard.outcome, Outcome::Hard);
  EXPECT_EQ(hard.hard_verdict, Verdict::TightNotNavigable);
  ASSERT_TRUE(hard.oracle.has_value());
  EXPECT_EQ(hard.oracle->length(), 10u);
  EXPECT_EQ(to_line(solve(vc.formula, *vc.from, *vc.to)), "HARD tight-not-navigable");

  Formula cnf(3);
  for (const char* missing : {"000", "100", "110", "111"}) {
    Relation full = Relation::full(3);
    std::vector<Tuple> keep;
    for (Tuple t : full.tuples())
      if (t != tuple_from_string(missing)) keep.push_back(t);
    cnf.add_relation(std::string("R") + missing, Relation(3, keep));
    cnf.add_clause(cnf.relations().size() - 1, {Slot::ref(1), Slot::ref(2), Slot::ref(3)});
  }
  const SolveResult nt = solve(cnf, A("001"), A("011"));
  EXPECT_EQ(nt.outcome, Outcome::Hard);
  EXPECT_EQ(nt.hard_verdict, Verdict::NotTight);
  EXPECT_FALSE(nt.oracle.has_value());

  SolveOptions low_cap = with_oracle;
  low_cap.oracle_cap = 5;
  EXPECT_FALSE(solve(vc.formula, *vc.from, *vc.to, low_cap).oracle.has_value());
  EXPECT_THROW(solve(single(kPath), A("010"), A("000")), Error);
}

TEST(Solve, UnusedRelationsDoNotAffectDispatch) {
  Formula phi = single(kPath);
  phi.add_relation("NAND", Relation::from_strings({"00", "01", "10"}));
  EXPECT_EQ(solve(phi, A("000"), A("110")).outcome, Outcome::Path);
}
