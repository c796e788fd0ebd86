#include <gtest/gtest.h>

#include <algorithm>

#include "oracles.hpp"
#include "reconf/error.hpp"
#include "reconf/flip.hpp"
#include "reconf/formula.hpp"
#include "reconf/gen.hpp"

using namespace reconf;

namespace {

const Relation kPath = Relation::from_strings({"000", "001", "101", "111", "110"});

Formula path_formula() {
  Formula phi(3);
  phi.add_relation("P", kPath);
  phi.add_clause("P", {Slot::ref(1), Slot::ref(2), Slot::ref(3)});
  return phi;
}

Formula random_formula_for_test(Rng& rng) {
  const int n = 1 + static_cast<int>(rng.below(16));
  Formula phi(n);
  const int rels = 1 + static_cast<int>(rng.below(3));
  for (int i = 0; i < rels; ++i)
    phi.add_relation("R" + std::to_string(i + 1), random_relation_attempt(1 + static_cast<int>(rng.below(4)), rng));
  const int m = static_cast<int>(rng.below(11));
  for (int c = 0; c < m; ++c) {
    const std::size_t r = rng.below(rels);
    std::vector<Slot> args;
    for (int p = 0; p < phi.relations()[r].relation.arity(); ++p) {
      const auto pick = rng.below(n + 2);
      args.push_back(pick == 0 ? Slot::zero() : pick == 1 ? Slot::one() : Slot::ref(static_cast<int>(pick) - 1));
    }
    phi.add_clause(r, args);
  }
  return phi;
}

}  // namespace

TEST(Assignment, StringsAndCounts) {
  const Assignment a = Assignment::from_string("0110");
  EXPECT_EQ(a.size(), 4);
  EXPECT_FALSE(a[1]);
  EXPECT_TRUE(a[2]);
  EXPECT_EQ(a.zeros(), 2);
  EXPECT_EQ(a.complemented().to_string(), "1001");
  EXPECT_EQ(hamming(a, Assignment::from_string("1111")), 2);
  EXPECT_THROW(Assignment::from_string("01a"), Error);
  EXPECT_THROW(Assignment::from_string(""), Error);
}

TEST(Induced, SpecExamples) {
  Formula phi(2);
  phi.add_relation("R", Relation::full(3));
  phi.add_clause("R", {Slot::ref(2), Slot::one(), Slot::ref(1)});
  const Clause& c = phi.clauses()[0];
  EXPECT_EQ(tuple_to_string(induced(c, phi.relation_of(c), Assignment::from_string("10")), 3), "011");
  for (const char* a : {"00", "01", "10", "11"}) {
    const std::string s = a;
    const std::string expect = std::string(1, s[1]) + "1" + s[0];
    EXPECT_EQ(tuple_to_string(induced(c, phi.relation_of(c), Assignment::from_string(s)), 3), expect);
  }
  Clause zero{0, {Slot::zero(), Slot::zero(), Slot::zero()}};
  EXPECT_EQ(induced(zero, phi.relations()[0].relation, Assignment::from_string("11")), 0u);
  Clause id{0, {Slot::ref(1), Slot::ref(2), Slot::ref(3)}};
  EXPECT_EQ(induced(id, kPath, Assignment::from_string("101")), tuple_from_string("101"));
  EXPECT_THROW(induced(id, kPath, Assignment::from_string("10")), Error);
}

TEST(Evaluate, SpecExamples) {
  EXPECT_TRUE(evaluate(Formula(3), Assignment::from_string("010")));
  const Formula phi = path_formula();
  EXPECT_FALSE(evaluate(phi, Assignment::from_string("010")));
  EXPECT_TRUE(evaluate(phi, Assignment::from_string("111")));
  EXPECT_EQ(first_violated_clause(phi, Assignment::from_string("010")), 0u);
  EXPECT_THROW(evaluate(phi, Assignment::from_string("01")), Error);
}

TEST(Evaluate, RequireSatisfyingNamesTheClause) {
  Formula phi = path_formula();
  phi.add_clause("P", {Slot::ref(3), Slot::ref(2), Slot::ref(1)});
  try {
    require_satisfying(phi, Assignment::from_string("001"), "source");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Precondition);
    EXPECT_EQ(std::string(e.what()), "source assignment 001 violates clause 2");
  }
}

TEST(Evaluate, AgreesWithOracleAndIsOrderInvariant) {
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const Formula phi = random_formula_for_test(rng);
    const oracle::Phi o = oracle::from(phi);
    Formula shuffled(phi.num_vars());
    for (const auto& r : phi.relations()) shuffled.add_relation(r.name, r.relation);
    std::vector<Clause> cs = phi.clauses();
    std::reverse(cs.begin(), cs.end());
    if (cs.size() > 2) std::rotate(cs.begin(), cs.begin() + 1, cs.end());
    for (const auto& c : cs) shuffled.add_clause(c.relation, c.args);
    for (int i = 0; i < 20; ++i) {
      Assignment a(phi.num_vars());
      for (int v = 1; v <= phi.num_vars(); ++v) a.set(v, rng.coin(1, 2));
      ASSERT_EQ(evaluate(phi, a), oracle::eval(o, oracle::bits(a)));
      ASSERT_EQ(evaluate(phi, a), evaluate(shuffled, a));
    }
  }
}

TEST(Evaluate, UnusedVariablesDoNotMatter) {
  Rng rng(32);
  for (int trial = 0; trial < 200; ++trial) {
    const Formula phi = random_formula_for_test(rng);
    std::vector<bool> used(phi.num_vars() + 1, false);
    for (const auto& c : phi.clauses())
      for (const auto& s : c.args)
        if (s.is_ref()) used[s.index] = true;
    Assignment a(phi.num_vars());
    for (int v = 1; v <= phi.num_vars(); ++v) a.set(v, rng.coin(1, 2));
    const bool base = evaluate(phi, a);
    for (int v = 1; v <= phi.num_vars(); ++v) {
      if (used[v]) continue;
      Assignment b = a;
      b.flip(v);
      EXPECT_EQ(evaluate(phi, b), base);
    }
  }
}

TEST(FormulaBuild, Validation) {
  EXPECT_THROW(Formula(0), Error);
  Formula phi(2);
  phi.add_relation("R", Relation::full(2));
  EXPECT_THROW(phi.add_relation("R", Relation::full(1)), Error);
  EXPECT_THROW(phi.add_relation("9bad", Relation::full(1)), Error);
  EXPECT_THROW(phi.add_clause("S", {Slot::ref(1), Slot::ref(2)}), Error);
  EXPECT_THROW(phi.add_clause("R", {Slot::ref(1)}), Error);
  EXPECT_THROW(phi.add_clause("R", {Slot::ref(1), Slot::ref(3)}), Error);
  phi.add_relation("U", Relation::full(1));
  phi.add_clause("R", {Slot::ref(1), Slot::ref(1)});
  EXPECT_EQ(phi.used_relations().size(), 1u);
}

TEST(Parse, MinimalAndFull) {
  const Formula one = parse_formula("vars 1\n");
  EXPECT_EQ(one.num_vars(), 1);
  EXPECT_TRUE(one.clauses().empty());

  const Instance inst = parse_instance(
      "# s=000\n# t=110\nvars 3\nrelation P 3\n000\n001\n101\n111\n110\nend\n"
      "clause P x1 x2 x3\nclause P T x1 F\n");
  EXPECT_EQ(inst.from, Assignment::from_string("000"));
  EXPECT_EQ(inst.to, Assignment::from_string("110"));
  ASSERT_EQ(inst.formula.clauses().size(), 2u);
  EXPECT_EQ(inst.formula.clauses()[1].args[0], Slot::one());
  EXPECT_EQ(inst.formula.clauses()[1].args[2], Slot::zero());
  EXPECT_EQ(inst.formula.relations()[0].relation, kPath);
}

TEST(Parse, DiagnosticsCarryLineNumbers) {
  auto line_of = [](const std::string& text) {
    try {
      parse_formula(text);
    } catch (const ParseError& e) {
      return std::make_pair(e.line(), e.message());
    }
    return std::make_pair(0, std::string());
  };
  auto [l1, m1] = line_of("vars 2\n\nclause Q x1 x2\n");
  EXPECT_EQ(l1, 3);
  EXPECT_NE(m1.find("undefined relation"), std::string::npos);
  auto [l2, m2] = line_of("vars 2\nrelation R 2\n11\nend\nclause R x1 x7\n");
  EXPECT_EQ(l2, 5);
  EXPECT_NE(m2.find("out of range"), std::string::npos);
  auto [l3, m3] = line_of("vars 2\nrelation R 2\n11\nend\nclause R x1\n");
  EXPECT_EQ(l3, 5);
  auto [l4, m4] = line_of("vars 2\nrelation R 2\n11\n");
  EXPECT_GT(l4, 0);
  EXPECT_NE(m4.find("end"), std::string::npos);
  auto [l5, m5] = line_of("relation R 2\n");
  EXPECT_EQ(l5, 1);
  auto [l6, m6] = line_of("vars 2\nfrobnicate\n");
  EXPECT_EQ(l6, 2);
  auto [l7, m7] = line_of("vars 2\nrelation R 2\n1\nend\n");
  EXPECT_EQ(l7, 3);
  auto [l8, m8] = line_of("vars 2\nrelation R 2\n11\nend\nclause R x1 y\n");
  EXPECT_EQ(l8, 5);
  EXPECT_NE(m1, m2);
  EXPECT_NE(m2, m8);
  EXPECT_THROW(parse_formula(""), ParseError);
  EXPECT_THROW(parse_instance("# s=10\nvars 3\n"), Error);
}

TEST(Parse, RoundTripRandomFormulas) {
  Rng rng(33);
  for (int trial = 0; trial < 200; ++trial) {
    const Formula phi = random_formula_for_test(rng);
    EXPECT_EQ(parse_formula(serialize_formula(phi)), phi);
  }
}

TEST(Parse, RoundTripVertexCoverK3) {
  const SimpleGraph k3(3, {{1, 2}, {2, 3}, {1, 3}});
  const Instance inst = gen_vertex_cover_instance(k3);
  EXPECT_EQ(parse_formula(serialize_formula(inst.formula)), inst.formula);
  EXPECT_EQ(parse_instance(serialize_instance(inst)), inst);
}

TEST(Flip, TokensAndSequences) {
  EXPECT_EQ(to_string(Flip::up(3)), "x3+");
  EXPECT_EQ(to_string(Flip::down(12)), "x12-");
  const FlipSequence seq = parse_sequence("x3+ x1+  x2+ x3-");
  EXPECT_EQ(format_sequence(seq), "x3+ x1+ x2+ x3-");
  EXPECT_EQ(format_sequence(inverse(seq)), "x3+ x2- x1- x3-");
  EXPECT_EQ(format_sequence(swap_signs(seq)), "x3- x1- x2- x3+");
  EXPECT_TRUE(is_canonical(seq));
  EXPECT_FALSE(is_canonical(parse_sequence("x1- x2+")));
  EXPECT_FALSE(is_canonical(parse_sequence("x1+ x1+")));
  EXPECT_TRUE(parse_sequence("").empty());
  EXPECT_THROW(parse_sequence("x0+"), Error);
  EXPECT_THROW(parse_sequence("x1"), Error);
  EXPECT_THROW(parse_sequence("y1+"), Error);
}

TEST(Flip, ApplyAndValidate) {
  const Formula phi = path_formula();
  Assignment a = Assignment::from_string("000");
  EXPECT_FALSE(apply_flip(a, Flip::down(1)));
  EXPECT_EQ(a.to_string(), "000");
  EXPECT_TRUE(apply_flip(a, Flip::up(1)));
  EXPECT_EQ(a.to_string(), "100");

  const Assignment s = Assignment::from_string("000");
  EXPECT_EQ(apply_sequence(phi, s, parse_sequence("x3+ x1+ x2+ x3-")), Assignment::from_string("110"));
  EXPECT_EQ(first_invalid_step(phi, s, parse_sequence("x3+ x2+")), 1u);
  EXPECT_EQ(first_invalid_step(phi, s, parse_sequence("x3+ x3+")), 1u);
  EXPECT_FALSE(apply_sequence(phi, s, parse_sequence("x1+")).has_value());
  EXPECT_FALSE(first_invalid_step(phi, s, {}).has_value());
}
