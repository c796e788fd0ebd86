#include "reconf/gen.hpp"

#include <algorithm>

#include "reconf/error.hpp"
#include "reconf/recon_graph.hpp"
#include "text_util.hpp"

namespace reconf {

namespace {

// {0,1}^3 minus one tuple: the satisfying set of a single 3-clause.
Relation clause_relation(Tuple excluded) {
  std::vector<Tuple> rows;
  for (Tuple t = 0; t < 8; ++t)
    if (t != excluded) rows.push_back(t);
  return Relation(3, rows);
}

}  // namespace

SimpleGraph::SimpleGraph(int num_vertices) : num_vertices_(num_vertices) {
  if (num_vertices < 1) throw Error(ErrorKind::Usage, "a graph needs at least one vertex");
}

SimpleGraph::SimpleGraph(int num_vertices, std::vector<std::pair<int, int>> edges)
    : SimpleGraph(num_vertices) {
  for (const auto& [u, v] : edges) add_edge(u, v);
}

void SimpleGraph::add_edge(int u, int v) {
  if (u < 1 || v < 1 || u > num_vertices_ || v > num_vertices_)
    throw Error(ErrorKind::Usage, "edge endpoint out of range");
  if (u == v) throw Error(ErrorKind::Usage, "self-loop on vertex " + std::to_string(u));
  const auto key = std::minmax(u, v);
  for (const auto& [a, b] : edges_)
    if (std::minmax(a, b) == key)
      throw Error(ErrorKind::Usage, "duplicate edge " + std::to_string(u) + " " + std::to_string(v));
  edges_.emplace_back(u, v);
}

SimpleGraph parse_graph(std::string_view text) {
  std::optional<SimpleGraph> g;
  int line_no = 0;
  for (std::string_view raw : detail::split_lines(text)) {
    ++line_no;
    const std::string_view line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto words = detail::split_words(line);
    if (words[0] == "graph") {
      int n = 0;
      if (g) throw ParseError(line_no, "duplicate 'graph' line");
      if (words.size() != 2 || !detail::parse_int(words[1], n) || n < 1)
        throw ParseError(line_no, "malformed 'graph' line: expected 'graph <n>' with n >= 1");
      g.emplace(n);
    } else if (words[0] == "edge") {
      int u = 0, v = 0;
      if (!g) throw ParseError(line_no, "expected 'graph <n>' before edges");
      if (words.size() != 3 || !detail::parse_int(words[1], u) || !detail::parse_int(words[2], v))
        throw ParseError(line_no, "malformed 'edge' line: expected 'edge <u> <v>'");
      try {
        g->add_edge(u, v);
      } catch (const Error& e) {
        throw ParseError(line_no, e.what());
      }
    } else {
      throw ParseError(line_no, "unknown keyword '" + std::string(words[0]) + "'");
    }
  }
  if (!g) throw ParseError(line_no, "missing 'graph <n>' line");
  return *g;
}

int edge_y_var(const SimpleGraph& g, std::size_t edge) {
  return g.num_vertices() + 2 * static_cast<int>(edge) + 1;
}

int edge_z_var(const SimpleGraph& g, std::size_t edge) {
  return g.num_vertices() + 2 * static_cast<int>(edge) + 2;
}

Instance gen_vertex_cover_instance(const SimpleGraph& g) {
  const int n = g.num_vertices() + 2 * static_cast<int>(g.edges().size());
  Instance inst;
  inst.formula = Formula(n);
  // (a | !b | c) over positions (a, b, c) excludes 010.
  const std::size_t rel = inst.formula.add_relation("vc", clause_relation(0b010));
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    const auto [u, v] = g.edges()[i];
    const int y = edge_y_var(g, i), z = edge_z_var(g, i);
    inst.formula.add_clause(rel, {Slot::ref(y), Slot::ref(z), Slot::ref(u)});
    inst.formula.add_clause(rel, {Slot::ref(z), Slot::ref(y), Slot::ref(v)});
  }
  inst.from = Assignment(n, false);
  inst.to = Assignment(n, true);
  for (int x = 1; x <= g.num_vertices(); ++x) inst.to->set(x, false);
  return inst;
}

Instance gen_independent_set_instance(const SimpleGraph& g) {
  const int n = g.num_vertices() + 2 * static_cast<int>(g.edges().size());
  Instance inst;
  inst.formula = Formula(n);
  // (a | !b | !c) over positions (a, b, c) excludes 011.
  const std::size_t rel = inst.formula.add_relation("is", clause_relation(0b011));
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    const auto [u, v] = g.edges()[i];
    const int y = edge_y_var(g, i), z = edge_z_var(g, i);
    inst.formula.add_clause(rel, {Slot::ref(y), Slot::ref(z), Slot::ref(u)});
    inst.formula.add_clause(rel, {Slot::ref(z), Slot::ref(y), Slot::ref(v)});
  }
  inst.from = Assignment(n, true);
  inst.to = Assignment(n, false);
  for (int x = 1; x <= g.num_vertices(); ++x) inst.to->set(x, true);
  return inst;
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorKind::Usage, "empty sampling range");
  const std::uint64_t limit = engine_.max() - (engine_.max() % bound);
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

Relation random_relation_attempt(int arity, Rng& rng) {
  const std::uint64_t density = 1 + rng.below(15);  // in sixteenths
  std::vector<Tuple> rows;
  while (rows.empty()) {
    for (Tuple t = 0; t < (Tuple{1} << arity); ++t)
      if (rng.coin(density, 16)) rows.push_back(t);
  }
  return Relation(arity, rows);
}

Relation random_navigable_relation(int arity, std::uint64_t seed) {
  if (arity < 1 || arity > 4)
    throw Error(ErrorKind::Usage, "random navigable relations support arity 1..4");
  Rng rng(seed);
  return random_relation_where(arity, rng, [](const Relation& r) {
    return is_nand_free(r) && is_dual_horn_free(r);
  });
}

Instance random_formula(std::span<const Relation> relations, int num_vars, int num_clauses,
                        std::uint64_t seed) {
  if (num_vars < 1 || num_vars > 16)
    throw Error(ErrorKind::Usage, "random formulas support 1..16 variables");
  if (num_clauses < 0) throw Error(ErrorKind::Usage, "negative clause count");
  if (relations.empty() && num_clauses > 0)
    throw Error(ErrorKind::Usage, "clauses need at least one relation");

  Rng rng(seed);
  constexpr int kMaxDraws = 1000;
  for (int draw = 0; draw < kMaxDraws; ++draw) {
    Instance inst;
    inst.formula = Formula(num_vars);
    for (std::size_t i = 0; i < relations.size(); ++i)
      inst.formula.add_relation("R" + std::to_string(i + 1), relations[i]);
    for (int c = 0; c < num_clauses; ++c) {
      const std::size_t rel = rng.below(relations.size());
      std::vector<Slot> args;
      for (int p = 0; p < relations[rel].arity(); ++p) {
        if (rng.coin(1, 10))
          args.push_back(Slot::constant(rng.coin(1, 2)));
        else
          args.push_back(Slot::ref(1 + static_cast<int>(rng.below(num_vars))));
      }
      inst.formula.add_clause(rel, std::move(args));
    }

    std::vector<std::uint64_t> solutions;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << num_vars); ++code)
      if (evaluate(inst.formula, decode(code, num_vars))) solutions.push_back(code);
    if (solutions.empty()) continue;
    inst.from = decode(solutions[rng.below(solutions.size())], num_vars);
    inst.to = decode(solutions[rng.below(solutions.size())], num_vars);
    return inst;
  }
  throw Error(ErrorKind::Internal, "no satisfiable formula after " + std::to_string(kMaxDraws) +
                                       " draws");
}

}  // namespace reconf
