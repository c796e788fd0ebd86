#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "reconf/error.hpp"
#include "reconf/formula.hpp"
#include "reconf/relation.hpp"

namespace reconf {

// Undirected simple graph on vertices 1..num_vertices.
class SimpleGraph {
 public:
  explicit SimpleGraph(int num_vertices);
  SimpleGraph(int num_vertices, std::vector<std::pair<int, int>> edges);

  int num_vertices() const { return num_vertices_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  // Rejects self-loops, duplicates and out-of-range endpoints.
  void add_edge(int u, int v);

 private:
  int num_vertices_;
  std::vector<std::pair<int, int>> edges_;
};

// "graph <n>" then "edge <u> <v>" lines, 1-indexed; '#' comments.
SimpleGraph parse_graph(std::string_view text);

// Variable layout shared by both reductions: x_v = v, and for the i-th edge
// (0-based) y_e = |V| + 2i + 1, z_e = |V| + 2i + 2.
int edge_y_var(const SimpleGraph& g, std::size_t edge);
int edge_z_var(const SimpleGraph& g, std::size_t edge);

// Clauses (y_e | !z_e | x_u) and (z_e | !y_e | x_v) per edge; s = all 0,
// t = x-variables 0 and y/z-variables 1.
Instance gen_vertex_cover_instance(const SimpleGraph& g);

// Clauses (y_e | !z_e | !x_u) and (!y_e | z_e | !x_v) per edge; s = all 1,
// t = x-variables 1 and y/z-variables 0.
Instance gen_independent_set_instance(const SimpleGraph& g);

// Deterministic generator for fuzzing. Bounded draws use rejection sampling
// on the raw 64-bit stream so results do not depend on the standard
// library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t below(std::uint64_t bound);
  bool coin(std::uint64_t numerator, std::uint64_t denominator) {
    return below(denominator) < numerator;
  }

 private:
  std::mt19937_64 engine_;
};

// Rejection-samples nonempty relations until one is NAND-free and
// dual-Horn-free.
Relation random_navigable_relation(int arity, std::uint64_t seed);

// Relation drawn until `accept` holds (nonempty, density drawn per attempt).
template <typename Accept>
Relation random_relation_where(int arity, Rng& rng, Accept&& accept, int max_attempts = 100000);

// m clauses over relations named R1..Rk with random variable maps (a slot
// is a constant with probability 1/10); s and t drawn uniformly from the
// explicit solution set, which requires n <= 16.
Instance random_formula(std::span<const Relation> relations, int num_vars, int num_clauses,
                        std::uint64_t seed);

// ---------------------------------------------------------------------------

Relation random_relation_attempt(int arity, Rng& rng);

template <typename Accept>
Relation random_relation_where(int arity, Rng& rng, Accept&& accept, int max_attempts) {
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    Relation r = random_relation_attempt(arity, rng);
    if (accept(r)) return r;
  }
  throw Error(ErrorKind::Internal, "random relation sampling exhausted " +
                                       std::to_string(max_attempts) + " attempts");
}

}  // namespace reconf
