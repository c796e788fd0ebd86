#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "reconf/flip.hpp"
#include "reconf/formula.hpp"
#include "reconf/relation.hpp"

namespace reconf {

// Default and absolute limits on the number of variables for explicit
// solution-space enumeration.
inline constexpr int kDefaultStateCap = 20;
inline constexpr int kMaxStateCap = 30;

// Assignment <-> integer code with variable 1 as the most significant bit,
// so numeric order equals bitstring order.
std::uint64_t encode(const Assignment& a);
Assignment decode(std::uint64_t code, int num_vars);

struct ReconGraph {
  int num_vars = 0;
  std::vector<std::uint64_t> states;                    // ascending codes
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // indices into states, first < second

  std::size_t index_of(std::uint64_t code) const;  // states.size() when absent
};

ReconGraph build_graph(const Formula& phi, int cap = kDefaultStateCap);

struct PathResult {
  std::optional<FlipSequence> path;  // empty optional: not connected

  bool connected() const { return path.has_value(); }
  std::size_t length() const { return path ? path->size() : 0; }
};

// Breadth-first search over satisfying assignments, neighbours in ascending
// variable order, so ties resolve towards the lowest flipped variable.
PathResult bfs_shortest(const Formula& phi, const Assignment& s, const Assignment& t,
                        int cap = kDefaultStateCap);

// Connected components of G_R: each sorted ascending, ordered by first tuple.
std::vector<std::vector<Tuple>> components(const Relation& relation);

std::string to_dot(const ReconGraph& graph);

}  // namespace reconf
