#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "reconf/flip.hpp"
#include "reconf/formula.hpp"
#include "reconf/relation.hpp"

namespace reconf {

// Set of positive flips, identified by variable (or relation position).
using FlipSet = std::set<int>;

// Every positive flip sequence valid at `s` in R, empty sequence included,
// in depth-first order with positions tried in ascending order. Flip
// variables are relation positions.
std::vector<FlipSequence> valid_positive_sequences(const Relation& relation, Tuple s);

// The flips that occur in some valid positive flip set at a state, and the
// precedence order among them: a precedes b iff every valid positive
// sequence containing b also contains a, earlier.
struct PartialOrder {
  std::vector<int> flips;                    // ascending positions
  std::vector<std::pair<int, int>> pairs;    // all (a, b) with a before b, sorted
  std::vector<std::pair<int, int>> covers;   // transitive reduction of pairs

  bool contains(int flip) const;
  bool precedes(int a, int b) const;
};

// Requires R NAND-free and dual-Horn-free and s in R. Memoized per
// (relation, state).
PartialOrder relation_partial_order(const Relation& relation, Tuple s);

// Pruned precedence DAG over positive flips of a formula at a state.
class FlipOrderDag {
 public:
  FlipOrderDag() = default;
  FlipOrderDag(int num_vars, std::vector<int> nodes, std::vector<std::pair<int, int>> edges);

  int num_vars() const { return num_vars_; }
  const std::vector<int>& nodes() const { return nodes_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  bool contains(int var) const { return var >= 1 && var <= num_vars_ && member_[var]; }
  const std::vector<int>& predecessors(int var) const { return preds_[var]; }
  const std::vector<int>& successors(int var) const { return succs_[var]; }

  // Reachability: a strictly precedes b.
  bool precedes(int a, int b) const;

 private:
  int num_vars_ = 0;
  std::vector<int> nodes_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<char> member_;
  std::vector<std::vector<int>> preds_;
  std::vector<std::vector<int>> succs_;
};

// G_s for a formula whose relations are NAND-free and dual-Horn-free. Each
// clause contributes the order of its effective relation (constants and
// repeated variables collapsed by restriction). Flips on a cycle, flips
// blocked by some clause they appear in, and everything reachable from
// either are removed.
FlipOrderDag formula_flip_dag(const Formula& phi, const Assignment& s);

// Closure of A under predecessors.
FlipSet smallest_lower_set(const FlipOrderDag& dag, const FlipSet& flips);

// Topological order of a downward-closed set, lowest variable first among
// the available flips.
FlipSequence order_respecting_sequence(const FlipOrderDag& dag, const FlipSet& flips);

// Equivalent canonical sequence obtained by cancelling adjacent x- x+ and
// swapping adjacent (negative, positive) pairs on distinct variables.
// Same-sign relative order is preserved and the flip set can only shrink.
FlipSequence canonicalize(const Formula& phi, const Assignment& s, const FlipSequence& sequence);

std::string to_dot(const FlipOrderDag& dag);

}  // namespace reconf
