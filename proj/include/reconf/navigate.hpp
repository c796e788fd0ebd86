#pragma once

#include <functional>
#include <optional>
#include <string>

#include "reconf/flip.hpp"
#include "reconf/flip_order.hpp"
#include "reconf/formula.hpp"
#include "reconf/recon_graph.hpp"
#include "reconf/relation.hpp"

namespace reconf {

enum class Outcome { Path, NotConnected, Hard };

struct SolveStats {
  int levels = 0;            // recursion levels of the shortest-path loop
  int eta_at_entry = 0;      // zeros(s) + zeros(t)
  std::size_t dags_built = 0;
};

struct SolveResult {
  Outcome outcome = Outcome::NotConnected;
  FlipSequence path;                    // meaningful when outcome == Path
  std::optional<Verdict> hard_verdict;  // set when outcome == Hard
  std::optional<PathResult> oracle;     // exact fallback answer for hard classes
  SolveStats stats;

  std::size_t length() const { return path.size(); }
};

// State of one level of the shortest-path loop, reported before recursing.
struct LevelTrace {
  int level = 0;
  Assignment s, t;
  FlipSet s_lower, t_lower;
  int eta = 0;
};

using TraceFn = std::function<void(const LevelTrace&)>;

// Shortest flip sequence for formulas whose relations are all NAND-free and
// dual-Horn-free: lift both endpoints by the smallest lower sets of the
// flips they need from each other, then repeat from the lifted pair.
SolveResult shortest_path_navigable(const Formula& phi, const Assignment& s, const Assignment& t,
                                    const TraceFn& trace = {});

struct DualInstance {
  Formula formula;
  Assignment s, t;
};

// Complements every relation tuple, both endpoints and every clause constant.
// An involution exchanging OR-free/NAND-free and Horn-free/dual-Horn-free.
DualInstance dualize(const Formula& phi, const Assignment& s, const Assignment& t);

// OR-free + Horn-free route: solve the dual instance, then swap flip signs.
SolveResult shortest_path_or_horn_free(const Formula& phi, const Assignment& s,
                                       const Assignment& t, const TraceFn& trace = {});

// Componentwise-bijunctive route: repeatedly flip the lowest differing
// variable whose flip keeps the formula satisfied.
SolveResult shortest_path_cwb(const Formula& phi, const Assignment& s, const Assignment& t);

struct SolveOptions {
  bool allow_oracle = false;
  int oracle_cap = kDefaultStateCap;
  TraceFn trace;
};

// Classifies the relations used by phi and dispatches to the matching
// polynomial route; non-navigable sets report Hard, optionally with the BFS
// answer when the formula fits under the oracle cap.
SolveResult solve(const Formula& phi, const Assignment& s, const Assignment& t,
                  const SolveOptions& options = {});

// Line protocol: "PATH <len> <tokens...>", "NOTCONNECTED", "HARD <verdict>".
std::string to_line(const PathResult& result);
std::string to_line(const SolveResult& result);

}  // namespace reconf
