#include "reconf/flip_order.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <queue>
#include <shared_mutex>
#include <sstream>
#include <unordered_map>

#include "reconf/error.hpp"

namespace reconf {

namespace {

void require_member(const Relation& relation, Tuple s) {
  if (!relation.contains(s)) {
    throw Error(ErrorKind::Precondition, "state " + tuple_to_string(s, relation.arity()) +
                                             " is not in relation " + relation.to_string());
  }
}

PartialOrder compute_partial_order(const Relation& relation, Tuple s) {
  const int k = relation.arity();
  // States reachable from s by positive flips; each one is s plus a valid
  // positive flip set.
  std::vector<Tuple> up{s};
  std::vector<bool> seen(std::size_t{1} << k, false);
  seen[s] = true;
  for (std::size_t head = 0; head < up.size(); ++head) {
    for (int p = 1; p <= k; ++p) {
      if (tuple_bit(up[head], p, k)) continue;
      const Tuple w = with_bit(up[head], p, k, true);
      if (!seen[w] && relation.contains(w)) {
        seen[w] = true;
        up.push_back(w);
      }
    }
  }

  Tuple reached = 0;
  for (Tuple u : up) reached |= u ^ s;

  PartialOrder po;
  for (int p = 1; p <= k; ++p)
    if (tuple_bit(reached, p, k)) po.flips.push_back(p);

  // A prefix of a valid sequence is valid, so "a precedes b in every valid
  // positive sequence containing b" is the same as "every reachable set
  // containing b contains a".
  for (int a : po.flips) {
    for (int b : po.flips) {
      if (a == b) continue;
      const bool implied = std::all_of(up.begin(), up.end(), [&](Tuple u) {
        return !tuple_bit(u, b, k) || tuple_bit(u, a, k);
      });
      if (implied) po.pairs.emplace_back(a, b);
    }
  }
  for (const auto& [a, b] : po.pairs) {
    const bool has_middle = std::any_of(po.flips.begin(), po.flips.end(), [&](int c) {
      return c != a && c != b && po.precedes(a, c) && po.precedes(c, b);
    });
    if (!has_middle) po.covers.emplace_back(a, b);
  }
  return po;
}

// Vertices that lie on a directed cycle (members of a strongly connected
// component with more than one vertex; the graph has no self-loops).
std::vector<char> on_cycle(int n, const std::vector<std::vector<int>>& succs,
                           const std::vector<int>& vertices) {
  std::vector<int> index(n + 1, -1), low(n + 1, 0);
  std::vector<char> stacked(n + 1, 0), cyclic(n + 1, 0);
  std::vector<int> stack;
  int counter = 0;

  std::function<void(int)> visit = [&](int v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    stacked[v] = 1;
    for (int w : succs[v]) {
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (stacked[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<int> component;
      int w;
      do {
        w = stack.back();
        stack.pop_back();
        stacked[w] = 0;
        component.push_back(w);
      } while (w != v);
      if (component.size() > 1)
        for (int c : component) cyclic[c] = 1;
    }
  };
  for (int v : vertices)
    if (index[v] < 0) visit(v);
  return cyclic;
}

}  // namespace

std::vector<FlipSequence> valid_positive_sequences(const Relation& relation, Tuple s) {
  require_member(relation, s);
  const int k = relation.arity();
  std::vector<FlipSequence> out;
  FlipSequence current;
  std::function<void(Tuple)> extend = [&](Tuple u) {
    out.push_back(current);
    for (int p = 1; p <= k; ++p) {
      if (tuple_bit(u, p, k)) continue;
      const Tuple w = with_bit(u, p, k, true);
      if (!relation.contains(w)) continue;
      current.push_back(Flip::up(p));
      extend(w);
      current.pop_back();
    }
  };
  extend(s);
  return out;
}

bool PartialOrder::contains(int flip) const {
  return std::binary_search(flips.begin(), flips.end(), flip);
}

bool PartialOrder::precedes(int a, int b) const {
  return std::binary_search(pairs.begin(), pairs.end(), std::make_pair(a, b));
}

PartialOrder relation_partial_order(const Relation& relation, Tuple s) {
  const RelationFlags& flags = flags_of(relation);
  if (!flags.nand_free || !flags.dual_horn_free) {
    throw Error(ErrorKind::Precondition, "relation " + relation.to_string() +
                                             " is not NAND-free and dual-Horn-free");
  }
  require_member(relation, s);

  static std::shared_mutex mutex;
  static std::unordered_map<std::string, PartialOrder> cache;
  const std::string key = relation.key() + "@" + std::to_string(s);
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  PartialOrder po = compute_partial_order(relation, s);
  std::unique_lock lock(mutex);
  return cache.try_emplace(key, std::move(po)).first->second;
}

// --- FlipOrderDag ----------------------------------------------------------

FlipOrderDag::FlipOrderDag(int num_vars, std::vector<int> nodes,
                           std::vector<std::pair<int, int>> edges)
    : num_vars_(num_vars), nodes_(std::move(nodes)), edges_(std::move(edges)),
      member_(num_vars + 1, 0), preds_(num_vars + 1), succs_(num_vars + 1) {
  std::sort(nodes_.begin(), nodes_.end());
  nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  for (int v : nodes_) {
    if (v < 1 || v > num_vars) throw Error(ErrorKind::Usage, "flip DAG node out of range");
    member_[v] = 1;
  }
  for (const auto& [a, b] : edges_) {
    if (!contains(a) || !contains(b)) throw Error(ErrorKind::Usage, "flip DAG edge outside node set");
    succs_[a].push_back(b);
    preds_[b].push_back(a);
  }
  const auto cyclic = on_cycle(num_vars_, succs_, nodes_);
  if (std::any_of(cyclic.begin(), cyclic.end(), [](char c) { return c != 0; }))
    throw Error(ErrorKind::Internal, "flip DAG contains a cycle");
}

bool FlipOrderDag::precedes(int a, int b) const {
  if (!contains(a) || !contains(b) || a == b) return false;
  std::vector<char> seen(num_vars_ + 1, 0);
  std::vector<int> stack{a};
  seen[a] = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w : succs_[v]) {
      if (w == b) return true;
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  return false;
}

FlipOrderDag formula_flip_dag(const Formula& phi, const Assignment& s) {
  require_satisfying(phi, s, "start");
  const int n = phi.num_vars();

  std::vector<char> blocked(n + 1, 0);
  std::vector<std::vector<int>> succs(n + 1);
  std::vector<std::pair<int, int>> edges;

  for (const Clause& clause : phi.clauses()) {
    const Relation& relation = phi.relation_of(clause);
    const RelationFlags& flags = flags_of(relation);
    if (!flags.nand_free || !flags.dual_horn_free) {
      throw Error(ErrorKind::Precondition, "relation " + relation.to_string() +
                                               " is not NAND-free and dual-Horn-free");
    }

    // Effective relation over the clause's distinct variables.
    std::vector<int> vars;
    std::vector<Slot> targets;
    for (const Slot& slot : clause.args) {
      if (slot.is_constant()) {
        targets.push_back(slot);
        continue;
      }
      auto it = std::find(vars.begin(), vars.end(), slot.index);
      if (it == vars.end()) {
        vars.push_back(slot.index);
        it = vars.end() - 1;
      }
      targets.push_back(Slot::ref(static_cast<int>(it - vars.begin()) + 1));
    }
    if (vars.empty()) continue;
    const int k = static_cast<int>(vars.size());
    const Relation effective =
        restrict(relation, RestrictionMap(relation.arity(), k, std::move(targets)));
    Tuple state = 0;
    for (int v : vars) state = (state << 1) | static_cast<Tuple>(s[v]);

    const PartialOrder po = relation_partial_order(effective, state);
    for (int p = 1; p <= k; ++p)
      if (!s[vars[p - 1]] && !po.contains(p)) blocked[vars[p - 1]] = 1;
    for (const auto& [a, b] : po.covers) {
      const int from = vars[a - 1], to = vars[b - 1];
      edges.emplace_back(from, to);
      succs[from].push_back(to);
    }
  }

  std::vector<int> candidates;
  for (int v = 1; v <= n; ++v)
    if (!s[v]) candidates.push_back(v);

  std::vector<char> marked = on_cycle(n, succs, candidates);
  std::vector<int> frontier;
  for (int v : candidates) {
    if (blocked[v]) marked[v] = 1;
    if (marked[v]) frontier.push_back(v);
  }
  while (!frontier.empty()) {
    const int v = frontier.back();
    frontier.pop_back();
    for (int w : succs[v]) {
      if (!marked[w]) {
        marked[w] = 1;
        frontier.push_back(w);
      }
    }
  }

  std::vector<int> nodes;
  for (int v : candidates)
    if (!marked[v]) nodes.push_back(v);
  std::vector<std::pair<int, int>> kept;
  for (const auto& [a, b] : edges)
    if (!marked[a] && !marked[b]) kept.emplace_back(a, b);
  return FlipOrderDag(n, std::move(nodes), std::move(kept));
}

FlipSet smallest_lower_set(const FlipOrderDag& dag, const FlipSet& flips) {
  for (int v : flips)
    if (!dag.contains(v))
      throw Error(ErrorKind::Precondition, "flip x" + std::to_string(v) + "+ is not in the DAG");
  FlipSet closure = flips;
  std::vector<int> stack(flips.begin(), flips.end());
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int u : dag.predecessors(v))
      if (closure.insert(u).second) stack.push_back(u);
  }
  return closure;
}

FlipSequence order_respecting_sequence(const FlipOrderDag& dag, const FlipSet& flips) {
  std::unordered_map<int, int> pending;
  for (int v : flips) {
    if (!dag.contains(v))
      throw Error(ErrorKind::Precondition, "flip x" + std::to_string(v) + "+ is not in the DAG");
    for (int u : dag.predecessors(v)) {
      if (!flips.contains(u)) {
        throw Error(ErrorKind::Precondition, "flip set is not downward closed: x" +
                                                 std::to_string(u) + "+ must precede x" +
                                                 std::to_string(v) + "+");
      }
    }
    pending[v] = static_cast<int>(dag.predecessors(v).size());
  }
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (const auto& [v, count] : pending)
    if (count == 0) ready.push(v);
  FlipSequence out;
  while (!ready.empty()) {
    const int v = ready.top();
    ready.pop();
    out.push_back(Flip::up(v));
    for (int w : dag.successors(v))
      if (--pending[w] == 0) ready.push(w);
  }
  return out;
}

FlipSequence canonicalize(const Formula& phi, const Assignment& s, const FlipSequence& sequence) {
  require_satisfying(phi, s, "start");
  if (const auto bad = first_invalid_step(phi, s, sequence)) {
    throw Error(ErrorKind::Precondition, "flip sequence is invalid at step " +
                                             std::to_string(*bad + 1) + " (" +
                                             to_string(sequence[*bad]) + ")");
  }
  FlipSequence f = sequence;
  std::size_t i = 0;
  while (i + 1 < f.size()) {
    if (f[i].positive() || !f[i + 1].positive()) {
      ++i;
      continue;
    }
    if (f[i].var == f[i + 1].var) {
      f.erase(f.begin() + static_cast<std::ptrdiff_t>(i), f.begin() + static_cast<std::ptrdiff_t>(i) + 2);
    } else {
      std::swap(f[i], f[i + 1]);
    }
    i = i > 0 ? i - 1 : 0;
  }
  const auto expected = apply_sequence(phi, s, sequence);
  if (first_invalid_step(phi, s, f) || apply_sequence(phi, s, f) != expected) {
    throw Error(ErrorKind::Precondition,
                "canonical reordering left the satisfying set; the formula is not NAND-free");
  }
  return f;
}

std::string to_dot(const FlipOrderDag& dag) {
  std::ostringstream out;
  out << "digraph fliporder {\n";
  for (int v : dag.nodes()) out << "  \"x" << v << "+\";\n";
  for (const auto& [a, b] : dag.edges()) out << "  \"x" << a << "+\" -> \"x" << b << "+\";\n";
  out << "}\n";
  return out.str();
}

}  // namespace reconf
