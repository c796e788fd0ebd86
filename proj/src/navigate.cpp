#include "reconf/navigate.hpp"

#include "reconf/error.hpp"

namespace reconf {

namespace {

void require_relations(const Formula& phi, bool (*ok)(const RelationFlags&), std::string_view what) {
  for (const Relation& r : phi.used_relations()) {
    if (!ok(flags_of(r)))
      throw Error(ErrorKind::Precondition, "relation " + r.to_string() + " is not " + std::string(what));
  }
}

// Applies a positive sequence that theory says is valid; a failure here is
// a bug, not bad input.
void lift(const Formula& phi, Assignment& a, const FlipSequence& flips) {
  for (const Flip& f : flips) {
    if (!apply_flip(a, f) || !evaluate(phi, a)) {
      throw Error(ErrorKind::Internal, "order-respecting flip " + to_string(f) +
                                           " left the satisfying set at " + a.to_string());
    }
  }
}

void verify_path(const Formula& phi, const Assignment& s, const Assignment& t,
                 const FlipSequence& path) {
  const auto end = apply_sequence(phi, s, path);
  if (!end || *end != t) {
    throw Error(ErrorKind::Internal, "emitted path " + format_sequence(path) +
                                         " does not lead from " + s.to_string() + " to " +
                                         t.to_string() + " through satisfying assignments");
  }
}

SolveResult path_result(FlipSequence path) {
  SolveResult r;
  r.outcome = Outcome::Path;
  r.path = std::move(path);
  return r;
}

}  // namespace

SolveResult shortest_path_navigable(const Formula& phi, const Assignment& s, const Assignment& t,
                                    const TraceFn& trace) {
  require_satisfying(phi, s, "source");
  require_satisfying(phi, t, "target");
  require_relations(
      phi, [](const RelationFlags& f) { return f.nand_free && f.dual_horn_free; },
      "NAND-free and dual-Horn-free");

  SolveResult result;
  result.stats.eta_at_entry = s.zeros() + t.zeros();

  FlipSequence prefix;
  std::vector<FlipSequence> suffixes;
  Assignment cur_s = s, cur_t = t;
  const int n = phi.num_vars();

  while (cur_s != cur_t) {
    ++result.stats.levels;
    FlipSet need_s, need_t;
    for (int v = 1; v <= n; ++v) {
      if (!cur_s[v] && cur_t[v]) need_s.insert(v);
      if (cur_s[v] && !cur_t[v]) need_t.insert(v);
    }

    const FlipOrderDag dag_s = formula_flip_dag(phi, cur_s);
    const FlipOrderDag dag_t = formula_flip_dag(phi, cur_t);
    result.stats.dags_built += 2;
    for (int v : need_s)
      if (!dag_s.contains(v)) return result;
    for (int v : need_t)
      if (!dag_t.contains(v)) return result;

    const FlipSet lower_s = smallest_lower_set(dag_s, need_s);
    const FlipSet lower_t = smallest_lower_set(dag_t, need_t);
    const int eta_before = cur_s.zeros() + cur_t.zeros();
    if (trace) trace({result.stats.levels, cur_s, cur_t, lower_s, lower_t, eta_before});

    const FlipSequence flips_s = order_respecting_sequence(dag_s, lower_s);
    const FlipSequence flips_t = order_respecting_sequence(dag_t, lower_t);
    lift(phi, cur_s, flips_s);
    lift(phi, cur_t, flips_t);

    const int eta_after = cur_s.zeros() + cur_t.zeros();
    const int required_drop = (!need_s.empty() && !need_t.empty()) ? 2 : 1;
    if (eta_after > eta_before - required_drop) {
      throw Error(ErrorKind::Internal, "recursion measure did not decrease (" +
                                           std::to_string(eta_before) + " -> " +
                                           std::to_string(eta_after) + ")");
    }

    prefix.insert(prefix.end(), flips_s.begin(), flips_s.end());
    suffixes.push_back(flips_t);
  }

  for (auto it = suffixes.rbegin(); it != suffixes.rend(); ++it) {
    const FlipSequence back = inverse(*it);
    prefix.insert(prefix.end(), back.begin(), back.end());
  }
  verify_path(phi, s, t, prefix);
  SolveResult done = path_result(std::move(prefix));
  done.stats = result.stats;
  return done;
}

DualInstance dualize(const Formula& phi, const Assignment& s, const Assignment& t) {
  Formula dual(phi.num_vars());
  for (const NamedRelation& r : phi.relations()) dual.add_relation(r.name, r.relation.complement_image());
  for (const Clause& c : phi.clauses()) {
    std::vector<Slot> args;
    args.reserve(c.args.size());
    for (const Slot& slot : c.args)
      args.push_back(slot.is_constant() ? Slot::constant(!slot.constant_value()) : slot);
    dual.add_clause(c.relation, std::move(args));
  }
  return {std::move(dual), s.complemented(), t.complemented()};
}

SolveResult shortest_path_or_horn_free(const Formula& phi, const Assignment& s,
                                       const Assignment& t, const TraceFn& trace) {
  require_satisfying(phi, s, "source");
  require_satisfying(phi, t, "target");
  require_relations(
      phi, [](const RelationFlags& f) { return f.or_free && f.horn_free; },
      "OR-free and Horn-free");
  const DualInstance dual = dualize(phi, s, t);
  SolveResult result = shortest_path_navigable(dual.formula, dual.s, dual.t, trace);
  if (result.outcome == Outcome::Path) {
    result.path = swap_signs(result.path);
    verify_path(phi, s, t, result.path);
  }
  return result;
}

SolveResult shortest_path_cwb(const Formula& phi, const Assignment& s, const Assignment& t) {
  require_satisfying(phi, s, "source");
  require_satisfying(phi, t, "target");
  require_relations(
      phi, [](const RelationFlags& f) { return f.componentwise_bijunctive; },
      "componentwise bijunctive");

  SolveResult result;
  result.stats.eta_at_entry = s.zeros() + t.zeros();
  FlipSequence path;
  Assignment cur = s;
  while (cur != t) {
    ++result.stats.levels;
    bool moved = false;
    for (int v = 1; v <= phi.num_vars() && !moved; ++v) {
      if (cur[v] == t[v]) continue;
      const Flip f = cur[v] ? Flip::down(v) : Flip::up(v);
      cur.flip(v);
      if (evaluate(phi, cur)) {
        path.push_back(f);
        moved = true;
      } else {
        cur.flip(v);
      }
    }
    if (!moved) return result;
  }
  verify_path(phi, s, t, path);
  SolveResult done = path_result(std::move(path));
  done.stats = result.stats;
  return done;
}

SolveResult solve(const Formula& phi, const Assignment& s, const Assignment& t,
                  const SolveOptions& options) {
  require_satisfying(phi, s, "source");
  require_satisfying(phi, t, "target");

  const std::vector<Relation> used = phi.used_relations();
  const Classification c = classify_set(used);
  if (c.verdict != Verdict::Navigable) {
    SolveResult hard;
    hard.outcome = Outcome::Hard;
    hard.hard_verdict = c.verdict;
    if (options.allow_oracle && phi.num_vars() <= options.oracle_cap)
      hard.oracle = bfs_shortest(phi, s, t, options.oracle_cap);
    return hard;
  }
  switch (*c.kind) {
    case NavigableKind::NandAndDualHornFree: return shortest_path_navigable(phi, s, t, options.trace);
    case NavigableKind::OrAndHornFree: return shortest_path_or_horn_free(phi, s, t, options.trace);
    case NavigableKind::ComponentwiseBijunctive: return shortest_path_cwb(phi, s, t);
  }
  throw Error(ErrorKind::Internal, "unhandled navigable kind");
}

std::string to_line(const PathResult& result) {
  if (!result.connected()) return "NOTCONNECTED";
  std::string line = "PATH " + std::to_string(result.length());
  if (!result.path->empty()) line += " " + format_sequence(*result.path);
  return line;
}

std::string to_line(const SolveResult& result) {
  switch (result.outcome) {
    case Outcome::Path: return to_line(PathResult{result.path});
    case Outcome::NotConnected: return "NOTCONNECTED";
    case Outcome::Hard: {
      std::string line = "HARD " + std::string(verdict_name(*result.hard_verdict));
      if (result.oracle) line += "\n" + to_line(*result.oracle);
      return line;
    }
  }
  return "";
}

}  // namespace reconf
