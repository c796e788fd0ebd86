#include "reconf/recon_graph.hpp"

#include <algorithm>
#include <sstream>

#include "reconf/error.hpp"

namespace reconf {

namespace {

void check_cap(const Formula& phi, int cap) {
  if (cap < 1 || cap > kMaxStateCap)
    throw Error(ErrorKind::Usage, "state cap must lie in 1.." + std::to_string(kMaxStateCap));
  if (phi.num_vars() > cap) {
    throw Error(ErrorKind::CapExceeded, "formula has " + std::to_string(phi.num_vars()) +
                                            " variables, above the state cap of " +
                                            std::to_string(cap));
  }
}

// Clause evaluation over integer-coded assignments.
class CodedFormula {
 public:
  explicit CodedFormula(const Formula& phi) : phi_(phi), n_(phi.num_vars()), touching_(n_ + 1) {
    const auto& clauses = phi.clauses();
    for (std::size_t i = 0; i < clauses.size(); ++i)
      for (const Slot& s : clauses[i].args)
        if (s.is_ref() && (touching_[s.index].empty() || touching_[s.index].back() != i))
          touching_[s.index].push_back(i);
  }

  bool clause_holds(std::size_t i, std::uint64_t code) const {
    const Clause& c = phi_.clauses()[i];
    Tuple t = 0;
    for (const Slot& s : c.args) {
      const bool bit = s.is_ref() ? (code >> (n_ - s.index)) & 1u : s.constant_value();
      t = (t << 1) | static_cast<Tuple>(bit);
    }
    return phi_.relation_of(c).contains(t);
  }

  bool satisfies(std::uint64_t code) const {
    for (std::size_t i = 0; i < phi_.clauses().size(); ++i)
      if (!clause_holds(i, code)) return false;
    return true;
  }

  // `code` differs from a satisfying assignment only in `var`.
  bool satisfies_after_flip(std::uint64_t code, int var) const {
    for (std::size_t i : touching_[var])
      if (!clause_holds(i, code)) return false;
    return true;
  }

  std::uint64_t bit(int var) const { return std::uint64_t{1} << (n_ - var); }

 private:
  const Formula& phi_;
  int n_;
  std::vector<std::vector<std::size_t>> touching_;
};

}  // namespace

std::uint64_t encode(const Assignment& a) {
  if (a.size() > 64) throw Error(ErrorKind::Usage, "assignment too long to encode");
  std::uint64_t code = 0;
  for (int v = 1; v <= a.size(); ++v) code = (code << 1) | static_cast<std::uint64_t>(a[v]);
  return code;
}

Assignment decode(std::uint64_t code, int num_vars) {
  Assignment a(num_vars);
  for (int v = 1; v <= num_vars; ++v) a.set(v, (code >> (num_vars - v)) & 1u);
  return a;
}

std::size_t ReconGraph::index_of(std::uint64_t code) const {
  const auto it = std::lower_bound(states.begin(), states.end(), code);
  return (it != states.end() && *it == code) ? static_cast<std::size_t>(it - states.begin())
                                             : states.size();
}

ReconGraph build_graph(const Formula& phi, int cap) {
  check_cap(phi, cap);
  const CodedFormula coded(phi);
  const int n = phi.num_vars();
  const std::uint64_t total = std::uint64_t{1} << n;

  ReconGraph g;
  g.num_vars = n;
  std::vector<bool> sat(total, false);
  for (std::uint64_t code = 0; code < total; ++code) {
    if (coded.satisfies(code)) {
      sat[code] = true;
      g.states.push_back(code);
    }
  }
  for (std::size_t i = 0; i < g.states.size(); ++i) {
    const std::uint64_t u = g.states[i];
    for (int v = 1; v <= n; ++v) {
      const std::uint64_t w = u ^ coded.bit(v);
      if (w > u && sat[w]) g.edges.emplace_back(i, g.index_of(w));
    }
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

PathResult bfs_shortest(const Formula& phi, const Assignment& s, const Assignment& t, int cap) {
  require_satisfying(phi, s, "source");
  require_satisfying(phi, t, "target");
  check_cap(phi, cap);
  if (s == t) return {FlipSequence{}};

  const CodedFormula coded(phi);
  const int n = phi.num_vars();
  const std::uint64_t source = encode(s);
  const std::uint64_t target = encode(t);

  // parent[code]: variable flipped to reach code, 0 = unvisited.
  constexpr std::uint8_t kRoot = 0xFF;
  std::vector<std::uint8_t> parent(std::size_t{1} << n, 0);
  parent[source] = kRoot;
  std::vector<std::uint64_t> queue{source};
  bool found = false;
  for (std::size_t head = 0; head < queue.size() && !found; ++head) {
    const std::uint64_t u = queue[head];
    for (int v = 1; v <= n; ++v) {
      const std::uint64_t w = u ^ coded.bit(v);
      if (parent[w] != 0 || !coded.satisfies_after_flip(w, v)) continue;
      parent[w] = static_cast<std::uint8_t>(v);
      if (w == target) {
        found = true;
        break;
      }
      queue.push_back(w);
    }
  }
  if (!found) return {std::nullopt};

  FlipSequence path;
  for (std::uint64_t cur = target; cur != source;) {
    const int v = parent[cur];
    const bool now_set = (cur & coded.bit(v)) != 0;
    path.push_back(now_set ? Flip::up(v) : Flip::down(v));
    cur ^= coded.bit(v);
  }
  std::reverse(path.begin(), path.end());
  return {std::move(path)};
}

std::vector<std::vector<Tuple>> components(const Relation& relation) {
  const int k = relation.arity();
  std::vector<std::vector<Tuple>> out;
  std::vector<bool> seen(std::size_t{1} << k, false);
  for (Tuple start : relation.tuples()) {
    if (seen[start]) continue;
    std::vector<Tuple> comp{start};
    seen[start] = true;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      for (int p = 1; p <= k; ++p) {
        const Tuple w = comp[head] ^ (Tuple{1} << (k - p));
        if (!seen[w] && relation.contains(w)) {
          seen[w] = true;
          comp.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

std::string to_dot(const ReconGraph& graph) {
  std::ostringstream out;
  auto label = [&](std::uint64_t code) { return decode(code, graph.num_vars).to_string(); };
  out << "graph recon {\n";
  for (std::uint64_t code : graph.states) out << "  \"" << label(code) << "\";\n";
  for (const auto& [a, b] : graph.edges)
    out << "  \"" << label(graph.states[a]) << "\" -- \"" << label(graph.states[b]) << "\";\n";
  out << "}\n";
  return out.str();
}

}  // namespace reconf
