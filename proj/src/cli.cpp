#include "reconf/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "reconf/error.hpp"
#include "reconf/flip_order.hpp"
#include "reconf/formula.hpp"
#include "reconf/gen.hpp"
#include "reconf/navigate.hpp"
#include "reconf/recon_graph.hpp"
#include "reconf/relation.hpp"

namespace reconf {

namespace {

struct Options {
  std::string input;
  std::string from, to;
  bool verify = false;
  bool allow_oracle = false;
  bool verbose = false;
  int cap = kDefaultStateCap;
  std::uint64_t seed = 1;
  std::string format = "dot";
  std::string kind;   // gen: vc | is | random
  std::string what;   // dot: recon | fliporder
  int vars = 8, clauses = 6, arity = 3, relations = 2;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Usage, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string verdict_line(const Classification& c) {
  switch (c.verdict) {
    case Verdict::Navigable:
      return "NAVIGABLE (" + std::string(kind_name(*c.kind)) + ")";
    case Verdict::TightNotNavigable: return "NP-COMPLETE CLASS (tight, not navigable)";
    case Verdict::NotTight: return "PSPACE CLASS (not tight)";
  }
  return "";
}

Assignment endpoint(const std::string& flag, const std::optional<Assignment>& embedded,
                    const Formula& phi, std::string_view role) {
  if (!flag.empty()) {
    Assignment a = Assignment::from_string(flag);
    if (a.size() != phi.num_vars()) {
      throw Error(ErrorKind::Usage, std::string(role) + " assignment has " +
                                        std::to_string(a.size()) + " bits, formula has " +
                                        std::to_string(phi.num_vars()) + " variables");
    }
    return a;
  }
  if (embedded) return *embedded;
  throw Error(ErrorKind::Usage, "no " + std::string(role) +
                                    " assignment: pass it as a flag or embed it in the file");
}

std::string format_set(const FlipSet& set) {
  std::string s = "{";
  for (int v : set) {
    if (s.size() > 1) s += ",";
    s += "x" + std::to_string(v) + "+";
  }
  return s + "}";
}

int cmd_classify(const Options& o, std::ostream& out) {
  const Formula phi = parse_formula(read_file(o.input));
  std::vector<Relation> relations;
  for (const NamedRelation& r : phi.relations()) relations.push_back(r.relation);
  const Classification c = classify_set(relations);
  for (std::size_t i = 0; i < relations.size(); ++i) {
    const RelationFlags& f = c.flags[i];
    out << "relation " << phi.relations()[i].name << " arity=" << relations[i].arity()
        << " tuples=" << relations[i].size() << "\n";
    out << "  bijunctive=" << yes_no(f.bijunctive) << " horn=" << yes_no(f.horn)
        << " dual-horn=" << yes_no(f.dual_horn) << " affine=" << yes_no(f.affine)
        << " componentwise-bijunctive=" << yes_no(f.componentwise_bijunctive) << "\n";
    out << "  or-free=" << yes_no(f.or_free) << " nand-free=" << yes_no(f.nand_free)
        << " horn-free=" << yes_no(f.horn_free) << " dual-horn-free=" << yes_no(f.dual_horn_free)
        << "\n";
  }
  out << verdict_line(c) << "\n";
  return kExitOk;
}

int cmd_solve(const Options& o, std::ostream& out, std::ostream& err) {
  const Instance inst = parse_instance(read_file(o.input));
  const Formula& phi = inst.formula;
  const Assignment s = endpoint(o.from, inst.from, phi, "source");
  const Assignment t = endpoint(o.to, inst.to, phi, "target");

  SolveOptions options;
  options.allow_oracle = o.allow_oracle;
  options.oracle_cap = o.cap;
  if (o.verbose) {
    options.trace = [&err](const LevelTrace& level) {
      err << "level " << level.level << ": s=" << level.s.to_string() << " t=" << level.t.to_string()
          << " S'=" << format_set(level.s_lower) << " T'=" << format_set(level.t_lower)
          << " eta=" << level.eta << "\n";
    };
  }
  const SolveResult result = solve(phi, s, t, options);
  out << to_line(result) << "\n";

  if (!o.verify) return kExitOk;
  if (result.outcome == Outcome::Path) {
    const auto end = apply_sequence(phi, s, result.path);
    if (!end || *end != t) {
      err << "verify: returned path is not a valid flip sequence from source to target\n";
      return kExitInternal;
    }
  }
  if (result.outcome == Outcome::Hard || phi.num_vars() > o.cap) return kExitOk;
  const PathResult oracle = bfs_shortest(phi, s, t, o.cap);
  const bool agree = oracle.connected() == (result.outcome == Outcome::Path) &&
                     (!oracle.connected() || oracle.length() == result.length());
  if (!agree) {
    err << "verify: oracle disagrees: " << to_line(oracle) << "\n";
    return kExitInternal;
  }
  return kExitOk;
}

int cmd_oracle(const Options& o, std::ostream& out) {
  const Instance inst = parse_instance(read_file(o.input));
  const Assignment s = endpoint(o.from, inst.from, inst.formula, "source");
  const Assignment t = endpoint(o.to, inst.to, inst.formula, "target");
  out << to_line(bfs_shortest(inst.formula, s, t, o.cap)) << "\n";
  return kExitOk;
}

int cmd_gen(const Options& o, std::ostream& out) {
  if (o.kind == "vc" || o.kind == "is") {
    if (o.input.empty()) throw Error(ErrorKind::Usage, "gen " + o.kind + " needs a graph file");
    const SimpleGraph g = parse_graph(read_file(o.input));
    const Instance inst = o.kind == "vc" ? gen_vertex_cover_instance(g) : gen_independent_set_instance(g);
    out << "# " << (o.kind == "vc" ? "vertex cover" : "independent set") << " reduction: "
        << g.num_vertices() << " vertices, " << g.edges().size() << " edges\n";
    out << serialize_instance(inst);
    return kExitOk;
  }
  // random
  if (o.arity < 1 || o.arity > 4) throw Error(ErrorKind::Usage, "--arity must lie in 1..4");
  if (o.relations < 1) throw Error(ErrorKind::Usage, "--relations must be positive");
  Rng rng(o.seed);
  std::vector<Relation> relations;
  for (int i = 0; i < o.relations; ++i) relations.push_back(random_navigable_relation(o.arity, rng.below(~0ull)));
  const Instance inst = random_formula(relations, o.vars, o.clauses, rng.below(~0ull));
  out << "# random nand-free + dual-horn-free instance, seed " << o.seed << "\n";
  out << serialize_instance(inst);
  return kExitOk;
}

int cmd_dot(const Options& o, std::ostream& out) {
  const Instance inst = parse_instance(read_file(o.input));
  const Formula& phi = inst.formula;
  const bool text = o.format == "text";
  if (o.what == "recon") {
    const ReconGraph g = build_graph(phi, o.cap);
    if (!text) {
      out << to_dot(g);
      return kExitOk;
    }
    out << "states " << g.states.size() << "\n";
    for (auto code : g.states) out << decode(code, phi.num_vars()).to_string() << "\n";
    out << "edges " << g.edges.size() << "\n";
    for (const auto& [a, b] : g.edges)
      out << decode(g.states[a], phi.num_vars()).to_string() << " "
          << decode(g.states[b], phi.num_vars()).to_string() << "\n";
    return kExitOk;
  }
  const Assignment s = endpoint(o.from, inst.from, phi, "source");
  const FlipOrderDag dag = formula_flip_dag(phi, s);
  if (!text) {
    out << to_dot(dag);
    return kExitOk;
  }
  out << "nodes " << dag.nodes().size() << "\n";
  for (int v : dag.nodes()) out << "x" << v << "+\n";
  out << "edges " << dag.edges().size() << "\n";
  for (const auto& [a, b] : dag.edges()) out << "x" << a << "+ x" << b << "+\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Shortest flip sequences between satisfying assignments of CNF(S) formulas"};
  app.name("reconf");
  app.require_subcommand(1);
  Options o;

  auto* classify = app.add_subcommand("classify", "classify the formula's relation set");
  classify->add_option("formula", o.input, ".cnfs file")->required();

  auto add_endpoints = [&o](CLI::App* cmd) {
    cmd->add_option("--from", o.from, "source assignment bitstring (variable 1 leftmost)");
    cmd->add_option("--to", o.to, "target assignment bitstring");
  };
  auto add_cap = [&o](CLI::App* cmd) {
    cmd->add_option("--cap", o.cap, "variable cap for explicit enumeration")
        ->check(CLI::Range(1, kMaxStateCap));
  };

  auto* solve_cmd = app.add_subcommand("solve", "shortest flip sequence via the class-specific algorithm");
  solve_cmd->add_option("formula", o.input, ".cnfs file")->required();
  add_endpoints(solve_cmd);
  add_cap(solve_cmd);
  solve_cmd->add_flag("--verify", o.verify, "re-check the path and compare with the oracle within the cap");
  solve_cmd->add_flag("--allow-oracle", o.allow_oracle, "answer hard classes by BFS within the cap");
  solve_cmd->add_flag("-v,--verbose", o.verbose, "print per-level state to standard error");

  auto* oracle = app.add_subcommand("oracle", "shortest flip sequence by breadth-first search");
  oracle->add_option("formula", o.input, ".cnfs file")->required();
  add_endpoints(oracle);
  add_cap(oracle);

  auto* gen = app.add_subcommand("gen", "generate instances");
  gen->add_option("kind", o.kind, "vc | is | random")
      ->required()
      ->check(CLI::IsMember({"vc", "is", "random"}));
  gen->add_option("graph", o.input, "graph file (vc, is)");
  gen->add_option("--seed", o.seed, "random seed");
  gen->add_option("--vars", o.vars, "variables (random)")->check(CLI::Range(1, 16));
  gen->add_option("--clauses", o.clauses, "clauses (random)")->check(CLI::NonNegativeNumber);
  gen->add_option("--arity", o.arity, "relation arity (random)");
  gen->add_option("--relations", o.relations, "number of relations (random)");

  auto* dot = app.add_subcommand("dot", "export the reconfiguration graph or flip-order DAG");
  dot->add_option("formula", o.input, ".cnfs file")->required();
  dot->add_option("what", o.what, "recon | fliporder")
      ->required()
      ->check(CLI::IsMember({"recon", "fliporder"}));
  add_endpoints(dot);
  add_cap(dot);
  dot->add_option("--format", o.format, "text | dot")->check(CLI::IsMember({"text", "dot"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (classify->parsed()) return cmd_classify(o, out);
    if (solve_cmd->parsed()) return cmd_solve(o, out, err);
    if (oracle->parsed()) return cmd_oracle(o, out);
    if (gen->parsed()) return cmd_gen(o, out);
    if (dot->parsed()) return cmd_dot(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::Parse:
      case ErrorKind::Usage: return kExitUsage;
      case ErrorKind::Precondition:
      case ErrorKind::CapExceeded: return kExitPrecondition;
      case ErrorKind::Internal: return kExitInternal;
    }
  }
  return kExitUsage;
}

}  // namespace reconf
