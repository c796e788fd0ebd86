#include "reconf/formula.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "reconf/error.hpp"
#include "text_util.hpp"

namespace reconf {

namespace {

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  });
}

std::string slot_token(const Slot& s) {
  if (s.kind == Slot::Kind::Zero) return "F";
  if (s.kind == Slot::Kind::One) return "T";
  return "x" + std::to_string(s.index);
}

}  // namespace

// --- Assignment ------------------------------------------------------------

Assignment Assignment::from_string(std::string_view bits) {
  if (bits.empty()) throw Error(ErrorKind::Usage, "empty assignment");
  Assignment a(static_cast<int>(bits.size()));
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != '0' && bits[i] != '1')
      throw Error(ErrorKind::Usage, "assignment '" + std::string(bits) + "' is not a bitstring");
    a.bits_[i] = bits[i] == '1';
  }
  return a;
}

int Assignment::zeros() const {
  return static_cast<int>(std::count(bits_.begin(), bits_.end(), 0));
}

Assignment Assignment::complemented() const {
  Assignment out = *this;
  for (auto& b : out.bits_) b ^= 1;
  return out;
}

std::string Assignment::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (auto b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

int hamming(const Assignment& a, const Assignment& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::Usage, "assignments differ in length");
  int d = 0;
  for (int v = 1; v <= a.size(); ++v) d += a[v] != b[v];
  return d;
}

// --- Formula ---------------------------------------------------------------

Formula::Formula(int num_vars) : num_vars_(num_vars) {
  if (num_vars < 1) throw Error(ErrorKind::Usage, "a formula needs at least one variable");
}

std::optional<std::size_t> Formula::find_relation(std::string_view name) const {
  for (std::size_t i = 0; i < relations_.size(); ++i)
    if (relations_[i].name == name) return i;
  return std::nullopt;
}

std::size_t Formula::add_relation(std::string name, Relation relation) {
  if (!is_identifier(name)) throw Error(ErrorKind::Usage, "invalid relation name '" + name + "'");
  if (find_relation(name)) throw Error(ErrorKind::Usage, "duplicate relation name '" + name + "'");
  relations_.push_back({std::move(name), std::move(relation)});
  return relations_.size() - 1;
}

void Formula::add_clause(std::size_t relation, std::vector<Slot> args) {
  if (relation >= relations_.size()) throw Error(ErrorKind::Usage, "clause relation index out of range");
  const int arity = relations_[relation].relation.arity();
  if (static_cast<int>(args.size()) != arity) {
    throw Error(ErrorKind::Usage, "clause over '" + relations_[relation].name + "' needs " +
                                      std::to_string(arity) + " arguments, got " +
                                      std::to_string(args.size()));
  }
  for (const Slot& s : args)
    if (s.is_ref() && (s.index < 1 || s.index > num_vars_))
      throw Error(ErrorKind::Usage, "variable index out of range: x" + std::to_string(s.index));
  clauses_.push_back({relation, std::move(args)});
}

void Formula::add_clause(std::string_view relation_name, std::vector<Slot> args) {
  const auto index = find_relation(relation_name);
  if (!index) throw Error(ErrorKind::Usage, "undefined relation '" + std::string(relation_name) + "'");
  add_clause(*index, std::move(args));
}

std::vector<Relation> Formula::used_relations() const {
  std::vector<bool> used(relations_.size(), false);
  for (const Clause& c : clauses_) used[c.relation] = true;
  std::vector<Relation> out;
  for (std::size_t i = 0; i < relations_.size(); ++i)
    if (used[i]) out.push_back(relations_[i].relation);
  return out;
}

// --- evaluation ------------------------------------------------------------

Tuple induced(const Clause& clause, const Relation& relation, const Assignment& a) {
  if (static_cast<int>(clause.args.size()) != relation.arity())
    throw Error(ErrorKind::Usage, "clause does not match relation arity");
  Tuple t = 0;
  for (const Slot& s : clause.args) {
    bool bit;
    if (s.is_ref()) {
      if (s.index < 1 || s.index > a.size())
        throw Error(ErrorKind::Usage, "variable index out of range: x" + std::to_string(s.index));
      bit = a[s.index];
    } else {
      bit = s.constant_value();
    }
    t = (t << 1) | static_cast<Tuple>(bit);
  }
  return t;
}

std::optional<std::size_t> first_violated_clause(const Formula& phi, const Assignment& a) {
  if (a.size() != phi.num_vars()) {
    throw Error(ErrorKind::Usage, "assignment has " + std::to_string(a.size()) +
                                      " bits but the formula has " +
                                      std::to_string(phi.num_vars()) + " variables");
  }
  const auto& clauses = phi.clauses();
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    const Relation& r = phi.relation_of(clauses[i]);
    if (!r.contains(induced(clauses[i], r, a))) return i;
  }
  return std::nullopt;
}

bool evaluate(const Formula& phi, const Assignment& a) {
  return !first_violated_clause(phi, a).has_value();
}

void require_satisfying(const Formula& phi, const Assignment& a, std::string_view role) {
  if (const auto bad = first_violated_clause(phi, a)) {
    throw Error(ErrorKind::Precondition, std::string(role) + " assignment " + a.to_string() +
                                             " violates clause " + std::to_string(*bad + 1));
  }
}

// --- .cnfs format ----------------------------------------------------------

Instance parse_instance(std::string_view text) {
  std::optional<Formula> phi;
  Instance instance;
  std::optional<std::string> from_bits, to_bits;
  int from_line = 0, to_line = 0;

  // Open relation block, if any.
  std::optional<std::string> block_name;
  int block_arity = 0;
  int block_line = 0;
  std::vector<std::string> block_rows;
  std::set<std::string> block_seen;

  const auto lines = detail::split_lines(text);
  int line_no = 0;
  for (std::string_view raw : lines) {
    ++line_no;
    const std::string_view line = detail::trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      const std::string_view body = detail::trim(line.substr(1));
      if (body.starts_with("s=")) {
        from_bits = std::string(detail::trim(body.substr(2)));
        from_line = line_no;
      } else if (body.starts_with("t=")) {
        to_bits = std::string(detail::trim(body.substr(2)));
        to_line = line_no;
      }
      continue;
    }

    if (block_name) {
      if (line == "end") {
        try {
          phi->add_relation(*block_name, Relation::from_strings(block_arity, block_rows));
        } catch (const Error& e) {
          throw ParseError(block_line, e.what());
        }
        block_name.reset();
        continue;
      }
      if (static_cast<int>(line.size()) != block_arity ||
          line.find_first_not_of("01") != std::string_view::npos)
        throw ParseError(line_no, "malformed tuple: expected " + std::to_string(block_arity) +
                                      " bits or 'end'");
      if (!block_seen.insert(std::string(line)).second)
        throw ParseError(line_no, "duplicate tuple " + std::string(line));
      block_rows.emplace_back(line);
      continue;
    }

    const auto words = detail::split_words(line);
    const std::string_view keyword = words[0];
    if (keyword == "vars") {
      int n = 0;
      if (phi) throw ParseError(line_no, "duplicate 'vars' line");
      if (words.size() != 2 || !detail::parse_int(words[1], n) || n < 1)
        throw ParseError(line_no, "malformed 'vars' line: expected 'vars <n>' with n >= 1");
      phi.emplace(n);
      continue;
    }
    if (!phi) throw ParseError(line_no, "expected 'vars <n>' before any other declaration");

    if (keyword == "relation") {
      int k = 0;
      if (words.size() != 3 || !detail::parse_int(words[2], k))
        throw ParseError(line_no, "malformed 'relation' line: expected 'relation <name> <k>'");
      if (k < 1 || k > kMaxArity)
        throw ParseError(line_no, "relation arity " + std::to_string(k) + " unsupported (1.." +
                                      std::to_string(kMaxArity) + ")");
      if (!is_identifier(words[1]))
        throw ParseError(line_no, "invalid relation name '" + std::string(words[1]) + "'");
      if (phi->find_relation(words[1]))
        throw ParseError(line_no, "duplicate relation '" + std::string(words[1]) + "'");
      block_name = std::string(words[1]);
      block_arity = k;
      block_line = line_no;
      block_rows.clear();
      block_seen.clear();
      continue;
    }

    if (keyword == "clause") {
      if (words.size() < 2) throw ParseError(line_no, "malformed 'clause' line: missing relation name");
      const auto rel = phi->find_relation(words[1]);
      if (!rel) throw ParseError(line_no, "undefined relation '" + std::string(words[1]) + "'");
      std::vector<Slot> args;
      for (std::size_t i = 2; i < words.size(); ++i) {
        const std::string_view w = words[i];
        int v = 0;
        if (w == "T") {
          args.push_back(Slot::one());
        } else if (w == "F") {
          args.push_back(Slot::zero());
        } else if (w.size() >= 2 && w[0] == 'x' && detail::parse_int(w.substr(1), v)) {
          if (v < 1 || v > phi->num_vars())
            throw ParseError(line_no, "variable index out of range: " + std::string(w));
          args.push_back(Slot::ref(v));
        } else {
          throw ParseError(line_no, "malformed clause argument '" + std::string(w) + "'");
        }
      }
      const int arity = phi->relations()[*rel].relation.arity();
      if (static_cast<int>(args.size()) != arity)
        throw ParseError(line_no, "wrong number of clause arguments: relation '" +
                                      std::string(words[1]) + "' has arity " + std::to_string(arity));
      phi->add_clause(*rel, std::move(args));
      continue;
    }

    throw ParseError(line_no, "unknown keyword '" + std::string(keyword) + "'");
  }

  if (block_name) throw ParseError(block_line, "relation '" + *block_name + "' is missing 'end'");
  if (!phi) throw ParseError(line_no, "missing 'vars <n>' line");

  instance.formula = std::move(*phi);
  auto read_endpoint = [&](const std::optional<std::string>& bits, int where) -> std::optional<Assignment> {
    if (!bits) return std::nullopt;
    if (static_cast<int>(bits->size()) != instance.formula.num_vars() ||
        bits->find_first_not_of("01") != std::string::npos)
      throw ParseError(where, "embedded assignment must be a " +
                                  std::to_string(instance.formula.num_vars()) + "-bit string");
    return Assignment::from_string(*bits);
  };
  instance.from = read_endpoint(from_bits, from_line);
  instance.to = read_endpoint(to_bits, to_line);
  return instance;
}

Formula parse_formula(std::string_view text) { return parse_instance(text).formula; }

std::string serialize_formula(const Formula& phi) {
  std::ostringstream out;
  out << "vars " << phi.num_vars() << "\n";
  for (const NamedRelation& r : phi.relations()) {
    out << "relation " << r.name << " " << r.relation.arity() << "\n";
    for (Tuple t : r.relation.tuples()) out << tuple_to_string(t, r.relation.arity()) << "\n";
    out << "end\n";
  }
  for (const Clause& c : phi.clauses()) {
    out << "clause " << phi.relations()[c.relation].name;
    for (const Slot& s : c.args) out << " " << slot_token(s);
    out << "\n";
  }
  return out.str();
}

std::string serialize_instance(const Instance& instance) {
  std::string out;
  if (instance.from) out += "# s=" + instance.from->to_string() + "\n";
  if (instance.to) out += "# t=" + instance.to->to_string() + "\n";
  return out + serialize_formula(instance.formula);
}

}  // namespace reconf
