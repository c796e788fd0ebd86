#include "reconf/relation.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <shared_mutex>
#include <sstream>
#include <unordered_map>

#include "reconf/error.hpp"
#include "reconf/recon_graph.hpp"
#include "text_util.hpp"

namespace reconf {

namespace {

void check_arity(int arity) {
  if (arity < 1 || arity > kMaxArity) {
    throw Error(ErrorKind::Usage, "relation arity " + std::to_string(arity) +
                                      " outside the supported range 1.." +
                                      std::to_string(kMaxArity));
  }
}

const Relation& or_relation() {
  static const Relation r = Relation::from_strings({"01", "10", "11"});
  return r;
}

const Relation& nand_relation() {
  static const Relation r = Relation::from_strings({"00", "01", "10"});
  return r;
}

Relation cube_without(Tuple excluded) {
  Relation full = Relation::full(3);
  std::vector<Tuple> rows;
  for (Tuple t : full.tuples())
    if (t != excluded) rows.push_back(t);
  return Relation(3, rows);
}

// Satisfying set of (x or not y or not z).
const Relation& horn_clause_relation() {
  static const Relation r = cube_without(0b011);
  return r;
}

// Satisfying set of (not x or y or z).
const Relation& dual_horn_clause_relation() {
  static const Relation r = cube_without(0b100);
  return r;
}

// True iff no restriction of `relation` into `pattern.arity()` positions
// equals `pattern`.
bool avoids_pattern(const Relation& relation, const Relation& pattern) {
  if (relation.arity() < pattern.arity()) return true;
  bool found = false;
  for_each_restriction_map(relation.arity(), pattern.arity(), [&](const RestrictionMap& map) {
    found = restrict(relation, map) == pattern;
    return !found;
  });
  return !found;
}

template <typename Op>
bool closed_under_binary(const Relation& relation, Op op) {
  const auto rows = relation.tuples();
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = i + 1; j < rows.size(); ++j)
      if (!relation.contains(op(rows[i], rows[j]))) return false;
  return true;
}

// Triples with a repeated argument are skipped: majority and triple-XOR both
// return a member of the relation on them.
template <typename Op>
bool closed_under_ternary(const Relation& relation, Op op) {
  const auto rows = relation.tuples();
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = i + 1; j < rows.size(); ++j)
      for (std::size_t l = j + 1; l < rows.size(); ++l)
        if (!relation.contains(op(rows[i], rows[j], rows[l]))) return false;
  return true;
}

}  // namespace

std::string tuple_to_string(Tuple t, int arity) {
  std::string s(arity, '0');
  for (int p = 1; p <= arity; ++p)
    if (tuple_bit(t, p, arity)) s[p - 1] = '1';
  return s;
}

Tuple tuple_from_string(std::string_view bits) {
  if (bits.empty() || bits.size() > static_cast<std::size_t>(kMaxArity))
    throw Error(ErrorKind::Usage, "tuple '" + std::string(bits) + "' has unsupported length");
  Tuple t = 0;
  for (char c : bits) {
    if (c != '0' && c != '1')
      throw Error(ErrorKind::Usage, "tuple '" + std::string(bits) + "' is not a bitstring");
    t = (t << 1) | static_cast<Tuple>(c == '1');
  }
  return t;
}

// --- RestrictionMap --------------------------------------------------------

RestrictionMap::RestrictionMap(int source_arity, int target_arity, std::vector<Slot> targets)
    : target_arity_(target_arity), targets_(std::move(targets)) {
  if (static_cast<int>(targets_.size()) != source_arity)
    throw Error(ErrorKind::Usage, "restriction map must map every source position");
  if (target_arity < 1 || target_arity > source_arity)
    throw Error(ErrorKind::Usage, "restriction target arity must lie in 1..source arity");
  for (const Slot& s : targets_)
    if (s.is_ref() && (s.index < 1 || s.index > target_arity))
      throw Error(ErrorKind::Usage, "restriction map target position out of range");
}

RestrictionMap RestrictionMap::identity(int arity) {
  std::vector<Slot> targets;
  for (int p = 1; p <= arity; ++p) targets.push_back(Slot::ref(p));
  return RestrictionMap(arity, arity, std::move(targets));
}

Tuple RestrictionMap::expand(Tuple r) const {
  const int k = source_arity();
  Tuple out = 0;
  for (int p = 1; p <= k; ++p) {
    const Slot& s = targets_[p - 1];
    const bool bit = s.is_ref() ? tuple_bit(r, s.index, target_arity_) : s.constant_value();
    out = (out << 1) | static_cast<Tuple>(bit);
  }
  return out;
}

RestrictionMap RestrictionMap::then(const RestrictionMap& next) const {
  if (next.source_arity() != target_arity_)
    throw Error(ErrorKind::Usage, "restriction maps do not compose: arity mismatch");
  std::vector<Slot> composed;
  composed.reserve(targets_.size());
  for (const Slot& s : targets_) composed.push_back(s.is_ref() ? next[s.index] : s);
  return RestrictionMap(source_arity(), next.target_arity(), std::move(composed));
}

// --- Relation --------------------------------------------------------------

Relation::Relation(int arity) : arity_(arity) { check_arity(arity); }

Relation::Relation(int arity, std::span<const Tuple> tuples) : Relation(arity) {
  for (Tuple t : tuples) {
    if (t >= (Tuple{1} << arity))
      throw Error(ErrorKind::Usage, "tuple value exceeds relation arity");
    members_.set(t);
  }
}

Relation Relation::from_strings(std::initializer_list<std::string_view> rows) {
  if (rows.size() == 0) throw Error(ErrorKind::Usage, "cannot infer arity from no tuples");
  const int arity = static_cast<int>(rows.begin()->size());
  std::vector<Tuple> tuples;
  for (std::string_view row : rows) {
    if (static_cast<int>(row.size()) != arity)
      throw Error(ErrorKind::Usage, "tuple '" + std::string(row) + "' has the wrong length");
    tuples.push_back(tuple_from_string(row));
  }
  return Relation(arity, tuples);
}

Relation Relation::from_strings(int arity, std::span<const std::string> rows) {
  std::vector<Tuple> tuples;
  for (const std::string& row : rows) {
    if (static_cast<int>(row.size()) != arity)
      throw Error(ErrorKind::Usage, "tuple '" + row + "' has the wrong length");
    tuples.push_back(tuple_from_string(row));
  }
  return Relation(arity, tuples);
}

Relation Relation::full(int arity) {
  Relation r(arity);
  for (Tuple t = 0; t < (Tuple{1} << arity); ++t) r.members_.set(t);
  return r;
}

std::vector<Tuple> Relation::tuples() const {
  std::vector<Tuple> out;
  out.reserve(size());
  for (Tuple t = 0; t < (Tuple{1} << arity_); ++t)
    if (members_.test(t)) out.push_back(t);
  return out;
}

Relation Relation::complement_image() const {
  const Tuple mask = (Tuple{1} << arity_) - 1;
  Relation out(arity_);
  for (Tuple t : tuples()) out.members_.set(t ^ mask);
  return out;
}

std::string Relation::key() const {
  std::string k = std::to_string(arity_) + ":";
  const auto words = (Tuple{1} << arity_);
  for (Tuple t = 0; t < words; t += 4) {
    int nibble = 0;
    for (Tuple b = 0; b < 4 && t + b < words; ++b)
      if (members_.test(t + b)) nibble |= 1 << b;
    k.push_back("0123456789abcdef"[nibble]);
  }
  return k;
}

std::string Relation::to_string() const {
  std::string s = "{";
  bool first = true;
  for (Tuple t : tuples()) {
    if (!first) s += ",";
    s += tuple_to_string(t, arity_);
    first = false;
  }
  return s + "}";
}

// --- restrictions ----------------------------------------------------------

Relation restrict(const Relation& relation, const RestrictionMap& map) {
  if (map.source_arity() != relation.arity()) {
    throw Error(ErrorKind::Usage, "restriction map has source arity " +
                                      std::to_string(map.source_arity()) +
                                      " but relation has arity " +
                                      std::to_string(relation.arity()));
  }
  const int k = map.target_arity();
  std::vector<Tuple> kept;
  for (Tuple r = 0; r < (Tuple{1} << k); ++r)
    if (relation.contains(map.expand(r))) kept.push_back(r);
  return Relation(k, kept);
}

std::vector<Relation> all_restrictions(const Relation& relation, int target_arity) {
  if (target_arity < 1 || target_arity > relation.arity())
    throw Error(ErrorKind::Usage, "target arity must lie in 1..relation arity");
  std::vector<Relation> out;
  for_each_restriction_map(relation.arity(), target_arity, [&](const RestrictionMap& map) {
    out.push_back(restrict(relation, map));
  });
  return out;
}

std::vector<Relation> distinct_surjective_restrictions(const Relation& relation) {
  const int k = relation.arity();
  std::map<std::string, Relation> seen;
  std::vector<Slot> targets(k);
  // Restricted-growth labelling: position i may open block m+1 where m is
  // the largest block used so far.
  std::function<void(int, int)> assign = [&](int i, int blocks) {
    if (i == k) {
      if (blocks == 0) return;
      Relation r = restrict(relation, RestrictionMap(k, blocks, targets));
      seen.try_emplace(r.key(), std::move(r));
      return;
    }
    targets[i] = Slot::zero();
    assign(i + 1, blocks);
    targets[i] = Slot::one();
    assign(i + 1, blocks);
    for (int b = 1; b <= blocks + 1; ++b) {
      targets[i] = Slot::ref(b);
      assign(i + 1, std::max(blocks, b));
    }
  };
  assign(0, 0);
  std::vector<Relation> out;
  out.reserve(seen.size());
  for (auto& [key, r] : seen) out.push_back(r);
  return out;
}

// --- syntactic classes (polymorphism closure) ------------------------------

bool is_bijunctive(const Relation& relation) {
  return closed_under_ternary(relation, [](Tuple a, Tuple b, Tuple c) {
    return (a & b) | (b & c) | (a & c);
  });
}

bool is_horn(const Relation& relation) {
  return closed_under_binary(relation, [](Tuple a, Tuple b) { return a & b; });
}

bool is_dual_horn(const Relation& relation) {
  return closed_under_binary(relation, [](Tuple a, Tuple b) { return a | b; });
}

bool is_affine(const Relation& relation) {
  return closed_under_ternary(relation, [](Tuple a, Tuple b, Tuple c) { return a ^ b ^ c; });
}

// --- forbidden restrictions ------------------------------------------------

bool is_or_free(const Relation& relation) { return avoids_pattern(relation, or_relation()); }

bool is_nand_free(const Relation& relation) { return avoids_pattern(relation, nand_relation()); }

bool is_horn_free(const Relation& relation) {
  return avoids_pattern(relation, horn_clause_relation());
}

bool is_dual_horn_free(const Relation& relation) {
  return avoids_pattern(relation, dual_horn_clause_relation());
}

// Non-surjective maps only add free coordinates, which neither splits
// components nor affects bijunctivity; target relabelling is likewise
// irrelevant. The surjective restricted-growth maps therefore suffice.
bool is_componentwise_bijunctive(const Relation& relation) {
  for (const Relation& r : distinct_surjective_restrictions(relation)) {
    for (const auto& component : components(r)) {
      if (!is_bijunctive(Relation(r.arity(), component))) return false;
    }
  }
  return true;
}

const RelationFlags& flags_of(const Relation& relation) {
  static std::shared_mutex mutex;
  static std::unordered_map<std::string, RelationFlags> cache;
  const std::string key = relation.key();
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  RelationFlags f;
  f.bijunctive = is_bijunctive(relation);
  f.horn = is_horn(relation);
  f.dual_horn = is_dual_horn(relation);
  f.affine = is_affine(relation);
  f.componentwise_bijunctive = is_componentwise_bijunctive(relation);
  f.or_free = is_or_free(relation);
  f.nand_free = is_nand_free(relation);
  f.horn_free = is_horn_free(relation);
  f.dual_horn_free = is_dual_horn_free(relation);
  std::unique_lock lock(mutex);
  return cache.try_emplace(key, f).first->second;
}

Classification classify_set(std::span<const Relation> relations) {
  Classification c;
  bool all_nand_dhf = true, all_or_hf = true, all_cwb = true;
  bool all_or_free = true, all_nand_free = true;
  for (const Relation& r : relations) {
    const RelationFlags& f = flags_of(r);
    c.flags.push_back(f);
    all_nand_dhf = all_nand_dhf && f.nand_free && f.dual_horn_free;
    all_or_hf = all_or_hf && f.or_free && f.horn_free;
    all_cwb = all_cwb && f.componentwise_bijunctive;
    all_or_free = all_or_free && f.or_free;
    all_nand_free = all_nand_free && f.nand_free;
  }
  if (all_nand_dhf) {
    c.verdict = Verdict::Navigable;
    c.kind = NavigableKind::NandAndDualHornFree;
  } else if (all_or_hf) {
    c.verdict = Verdict::Navigable;
    c.kind = NavigableKind::OrAndHornFree;
  } else if (all_cwb) {
    c.verdict = Verdict::Navigable;
    c.kind = NavigableKind::ComponentwiseBijunctive;
  } else if (all_or_free || all_nand_free) {
    c.verdict = Verdict::TightNotNavigable;
  } else {
    c.verdict = Verdict::NotTight;
  }
  return c;
}

std::string_view verdict_name(Verdict verdict) {
  switch (verdict) {
    case Verdict::Navigable: return "navigable";
    case Verdict::TightNotNavigable: return "tight-not-navigable";
    case Verdict::NotTight: return "not-tight";
  }
  return "unknown";
}

std::string_view kind_name(NavigableKind kind) {
  switch (kind) {
    case NavigableKind::NandAndDualHornFree: return "nand-free + dual-horn-free";
    case NavigableKind::OrAndHornFree: return "or-free + horn-free";
    case NavigableKind::ComponentwiseBijunctive: return "componentwise bijunctive";
  }
  return "unknown";
}

// --- .rel format -----------------------------------------------------------

Relation parse_relation(std::string_view text) {
  std::optional<int> arity;
  std::vector<std::string> rows;
  std::set<std::string> seen;
  int line_no = 0;
  for (std::string_view raw : detail::split_lines(text)) {
    ++line_no;
    const std::string_view line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (!arity) {
      const auto words = detail::split_words(line);
      int k = 0;
      if (words.size() != 2 || words[0] != "arity" || !detail::parse_int(words[1], k))
        throw ParseError(line_no, "expected 'arity <k>'");
      if (k < 1 || k > kMaxArity)
        throw ParseError(line_no, "arity " + std::to_string(k) + " unsupported (1.." +
                                      std::to_string(kMaxArity) + ")");
      arity = k;
      continue;
    }
    if (static_cast<int>(line.size()) != *arity ||
        line.find_first_not_of("01") != std::string_view::npos)
      throw ParseError(line_no, "expected a " + std::to_string(*arity) + "-bit tuple");
    if (!seen.insert(std::string(line)).second)
      throw ParseError(line_no, "duplicate tuple " + std::string(line));
    rows.emplace_back(line);
  }
  if (!arity) throw ParseError(line_no, "missing 'arity <k>' header");
  return Relation::from_strings(*arity, rows);
}

std::string serialize_relation(const Relation& relation) {
  std::ostringstream out;
  out << "arity " << relation.arity() << "\n";
  for (Tuple t : relation.tuples()) out << tuple_to_string(t, relation.arity()) << "\n";
  return out.str();
}

}  // namespace reconf
