#pragma once

#include <bitset>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace reconf {

// Largest relation arity accepted anywhere in the library.
inline constexpr int kMaxArity = 8;

// A k-bit tuple stored as the numeric value of its bitstring: position 1 is
// the most significant of the k bits.
using Tuple = std::uint32_t;

inline bool tuple_bit(Tuple t, int position, int arity) {
  return (t >> (arity - position)) & 1u;
}

inline Tuple with_bit(Tuple t, int position, int arity, bool value) {
  const Tuple mask = Tuple{1} << (arity - position);
  return value ? (t | mask) : (t & ~mask);
}

std::string tuple_to_string(Tuple t, int arity);
Tuple tuple_from_string(std::string_view bits);

// Image of one position under a restriction map or a clause map: either a
// reference to a target position / formula variable (1-based) or a constant.
struct Slot {
  enum class Kind : std::uint8_t { Ref, Zero, One };

  Kind kind = Kind::Zero;
  int index = 0;

  static Slot ref(int i) { return {Kind::Ref, i}; }
  static Slot zero() { return {Kind::Zero, 0}; }
  static Slot one() { return {Kind::One, 0}; }
  static Slot constant(bool value) { return value ? one() : zero(); }

  bool is_ref() const { return kind == Kind::Ref; }
  bool is_constant() const { return kind != Kind::Ref; }
  bool constant_value() const { return kind == Kind::One; }

  friend bool operator==(const Slot&, const Slot&) = default;
};

// Map X from the k positions of a relation to {1..k'} and the two constants.
class RestrictionMap {
 public:
  RestrictionMap(int source_arity, int target_arity, std::vector<Slot> targets);

  static RestrictionMap identity(int arity);

  int source_arity() const { return static_cast<int>(targets_.size()); }
  int target_arity() const { return target_arity_; }
  const std::vector<Slot>& targets() const { return targets_; }
  const Slot& operator[](int position) const { return targets_[position - 1]; }

  // f_X: expands a k'-bit tuple into the k-bit tuple it induces.
  Tuple expand(Tuple r) const;

  // The map that applies *this first and `next` second, substituting
  // through constants.
  RestrictionMap then(const RestrictionMap& next) const;

  friend bool operator==(const RestrictionMap&, const RestrictionMap&) = default;

 private:
  int target_arity_;
  std::vector<Slot> targets_;
};

class Relation {
 public:
  explicit Relation(int arity);
  Relation(int arity, std::span<const Tuple> tuples);
  Relation(int arity, std::initializer_list<Tuple> tuples)
      : Relation(arity, std::span<const Tuple>(tuples.begin(), tuples.size())) {}

  // Builds from bitstrings such as {"000", "011"}; arity is the string length.
  static Relation from_strings(std::initializer_list<std::string_view> rows);
  static Relation from_strings(int arity, std::span<const std::string> rows);
  static Relation full(int arity);

  int arity() const { return arity_; }
  std::size_t size() const { return members_.count(); }
  bool empty() const { return members_.none(); }
  bool contains(Tuple t) const { return t < (Tuple{1} << arity_) && members_.test(t); }

  // Tuples in ascending numeric order.
  std::vector<Tuple> tuples() const;

  // {~r : r in R}, the image under complementing every bit.
  Relation complement_image() const;

  // Compact value-identity key, usable for hashing and caches.
  std::string key() const;

  std::string to_string() const;  // "{000,011}"

  friend bool operator==(const Relation&, const Relation&) = default;

 private:
  int arity_;
  std::bitset<(1u << kMaxArity)> members_;
};

// R' = { r : f_X(r) in R }.
Relation restrict(const Relation& relation, const RestrictionMap& map);

// Calls `visit(map)` for each of the (k'+2)^k maps from the relation's
// positions into {1..k'} and the two constants. A visitor returning bool
// stops the enumeration by returning false.
template <typename Visitor>
void for_each_restriction_map(int source_arity, int target_arity, Visitor&& visit);

// restrict(R, X) over every map X into arity k'; one entry per map.
std::vector<Relation> all_restrictions(const Relation& relation, int target_arity);

bool is_bijunctive(const Relation& relation);
bool is_horn(const Relation& relation);
bool is_dual_horn(const Relation& relation);
bool is_affine(const Relation& relation);

bool is_or_free(const Relation& relation);
bool is_nand_free(const Relation& relation);
bool is_horn_free(const Relation& relation);
bool is_dual_horn_free(const Relation& relation);
bool is_componentwise_bijunctive(const Relation& relation);

// Restrictions of every arity up to k, one per value, obtained from the
// surjective maps with targets numbered in order of first use.
std::vector<Relation> distinct_surjective_restrictions(const Relation& relation);

struct RelationFlags {
  bool bijunctive = false;
  bool horn = false;
  bool dual_horn = false;
  bool affine = false;
  bool componentwise_bijunctive = false;
  bool or_free = false;
  bool nand_free = false;
  bool horn_free = false;
  bool dual_horn_free = false;

  friend bool operator==(const RelationFlags&, const RelationFlags&) = default;
};

// All predicates of one relation, memoized by relation value.
const RelationFlags& flags_of(const Relation& relation);

enum class Verdict { Navigable, TightNotNavigable, NotTight };

enum class NavigableKind { NandAndDualHornFree, OrAndHornFree, ComponentwiseBijunctive };

struct Classification {
  Verdict verdict = Verdict::NotTight;
  std::optional<NavigableKind> kind;  // set iff verdict == Navigable
  std::vector<RelationFlags> flags;   // one per input relation
};

// Trichotomy verdict for a finite relation set. When several navigable kinds
// hold, NAND-free + dual-Horn-free wins, then OR-free + Horn-free.
Classification classify_set(std::span<const Relation> relations);

std::string_view verdict_name(Verdict verdict);
std::string_view kind_name(NavigableKind kind);

// .rel text format: "arity <k>" then one k-bit tuple per line, '#' comments.
Relation parse_relation(std::string_view text);
std::string serialize_relation(const Relation& relation);

// ---------------------------------------------------------------------------

template <typename Visitor>
void for_each_restriction_map(int source_arity, int target_arity, Visitor&& visit) {
  const int choices = target_arity + 2;
  std::vector<int> digits(source_arity, 0);
  std::vector<Slot> targets(source_arity);
  while (true) {
    for (int i = 0; i < source_arity; ++i) {
      const int d = digits[i];
      targets[i] = d == 0 ? Slot::zero() : d == 1 ? Slot::one() : Slot::ref(d - 1);
    }
    RestrictionMap map(source_arity, target_arity, targets);
    if constexpr (std::is_same_v<std::invoke_result_t<Visitor&, const RestrictionMap&>, bool>) {
      if (!visit(map)) return;
    } else {
      visit(map);
    }
    int i = source_arity - 1;
    while (i >= 0 && ++digits[i] == choices) {
      digits[i] = 0;
      --i;
    }
    if (i < 0) break;
  }
}

}  // namespace reconf
