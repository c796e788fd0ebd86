#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reconf/relation.hpp"

namespace reconf {

// An assignment to variables 1..n; variable 1 is leftmost in the bitstring.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(int num_vars, bool value = false) : bits_(num_vars, value) {}

  static Assignment from_string(std::string_view bits);

  int size() const { return static_cast<int>(bits_.size()); }
  bool operator[](int var) const { return bits_[var - 1] != 0; }
  void set(int var, bool value) { bits_[var - 1] = value; }
  void flip(int var) { bits_[var - 1] ^= 1; }

  // Number of 0 bits (the eta measure of the shortest-path recursion).
  int zeros() const;
  Assignment complemented() const;
  std::string to_string() const;

  friend bool operator==(const Assignment&, const Assignment&) = default;
  friend auto operator<=>(const Assignment&, const Assignment&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

int hamming(const Assignment& a, const Assignment& b);

// A clause (R_i, X_i): relation index into the formula plus one slot per
// relation position, either a variable reference or a constant.
struct Clause {
  std::size_t relation = 0;
  std::vector<Slot> args;

  friend bool operator==(const Clause&, const Clause&) = default;
};

struct NamedRelation {
  std::string name;
  Relation relation;

  friend bool operator==(const NamedRelation&, const NamedRelation&) = default;
};

class Formula {
 public:
  explicit Formula(int num_vars);

  int num_vars() const { return num_vars_; }
  const std::vector<NamedRelation>& relations() const { return relations_; }
  const std::vector<Clause>& clauses() const { return clauses_; }
  const Relation& relation_of(const Clause& clause) const {
    return relations_[clause.relation].relation;
  }

  std::optional<std::size_t> find_relation(std::string_view name) const;

  // Returns the new relation's index. Names must be unique identifiers.
  std::size_t add_relation(std::string name, Relation relation);

  void add_clause(std::size_t relation, std::vector<Slot> args);
  void add_clause(std::string_view relation_name, std::vector<Slot> args);

  // Relations referenced by at least one clause, in declaration order.
  std::vector<Relation> used_relations() const;

  friend bool operator==(const Formula&, const Formula&) = default;

 private:
  int num_vars_;
  std::vector<NamedRelation> relations_;
  std::vector<Clause> clauses_;
};

// f_X(a) for one clause.
Tuple induced(const Clause& clause, const Relation& relation, const Assignment& a);

bool evaluate(const Formula& phi, const Assignment& a);

// Index (0-based) of the first clause a violates.
std::optional<std::size_t> first_violated_clause(const Formula& phi, const Assignment& a);

// Throws a Precondition error naming the violated clause (1-based) when `a`
// does not satisfy `phi`, and a Usage error when its size is wrong.
void require_satisfying(const Formula& phi, const Assignment& a, std::string_view role);

// A formula with optional endpoints embedded as "# s=<bits>" / "# t=<bits>".
struct Instance {
  Formula formula{1};
  std::optional<Assignment> from;
  std::optional<Assignment> to;

  friend bool operator==(const Instance&, const Instance&) = default;
};

// .cnfs text format.
Formula parse_formula(std::string_view text);
Instance parse_instance(std::string_view text);
std::string serialize_formula(const Formula& phi);
std::string serialize_instance(const Instance& instance);

}  // namespace reconf
