#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reconf/formula.hpp"

namespace reconf {

enum class Sign : std::uint8_t { Positive, Negative };

// x<var>+ sets the variable from 0 to 1, x<var>- from 1 to 0.
struct Flip {
  int var = 0;
  Sign sign = Sign::Positive;

  static Flip up(int var) { return {var, Sign::Positive}; }
  static Flip down(int var) { return {var, Sign::Negative}; }

  bool positive() const { return sign == Sign::Positive; }
  Flip inverse() const { return {var, positive() ? Sign::Negative : Sign::Positive}; }

  friend bool operator==(const Flip&, const Flip&) = default;
  friend auto operator<=>(const Flip&, const Flip&) = default;
};

using FlipSequence = std::vector<Flip>;

std::string to_string(const Flip& flip);
std::string format_sequence(const FlipSequence& sequence);  // "x3+ x1+ x2+"
FlipSequence parse_sequence(std::string_view text);

// F^-1: reversed order, every sign swapped.
FlipSequence inverse(const FlipSequence& sequence);

// Every flip swapped in sign, order kept (the image under complementing
// all variables).
FlipSequence swap_signs(const FlipSequence& sequence);

// All positive flips precede all negative flips and no flip repeats.
bool is_canonical(const FlipSequence& sequence);

// Applies one flip; returns false (leaving `a` untouched) when the flip's
// sign does not match the current value.
bool apply_flip(Assignment& a, const Flip& flip);

// Index of the first flip that is illegal or leaves `phi` unsatisfied,
// starting from satisfying `start`.
std::optional<std::size_t> first_invalid_step(const Formula& phi, const Assignment& start,
                                              const FlipSequence& sequence);

// Endpoint of `sequence` applied to `start`; nullopt when the sequence leaves
// the satisfying set at some prefix (the invalid state).
std::optional<Assignment> apply_sequence(const Formula& phi, const Assignment& start,
                                         const FlipSequence& sequence);

}  // namespace reconf
