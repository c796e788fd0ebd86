#include "reconf/flip.hpp"

#include <set>

#include "reconf/error.hpp"
#include "text_util.hpp"

namespace reconf {

std::string to_string(const Flip& flip) {
  return "x" + std::to_string(flip.var) + (flip.positive() ? "+" : "-");
}

std::string format_sequence(const FlipSequence& sequence) {
  std::string out;
  for (const Flip& f : sequence) {
    if (!out.empty()) out += ' ';
    out += to_string(f);
  }
  return out;
}

FlipSequence parse_sequence(std::string_view text) {
  FlipSequence out;
  for (std::string_view token : detail::split_words(text)) {
    int var = 0;
    if (token.size() < 3 || token.front() != 'x' || (token.back() != '+' && token.back() != '-') ||
        !detail::parse_int(token.substr(1, token.size() - 2), var) || var < 1)
      throw Error(ErrorKind::Parse, "malformed flip token '" + std::string(token) + "'");
    out.push_back({var, token.back() == '+' ? Sign::Positive : Sign::Negative});
  }
  return out;
}

FlipSequence inverse(const FlipSequence& sequence) {
  FlipSequence out;
  out.reserve(sequence.size());
  for (auto it = sequence.rbegin(); it != sequence.rend(); ++it) out.push_back(it->inverse());
  return out;
}

FlipSequence swap_signs(const FlipSequence& sequence) {
  FlipSequence out;
  out.reserve(sequence.size());
  for (const Flip& f : sequence) out.push_back(f.inverse());
  return out;
}

bool is_canonical(const FlipSequence& sequence) {
  bool seen_negative = false;
  std::set<Flip> seen;
  for (const Flip& f : sequence) {
    if (!f.positive()) seen_negative = true;
    else if (seen_negative) return false;
    if (!seen.insert(f).second) return false;
  }
  return true;
}

bool apply_flip(Assignment& a, const Flip& flip) {
  if (flip.var < 1 || flip.var > a.size()) return false;
  if (a[flip.var] == flip.positive()) return false;
  a.flip(flip.var);
  return true;
}

std::optional<std::size_t> first_invalid_step(const Formula& phi, const Assignment& start,
                                              const FlipSequence& sequence) {
  Assignment a = start;
  for (std::size_t i = 0; i < sequence.size(); ++i)
    if (!apply_flip(a, sequence[i]) || !evaluate(phi, a)) return i;
  return std::nullopt;
}

std::optional<Assignment> apply_sequence(const Formula& phi, const Assignment& start,
                                         const FlipSequence& sequence) {
  if (!evaluate(phi, start)) return std::nullopt;
  Assignment a = start;
  for (const Flip& f : sequence)
    if (!apply_flip(a, f) || !evaluate(phi, a)) return std::nullopt;
  return a;
}

}  // namespace reconf
