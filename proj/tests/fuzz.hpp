#pragma once

#include <functional>
#include <vector>

#include "reconf/error.hpp"
#include "reconf/gen.hpp"

namespace fuzz {

using RelationSource = std::function<std::vector<reconf::Relation>(reconf::Rng&)>;

// Draws relations, n in [min_n, max_n] and m in [0, max_m] until
// random_formula finds a satisfiable instance. Some draws (say a relation
// forcing two positions apart, applied with n = 1) have no solutions at all.
inline reconf::Instance draw_instance(reconf::Rng& rng, const RelationSource& relations, int min_n,
                                      int max_n, int max_m) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const std::vector<reconf::Relation> rels = relations(rng);
    const int n = min_n + static_cast<int>(rng.below(max_n - min_n + 1));
    const int m = static_cast<int>(rng.below(max_m + 1));
    try {
      return reconf::random_formula(rels, n, m, rng.below(~0ull));
    } catch (const reconf::Error& e) {
      if (e.kind() != reconf::ErrorKind::Internal) throw;
    }
  }
  throw reconf::Error(reconf::ErrorKind::Internal, "fuzz: no satisfiable instance drawn");
}

inline RelationSource navigable(int max_relations, int min_arity, int max_arity) {
  return [=](reconf::Rng& rng) {
    std::vector<reconf::Relation> out;
    const int count = 1 + static_cast<int>(rng.below(max_relations));
    for (int i = 0; i < count; ++i) {
      const int arity = min_arity + static_cast<int>(rng.below(max_arity - min_arity + 1));
      out.push_back(reconf::random_navigable_relation(arity, rng.below(~0ull)));
    }
    return out;
  };
}

inline RelationSource arbitrary(int max_relations, int min_arity, int max_arity) {
  return [=](reconf::Rng& rng) {
    std::vector<reconf::Relation> out;
    const int count = 1 + static_cast<int>(rng.below(max_relations));
    for (int i = 0; i < count; ++i) {
      const int arity = min_arity + static_cast<int>(rng.below(max_arity - min_arity + 1));
      out.push_back(reconf::random_relation_attempt(arity, rng));
    }
    return out;
  };
}

}  // namespace fuzz
