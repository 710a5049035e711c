#pragma once

// Exhaustive search for a generator, used as ground truth on small modules.
// Works with machine integers and its own enumeration, sharing nothing with
// the echelon code beyond the canonical presentation itself.

#include <cstdint>
#include <optional>

#include "cyclicity/module.hpp"
#include "cyclicity/ring.hpp"

namespace cyclicity {

inline constexpr std::uint64_t kDefaultOracleBound = 1'000'000;

struct OracleVerdict {
  enum class Kind { kCyclic, kNotCyclic, kTooLarge };
  Kind kind = Kind::kNotCyclic;
  std::optional<Element> generator;  // first in lexicographic order, kCyclic only
  Integer module_order;
  std::uint64_t bound = kDefaultOracleBound;

  bool cyclic() const { return kind == Kind::kCyclic; }
};

const char* to_string(OracleVerdict::Kind k);

OracleVerdict brute_force(const FiniteRing& r, const FiniteModule& m, std::uint64_t bound = kDefaultOracleBound);

/// |R y| by enumeration of the subgroup generated by the g_i . y.
/// Requires |M| <= bound.
std::uint64_t cyclic_span_size(const FiniteRing& r, const FiniteModule& m, const Element& y,
                               std::uint64_t bound = kDefaultOracleBound);

}  // namespace cyclicity
