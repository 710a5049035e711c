#pragma once

// Helpers shared by the test binaries: small instances, seeded random data and
// plain enumeration used as an independent reference.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "cyclicity/abelian.hpp"
#include "cyclicity/generators.hpp"
#include "cyclicity/instance.hpp"
#include "cyclicity/linalg.hpp"

namespace testing_support {

using namespace cyclicity;

inline std::int64_t draw(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long lo, long hi) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = draw(rng, lo, hi);
  return m;
}

inline IntVector iv(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline Element el(std::initializer_list<long> xs) { return {iv(xs)}; }

/// Every element of a canonical group, in lexicographic order.
inline std::vector<Element> all_elements(const CanonicalGroup& g) {
  std::vector<Element> out;
  IntVector cur(g.rank());
  while (true) {
    out.push_back({cur});
    std::size_t j = g.rank();
    while (j > 0) {
      --j;
      if (++cur[j] < g.invariant_factors()[j]) break;
      cur[j] = 0;
      if (j == 0) return out;
    }
    if (g.rank() == 0) return out;
  }
}

/// Additive closure of gens inside g, by breadth-first search.
inline std::set<IntVector> closure(const CanonicalGroup& g, const std::vector<Element>& gens) {
  std::set<IntVector> seen{g.zero().coords};
  std::vector<Element> queue{g.zero()};
  for (std::size_t h = 0; h < queue.size(); ++h)
    for (const auto& s : gens) {
      Element n = g.add(queue[h], s);
      if (seen.insert(n.coords).second) queue.push_back(n);
    }
  return seen;
}

/// Determinant by permutation expansion, for tiny matrices.
inline Integer small_det(const IntMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  Integer total = 0;
  do {
    Integer term = 1;
    for (std::size_t i = 0; i < n; ++i) term *= m(i, perm[i]);
    std::size_t inv = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inv += perm[i] > perm[j];
    total += inv % 2 ? Integer(-term) : term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// Order of Z^k / rowspan(rel) by counting, or nullopt when the relations do not
/// have full rank (infinite group) or counting would be too slow.
///
/// Any nonsingular k x k block of relations has |det| = d with d Z^k inside the
/// lattice, so the order is d^k over the number of lattice points mod d, and
/// those are found by closing the relation rows under addition mod d.
inline std::optional<Integer> brute_force_order(const Presentation& p, std::uint64_t limit = 2'000'000) {
  const std::size_t k = p.num_gens, m = p.relations.rows();
  if (k == 0) return Integer(1);
  if (m < k) return std::nullopt;
  std::vector<bool> mask(m, false);
  std::fill(mask.begin(), mask.begin() + k, true);
  Integer d = 0;
  do {
    IntMatrix sub(k, k);
    std::size_t r = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (mask[i]) {
        for (std::size_t j = 0; j < k; ++j) sub(r, j) = p.relations(i, j);
        ++r;
      }
    d = abs(small_det(sub));
  } while (d == 0 && std::prev_permutation(mask.begin(), mask.end()));
  if (d == 0) return std::nullopt;
  Integer box = 1;
  for (std::size_t j = 0; j < k; ++j) box *= d;
  if (box > Integer(static_cast<unsigned long>(limit))) return std::nullopt;

  const long dd = d.get_si();
  std::vector<std::vector<long>> gens;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<long> g(k);
    for (std::size_t j = 0; j < k; ++j) {
      Integer x = p.relations(i, j);
      reduce_mod(x, d);
      g[j] = x.get_si();
    }
    gens.push_back(g);
  }
  auto code = [&](const std::vector<long>& v) {
    long c = 0;
    for (long x : v) c = c * dd + x;
    return c;
  };
  std::vector<char> seen(box.get_ui(), 0);
  std::vector<std::vector<long>> queue{std::vector<long>(k, 0)};
  seen[0] = 1;
  for (std::size_t h = 0; h < queue.size(); ++h)
    for (const auto& g : gens) {
      std::vector<long> s(k);
      for (std::size_t j = 0; j < k; ++j) s[j] = (queue[h][j] + g[j]) % dd;
      const long c = code(s);
      if (!seen[c]) {
        seen[c] = 1;
        queue.push_back(std::move(s));
      }
    }
  return box / static_cast<unsigned long>(queue.size());
}

inline Instance build(const InstanceData& d) { return build_instance(d, true); }

/// R = M = Z/2 x Z/2 with idempotent generators e1, e2; "one" left for the solver.
inline InstanceData idempotent_square() {
  InstanceData d;
  d.ring.num_gens = 2;
  d.ring.relations = {iv({2, 0}), iv({0, 2})};
  d.ring.mul = {{iv({1, 0}), iv({0, 0})}, {iv({0, 0}), iv({0, 1})}};
  d.module.num_gens = 2;
  d.module.relations = d.ring.relations;
  d.module.action = d.ring.mul;
  return d;
}

}  // namespace testing_support
