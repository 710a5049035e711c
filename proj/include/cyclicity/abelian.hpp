#pragma once

// Finite abelian groups given by generators and relations, normalized to
// invariant-factor coordinates Z/d_1 x ... x Z/d_r with d_1 | ... | d_r and
// every d_i >= 2. Subgroups are lattices between diag(d) Z^r and Z^r.

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "cyclicity/integer.hpp"
#include "cyclicity/linalg.hpp"

namespace cyclicity {

/// Z^num_gens modulo the row lattice of `relations`.
struct Presentation {
  std::size_t num_gens = 0;
  IntMatrix relations;  // each row has num_gens entries
};

/// A group element in canonical coordinates, component i in [0, d_i).
struct Element {
  IntVector coords;
  friend bool operator==(const Element&, const Element&) = default;
};

class CanonicalGroup {
 public:
  /// The trivial group on zero generators.
  CanonicalGroup() = default;
  CanonicalGroup(IntVector invariant_factors, IntMatrix to_canonical, IntMatrix from_canonical);

  const IntVector& invariant_factors() const { return factors_; }
  std::size_t rank() const { return factors_.size(); }
  std::size_t num_user_gens() const { return to_canonical_.rows(); }

  /// k x r: a user coordinate row vector z maps to z * to_canonical (reduced).
  const IntMatrix& to_canonical() const { return to_canonical_; }
  /// r x k: row i is canonical generator i written in user coordinates.
  const IntMatrix& from_canonical() const { return from_canonical_; }

  Integer order() const;
  /// Largest invariant factor (1 for the trivial group).
  Integer exponent() const;

  Element zero() const { return {IntVector(rank())}; }
  Element generator(std::size_t i) const;

  /// Reduces arbitrary integer coordinates into canonical range.
  Element reduce(IntVector coords) const;
  Element from_user(std::span<const Integer> user) const;
  IntVector to_user(const Element& e) const;

  /// Throws InputError unless e has this group's shape and range.
  void check(const Element& e) const;

  Element add(const Element& a, const Element& b) const;
  Element sub(const Element& a, const Element& b) const;
  Element neg(const Element& a) const;
  Element scale(const Integer& k, const Element& a) const;
  /// acc += k * a, in place.
  void add_scaled(Element& acc, const Integer& k, const Element& a) const;
  bool is_zero(const Element& a) const;

  friend bool operator==(const CanonicalGroup&, const CanonicalGroup&) = default;

 private:
  IntVector factors_;
  IntMatrix to_canonical_;
  IntMatrix from_canonical_;
};

using GroupPtr = std::shared_ptr<const CanonicalGroup>;

/// Throws NotFiniteError when the relations have rank below num_gens.
CanonicalGroup canonicalize(const Presentation& p);

/// A subgroup, stored as the canonical Hermite basis of its lattice (which
/// always contains the ambient relation rows d_i e_i).
class Subgroup {
 public:
  Subgroup() = default;
  Subgroup(GroupPtr ambient, ModularHermite lattice);

  const CanonicalGroup& ambient() const { return *ambient_; }
  const GroupPtr& ambient_ptr() const { return ambient_; }
  const ModularHermite& lattice() const { return lattice_; }
  IntMatrix basis() const { return lattice_.basis(); }

  /// Generators of the subgroup: the basis rows that are nonzero in the group,
  /// in pivot-column order.
  const std::vector<Element>& gens() const { return gens_; }

  Integer order() const { return lattice_.quotient_order(); }
  bool contains(const Element& x) const;
  bool is_trivial() const { return gens_.empty(); }
  bool is_whole() const;

  friend bool operator==(const Subgroup& a, const Subgroup& b);

 private:
  GroupPtr ambient_;
  ModularHermite lattice_;
  std::vector<Element> gens_;
};

Subgroup subgroup_span(const GroupPtr& g, std::span<const Element> elems);
Subgroup whole_group(const GroupPtr& g);
bool subgroup_contains(const Subgroup& s, const Element& x);
Subgroup subgroup_meet(const Subgroup& a, const Subgroup& b);
Subgroup subgroup_join(const Subgroup& a, const Subgroup& b);
bool subgroup_eq(const Subgroup& a, const Subgroup& b);
Integer subgroup_order(const Subgroup& s);

/// G / S with its canonical coordinates. The quotient's "user" coordinates are
/// the canonical coordinates of G, so to_canonical() is the projection matrix.
struct Quotient {
  GroupPtr group;
  Element project(const Element& x) const;
  /// Some preimage in G of a quotient element.
  Element lift(const Element& q, const CanonicalGroup& ambient) const;
};

Quotient quotient(const Subgroup& s);

/// Kernel of the homomorphism domain -> codomain sending canonical generator i
/// to images[i]. Throws NotHomomorphismError if d_i * images[i] != 0.
Subgroup hom_kernel(const GroupPtr& domain, const CanonicalGroup& codomain, std::span<const Element> images);

/// Same, with the codomain given as a product of cyclic groups Z/m_j in any order
/// (used for block maps into direct powers).
Subgroup hom_kernel(const GroupPtr& domain, const IntVector& codomain_moduli, std::span<const IntVector> images);

/// Some x in the domain with sum_i x_i * images[i] == target, if one exists.
std::optional<Element> hom_preimage(const GroupPtr& domain, const IntVector& codomain_moduli,
                                    std::span<const IntVector> images, std::span<const Integer> target);

}  // namespace cyclicity
