#pragma once

// Finite commutative rings given by a multiplication table on the canonical
// generators of their additive group, quotient rings A = R / I_A carried as
// (R, I_A), and ideal arithmetic on full preimages in R.

#include <span>
#include <string>
#include <vector>

#include "cyclicity/abelian.hpp"

namespace cyclicity {

/// One violated axiom, found by a validator.
struct Diagnostic {
  std::string axiom;  // "well-definedness", "commutativity", "associativity", "identity", "unitality"
  std::string message;
};

/// products[i][j] = g_i * g_j for canonical generators g_i of the additive group.
using ProductTable = std::vector<std::vector<Element>>;

class FiniteRing {
 public:
  /// Checks shapes only; the ring axioms are ring_validate's job.
  FiniteRing(GroupPtr group, ProductTable products, Element one);

  const CanonicalGroup& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }
  std::size_t rank() const { return group_->rank(); }
  Integer order() const { return group_->order(); }

  const Element& product(std::size_t i, std::size_t j) const { return products_[i][j]; }
  const ProductTable& products() const { return products_; }
  const Element& one() const { return one_; }

  Element mul(const Element& a, const Element& b) const;
  /// g_i * b
  Element mul_gen(std::size_t i, const Element& b) const;

 private:
  GroupPtr group_;
  ProductTable products_;
  Element one_;
};

std::vector<Diagnostic> ring_validate(const FiniteRing& r);

/// The e with e * g_i = g_i for every generator. Throws InputError ("no identity")
/// when the table has none.
Element find_identity(const GroupPtr& group, const ProductTable& products);

/// An ideal of R. An ideal of a quotient A = R / I_A is stored as its full
/// preimage, so it always contains I_A.
struct PreIdeal {
  Subgroup carrier;
  friend bool operator==(const PreIdeal&, const PreIdeal&) = default;
};

struct QuotientRing {
  const FiniteRing& base;
  PreIdeal i_a;
  /// |A| = |R| / |I_A|
  Integer order() const { return base.order() / i_a.carrier.order(); }
  /// Order of the image of p in A.
  Integer ideal_order(const PreIdeal& p) const { return p.carrier.order() / i_a.carrier.order(); }
};

PreIdeal zero_ideal(const FiniteRing& r);
PreIdeal unit_ideal(const FiniteRing& r);

/// Whether g_i * s lies in the subgroup for every generator g_i and carrier generator s.
bool is_ideal(const FiniteRing& r, const Subgroup& carrier);

/// The ideal of A generated by elems, as a preimage.
PreIdeal ideal_span(const QuotientRing& a, std::span<const Element> elems);

/// Ann_A(x): all r with r * u in I_A for every u in x.
PreIdeal ideal_annihilator(const QuotientRing& a, const PreIdeal& x);

struct IdealMeet {
  PreIdeal meet;
  bool is_zero_in_a;
};

IdealMeet ideal_meet_is_zero(const QuotientRing& a, const PreIdeal& p, const PreIdeal& q);

}  // namespace cyclicity
