#include "cyclicity/abelian.hpp"

#include <algorithm>
#include <utility>

#include "cyclicity/errors.hpp"

namespace cyclicity {

CanonicalGroup::CanonicalGroup(IntVector invariant_factors, IntMatrix to_canonical, IntMatrix from_canonical)
    : factors_(std::move(invariant_factors)),
      to_canonical_(std::move(to_canonical)),
      from_canonical_(std::move(from_canonical)) {
  if (to_canonical_.cols() != factors_.size() || from_canonical_.rows() != factors_.size() ||
      from_canonical_.cols() != to_canonical_.rows())
    throw InputError("CanonicalGroup: coordinate maps have inconsistent shapes");
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i] < 2) throw InputError("CanonicalGroup: invariant factors must be >= 2");
    if (i > 0 && !divides(factors_[i - 1], factors_[i]))
      throw InputError("CanonicalGroup: invariant factors must form a divisibility chain");
  }
}

Integer CanonicalGroup::order() const {
  Integer n = 1;
  for (const auto& d : factors_) n *= d;
  return n;
}

Integer CanonicalGroup::exponent() const { return factors_.empty() ? Integer(1) : factors_.back(); }

Element CanonicalGroup::generator(std::size_t i) const {
  if (i >= rank()) throw InputError("CanonicalGroup::generator: index out of range");
  Element e = zero();
  e.coords[i] = 1;
  return e;
}

Element CanonicalGroup::reduce(IntVector coords) const {
  if (coords.size() != rank()) throw InputError("CanonicalGroup::reduce: wrong number of coordinates");
  for (std::size_t i = 0; i < coords.size(); ++i) reduce_mod(coords[i], factors_[i]);
  return {std::move(coords)};
}

Element CanonicalGroup::from_user(std::span<const Integer> user) const {
  if (user.size() != num_user_gens()) throw InputError("CanonicalGroup::from_user: wrong number of coordinates");
  return reduce(mul_vec(user, to_canonical_));
}

IntVector CanonicalGroup::to_user(const Element& e) const {
  check(e);
  return mul_vec(e.coords, from_canonical_);
}

void CanonicalGroup::check(const Element& e) const {
  if (e.coords.size() != rank()) throw InputError("element does not belong to this group (ambient mismatch)");
  for (std::size_t i = 0; i < rank(); ++i)
    if (sgn(e.coords[i]) < 0 || e.coords[i] >= factors_[i])
      throw InputError("element coordinate out of canonical range");
}

Element CanonicalGroup::add(const Element& a, const Element& b) const {
  check(a);
  check(b);
  Element r = a;
  for (std::size_t i = 0; i < rank(); ++i) {
    r.coords[i] += b.coords[i];
    if (r.coords[i] >= factors_[i]) r.coords[i] -= factors_[i];
  }
  return r;
}

Element CanonicalGroup::sub(const Element& a, const Element& b) const { return add(a, neg(b)); }

Element CanonicalGroup::neg(const Element& a) const {
  check(a);
  Element r = a;
  for (std::size_t i = 0; i < rank(); ++i)
    if (sgn(r.coords[i]) != 0) r.coords[i] = factors_[i] - r.coords[i];
  return r;
}

Element CanonicalGroup::scale(const Integer& k, const Element& a) const {
  Element r = zero();
  add_scaled(r, k, a);
  return r;
}

void CanonicalGroup::add_scaled(Element& acc, const Integer& k, const Element& a) const {
  if (acc.coords.size() != rank() || a.coords.size() != rank())
    throw InputError("element does not belong to this group (ambient mismatch)");
  if (sgn(k) == 0) return;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (sgn(a.coords[i]) == 0) continue;
    addmul(acc.coords[i], k, a.coords[i]);
    reduce_mod(acc.coords[i], factors_[i]);
  }
}

bool CanonicalGroup::is_zero(const Element& a) const {
  check(a);
  return cyclicity::is_zero(a.coords);
}

CanonicalGroup canonicalize(const Presentation& p) {
  const std::size_t k = p.num_gens;
  const IntMatrix& rel = p.relations;
  if (rel.rows() > 0 && rel.cols() != k) throw InputError("presentation: relation length differs from generator count");
  if (k == 0) return {};
  IntMatrix relations = rel.rows() > 0 ? rel : IntMatrix(0, k);
  if (relations.rows() < k) throw NotFiniteError("presentation defines an infinite group (not finite)");

  SnfResult s = snf(relations);
  IntVector diag = s.diagonal();
  if (std::any_of(diag.begin(), diag.end(), [](const Integer& d) { return sgn(d) == 0; }))
    throw NotFiniteError("presentation defines an infinite group (not finite)");

  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < k; ++i)
    if (diag[i] != 1) kept.push_back(i);

  IntVector factors;
  IntMatrix to(k, kept.size()), from(kept.size(), k);
  for (std::size_t c = 0; c < kept.size(); ++c) {
    const std::size_t i = kept[c];
    factors.push_back(diag[i]);
    for (std::size_t u = 0; u < k; ++u) {
      to(u, c) = s.v(u, i);
      reduce_mod(to(u, c), diag[i]);
      from(c, u) = s.v_inv(i, u);
    }
  }
  return {std::move(factors), std::move(to), std::move(from)};
}

// ---------------------------------------------------------------------------

Subgroup::Subgroup(GroupPtr ambient, ModularHermite lattice) : ambient_(std::move(ambient)), lattice_(std::move(lattice)) {
  if (!ambient_) throw InputError("Subgroup: null ambient group");
  if (lattice_.moduli() != ambient_->invariant_factors()) throw InputError("Subgroup: lattice does not match ambient group");
  lattice_.normalize();
  for (std::size_t j = 0; j < lattice_.dim(); ++j)
    if (!lattice_.row_is_modulus(j)) gens_.push_back({lattice_.row(j)});
}

bool Subgroup::contains(const Element& x) const {
  ambient_->check(x);
  return lattice_.contains(x.coords);
}

bool Subgroup::is_whole() const {
  for (std::size_t j = 0; j < lattice_.dim(); ++j)
    if (lattice_.pivot(j) != 1) return false;
  return true;
}

bool operator==(const Subgroup& a, const Subgroup& b) {
  if (a.ambient_ != b.ambient_ && !(a.ambient_ && b.ambient_ && *a.ambient_ == *b.ambient_)) return false;
  return a.lattice_ == b.lattice_;
}

Subgroup subgroup_span(const GroupPtr& g, std::span<const Element> elems) {
  ModularHermite h(g->invariant_factors());
  for (const auto& e : elems) {
    g->check(e);
    h.insert(e.coords);
  }
  return {g, std::move(h)};
}

Subgroup whole_group(const GroupPtr& g) {
  std::vector<Element> gens;
  for (std::size_t i = 0; i < g->rank(); ++i) gens.push_back(g->generator(i));
  return subgroup_span(g, gens);
}

bool subgroup_contains(const Subgroup& s, const Element& x) { return s.contains(x); }

namespace {

void require_same_ambient(const Subgroup& a, const Subgroup& b) {
  if (a.ambient_ptr() != b.ambient_ptr() && !(a.ambient() == b.ambient()))
    throw InputError("subgroups live in different ambient groups");
}

IntVector concat(std::span<const Integer> a, std::span<const Integer> b) {
  IntVector v(a.begin(), a.end());
  v.insert(v.end(), b.begin(), b.end());
  return v;
}

}  // namespace

Subgroup subgroup_meet(const Subgroup& a, const Subgroup& b) {
  require_same_ambient(a, b);
  const IntVector& d = a.ambient().invariant_factors();
  const std::size_t r = d.size();
  // Rows (x, x) for x in a and (y, 0) for y in b; rows of the echelon with a
  // zero first block are exactly the common elements.
  ModularHermite h(concat(d, d));
  const IntVector zeros(r);
  for (const auto& y : b.gens()) h.insert(concat(y.coords, zeros));
  for (const auto& x : a.gens()) h.insert(concat(x.coords, x.coords));
  ModularHermite meet(d);
  for (std::size_t j = r; j < 2 * r; ++j) {
    if (h.row_is_modulus(j)) continue;
    IntVector row = h.row(j);
    meet.insert(IntVector(row.begin() + static_cast<std::ptrdiff_t>(r), row.end()));
  }
  return {a.ambient_ptr(), std::move(meet)};
}

Subgroup subgroup_join(const Subgroup& a, const Subgroup& b) {
  require_same_ambient(a, b);
  ModularHermite h = a.lattice();
  for (const auto& y : b.gens()) h.insert(y.coords);
  return {a.ambient_ptr(), std::move(h)};
}

bool subgroup_eq(const Subgroup& a, const Subgroup& b) {
  require_same_ambient(a, b);
  return a == b;
}

Integer subgroup_order(const Subgroup& s) { return s.order(); }

Element Quotient::project(const Element& x) const { return group->from_user(x.coords); }

Element Quotient::lift(const Element& q, const CanonicalGroup& ambient) const { return ambient.reduce(group->to_user(q)); }

Quotient quotient(const Subgroup& s) {
  const CanonicalGroup& g = s.ambient();
  const std::size_t r = g.rank();
  if (r == 0) return {std::make_shared<const CanonicalGroup>()};

  ModularSnfResult m = snf_mod(s.basis(), g.exponent());
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < r; ++i)
    if (m.diagonal[i] != 1) kept.push_back(i);

  IntVector factors;
  IntMatrix to(r, kept.size()), from(kept.size(), r);
  for (std::size_t c = 0; c < kept.size(); ++c) {
    const std::size_t i = kept[c];
    factors.push_back(m.diagonal[i]);
    for (std::size_t u = 0; u < r; ++u) {
      to(u, c) = m.v(u, i);
      from(c, u) = m.v_inv(i, u);
    }
  }
  return {std::make_shared<const CanonicalGroup>(std::move(factors), std::move(to), std::move(from))};
}

namespace {

ModularHermite hom_graph(const CanonicalGroup& domain, const IntVector& codomain_moduli,
                         std::span<const IntVector> images) {
  const std::size_t r = domain.rank(), s = codomain_moduli.size();
  if (images.size() != r) throw InputError("hom: need one image per canonical generator of the domain");
  for (std::size_t i = 0; i < r; ++i) {
    if (images[i].size() != s) throw InputError("hom: image has wrong number of coordinates");
    for (std::size_t j = 0; j < s; ++j)
      if (!divides(codomain_moduli[j], domain.invariant_factors()[i] * images[i][j]))
        throw NotHomomorphismError("hom: assignment is not a homomorphism (d_i * image_i != 0)");
  }
  ModularHermite h(concat(codomain_moduli, domain.invariant_factors()));
  for (std::size_t i = 0; i < r; ++i) {
    IntVector row = images[i];
    row.resize(s + r);
    row[s + i] = 1;
    h.insert(row);
  }
  return h;
}

}  // namespace

Subgroup hom_kernel(const GroupPtr& domain, const IntVector& codomain_moduli, std::span<const IntVector> images) {
  const std::size_t r = domain->rank(), s = codomain_moduli.size();
  ModularHermite graph = hom_graph(*domain, codomain_moduli, images);
  ModularHermite kernel(domain->invariant_factors());
  for (std::size_t j = s; j < s + r; ++j) {
    if (graph.row_is_modulus(j)) continue;
    IntVector row = graph.row(j);
    kernel.insert(IntVector(row.begin() + static_cast<std::ptrdiff_t>(s), row.end()));
  }
  return {domain, std::move(kernel)};
}

Subgroup hom_kernel(const GroupPtr& domain, const CanonicalGroup& codomain, std::span<const Element> images) {
  std::vector<IntVector> raw;
  raw.reserve(images.size());
  for (const auto& e : images) {
    codomain.check(e);
    raw.push_back(e.coords);
  }
  return hom_kernel(domain, codomain.invariant_factors(), raw);
}

std::optional<Element> hom_preimage(const GroupPtr& domain, const IntVector& codomain_moduli,
                                    std::span<const IntVector> images, std::span<const Integer> target) {
  const std::size_t r = domain->rank(), s = codomain_moduli.size();
  if (target.size() != s) throw InputError("hom_preimage: target has wrong number of coordinates");
  ModularHermite graph = hom_graph(*domain, codomain_moduli, images);
  IntVector w(target.begin(), target.end());
  w.resize(s + r);
  if (!graph.reduce(w, s)) return std::nullopt;
  IntVector x(r);
  for (std::size_t i = 0; i < r; ++i) x[i] = -w[s + i];
  Element sol = domain->reduce(std::move(x));

  for (std::size_t j = 0; j < s; ++j) {
    Integer acc = 0;
    for (std::size_t i = 0; i < r; ++i) addmul(acc, sol.coords[i], images[i][j]);
    if (!divides(codomain_moduli[j], acc - target[j]))
      throw InvariantViolation("hom_preimage: substitution check failed");
  }
  return sol;
}

}  // namespace cyclicity
