#include "cyclicity/ring.hpp"

#include <map>
#include <sstream>

#include "cyclicity/errors.hpp"

namespace cyclicity {

namespace {

constexpr std::size_t kMaxReportsPerAxiom = 16;

class DiagnosticSink {
 public:
  explicit DiagnosticSink(std::vector<Diagnostic>& out) : out_(out) {}

  void report(const std::string& axiom, const std::string& message) {
    if (++counts_[axiom] <= kMaxReportsPerAxiom) out_.push_back({axiom, message});
  }

  void flush() {
    for (const auto& [axiom, n] : counts_)
      if (n > kMaxReportsPerAxiom)
        out_.push_back({axiom, std::to_string(n - kMaxReportsPerAxiom) + " further " + axiom + " violations omitted"});
  }

 private:
  std::vector<Diagnostic>& out_;
  std::map<std::string, std::size_t> counts_;
};

// sum_l x_l * rows[l], reduced
Element combine(const CanonicalGroup& g, const Element& x, const std::vector<const Element*>& rows) {
  IntVector acc(g.rank());
  for (std::size_t l = 0; l < x.coords.size(); ++l) {
    if (sgn(x.coords[l]) == 0) continue;
    const auto& c = rows[l]->coords;
    for (std::size_t k = 0; k < acc.size(); ++k)
      if (sgn(c[k]) != 0) addmul(acc[k], x.coords[l], c[k]);
  }
  return g.reduce(std::move(acc));
}

}  // namespace

FiniteRing::FiniteRing(GroupPtr group, ProductTable products, Element one)
    : group_(std::move(group)), products_(std::move(products)), one_(std::move(one)) {
  if (!group_) throw InputError("FiniteRing: null group");
  const std::size_t r = group_->rank();
  if (products_.size() != r) throw InputError("FiniteRing: product table has wrong number of rows");
  for (const auto& row : products_) {
    if (row.size() != r) throw InputError("FiniteRing: product table has wrong number of columns");
    for (const auto& e : row) group_->check(e);
  }
  group_->check(one_);
}

Element FiniteRing::mul_gen(std::size_t i, const Element& b) const {
  group_->check(b);
  IntVector acc(rank());
  for (std::size_t j = 0; j < rank(); ++j) {
    if (sgn(b.coords[j]) == 0) continue;
    const auto& p = products_[i][j].coords;
    for (std::size_t k = 0; k < acc.size(); ++k)
      if (sgn(p[k]) != 0) addmul(acc[k], b.coords[j], p[k]);
  }
  return group_->reduce(std::move(acc));
}

Element FiniteRing::mul(const Element& a, const Element& b) const {
  group_->check(a);
  group_->check(b);
  IntVector acc(rank());
  for (std::size_t i = 0; i < rank(); ++i) {
    if (sgn(a.coords[i]) == 0) continue;
    for (std::size_t j = 0; j < rank(); ++j) {
      if (sgn(b.coords[j]) == 0) continue;
      Integer ab = a.coords[i] * b.coords[j];
      const auto& p = products_[i][j].coords;
      for (std::size_t k = 0; k < acc.size(); ++k)
        if (sgn(p[k]) != 0) addmul(acc[k], ab, p[k]);
    }
  }
  return group_->reduce(std::move(acc));
}

std::vector<Diagnostic> ring_validate(const FiniteRing& ring) {
  std::vector<Diagnostic> out;
  DiagnosticSink sink(out);
  const CanonicalGroup& g = ring.group();
  const std::size_t r = ring.rank();
  const auto& d = g.invariant_factors();

  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (!g.is_zero(g.scale(d[i], ring.product(i, j)))) {
        std::ostringstream os;
        os << "d_" << i << " * (g_" << i << " * g_" << j << ") != 0";
        sink.report("well-definedness", os.str());
      }

  bool commutative = true;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j)
      if (ring.product(i, j) != ring.product(j, i)) {
        commutative = false;
        std::ostringstream os;
        os << "g_" << i << " * g_" << j << " != g_" << j << " * g_" << i;
        sink.report("commutativity", os.str());
      }

  for (std::size_t i = 0; i < r; ++i)
    if (ring.mul(ring.one(), g.generator(i)) != g.generator(i) || ring.mul(g.generator(i), ring.one()) != g.generator(i)) {
      std::ostringstream os;
      os << "one * g_" << i << " != g_" << i;
      sink.report("identity", os.str());
    }

  // (g_i g_j) g_k = sum_l (g_i g_j)_l T[l][k];  g_i (g_j g_k) = sum_l (g_j g_k)_l T[i][l]
  std::vector<std::vector<const Element*>> right(r), left(r);
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t l = 0; l < r; ++l) {
      right[k].push_back(&ring.product(l, k));
      left[k].push_back(&ring.product(k, l));
    }
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = commutative ? i : 0; k < r; ++k) {
        Element lhs = combine(g, ring.product(i, j), right[k]);
        Element rhs = combine(g, ring.product(j, k), left[i]);
        if (lhs != rhs) {
          std::ostringstream os;
          os << "(g_" << i << " * g_" << j << ") * g_" << k << " != g_" << i << " * (g_" << j << " * g_" << k << ")";
          sink.report("associativity", os.str());
        }
      }
  sink.flush();
  return out;
}

Element find_identity(const GroupPtr& group, const ProductTable& products) {
  const std::size_t r = group->rank();
  if (products.size() != r) throw InputError("find_identity: product table has wrong shape");
  const IntVector& d = group->invariant_factors();
  IntVector moduli;
  IntVector target;
  for (std::size_t i = 0; i < r; ++i) {
    moduli.insert(moduli.end(), d.begin(), d.end());
    IntVector gi(r);
    gi[i] = 1;
    target.insert(target.end(), gi.begin(), gi.end());
  }
  // e -> (e g_0, ..., e g_{r-1}); generator l maps to the row T[l][*].
  std::vector<IntVector> images(r);
  for (std::size_t l = 0; l < r; ++l) {
    if (products[l].size() != r) throw InputError("find_identity: product table has wrong shape");
    for (std::size_t i = 0; i < r; ++i)
      images[l].insert(images[l].end(), products[l][i].coords.begin(), products[l][i].coords.end());
  }
  auto e = hom_preimage(group, moduli, images, target);
  if (!e) throw InputError("no identity: the multiplication table has no unit element");
  return *e;
}

PreIdeal zero_ideal(const FiniteRing& r) { return {subgroup_span(r.group_ptr(), {})}; }

PreIdeal unit_ideal(const FiniteRing& r) { return {whole_group(r.group_ptr())}; }

bool is_ideal(const FiniteRing& r, const Subgroup& carrier) {
  for (const auto& s : carrier.gens())
    for (std::size_t i = 0; i < r.rank(); ++i)
      if (!carrier.contains(r.mul_gen(i, s))) return false;
  return true;
}

PreIdeal ideal_span(const QuotientRing& a, std::span<const Element> elems) {
  const FiniteRing& r = a.base;
  ModularHermite h = a.i_a.carrier.lattice();
  for (const auto& s : elems)
    for (std::size_t i = 0; i < r.rank(); ++i) h.insert(r.mul_gen(i, s).coords);
  return {Subgroup(r.group_ptr(), std::move(h))};
}

PreIdeal ideal_annihilator(const QuotientRing& a, const PreIdeal& x) {
  const FiniteRing& r = a.base;
  const Subgroup& i_a = a.i_a.carrier;
  for (const auto& u : i_a.gens())
    if (!x.carrier.contains(u)) throw InputError("ideal_annihilator: ideal does not contain I_A");

  std::vector<const Element*> us;
  for (const auto& u : x.carrier.gens())
    if (!i_a.contains(u)) us.push_back(&u);
  if (us.empty()) return unit_ideal(r);

  // r -> (r u_1 mod I_A, ..., r u_s mod I_A) into (R / I_A)^s
  Quotient q = quotient(i_a);
  IntVector moduli;
  for (std::size_t k = 0; k < us.size(); ++k)
    moduli.insert(moduli.end(), q.group->invariant_factors().begin(), q.group->invariant_factors().end());
  std::vector<IntVector> images(r.rank());
  for (std::size_t l = 0; l < r.rank(); ++l)
    for (const Element* u : us) {
      Element p = q.project(r.mul_gen(l, *u));
      images[l].insert(images[l].end(), p.coords.begin(), p.coords.end());
    }
  return {hom_kernel(r.group_ptr(), moduli, images)};
}

IdealMeet ideal_meet_is_zero(const QuotientRing& a, const PreIdeal& p, const PreIdeal& q) {
  PreIdeal meet{subgroup_meet(p.carrier, q.carrier)};
  const bool zero = meet.carrier == a.i_a.carrier;
  return {std::move(meet), zero};
}

}  // namespace cyclicity
