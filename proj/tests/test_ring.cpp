#include <gtest/gtest.h>

#include <algorithm>

#include "cyclicity/errors.hpp"
#include "cyclicity/ring.hpp"
#include "support.hpp"

using namespace cyclicity;
using namespace testing_support;

namespace {

// A group already in canonical form, user coordinates equal to canonical ones.
GroupPtr diag_group(const IntVector& factors) {
  const std::size_t r = factors.size();
  return std::make_shared<const CanonicalGroup>(factors, IntMatrix::identity(r), IntMatrix::identity(r));
}

FiniteRing zmod_ring(long n) {
  auto g = diag_group(iv({n}));
  return FiniteRing(g, {{el({1})}}, el({1}));
}

bool has_axiom(const std::vector<Diagnostic>& ds, const std::string& axiom) {
  return std::any_of(ds.begin(), ds.end(), [&](const Diagnostic& d) { return d.axiom == axiom; });
}

std::set<IntVector> members(const Subgroup& s) {
  std::set<IntVector> out;
  for (const auto& x : all_elements(s.ambient()))
    if (s.contains(x)) out.insert(x.coords);
  return out;
}

}  // namespace

TEST(Ring, ZmodIdealsAndAnnihilators) {
  FiniteRing r = zmod_ring(12);
  QuotientRing a{r, zero_ideal(r)};
  EXPECT_EQ(a.order(), 12);
  std::vector<Element> four{el({4})};
  PreIdeal i4 = ideal_span(a, four);
  EXPECT_EQ(i4.carrier.order(), 3);
  PreIdeal ann = ideal_annihilator(a, i4);
  EXPECT_EQ(ann.carrier.order(), 4);
  EXPECT_TRUE(ann.carrier.contains(el({3})));
  EXPECT_EQ(ideal_annihilator(a, unit_ideal(r)).carrier.order(), 1);
  EXPECT_TRUE(ideal_annihilator(a, zero_ideal(r)).carrier.is_whole());
  // (4) and (3) meet in zero, (4) and (2) do not
  EXPECT_TRUE(ideal_meet_is_zero(a, i4, ann).is_zero_in_a);
  std::vector<Element> two{el({2})};
  EXPECT_FALSE(ideal_meet_is_zero(a, i4, ideal_span(a, two)).is_zero_in_a);
}

TEST(Ring, AnnihilatorInsideQuotient) {
  FiniteRing r = zmod_ring(12);
  std::vector<Element> six{el({6})}, two{el({2})};
  QuotientRing z12{r, zero_ideal(r)};
  QuotientRing a{r, ideal_span(z12, six)};  // A = Z/6
  EXPECT_EQ(a.order(), 6);
  PreIdeal i2 = ideal_span(a, two);  // (2) in Z/6, preimage (2) in Z/12
  EXPECT_EQ(a.ideal_order(i2), 3);
  PreIdeal ann = ideal_annihilator(a, i2);  // Ann (2) = (3) in Z/6
  EXPECT_EQ(a.ideal_order(ann), 2);
  EXPECT_EQ(ann.carrier.order(), 4);
  // an ideal not containing I_A is refused
  EXPECT_THROW(ideal_annihilator(a, zero_ideal(r)), InputError);
}

TEST(Ring, IdentitySolvedForIdempotents) {
  Instance inst = build(idempotent_square());
  const FiniteRing& r = *inst.ring;
  EXPECT_EQ(r.group().to_user(r.one()), iv({1, 1}));
  EXPECT_TRUE(ring_validate(r).empty());
}

TEST(Ring, FindIdentityFailsWithoutUnit) {
  auto g = diag_group(iv({4}));
  ProductTable t{{el({2})}};
  EXPECT_THROW(find_identity(g, t), InputError);
}

TEST(Ring, ValidatorNamesEachAxiom) {
  {
    auto g = diag_group(iv({4}));
    FiniteRing r(g, {{el({2})}}, el({1}));
    EXPECT_TRUE(has_axiom(ring_validate(r), "identity"));
  }
  {
    auto g = diag_group(iv({2, 4}));
    // b * b = b, a * a = a, a * b = b: 2 * (a * b) = 2b != 0
    FiniteRing r(g, {{el({1, 0}), el({0, 1})}, {el({0, 1}), el({0, 1})}}, el({1, 0}));
    EXPECT_TRUE(has_axiom(ring_validate(r), "well-definedness"));
  }
  {
    auto g = diag_group(iv({2, 2}));
    FiniteRing r(g, {{el({1, 0}), el({0, 1})}, {el({1, 0}), el({0, 1})}}, el({1, 1}));
    EXPECT_TRUE(has_axiom(ring_validate(r), "commutativity"));
  }
  {
    // (Z/2)[x]/(x^3) with x * x^2 changed from 0 to x
    auto g = diag_group(iv({2, 2, 2}));
    ProductTable t(3, std::vector<Element>(3, el({0, 0, 0})));
    t[0] = {el({1, 0, 0}), el({0, 1, 0}), el({0, 0, 1})};
    t[1][0] = el({0, 1, 0});
    t[2][0] = el({0, 0, 1});
    t[1][1] = el({0, 0, 1});
    t[1][2] = t[2][1] = el({0, 1, 0});
    FiniteRing r(g, t, el({1, 0, 0}));
    auto ds = ring_validate(r);
    EXPECT_TRUE(has_axiom(ds, "associativity"));
    EXPECT_FALSE(has_axiom(ds, "commutativity"));
  }
}

TEST(Ring, ValidGeneratedRingsPass) {
  for (const char* family : {"zmod", "trunc", "randquot", "prod"})
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      GenParams p;
      p.family = family;
      p.seed = seed;
      Instance inst = build(generate(p));
      ASSERT_TRUE(ring_validate(*inst.ring).empty()) << family << " " << seed;
      ASSERT_EQ(inst.ring->mul(inst.ring->one(), inst.ring->one()), inst.ring->one());
    }
}

TEST(Ring, IdealOperationsMatchEnumeration) {
  std::mt19937_64 rng(41);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    GenParams p;
    p.family = seed % 2 ? "randquot" : "trunc";
    p.seed = seed;
    Instance inst = build(generate(p));
    const FiniteRing& r = *inst.ring;
    if (r.order() > 256) continue;
    const auto elements = all_elements(r.group());
    auto pick = [&] { return elements[rng() % elements.size()]; };

    QuotientRing base{r, zero_ideal(r)};
    std::vector<Element> ia_gens{pick()};
    QuotientRing a{r, ideal_span(base, ia_gens)};
    const auto ia = members(a.i_a.carrier);

    // ideal generated by a random element, closed by brute force
    const Element x = pick();
    std::vector<Element> seeds{x};
    PreIdeal ix = ideal_span(a, seeds);
    std::vector<Element> prods;
    for (const auto& s : elements) prods.push_back(r.mul(s, x));
    for (const auto& u : a.i_a.carrier.gens()) prods.push_back(u);
    ASSERT_EQ(members(ix.carrier), closure(r.group(), prods));
    ASSERT_TRUE(is_ideal(r, ix.carrier));

    // annihilator: { t : t u in I_A for all u in the ideal }
    PreIdeal ann = ideal_annihilator(a, ix);
    const auto ix_set = members(ix.carrier);
    for (const auto& t : elements) {
      bool kills = true;
      for (const auto& u : elements)
        if (ix_set.count(u.coords) && !ia.count(r.mul(t, u).coords)) {
          kills = false;
          break;
        }
      ASSERT_EQ(ann.carrier.contains(t), kills);
    }

    IdealMeet meet = ideal_meet_is_zero(a, ix, ann);
    std::set<IntVector> inter;
    for (const auto& e : ix_set)
      if (ann.carrier.contains({e})) inter.insert(e);
    ASSERT_EQ(members(meet.meet.carrier), inter);
    ASSERT_EQ(meet.is_zero_in_a, inter == ia);
  }
}

TEST(Ring, IsIdealRejectsNonIdeal) {
  Instance inst = build(make_trunc(2, 3, {3}));
  const FiniteRing& r = *inst.ring;
  // the subgroup generated by 1 alone is not closed under multiplication by x
  std::vector<Element> one{r.one()};
  EXPECT_FALSE(is_ideal(r, subgroup_span(r.group_ptr(), one)));
  EXPECT_TRUE(is_ideal(r, unit_ideal(r).carrier));
}
