#include "cyclicity/module.hpp"

#include <deque>
#include <map>
#include <sstream>

#include "cyclicity/errors.hpp"

namespace cyclicity {

FiniteModule::FiniteModule(GroupPtr group, std::size_t ring_rank, ActionTable action)
    : group_(std::move(group)), action_(std::move(action)) {
  if (!group_) throw InputError("FiniteModule: null group");
  if (action_.size() != ring_rank) throw InputError("FiniteModule: action table has wrong number of rows");
  for (const auto& row : action_) {
    if (row.size() != group_->rank()) throw InputError("FiniteModule: action table has wrong number of columns");
    for (const auto& e : row) group_->check(e);
  }
}

Element FiniteModule::act_gen(std::size_t i, const Element& m) const {
  group_->check(m);
  IntVector acc(rank());
  for (std::size_t j = 0; j < rank(); ++j) {
    if (sgn(m.coords[j]) == 0) continue;
    const auto& a = action_[i][j].coords;
    for (std::size_t k = 0; k < acc.size(); ++k)
      if (sgn(a[k]) != 0) addmul(acc[k], m.coords[j], a[k]);
  }
  return group_->reduce(std::move(acc));
}

Element act(const FiniteRing& r, const FiniteModule& m, const Element& s, const Element& x) {
  r.group().check(s);
  if (m.ring_rank() != r.rank()) throw InputError("act: module and ring do not match");
  IntVector acc(m.rank());
  for (std::size_t i = 0; i < r.rank(); ++i) {
    if (sgn(s.coords[i]) == 0) continue;
    Element gx = m.act_gen(i, x);
    for (std::size_t k = 0; k < acc.size(); ++k)
      if (sgn(gx.coords[k]) != 0) addmul(acc[k], s.coords[i], gx.coords[k]);
  }
  return m.group().reduce(std::move(acc));
}

std::vector<Diagnostic> module_validate(const FiniteRing& r, const FiniteModule& m) {
  std::vector<Diagnostic> out;
  std::map<std::string, std::size_t> counts;
  auto report = [&](const std::string& axiom, const std::string& msg) {
    if (++counts[axiom] <= 16) out.push_back({axiom, msg});
  };
  if (m.ring_rank() != r.rank()) {
    out.push_back({"shape", "action table rows do not match the ring's generators"});
    return out;
  }
  const CanonicalGroup& mg = m.group();
  const auto& d = r.group().invariant_factors();
  const auto& e = mg.invariant_factors();

  for (std::size_t i = 0; i < r.rank(); ++i)
    for (std::size_t j = 0; j < m.rank(); ++j) {
      const Element& gm = m.action(i, j);
      if (!mg.is_zero(mg.scale(d[i], gm)) || !mg.is_zero(mg.scale(e[j], gm))) {
        std::ostringstream os;
        os << "g_" << i << " . m_" << j << " is not killed by the orders of g_" << i << " and m_" << j;
        report("well-definedness", os.str());
      }
    }

  for (std::size_t j = 0; j < m.rank(); ++j) {
    Element mj = mg.generator(j);
    if (act(r, m, r.one(), mj) != mj) {
      std::ostringstream os;
      os << "one . m_" << j << " != m_" << j;
      report("unitality", os.str());
    }
  }

  // (g_i g_k) . m_j == g_i . (g_k . m_j)
  for (std::size_t i = 0; i < r.rank(); ++i)
    for (std::size_t k = 0; k < r.rank(); ++k) {
      const Element& gik = r.product(i, k);
      for (std::size_t j = 0; j < m.rank(); ++j) {
        IntVector lhs(m.rank());
        for (std::size_t l = 0; l < r.rank(); ++l) {
          if (sgn(gik.coords[l]) == 0) continue;
          const auto& a = m.action(l, j).coords;
          for (std::size_t c = 0; c < lhs.size(); ++c)
            if (sgn(a[c]) != 0) addmul(lhs[c], gik.coords[l], a[c]);
        }
        if (mg.reduce(std::move(lhs)) != m.act_gen(i, m.action(k, j))) {
          std::ostringstream os;
          os << "(g_" << i << " * g_" << k << ") . m_" << j << " != g_" << i << " . (g_" << k << " . m_" << j << ")";
          report("associativity", os.str());
        }
      }
    }
  for (const auto& [axiom, n] : counts)
    if (n > 16) out.push_back({axiom, std::to_string(n - 16) + " further " + axiom + " violations omitted"});
  return out;
}

Submodule full_submodule(const FiniteModule& m) { return {whole_group(m.group_ptr())}; }

Submodule zero_submodule(const FiniteModule& m) { return {subgroup_span(m.group_ptr(), {})}; }

Submodule submodule_span(const FiniteModule& m, std::span<const Element> elems) {
  ModularHermite h(m.group().invariant_factors());
  std::deque<Element> pending(elems.begin(), elems.end());
  while (!pending.empty()) {
    Element x = std::move(pending.front());
    pending.pop_front();
    m.group().check(x);
    if (h.contains(x.coords)) continue;
    h.insert(x.coords);
    for (std::size_t i = 0; i < m.ring_rank(); ++i) pending.push_back(m.act_gen(i, x));
  }
  return {Subgroup(m.group_ptr(), std::move(h))};
}

bool is_submodule(const FiniteModule& m, const Subgroup& carrier) {
  for (const auto& s : carrier.gens())
    for (std::size_t i = 0; i < m.ring_rank(); ++i)
      if (!carrier.contains(m.act_gen(i, s))) return false;
  return true;
}

Submodule ideal_times_submodule(const FiniteRing& r, const FiniteModule& m, const PreIdeal& ideal, const Submodule& n) {
  const CanonicalGroup& mg = m.group();
  ModularHermite h(mg.invariant_factors());
  const auto& us = ideal.carrier.gens();
  for (const auto& nj : n.carrier.gens()) {
    std::vector<Element> gn;
    gn.reserve(r.rank());
    for (std::size_t l = 0; l < r.rank(); ++l) gn.push_back(m.act_gen(l, nj));
    for (const auto& u : us) {
      IntVector acc(mg.rank());
      for (std::size_t l = 0; l < r.rank(); ++l) {
        if (sgn(u.coords[l]) == 0) continue;
        for (std::size_t c = 0; c < acc.size(); ++c)
          if (sgn(gn[l].coords[c]) != 0) addmul(acc[c], u.coords[l], gn[l].coords[c]);
      }
      h.insert(acc);
    }
  }
  return {Subgroup(m.group_ptr(), std::move(h))};
}

ScalarExtension scalar_extension(const FiniteRing& r, const FiniteModule& m, const PreIdeal& i_a) {
  Submodule kernel = ideal_times_submodule(r, m, i_a, full_submodule(m));
  Quotient q = quotient(kernel.carrier);
  return {std::move(q), i_a, std::move(kernel)};
}

PreIdeal ann_element(const QuotientRing& a, const FiniteModule& m, const ScalarExtension& ext, const Element& x) {
  const FiniteRing& r = a.base;
  std::vector<Element> images;
  images.reserve(r.rank());
  for (std::size_t l = 0; l < r.rank(); ++l) images.push_back(ext.project(m.act_gen(l, x)));
  return {hom_kernel(r.group_ptr(), ext.group(), images)};
}

PreIdeal ann_element(const QuotientRing& a, const FiniteModule& m, const Element& x) {
  return ann_element(a, m, scalar_extension(a.base, m, a.i_a), x);
}

bool spans_extension(std::span<const Element> elems, const ScalarExtension& ext) {
  std::vector<Element> images;
  images.reserve(elems.size());
  for (const auto& e : elems) images.push_back(ext.project(e));
  return subgroup_span(ext.quotient.group, images).order() == ext.order();
}

bool cyclic_span_is_all(const FiniteRing& r, const FiniteModule& m, const Element& y) {
  std::vector<Element> multiples;
  multiples.reserve(r.rank());
  for (std::size_t i = 0; i < r.rank(); ++i) multiples.push_back(m.act_gen(i, y));
  return subgroup_span(m.group_ptr(), multiples).order() == m.order();
}

}  // namespace cyclicity
