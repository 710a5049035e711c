#pragma once

// Finite R-modules given by the action of each canonical ring generator on each
// canonical module generator, submodules, and base change M_A = M / I_A M.

#include <span>
#include <vector>

#include "cyclicity/abelian.hpp"
#include "cyclicity/ring.hpp"

namespace cyclicity {

/// action[i][j] = g_i . m_j for canonical ring generator g_i and module generator m_j.
using ActionTable = std::vector<std::vector<Element>>;

class FiniteModule {
 public:
  /// Checks shapes only; see module_validate for the module axioms.
  FiniteModule(GroupPtr group, std::size_t ring_rank, ActionTable action);

  const CanonicalGroup& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }
  std::size_t rank() const { return group_->rank(); }
  std::size_t ring_rank() const { return action_.size(); }
  Integer order() const { return group_->order(); }

  const Element& action(std::size_t i, std::size_t j) const { return action_[i][j]; }
  const ActionTable& actions() const { return action_; }

  /// g_i . m
  Element act_gen(std::size_t i, const Element& m) const;

 private:
  GroupPtr group_;
  ActionTable action_;
};

std::vector<Diagnostic> module_validate(const FiniteRing& r, const FiniteModule& m);

/// r . x, extended bilinearly from the generator table.
Element act(const FiniteRing& r, const FiniteModule& m, const Element& s, const Element& x);

struct Submodule {
  Subgroup carrier;
  friend bool operator==(const Submodule&, const Submodule&) = default;
};

Submodule full_submodule(const FiniteModule& m);
Submodule zero_submodule(const FiniteModule& m);

/// Smallest submodule containing elems.
Submodule submodule_span(const FiniteModule& m, std::span<const Element> elems);

/// Whether g_i . n lies in the subgroup for every ring generator and carrier generator.
bool is_submodule(const FiniteModule& m, const Subgroup& carrier);

/// Span of u . n over carrier generators u of the ideal and n of the submodule.
Submodule ideal_times_submodule(const FiniteRing& r, const FiniteModule& m, const PreIdeal& ideal, const Submodule& n);

/// M_A = M / I_A M.
struct ScalarExtension {
  Quotient quotient;
  PreIdeal i_a;
  Submodule kernel;  // I_A M

  Element project(const Element& x) const { return quotient.project(x); }
  const CanonicalGroup& group() const { return *quotient.group; }
  Integer order() const { return quotient.group->order(); }
  bool is_trivial() const { return quotient.group->rank() == 0; }
};

ScalarExtension scalar_extension(const FiniteRing& r, const FiniteModule& m, const PreIdeal& i_a);

/// Ann_A(1 (x) x): the kernel of t -> t x from R into M_A, as a preimage ideal.
PreIdeal ann_element(const QuotientRing& a, const FiniteModule& m, const ScalarExtension& ext, const Element& x);
PreIdeal ann_element(const QuotientRing& a, const FiniteModule& m, const Element& x);

/// Whether the images of elems generate the extension as a group.
bool spans_extension(std::span<const Element> elems, const ScalarExtension& ext);

/// Whether R y = M.
bool cyclic_span_is_all(const FiniteRing& r, const FiniteModule& m, const Element& y);

}  // namespace cyclicity
