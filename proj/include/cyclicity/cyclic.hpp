#pragma once

// Deterministic cyclicity test for a finite module M over a finite commutative
// ring R. The driver keeps a state (I_A, y, N) where A = R / I_A, y generates
// the part of M already split off, and N surjects onto M_A = M / I_A M. Each
// round either shrinks A by a nilpotent ideal, splits A into two factors and
// absorbs one of them into y, or certifies that M is not cyclic. |A| at least
// halves every round, so a run takes at most floor(log2 |R|) + 1 steps.

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cyclicity/module.hpp"
#include "cyclicity/ring.hpp"

namespace cyclicity {

enum class Branch {
  kDone,           // M_A = 0: y generates M
  kShrink,         // a meet b != 0: A <- A / (a meet b)
  kSplit,          // a meet b == 0 and x generates M_{A/a}: A <- A / b, y <- x + y, N <- aN
  kNotCyclic,      // a meet b == 0 and x does not generate M_{A/a}
};

std::string to_string(Branch b);

struct TraceEntry {
  std::size_t iteration = 0;  // 1-based
  Integer order_a_ring;       // |A| at the start of the step
  std::optional<Element> chosen_x;
  Integer order_ann;     // |a| as an ideal of A
  Integer order_ann_ann; // |b|
  bool meet_zero = false;
  Branch branch = Branch::kDone;
  std::optional<Integer> order_quotient_ring;  // |A/a|, split branches only
  std::optional<Integer> order_extension;      // |M_{A/a}|, split branches only
};

struct AlgState {
  PreIdeal i_a;
  Element y;
  Submodule n;
  std::size_t iteration = 0;
  std::vector<TraceEntry> trace;
  /// M_A for the current i_a, kept to avoid recomputing it.
  std::optional<ScalarExtension> extension;
};

struct NotCyclicWitness {
  std::size_t iteration = 0;
  Integer order_quotient_ring;  // |A/a|
  Integer order_extension;      // |M_{A/a}| > |A/a|
};

struct Continue {};
struct Generated {
  Element generator;
};
struct NotCyclic {
  NotCyclicWitness witness;
};
using StepOutcome = std::variant<Continue, Generated, NotCyclic>;

struct RunOptions {
  /// Re-check the state invariants after every step (the final generator check always runs).
  bool check_invariants = true;
  /// Called with each state before it is stepped.
  std::function<void(const AlgState&)> observer;
};

struct CyclicityResult {
  std::optional<Element> generator;
  std::optional<NotCyclicWitness> witness;
  std::vector<TraceEntry> trace;

  bool cyclic() const { return generator.has_value(); }
  std::size_t iterations() const { return trace.size(); }
};

AlgState init(const FiniteRing& r, const FiniteModule& m);

/// First carrier generator of state.n whose image in ext is nonzero.
/// Throws InvariantViolation when there is none.
Element pick_x(const AlgState& state, const ScalarExtension& ext);

/// Checkable part of the state invariant, as human-readable violations:
/// y maps to 0 in M_A, N maps onto M_A, and N + I_A M = M.
std::vector<std::string> state_violations(const FiniteRing& r, const FiniteModule& m, const AlgState& state,
                                          const ScalarExtension& ext);

/// Advances the state by one round. On Continue the state has been updated in place.
StepOutcome step(const FiniteRing& r, const FiniteModule& m, AlgState& state, const RunOptions& options = {});

/// Step budget: floor(log2 |R|) + 1.
std::size_t iteration_bound(const FiniteRing& r);

CyclicityResult run(const FiniteRing& r, const FiniteModule& m, const RunOptions& options = {});

}  // namespace cyclicity
