#include "cyclicity/cyclic.hpp"

#include <sstream>

#include "cyclicity/errors.hpp"

namespace cyclicity {

std::string to_string(Branch b) {
  switch (b) {
    case Branch::kDone:
      return "done";
    case Branch::kShrink:
      return "shrink";
    case Branch::kSplit:
      return "split";
    case Branch::kNotCyclic:
      return "not-cyclic";
  }
  return "?";
}

namespace {

std::string format_coords(const IntVector& v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ']';
  return os.str();
}

std::string dump_trace(const std::vector<TraceEntry>& trace) {
  std::ostringstream os;
  for (const auto& e : trace) {
    os << "  step " << e.iteration << ": |A| = " << e.order_a_ring;
    if (e.chosen_x) os << ", x = " << format_coords(e.chosen_x->coords);
    os << ", |a| = " << e.order_ann << ", |b| = " << e.order_ann_ann << ", meet zero = " << e.meet_zero
       << ", branch " << to_string(e.branch) << '\n';
  }
  return os.str();
}

[[noreturn]] void fail(const std::string& what, const AlgState& state) {
  throw InvariantViolation(what + "\ntrace:\n" + dump_trace(state.trace));
}

}  // namespace

AlgState init(const FiniteRing& r, const FiniteModule& m) {
  AlgState s{zero_ideal(r), m.group().zero(), full_submodule(m), 0, {}, std::nullopt};
  return s;
}

Element pick_x(const AlgState& state, const ScalarExtension& ext) {
  for (const auto& x : state.n.carrier.gens())
    if (!ext.group().is_zero(ext.project(x))) return x;
  throw InvariantViolation("pick_x: M_A is nonzero but no generator of N survives in it");
}

std::vector<std::string> state_violations(const FiniteRing& r, const FiniteModule& m, const AlgState& state,
                                          const ScalarExtension& ext) {
  std::vector<std::string> out;
  if (!is_ideal(r, state.i_a.carrier)) out.push_back("I_A is not an ideal");
  if (!is_submodule(m, state.n.carrier)) out.push_back("N is not a submodule");
  if (!ext.group().is_zero(ext.project(state.y))) out.push_back("y does not vanish in M_A");
  if (!spans_extension(state.n.carrier.gens(), ext)) out.push_back("N does not map onto M_A");
  if (subgroup_join(state.n.carrier, ext.kernel.carrier).order() != m.order()) out.push_back("N + I_A M != M");
  return out;
}

std::size_t iteration_bound(const FiniteRing& r) { return floor_log2(r.order()) + 1; }

StepOutcome step(const FiniteRing& r, const FiniteModule& m, AlgState& state, const RunOptions& options) {
  if (!state.extension) state.extension = scalar_extension(r, m, state.i_a);
  const ScalarExtension& ext = *state.extension;
  const QuotientRing a{r, state.i_a};

  TraceEntry entry;
  entry.iteration = state.iteration + 1;
  entry.order_a_ring = a.order();
  const Integer old_order = entry.order_a_ring;

  if (ext.is_trivial()) {
    entry.branch = Branch::kDone;
    state.trace.push_back(std::move(entry));
    ++state.iteration;
    return Generated{state.y};
  }

  Element x = pick_x(state, ext);
  entry.chosen_x = x;
  PreIdeal ann = ann_element(a, m, ext, x);
  PreIdeal ann_ann = ideal_annihilator(a, ann);
  IdealMeet meet = ideal_meet_is_zero(a, ann, ann_ann);
  entry.order_ann = a.ideal_order(ann);
  entry.order_ann_ann = a.ideal_order(ann_ann);
  entry.meet_zero = meet.is_zero_in_a;

  if (!meet.is_zero_in_a) {
    entry.branch = Branch::kShrink;
    state.i_a = std::move(meet.meet);
  } else {
    if (options.check_invariants) {
      // a and b = Ann a are complementary: A = a + b as a direct sum.
      if (entry.order_ann * entry.order_ann_ann != old_order)
        fail("|a| * |Ann a| != |A| although a meet Ann a = 0", state);
      if (ann_ann.carrier == state.i_a.carrier && !ann.carrier.is_whole())
        fail("Ann a = 0 but a != A", state);
    }
    ScalarExtension ext_a = scalar_extension(r, m, ann);
    std::vector<Element> multiples;
    multiples.reserve(r.rank());
    for (std::size_t i = 0; i < r.rank(); ++i) multiples.push_back(m.act_gen(i, x));
    const bool spans = spans_extension(multiples, ext_a);
    const Integer quotient_order = r.order() / ann.carrier.order();
    entry.order_quotient_ring = quotient_order;
    entry.order_extension = ext_a.order();
    if (options.check_invariants && spans != (quotient_order == ext_a.order()))
      fail("span test disagrees with the order comparison |A/a| == |M_{A/a}|", state);

    if (!spans) {
      if (!(quotient_order < ext_a.order())) fail("not-cyclic witness without an order gap", state);
      entry.branch = Branch::kNotCyclic;
      NotCyclicWitness w{entry.iteration, quotient_order, ext_a.order()};
      state.trace.push_back(std::move(entry));
      ++state.iteration;
      return NotCyclic{std::move(w)};
    }
    entry.branch = Branch::kSplit;
    state.n = ideal_times_submodule(r, m, ann, state.n);
    state.y = m.group().add(x, state.y);
    state.i_a = std::move(ann_ann);
  }

  state.trace.push_back(std::move(entry));
  ++state.iteration;
  state.extension.reset();

  const Integer new_order = r.order() / state.i_a.carrier.order();
  if (2 * new_order > old_order) fail("|A| did not halve", state);

  if (options.check_invariants) {
    state.extension = scalar_extension(r, m, state.i_a);
    auto violations = state_violations(r, m, state, *state.extension);
    if (!violations.empty()) {
      std::string msg = "state invariant violated:";
      for (const auto& v : violations) msg += " " + v + ";";
      fail(msg, state);
    }
  }
  return Continue{};
}

CyclicityResult run(const FiniteRing& r, const FiniteModule& m, const RunOptions& options) {
  AlgState state = init(r, m);
  const std::size_t bound = iteration_bound(r);
  CyclicityResult result;
  while (true) {
    if (options.observer) options.observer(state);
    if (state.iteration >= bound) fail("iteration bound floor(log2 |R|) + 1 exceeded", state);
    StepOutcome out = step(r, m, state, options);
    if (auto* g = std::get_if<Generated>(&out)) {
      if (!cyclic_span_is_all(r, m, g->generator)) fail("claimed generator does not generate M", state);
      result.generator = std::move(g->generator);
      break;
    }
    if (auto* n = std::get_if<NotCyclic>(&out)) {
      result.witness = std::move(n->witness);
      break;
    }
  }
  result.trace = std::move(state.trace);
  return result;
}

}  // namespace cyclicity
