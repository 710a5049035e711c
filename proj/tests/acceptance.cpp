// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "cyclicity/cli.hpp"
#include "cyclicity/cyclic.hpp"
#include "cyclicity/errors.hpp"
#include "cyclicity/oracle.hpp"
#include "json.hpp"
#include "support.hpp"

using namespace cyclicity;
using namespace testing_support;
using nlohmann::json;

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct CliRun {
  int code;
  std::string out, err;
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class Scratch {
 public:
  Scratch() : dir_(fs::temp_directory_path() / "cyclicity_acceptance") { fs::create_directories(dir_); }
  ~Scratch() { fs::remove_all(dir_); }
  std::string write(const std::string& name, const InstanceData& d) const {
    const std::string p = (dir_ / name).string();
    write_instance_file(p, d);
    return p;
  }

 private:
  fs::path dir_;
};

// Collects failure notes for one criterion; only the first few are printed.
struct Report {
  std::vector<std::string> problems;
  void fail(const std::string& s) { problems.push_back(s); }
  bool ok() const { return problems.empty(); }
};

bool finish(int number, const std::string& title, const Report& r, const std::string& detail) {
  std::cout << (r.ok() ? "PASS" : "FAIL") << " criterion " << number << ": " << title << " (" << detail << ")\n";
  for (std::size_t i = 0; i < r.problems.size() && i < 5; ++i) std::cout << "    " << r.problems[i] << '\n';
  if (r.problems.size() > 5) std::cout << "    ... " << r.problems.size() - 5 << " more\n";
  return r.ok();
}

struct CorpusItem {
  std::string label;
  InstanceData data;
  Instance inst;
};

std::vector<CorpusItem> corpus() {
  std::vector<CorpusItem> out;
  for (const char* family : {"zmod", "trunc", "randquot", "prod"})
    for (std::uint64_t seed = 0; seed < 130; ++seed) {
      GenParams p;
      p.family = family;
      p.seed = seed;
      InstanceData d = generate(p);
      Instance inst = build(d);
      out.push_back({std::string(family) + "/" + std::to_string(seed), std::move(d), std::move(inst)});
    }
  return out;
}

// R y as the additive closure of the g_i . y
std::size_t span_by_closure(const FiniteRing& r, const FiniteModule& m, const Element& y) {
  std::vector<Element> gens;
  for (std::size_t i = 0; i < r.rank(); ++i) gens.push_back(act(r, m, r.group().generator(i), y));
  return closure(m.group(), gens).size();
}

std::size_t floor_log2_plus_one(const Integer& n) { return mpz_sizeinbase(n.get_mpz_t(), 2); }

bool criterion_oracle(const std::vector<CorpusItem>& items, const Scratch& scratch) {
  Report rep;
  const auto t0 = Clock::now();
  std::size_t cyclic = 0, not_cyclic = 0;
  for (const auto& it : items) {
    const FiniteRing& r = *it.inst.ring;
    const FiniteModule& m = *it.inst.module;
    if (r.order() > 256 || m.order() > 4096) rep.fail(it.label + ": outside the size limits");
    CliRun c = cli({"compare", scratch.write("c1.json", it.data)});
    if (c.out.rfind("AGREE", 0) != 0) {
      rep.fail(it.label + ": " + c.out + c.err);
      continue;
    }
    CyclicityResult res = run(r, m);
    if (res.cyclic()) {
      ++cyclic;
      if (Integer(static_cast<unsigned long>(span_by_closure(r, m, *res.generator))) != m.order())
        rep.fail(it.label + ": generator does not span");
    } else {
      ++not_cyclic;
    }
  }
  const double secs = seconds_since(t0);
  if (secs >= 60) rep.fail("took " + std::to_string(secs) + " s");
  std::ostringstream detail;
  detail << items.size() << " instances, " << cyclic << " cyclic, " << not_cyclic << " not cyclic, "
         << std::fixed << std::setprecision(1) << secs << " s";
  return finish(1, "oracle equivalence", rep, detail.str());
}

bool criterion_traces(const Scratch& scratch) {
  Report rep;
  struct Expected {
    std::string name;
    InstanceData data;
    std::string verdict;
    std::vector<std::string> branches;
    std::vector<std::string> order_a;
    std::vector<std::vector<std::string>> xs;  // empty = no x in that step
    std::vector<std::pair<std::string, std::string>> orders_ab;
    std::optional<std::vector<std::string>> generator;
    std::optional<std::pair<std::string, std::string>> witness;
  };
  std::vector<Expected> cases = {
      {"Z/4 on Z/2 x Z/2", make_zmod(4, {2, 2}), "not_cyclic", {"shrink", "not-cyclic"}, {"4", "2"},
       {{"1", "0"}, {"1", "0"}}, {{"2", "2"}, {"1", "2"}}, std::nullopt, std::make_pair("2", "4")},
      {"Z/2 x Z/2 on itself", idempotent_square(), "cyclic", {"split", "split", "done"}, {"4", "2", "1"},
       {{"1", "0"}, {"0", "1"}, {}}, {{"2", "2"}, {"1", "2"}}, std::vector<std::string>{"1", "1"}, std::nullopt},
      {"Z/6 on Z/2 x Z/3", make_zmod(6, {2, 3}), "cyclic", {"split", "done"}, {"6", "1"}, {{"1", "1"}, {}},
       {{"1", "6"}}, std::vector<std::string>{"1", "1"}, std::nullopt},
  };
  for (const auto& c : cases) {
    CliRun run = cli({"check", scratch.write("c2.json", c.data), "--trace", "--format", "json"});
    json doc;
    try {
      doc = json::parse(run.out);
    } catch (const std::exception&) {
      rep.fail(c.name + ": unreadable output " + run.out + run.err);
      continue;
    }
    auto mismatch = [&](const std::string& what) { rep.fail(c.name + ": " + what + " differs: " + doc.dump()); };
    if (doc["verdict"] != c.verdict) mismatch("verdict");
    const json& trace = doc["trace"];
    if (trace.size() != c.branches.size()) {
      mismatch("step count");
      continue;
    }
    for (std::size_t i = 0; i < trace.size(); ++i) {
      const json& t = trace[i];
      if (t["branch"] != c.branches[i]) mismatch("branch " + std::to_string(i + 1));
      if (t["order_A"] != c.order_a[i]) mismatch("|A| at step " + std::to_string(i + 1));
      if (c.xs[i].empty() ? !t["chosen_x"].is_null() : t["chosen_x"] != json(c.xs[i]))
        mismatch("x at step " + std::to_string(i + 1));
      if (i < c.orders_ab.size() &&
          (t["order_a"] != c.orders_ab[i].first || t["order_b"] != c.orders_ab[i].second))
        mismatch("|a|, |b| at step " + std::to_string(i + 1));
    }
    if (c.generator && doc["generator"] != json(*c.generator)) mismatch("generator");
    if (c.witness && (doc["witness"]["order_quotient"] != c.witness->first ||
                      doc["witness"]["order_extension"] != c.witness->second))
      mismatch("witness");
    if (run.code != (c.verdict == "cyclic" ? kExitCyclic : kExitNotCyclic)) mismatch("exit code");
  }
  return finish(2, "hand-derived traces", rep, std::to_string(cases.size()) + " transcripts");
}

bool criterion_halving(const std::vector<CorpusItem>& items) {
  Report rep;
  std::size_t steps = 0, worst_slack = SIZE_MAX;
  for (const auto& it : items) {
    CyclicityResult res = run(*it.inst.ring, *it.inst.module);
    const std::size_t bound = floor_log2_plus_one(it.inst.ring->order());
    if (res.iterations() > bound)
      rep.fail(it.label + ": " + std::to_string(res.iterations()) + " steps > " + std::to_string(bound));
    worst_slack = std::min(worst_slack, bound - std::min(bound, res.iterations()));
    for (std::size_t i = 0; i + 1 < res.trace.size(); ++i) {
      ++steps;
      if (2 * res.trace[i + 1].order_a_ring > res.trace[i].order_a_ring)
        rep.fail(it.label + ": |A| went from " + res.trace[i].order_a_ring.get_str() + " to " +
                 res.trace[i + 1].order_a_ring.get_str());
    }
  }
  return finish(3, "halving and step bound", rep,
                std::to_string(steps) + " continue steps checked, minimum slack " + std::to_string(worst_slack));
}

bool criterion_invariants(const std::vector<CorpusItem>& items) {
  Report rep;
  std::size_t states = 0;
  for (const auto& it : items) {
    const FiniteRing& r = *it.inst.ring;
    const FiniteModule& m = *it.inst.module;
    const std::size_t total = all_elements(m.group()).size();
    RunOptions opts;
    opts.observer = [&](const AlgState& s) {
      ++states;
      ScalarExtension ext = scalar_extension(r, m, s.i_a);
      for (const auto& v : state_violations(r, m, s, ext)) rep.fail(it.label + ": " + v);

      // the same three conditions by enumeration
      std::vector<Element> iam;
      for (const auto& u : s.i_a.carrier.gens())
        for (std::size_t j = 0; j < m.group().rank(); ++j) iam.push_back(act(r, m, u, m.group().generator(j)));
      const auto iam_set = closure(m.group(), iam);
      if (!iam_set.count(s.y.coords)) rep.fail(it.label + ": y is not in I_A M");
      std::vector<Element> with_n = iam;
      for (const auto& g : s.n.carrier.gens()) with_n.push_back(g);
      if (closure(m.group(), with_n).size() != total) rep.fail(it.label + ": N + I_A M is not M");
      for (const auto& g : s.n.carrier.gens())
        for (std::size_t i = 0; i < r.rank(); ++i)
          if (!s.n.carrier.contains(act(r, m, r.group().generator(i), g)))
            rep.fail(it.label + ": N is not a submodule");
    };
    try {
      run(r, m, opts);
    } catch (const InvariantViolation& e) {
      rep.fail(it.label + ": " + e.what());
    }
  }
  return finish(4, "state invariants", rep, std::to_string(states) + " states checked");
}

bool criterion_large(const Scratch& scratch) {
  Report rep;
  std::ostringstream detail;
  detail << std::fixed << std::setprecision(2);
  struct Case {
    std::vector<std::uint64_t> cutoffs;
    int expected;
  };
  for (const Case& c : {Case{{64}, kExitCyclic}, Case{{64, 32}, kExitNotCyclic}}) {
    InstanceData d = make_trunc(2, 64, c.cutoffs);
    const std::string f = scratch.write("c5.json", d);
    const auto t0 = Clock::now();
    CliRun run = cli({"check", f});
    const double secs = seconds_since(t0);
    detail << (c.cutoffs.size() == 1 ? "M = R: " : "M = R + R/(x^32): ") << secs << " s; ";
    if (run.code != c.expected) rep.fail("unexpected exit " + std::to_string(run.code) + ": " + run.out + run.err);
    if (secs >= 10) rep.fail("took " + std::to_string(secs) + " s");
    if (c.expected == kExitNotCyclic) {
      Instance inst = build(d);
      if (!(inst.module->order() > inst.ring->order())) rep.fail("|M| > |R| does not hold");
      detail << "|M| = 2^" << mpz_sizeinbase(inst.module->order().get_mpz_t(), 2) - 1 << " > |R| = 2^"
             << mpz_sizeinbase(inst.ring->order().get_mpz_t(), 2) - 1;
    }
  }
  return finish(5, "large truncated polynomial ring", rep, detail.str());
}

// gcd of all entries, the first invariant factor
Integer content(const IntMatrix& m) {
  Integer g = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) g = gcd(g, m(i, j));
  return g;
}

bool criterion_linalg() {
  Report rep;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20261015);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t rows = draw(rng, 1, 8), cols = draw(rng, 1, 8);
    const IntMatrix m = random_matrix(rng, rows, cols, -100, 100);
    const std::string tag = "matrix " + std::to_string(trial);

    SnfResult s = snf(m);
    if (s.u * m * s.v != s.d) rep.fail(tag + ": U M V != D");
    if (abs(determinant(s.u)) != 1 || abs(determinant(s.v)) != 1) rep.fail(tag + ": SNF transform not unimodular");
    if (s.v * s.v_inv != IntMatrix::identity(cols)) rep.fail(tag + ": V V^-1 != I");
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (i != j && s.d(i, j) != 0) rep.fail(tag + ": D not diagonal");
    const IntVector diag = s.diagonal();
    for (std::size_t i = 0; i < diag.size(); ++i) {
      if (diag[i] < 0) rep.fail(tag + ": negative invariant factor");
      if (i + 1 < diag.size() && !divides(diag[i], diag[i + 1])) rep.fail(tag + ": divisibility chain broken");
    }
    if (diag[0] != content(m)) rep.fail(tag + ": first invariant factor is not the content");
    if (rows == cols) {
      Integer prod = 1;
      for (const auto& x : diag) prod *= x;
      if (prod != abs(determinant(m))) rep.fail(tag + ": product of invariant factors != |det|");
      if (rows <= 5 && prod != abs(small_det(m))) rep.fail(tag + ": product of invariant factors != |Leibniz det|");
    }

    HnfResult h = hnf(m);
    if (h.t * m != h.h) rep.fail(tag + ": T M != H");
    if (abs(determinant(h.t)) != 1) rep.fail(tag + ": HNF transform not unimodular");
    for (std::size_t i = 0; i < h.pivot_cols.size(); ++i) {
      const std::size_t p = h.pivot_cols[i];
      if (h.h(i, p) <= 0) rep.fail(tag + ": HNF pivot not positive");
      if (i > 0 && p <= h.pivot_cols[i - 1]) rep.fail(tag + ": HNF pivots not increasing");
      for (std::size_t k = 0; k < i; ++k)
        if (h.h(k, p) < 0 || h.h(k, p) >= h.h(i, p)) rep.fail(tag + ": HNF entry above pivot not reduced");
    }
    for (std::size_t i = h.pivot_cols.size(); i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (h.h(i, j) != 0) rep.fail(tag + ": HNF has nonzero row below the pivots");
  }

  // finite presentations of order <= 1000: a triangular block mixed by unimodular moves, plus extra rows
  int presentations = 0, attempts = 0;
  while (presentations < 100 && attempts < 100000) {
    ++attempts;
    const std::size_t k = draw(rng, 1, 3);
    const long cap = k == 3 ? 100 : 1000;
    IntMatrix rel(k + draw(rng, 0, 2), k);
    long order = 1;
    for (std::size_t i = 0; i < k; ++i) {
      rel(i, i) = draw(rng, 1, 12);
      order *= rel(i, i).get_si();
      for (std::size_t j = i + 1; j < k; ++j) rel(i, j) = draw(rng, -20, 20);
    }
    if (order > cap) continue;
    for (std::size_t i = k; i < rel.rows(); ++i)
      for (std::size_t j = 0; j < k; ++j) rel(i, j) = draw(rng, -20, 20);
    for (int s = 0; s < 4; ++s) {
      const std::size_t a = draw(rng, 0, k - 1), b = draw(rng, 0, k - 1);
      if (a != b) rel.add_col_multiple(a, b, draw(rng, -3, 3));
    }
    Presentation p{k, rel};
    auto expected = brute_force_order(p);
    if (!expected) continue;
    ++presentations;
    CanonicalGroup g = canonicalize(p);
    Integer prod = 1;
    for (const auto& d : g.invariant_factors()) prod *= d;
    if (prod != *expected)
      rep.fail("presentation " + rel.to_string() + ": " + prod.get_str() + " != " + expected->get_str());
  }
  if (presentations < 100) rep.fail("only " + std::to_string(presentations) + " presentations generated");
  const double secs = seconds_since(t0);
  if (secs >= 30) rep.fail("took " + std::to_string(secs) + " s");
  std::ostringstream detail;
  detail << "1000 matrices, " << presentations << " presentations, " << std::fixed << std::setprecision(1) << secs
         << " s";
  return finish(6, "linear-algebra substrate", rep, detail.str());
}

struct Mutation {
  std::string label;
  InstanceData data;
  std::string axiom;
};

IntVector unit_vector(std::size_t n, std::size_t i) {
  IntVector v(n);
  v[i] = 1;
  return v;
}

std::vector<Mutation> mutations() {
  std::vector<Mutation> out;

  // commutativity: perturb one off-diagonal product by a ring generator of nonzero order
  for (std::uint64_t seed = 0; out.size() < 13 && seed < 200; ++seed) {
    GenParams p;
    p.family = seed % 2 ? "prod" : "randquot";
    p.seed = seed;
    InstanceData d = generate(p);
    const std::size_t k = d.ring.num_gens;
    if (k < 2) continue;
    Instance inst = build(d);
    std::optional<std::size_t> t;
    for (std::size_t g = 0; g < k && !t; ++g)
      if (!inst.ring->group().is_zero(inst.ring->group().from_user(unit_vector(k, g)))) t = g;
    if (!t) continue;
    const std::size_t i = seed % (k - 1), j = k - 1;
    d.ring.mul[i][j][*t] += 1;
    out.push_back({"commutativity " + p.family + "/" + std::to_string(seed), d, "commutativity"});
  }

  // associativity: in (Z/p)[x]/(x^e) redefine x * x^(e-1) = x
  for (std::uint64_t p : {2, 3, 5})
    for (std::uint64_t e : {3, 4, 5, 6}) {
      InstanceData d = make_trunc(p, e, {e});
      d.ring.mul[1][e - 1] = d.ring.mul[e - 1][1] = unit_vector(e, 1);
      out.push_back({"associativity trunc(" + std::to_string(p) + "," + std::to_string(e) + ")", d, "associativity"});
    }
  {
    InstanceData d = make_product(make_trunc(2, 3, {3}), make_zmod(3, {3}));
    d.ring.mul[1][2] = d.ring.mul[2][1] = unit_vector(4, 1);
    out.push_back({"associativity trunc(2,3) x Z/3", d, "associativity"});
  }

  // identity: no unit in the table, or a wrong declared one
  for (std::uint64_t n : {4, 6, 8, 9, 12, 25}) {
    InstanceData d = make_zmod(n, {});
    const std::uint64_t q = n % 2 == 0 ? 2 : (n % 3 == 0 ? 3 : 5);
    d.ring.mul[0][0] = IntVector{Integer(static_cast<unsigned long>(q))};
    d.ring.one.reset();
    out.push_back({"identity, no unit in Z/" + std::to_string(n), d, "identity"});
  }
  for (std::uint64_t n : {3, 4, 10}) {
    InstanceData d = make_zmod(n, {n});
    d.ring.one = IntVector{Integer(static_cast<unsigned long>(n - 1))};
    out.push_back({"identity, declared -1 in Z/" + std::to_string(n), d, "identity"});
  }
  for (std::uint64_t e : {2, 3, 4}) {
    InstanceData d = make_trunc(3, e, {e});
    d.ring.one = unit_vector(e, 1);
    out.push_back({"identity, declared x in trunc(3," + std::to_string(e) + ")", d, "identity"});
  }

  // well-definedness: module relations not respected by the ring, or tables not killed by relations
  for (auto [n, m] : std::vector<std::pair<long, long>>{{6, 4}, {4, 8}, {9, 27}, {2, 3}, {10, 4}, {12, 8}, {3, 9}}) {
    InstanceData d = make_zmod(n, {});
    d.module.num_gens = 1;
    d.module.relations = {IntVector{Integer(m)}};
    d.module.action = {{IntVector{Integer(1)}}};
    out.push_back({"well-definedness, Z/" + std::to_string(n) + " on Z/" + std::to_string(m), d, "well-definedness"});
  }
  for (long q : {2, 3}) {
    // Z/q x Z/(2q) with generator products landing in the larger summand
    InstanceData d;
    d.ring.num_gens = 2;
    d.ring.relations = {IntVector{Integer(q), Integer(0)}, IntVector{Integer(0), Integer(2 * q)}};
    d.ring.mul = {{IntVector{Integer(1), Integer(0)}, IntVector{Integer(0), Integer(1)}},
                  {IntVector{Integer(0), Integer(1)}, IntVector{Integer(0), Integer(1)}}};
    d.ring.one = IntVector{Integer(1), Integer(0)};
    d.module.num_gens = 0;
    d.module.action = {{}, {}};
    out.push_back({"well-definedness, ring table on Z/" + std::to_string(q) + " x Z/" + std::to_string(2 * q), d,
                   "well-definedness"});
  }
  for (long b : {4, 6, 8}) {
    // 1 sends the order-2 generator to the order-b one
    InstanceData d = make_zmod(b, {2, static_cast<std::uint64_t>(b)});
    d.module.action[0][0] = IntVector{Integer(0), Integer(1)};
    out.push_back({"well-definedness, action on Z/2 x Z/" + std::to_string(b), d, "well-definedness"});
  }
  return out;
}

bool criterion_validator(const Scratch& scratch) {
  Report rep;
  const auto corpus = mutations();
  std::map<std::string, int> per_axiom;
  for (const auto& mu : corpus) {
    CliRun run = cli({"check", scratch.write("c7.json", mu.data)});
    if (run.code != kExitError) rep.fail(mu.label + ": accepted with exit " + std::to_string(run.code));
    else if (run.err.find("[" + mu.axiom + "]") == std::string::npos) rep.fail(mu.label + ": stderr was " + run.err);
    else ++per_axiom[mu.axiom];
  }
  if (corpus.size() < 50) rep.fail("only " + std::to_string(corpus.size()) + " mutations");
  std::ostringstream detail;
  detail << corpus.size() << " mutations";
  for (const auto& [a, n] : per_axiom) detail << ", " << a << " " << n;
  return finish(7, "validator sensitivity", rep, detail.str());
}

}  // namespace

int main() {
  Scratch scratch;
  std::vector<CorpusItem> items;
  try {
    items = corpus();
  } catch (const std::exception& e) {
    std::cout << "FAIL corpus generation: " << e.what() << '\n';
    return 1;
  }
  std::vector<std::function<bool()>> criteria = {
      [&] { return criterion_oracle(items, scratch); }, [&] { return criterion_traces(scratch); },
      [&] { return criterion_halving(items); },        [&] { return criterion_invariants(items); },
      [&] { return criterion_large(scratch); },        [&] { return criterion_linalg(); },
      [&] { return criterion_validator(scratch); },
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    try {
      if (!criteria[i]()) ++failed;
    } catch (const std::exception& e) {
      std::cout << "FAIL criterion " << i + 1 << ": uncaught exception: " << e.what() << '\n';
      ++failed;
    }
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << '\n';
  return failed ? 1 : 0;
}
