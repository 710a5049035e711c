#include "cyclicity/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cyclicity/cyclic.hpp"
#include "cyclicity/generators.hpp"
#include "cyclicity/instance.hpp"
#include "cyclicity/oracle.hpp"
#include "json.hpp"

namespace cyclicity {

namespace {

using nlohmann::json;

std::string fmt(const IntVector& v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ']';
  return os.str();
}

json strings(const IntVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

Instance load(const std::string& path, bool validate, std::ostream& err) {
  Instance inst = build_instance(read_instance_file(path), validate);
  for (const auto& w : inst.warnings) err << "warning: " << w << '\n';
  return inst;
}

json trace_json(const std::vector<TraceEntry>& trace, const CanonicalGroup& mg) {
  json a = json::array();
  for (const auto& e : trace) {
    json t = {{"iteration", e.iteration},
              {"order_A", e.order_a_ring.get_str()},
              {"chosen_x", e.chosen_x ? strings(mg.to_user(*e.chosen_x)) : json(nullptr)},
              {"order_a", e.chosen_x ? json(e.order_ann.get_str()) : json(nullptr)},
              {"order_b", e.chosen_x ? json(e.order_ann_ann.get_str()) : json(nullptr)},
              {"meet_zero", e.chosen_x ? json(e.meet_zero) : json(nullptr)},
              {"branch", to_string(e.branch)},
              {"order_quotient", e.order_quotient_ring ? json(e.order_quotient_ring->get_str()) : json(nullptr)},
              {"order_extension", e.order_extension ? json(e.order_extension->get_str()) : json(nullptr)}};
    a.push_back(std::move(t));
  }
  return a;
}

void print_trace_text(std::ostream& out, const std::vector<TraceEntry>& trace, const CanonicalGroup& mg) {
  out << "trace:\n";
  for (const auto& e : trace) {
    out << "  " << e.iteration << ": |A| = " << e.order_a_ring;
    if (e.chosen_x) {
      out << ", x = " << fmt(mg.to_user(*e.chosen_x)) << ", |a| = " << e.order_ann << ", |b| = " << e.order_ann_ann
          << ", a meet b " << (e.meet_zero ? "= 0" : "!= 0");
    }
    out << ", " << to_string(e.branch);
    if (e.order_quotient_ring)
      out << ", |A/a| = " << *e.order_quotient_ring << ", |M_{A/a}| = " << *e.order_extension;
    out << '\n';
  }
}

int cmd_check(const std::string& path, bool trace, const std::string& format, bool validate, bool assert_on,
              std::ostream& out, std::ostream& err) {
  Instance inst = load(path, validate, err);
  RunOptions opts;
  opts.check_invariants = assert_on;
  CyclicityResult res = run(*inst.ring, *inst.module, opts);
  const CanonicalGroup& mg = inst.module->group();
  if (format == "json") {
    json doc = {{"verdict", res.cyclic() ? "cyclic" : "not_cyclic"}, {"iterations", res.iterations()}};
    if (res.generator) doc["generator"] = strings(mg.to_user(*res.generator));
    if (res.witness)
      doc["witness"] = {{"iteration", res.witness->iteration},
                        {"order_quotient", res.witness->order_quotient_ring.get_str()},
                        {"order_extension", res.witness->order_extension.get_str()}};
    if (trace) doc["trace"] = trace_json(res.trace, mg);
    out << doc.dump(2) << '\n';
  } else {
    out << "verdict: " << (res.cyclic() ? "cyclic" : "not cyclic") << '\n';
    if (res.generator) out << "generator: " << fmt(mg.to_user(*res.generator)) << '\n';
    if (res.witness)
      out << "witness: step " << res.witness->iteration << ", |A/a| = " << res.witness->order_quotient_ring
          << " < |M_{A/a}| = " << res.witness->order_extension << '\n';
    out << "iterations: " << res.iterations() << '\n';
    if (trace) print_trace_text(out, res.trace, mg);
  }
  return res.cyclic() ? kExitCyclic : kExitNotCyclic;
}

int cmd_oracle(const std::string& path, std::uint64_t bound, std::ostream& out, std::ostream& err) {
  Instance inst = load(path, true, err);
  OracleVerdict v = brute_force(*inst.ring, *inst.module, bound);
  switch (v.kind) {
    case OracleVerdict::Kind::kTooLarge:
      out << "verdict: too large (|M| = " << v.module_order << " > bound " << v.bound << ")\n";
      return kExitTooLarge;
    case OracleVerdict::Kind::kCyclic:
      out << "verdict: cyclic\ngenerator: " << fmt(inst.module->group().to_user(*v.generator)) << '\n';
      return kExitCyclic;
    case OracleVerdict::Kind::kNotCyclic:
      out << "verdict: not cyclic\n";
      return kExitNotCyclic;
  }
  return kExitError;
}

int cmd_compare(const std::string& path, std::uint64_t bound, std::ostream& out, std::ostream& err) {
  Instance inst = load(path, true, err);
  OracleVerdict v = brute_force(*inst.ring, *inst.module, bound);
  if (v.kind == OracleVerdict::Kind::kTooLarge) {
    out << "TOO_LARGE |M| = " << v.module_order << " > bound " << v.bound << '\n';
    return kExitTooLarge;
  }
  CyclicityResult res = run(*inst.ring, *inst.module);
  bool agree = res.cyclic() == v.cyclic();
  if (agree && res.generator && cyclic_span_size(*inst.ring, *inst.module, *res.generator, bound) != v.module_order) {
    err << "error: the algorithm's generator does not span M under enumeration\n";
    agree = false;
  }
  const char* alg = res.cyclic() ? "cyclic" : "not_cyclic";
  if (!agree) {
    out << "DISAGREE algorithm=" << alg << " oracle=" << to_string(v.kind) << '\n';
    return kExitError;
  }
  out << "AGREE " << alg << '\n';
  return res.cyclic() ? kExitCyclic : kExitNotCyclic;
}

int cmd_validate(const std::string& path, std::ostream& out, std::ostream& err) {
  Instance inst = load(path, true, err);
  auto factors = [](const CanonicalGroup& g) {
    std::ostringstream os;
    os << "Z^0";
    if (g.rank() > 0) {
      os.str("");
      for (std::size_t i = 0; i < g.rank(); ++i) os << (i ? " x " : "") << "Z/" << g.invariant_factors()[i];
    }
    return os.str();
  };
  out << "ok\nring: " << factors(inst.ring->group()) << " (order " << inst.ring->order() << ")\n"
      << "module: " << factors(inst.module->group()) << " (order " << inst.module->order() << ")\n";
  return kExitCyclic;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decide whether a finite module over a finite commutative ring is cyclic"};
  app.name("cyclicity");
  app.require_subcommand(1);

  std::string file;
  bool trace = false, no_validate = false, no_assert = false;
  std::string format = "text";
  std::uint64_t bound = kDefaultOracleBound;

  auto* check = app.add_subcommand("check", "run the cyclicity algorithm");
  check->add_option("file", file, "instance file")->required();
  check->add_flag("--trace", trace, "print the step-by-step trace");
  check->add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));
  check->add_flag("--no-validate", no_validate, "skip the ring and module axiom checks");
  check->add_flag("--no-assert", no_assert, "skip the per-step invariant checks");

  auto* oracle = app.add_subcommand("oracle", "brute-force search for a generator");
  oracle->add_option("file", file, "instance file")->required();
  oracle->add_option("--bound", bound, "largest |M| to enumerate");

  auto* compare = app.add_subcommand("compare", "run both and report agreement");
  compare->add_option("file", file, "instance file")->required();
  compare->add_option("--bound", bound, "largest |M| to enumerate");

  auto* validate = app.add_subcommand("validate", "check the ring and module axioms");
  validate->add_option("file", file, "instance file")->required();

  GenParams gp;
  std::string output, left_file, right_file;
  std::uint64_t n = 0, p = 0, e = 0, degree = 0;
  auto* gen = app.add_subcommand("gen", "generate an instance file");
  gen->add_option("--family", gp.family, "zmod, trunc, prod or randquot")->required();
  gen->add_option("--seed", gp.seed, "random seed")->required();
  auto* n_opt = gen->add_option("--n", n, "modulus (zmod, randquot)");
  gen->add_option("--d", gp.d, "module invariants for zmod")->delimiter(',');
  auto* p_opt = gen->add_option("--p", p, "characteristic (trunc)");
  auto* e_opt = gen->add_option("--e", e, "nilpotency index (trunc)");
  gen->add_option("--cutoffs", gp.cutoffs, "module summands R/(x^c) (trunc)")->delimiter(',');
  auto* deg_opt = gen->add_option("--degree", degree, "degree of f (randquot)");
  gen->add_option("--left", left_file, "first factor (prod)");
  gen->add_option("--right", right_file, "second factor (prod)");
  gen->add_option("-o,--output", output, "output file (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*check) return cmd_check(file, trace, format, !no_validate, !no_assert, out, err);
    if (*oracle) return cmd_oracle(file, bound, out, err);
    if (*compare) return cmd_compare(file, bound, out, err);
    if (*validate) return cmd_validate(file, out, err);
    if (*gen) {
      if (*n_opt) gp.n = n;
      if (*p_opt) gp.p = p;
      if (*e_opt) gp.e = e;
      if (*deg_opt) gp.degree = degree;
      if (!left_file.empty()) gp.left = read_instance_file(left_file);
      if (!right_file.empty()) gp.right = read_instance_file(right_file);
      InstanceData data = generate(gp);
      if (output.empty()) {
        out << emit_instance(data);
      } else {
        write_instance_file(output, data);
      }
      return kExitCyclic;
    }
  } catch (const ValidationError& ex) {
    err << "error: instance failed validation\n";
    for (const auto& d : ex.diagnostics()) err << "  [" << d.axiom << "] " << d.message << '\n';
    return kExitError;
  } catch (const InvariantViolation& ex) {
    err << "internal error: " << ex.what() << '\n';
    return kExitError;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace cyclicity
