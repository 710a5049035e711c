#pragma once

// Instance files: a ring and a module over it, both as abelian groups by
// generators and relations, with products of generators in user coordinates.
//
// {
//   "ring":   {"num_gens": k, "relations": [[...]], "mul": [[[...]]], "one": [...]},
//   "module": {"num_gens": l, "relations": [[...]], "action": [[[...]]]}
// }
//
// Integers may be JSON numbers or decimal strings; output always uses strings.
// "mul" is either the full k x k table or its upper triangle (row i holding
// the products g_i g_j for j >= i). "one" is optional.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cyclicity/errors.hpp"
#include "cyclicity/module.hpp"
#include "cyclicity/ring.hpp"

namespace cyclicity {

using Table = std::vector<std::vector<IntVector>>;

struct InstanceData {
  struct Ring {
    std::size_t num_gens = 0;
    std::vector<IntVector> relations;
    Table mul;
    std::optional<IntVector> one;
    friend bool operator==(const Ring&, const Ring&) = default;
  } ring;
  struct Module {
    std::size_t num_gens = 0;
    std::vector<IntVector> relations;
    Table action;
    friend bool operator==(const Module&, const Module&) = default;
  } module;

  friend bool operator==(const InstanceData&, const InstanceData&) = default;
};

/// Malformed document: bad JSON, missing keys, wrong vector lengths.
class SchemaError : public InputError {
 public:
  using InputError::InputError;
};

/// The tables violate ring or module axioms.
class ValidationError : public InputError {
 public:
  explicit ValidationError(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

InstanceData parse_instance(const std::string& text);
std::string emit_instance(const InstanceData& data);
InstanceData read_instance_file(const std::string& path);
void write_instance_file(const std::string& path, const InstanceData& data);

struct Instance {
  std::shared_ptr<const FiniteRing> ring;
  std::shared_ptr<const FiniteModule> module;
  std::vector<std::string> warnings;
};

/// Axiom checks stated on the user tables: relations must act as zero on both
/// sides of every table, and a full "mul" must be symmetric.
std::vector<Diagnostic> user_table_diagnostics(const InstanceData& data);

/// Canonicalizes both groups, rewrites the tables in canonical coordinates and
/// solves for the identity when "one" is absent. With validate set, every axiom
/// is checked and a ValidationError lists all violations.
Instance build_instance(const InstanceData& data, bool validate = true);

}  // namespace cyclicity
