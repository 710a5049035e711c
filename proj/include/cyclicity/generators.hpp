#pragma once

// Seeded instance families for the test corpus.
//
//   zmod      R = Z/n, M = Z/d_1 + ... + Z/d_s with every d_i | n
//   trunc     R = (Z/p)[x]/(x^e), M = R/(x^c_1) + ... + R/(x^c_s)
//   randquot  R = (Z/n)[x]/(f) for monic f of degree <= 4, M = sum of R/I_t
//   prod      componentwise product of two instances
//
// Parameters left unset are drawn from the seed. Random draws keep |R| <= 256
// and |M| <= 4096. The same parameters and seed always give the same file.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cyclicity/instance.hpp"

namespace cyclicity {

struct GenParams {
  std::string family;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> n;
  std::vector<std::uint64_t> d;
  std::optional<std::uint64_t> p;
  std::optional<std::uint64_t> e;
  std::vector<std::uint64_t> cutoffs;
  std::optional<std::uint64_t> degree;
  std::optional<InstanceData> left;
  std::optional<InstanceData> right;
};

InstanceData generate(const GenParams& params);

InstanceData make_zmod(std::uint64_t n, const std::vector<std::uint64_t>& d);
InstanceData make_trunc(std::uint64_t p, std::uint64_t e, const std::vector<std::uint64_t>& cutoffs);
InstanceData make_product(const InstanceData& left, const InstanceData& right);

}  // namespace cyclicity
