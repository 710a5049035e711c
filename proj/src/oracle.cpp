#include "cyclicity/oracle.hpp"

#include <algorithm>
#include <vector>

#include "cyclicity/errors.hpp"

namespace cyclicity {

const char* to_string(OracleVerdict::Kind k) {
  switch (k) {
    case OracleVerdict::Kind::kCyclic:
      return "cyclic";
    case OracleVerdict::Kind::kNotCyclic:
      return "not_cyclic";
    case OracleVerdict::Kind::kTooLarge:
      return "too_large";
  }
  return "?";
}

namespace {

using Coords = std::vector<std::int64_t>;

class Enumerator {
 public:
  Enumerator(const FiniteRing& r, const FiniteModule& m) : ring_rank_(r.rank()) {
    for (const auto& e : m.group().invariant_factors()) mod_.push_back(e.get_si());
    weight_.assign(mod_.size(), 1);
    size_ = 1;
    for (std::size_t j = mod_.size(); j-- > 0;) {
      weight_[j] = size_;
      size_ *= static_cast<std::uint64_t>(mod_[j]);
    }
    action_.resize(ring_rank_);
    for (std::size_t i = 0; i < ring_rank_; ++i)
      for (std::size_t j = 0; j < mod_.size(); ++j) {
        Coords c;
        for (const auto& v : m.action(i, j).coords) c.push_back(v.get_si());
        action_[i].push_back(std::move(c));
      }
    stamp_.assign(size_, 0);
  }

  std::uint64_t size() const { return size_; }

  Coords decode(std::uint64_t idx) const {
    Coords c(mod_.size());
    for (std::size_t j = 0; j < mod_.size(); ++j) {
      c[j] = static_cast<std::int64_t>(idx / weight_[j]);
      idx %= weight_[j];
    }
    return c;
  }

  std::uint64_t encode(const Coords& c) const {
    std::uint64_t idx = 0;
    for (std::size_t j = 0; j < mod_.size(); ++j) idx += static_cast<std::uint64_t>(c[j]) * weight_[j];
    return idx;
  }

  // g_i . y
  Coords act(std::size_t i, const Coords& y) const {
    Coords out(mod_.size(), 0);
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (y[j] == 0) continue;
      const Coords& a = action_[i][j];
      for (std::size_t k = 0; k < out.size(); ++k) out[k] = (out[k] + y[j] * a[k]) % mod_[k];
    }
    return out;
  }

  std::uint64_t span_size(const Coords& y) {
    std::vector<Coords> gens;
    for (std::size_t i = 0; i < ring_rank_; ++i) {
      Coords g = act(i, y);
      if (std::all_of(g.begin(), g.end(), [](std::int64_t v) { return v == 0; })) continue;
      if (std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(std::move(g));
    }
    ++current_;
    std::vector<std::uint64_t> queue{0};
    stamp_[0] = current_;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Coords x = decode(queue[head]);
      for (const auto& g : gens) {
        Coords s(x.size());
        for (std::size_t k = 0; k < s.size(); ++k) {
          s[k] = x[k] + g[k];
          if (s[k] >= mod_[k]) s[k] -= mod_[k];
        }
        const std::uint64_t idx = encode(s);
        if (stamp_[idx] != current_) {
          stamp_[idx] = current_;
          queue.push_back(idx);
        }
      }
    }
    return queue.size();
  }

 private:
  std::size_t ring_rank_;
  Coords mod_;
  std::vector<std::uint64_t> weight_;
  std::uint64_t size_ = 1;
  std::vector<std::vector<Coords>> action_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t current_ = 0;
};

Element to_element(const Coords& c) {
  IntVector v;
  for (auto x : c) v.emplace_back(static_cast<long>(x));
  return {std::move(v)};
}

}  // namespace

OracleVerdict brute_force(const FiniteRing& r, const FiniteModule& m, std::uint64_t bound) {
  OracleVerdict out;
  out.module_order = m.order();
  out.bound = bound;
  if (out.module_order > Integer(static_cast<unsigned long>(bound))) {
    out.kind = OracleVerdict::Kind::kTooLarge;
    return out;
  }
  Enumerator en(r, m);
  for (std::uint64_t idx = 0; idx < en.size(); ++idx) {
    Coords y = en.decode(idx);
    if (en.span_size(y) == en.size()) {
      out.kind = OracleVerdict::Kind::kCyclic;
      out.generator = to_element(y);
      return out;
    }
  }
  out.kind = OracleVerdict::Kind::kNotCyclic;
  return out;
}

std::uint64_t cyclic_span_size(const FiniteRing& r, const FiniteModule& m, const Element& y, std::uint64_t bound) {
  if (m.order() > Integer(static_cast<unsigned long>(bound)))
    throw InputError("cyclic_span_size: module exceeds the enumeration bound");
  m.group().check(y);
  Enumerator en(r, m);
  Coords c;
  for (const auto& v : y.coords) c.push_back(v.get_si());
  return en.span_size(c);
}

}  // namespace cyclicity
