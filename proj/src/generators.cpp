#include "cyclicity/generators.hpp"

#include <random>

namespace cyclicity {

namespace {

using u64 = std::uint64_t;

struct Limits {
  u64 ring = 256;
  u64 module = 4096;
};

class Rng {
 public:
  explicit Rng(u64 seed) : gen_(seed) {}
  // uniform-ish in [lo, hi]; modulo draws keep files identical across standard libraries
  u64 draw(u64 lo, u64 hi) { return lo + gen_() % (hi - lo + 1); }
  u64 raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

IntVector unit(std::size_t n, std::size_t i) {
  IntVector v(n);
  v[i] = 1;
  return v;
}

IntVector zeros(std::size_t n) { return IntVector(n); }

u64 ipow(u64 b, u64 e) {
  u64 r = 1;
  while (e--) r *= b;
  return r;
}

std::vector<IntVector> scaled_identity(std::size_t n, const std::vector<u64>& diag) {
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < n; ++i) {
    IntVector r(n);
    r[i] = static_cast<unsigned long>(diag[i]);
    rows.push_back(std::move(r));
  }
  return rows;
}

Integer order_of(std::size_t n, const std::vector<IntVector>& relations) {
  return canonicalize({n, IntMatrix::from_rows(relations, n)}).order();
}

// Polynomials over Z/n modulo a monic f, as coefficient vectors of length deg.
struct PolyRing {
  u64 n;
  std::vector<u64> f;  // x^deg = -(f[0] + f[1] x + ... )
  std::size_t deg() const { return f.size(); }

  std::vector<u64> mul(const std::vector<u64>& a, const std::vector<u64>& b) const {
    std::vector<u64> full(2 * deg(), 0);
    for (std::size_t i = 0; i < deg(); ++i)
      for (std::size_t j = 0; j < deg(); ++j) full[i + j] = (full[i + j] + a[i] * b[j]) % n;
    for (std::size_t m = full.size(); m-- > deg();) {
      const u64 c = full[m];
      if (c == 0) continue;
      full[m] = 0;
      for (std::size_t t = 0; t < deg(); ++t) full[m - deg() + t] = (full[m - deg() + t] + (n - f[t]) * c) % n;
    }
    full.resize(deg());
    return full;
  }

  std::vector<u64> monomial(std::size_t k) const {
    std::vector<u64> x(deg(), 0), r(deg(), 0);
    r[0] = 1 % n;
    if (deg() == 1) {
      x[0] = (n - f[0]) % n;
    } else {
      x[1] = 1;
    }
    for (std::size_t i = 0; i < k; ++i) r = mul(r, x);
    return r;
  }
};

IntVector to_int_vector(const std::vector<u64>& v) {
  IntVector out;
  for (auto x : v) out.emplace_back(static_cast<unsigned long>(x));
  return out;
}

InstanceData make_randquot(Rng& rng, const GenParams& p, const Limits& lim) {
  u64 n = p.n.value_or(0);
  u64 deg = p.degree.value_or(0);
  if (p.n && *p.n < 2) throw InputError("randquot: n must be at least 2");
  if (p.degree && (*p.degree < 1 || *p.degree > 4)) throw InputError("randquot: degree must be between 1 and 4");
  if (!n) {
    const u64 hi = std::min<u64>(16, lim.ring);
    n = rng.draw(2, std::max<u64>(2, hi));
  }
  if (!deg) {
    u64 maxdeg = 1;
    while (maxdeg < 4 && ipow(n, maxdeg + 1) <= lim.ring) ++maxdeg;
    deg = rng.draw(1, maxdeg);
  }
  PolyRing pr{n, {}};
  for (u64 t = 0; t < deg; ++t) pr.f.push_back(rng.draw(0, n - 1));

  InstanceData d;
  const std::size_t k = deg;
  d.ring.num_gens = k;
  d.ring.relations = scaled_identity(k, std::vector<u64>(k, n));
  std::vector<std::vector<u64>> powers;
  for (std::size_t m = 0; m + 1 < 2 * k; ++m) powers.push_back(pr.monomial(m));
  d.ring.mul.assign(k, {});
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) d.ring.mul[i].push_back(to_int_vector(powers[i + j]));
  d.ring.one = unit(k, 0);

  // M = sum of R / I, each I generated by up to two random elements
  struct Summand {
    std::vector<IntVector> relations;
  };
  std::vector<Summand> summands;
  Integer total = 1;
  const u64 wanted = rng.draw(1, 3);
  for (u64 s = 0; s < wanted; ++s) {
    for (int attempt = 0; attempt < 8; ++attempt) {
      Summand sm;
      sm.relations = scaled_identity(k, std::vector<u64>(k, n));
      const u64 ngens = rng.draw(0, 2);
      for (u64 g = 0; g < ngens; ++g) {
        std::vector<u64> h(k);
        for (auto& c : h) c = rng.draw(0, n - 1);
        for (std::size_t m = 0; m < k; ++m) sm.relations.push_back(to_int_vector(pr.mul(powers[m], h)));
      }
      const Integer ord = order_of(k, sm.relations);
      if (total * ord <= Integer(static_cast<unsigned long>(lim.module))) {
        total *= ord;
        summands.push_back(std::move(sm));
        break;
      }
    }
  }
  if (summands.empty()) {
    Summand zero;
    zero.relations = scaled_identity(k, std::vector<u64>(k, 1));
    summands.push_back(std::move(zero));
  }

  const std::size_t l = k * summands.size();
  d.module.num_gens = l;
  for (std::size_t s = 0; s < summands.size(); ++s)
    for (const auto& rel : summands[s].relations) {
      IntVector row(l);
      for (std::size_t t = 0; t < k; ++t) row[s * k + t] = rel[t];
      d.module.relations.push_back(std::move(row));
    }
  d.module.action.assign(k, {});
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t s = 0; s < summands.size(); ++s)
      for (std::size_t j = 0; j < k; ++j) {
        IntVector v(l);
        for (std::size_t t = 0; t < k; ++t) v[s * k + t] = static_cast<unsigned long>(powers[i + j][t]);
        d.module.action[i].push_back(std::move(v));
      }
  return d;
}

std::vector<u64> divisors(u64 n) {
  std::vector<u64> out;
  for (u64 q = 1; q <= n; ++q)
    if (n % q == 0) out.push_back(q);
  return out;
}

InstanceData random_zmod(Rng& rng, const GenParams& p, const Limits& lim) {
  const u64 n = p.n ? *p.n : rng.draw(2, std::max<u64>(2, lim.ring));
  if (!p.d.empty()) return make_zmod(n, p.d);
  const auto divs = divisors(n);
  std::vector<u64> d;
  u64 total = 1;
  const u64 wanted = rng.draw(1, 4);
  for (u64 s = 0; s < wanted; ++s) {
    const u64 q = divs[rng.draw(0, divs.size() - 1)];
    if (total * q > lim.module) continue;
    total *= q;
    d.push_back(q);
  }
  if (d.empty()) d.push_back(1);
  return make_zmod(n, d);
}

InstanceData random_trunc(Rng& rng, const GenParams& p, const Limits& lim) {
  static constexpr u64 kPrimes[] = {2, 3, 5, 7};
  u64 prime = p.p.value_or(0);
  if (!prime) {
    std::size_t count = 0;
    while (count < 4 && kPrimes[count] <= lim.ring) ++count;
    prime = kPrimes[rng.draw(0, std::max<std::size_t>(count, 1) - 1)];
  }
  u64 e = p.e.value_or(0);
  if (!e) {
    u64 maxe = 1;
    while (ipow(prime, maxe + 1) <= lim.ring) ++maxe;
    e = rng.draw(1, maxe);
  }
  if (!p.cutoffs.empty()) return make_trunc(prime, e, p.cutoffs);
  std::vector<u64> cutoffs;
  u64 total = 1;
  const u64 wanted = rng.draw(1, 3);
  for (u64 s = 0; s < wanted; ++s) {
    const u64 c = rng.draw(1, e);
    if (prime < 2 || total * ipow(prime, c) > lim.module) continue;
    total *= ipow(prime, c);
    cutoffs.push_back(c);
  }
  if (cutoffs.empty()) cutoffs.push_back(1);
  return make_trunc(prime, e, cutoffs);
}

InstanceData generate_with(const GenParams& p, const Limits& lim) {
  Rng rng(p.seed);
  if (p.family == "zmod") return random_zmod(rng, p, lim);
  if (p.family == "trunc") return random_trunc(rng, p, lim);
  if (p.family == "randquot") return make_randquot(rng, p, lim);
  if (p.family == "prod") {
    if (p.left && p.right) return make_product(*p.left, *p.right);
    static const char* kFactors[] = {"zmod", "trunc", "randquot"};
    const Limits small{16, 64};
    auto factor = [&](const std::optional<InstanceData>& given) {
      if (given) return *given;
      GenParams fp;
      fp.family = kFactors[rng.draw(0, 2)];
      fp.seed = rng.raw();
      return generate_with(fp, small);
    };
    InstanceData left = factor(p.left);
    InstanceData right = factor(p.right);
    return make_product(left, right);
  }
  throw InputError("unknown family \"" + p.family + "\" (expected zmod, trunc, prod or randquot)");
}

}  // namespace

InstanceData make_zmod(u64 n, const std::vector<u64>& d) {
  if (n < 1) throw InputError("zmod: n must be positive");
  for (u64 q : d)
    if (q < 1 || n % q != 0)
      throw InputError("zmod: d = " + std::to_string(q) + " does not divide n = " + std::to_string(n));
  InstanceData out;
  out.ring.num_gens = 1;
  out.ring.relations = {{Integer(static_cast<unsigned long>(n))}};
  out.ring.mul = {{{Integer(1)}}};
  out.ring.one = IntVector{Integer(1)};
  const std::size_t l = d.size();
  out.module.num_gens = l;
  out.module.relations = scaled_identity(l, d);
  out.module.action.assign(1, {});
  for (std::size_t j = 0; j < l; ++j) out.module.action[0].push_back(unit(l, j));
  return out;
}

InstanceData make_trunc(u64 p, u64 e, const std::vector<u64>& cutoffs) {
  if (p < 2) throw InputError("trunc: p must be at least 2");
  if (e < 1) throw InputError("trunc: e must be positive");
  for (u64 c : cutoffs)
    if (c < 1 || c > e) throw InputError("trunc: cutoffs must lie between 1 and e");
  InstanceData out;
  const std::size_t k = e;
  out.ring.num_gens = k;
  out.ring.relations = scaled_identity(k, std::vector<u64>(k, p));
  out.ring.mul.assign(k, {});
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) out.ring.mul[i].push_back(i + j < k ? unit(k, i + j) : zeros(k));
  out.ring.one = unit(k, 0);

  std::size_t l = 0;
  for (u64 c : cutoffs) l += c;
  out.module.num_gens = l;
  out.module.relations = scaled_identity(l, std::vector<u64>(l, p));
  out.module.action.assign(k, std::vector<IntVector>(l));
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t offset = 0;
    for (u64 c : cutoffs) {
      for (std::size_t t = 0; t < c; ++t) out.module.action[i][offset + t] = t + i < c ? unit(l, offset + t + i) : zeros(l);
      offset += c;
    }
  }
  return out;
}

InstanceData make_product(const InstanceData& a, const InstanceData& b) {
  auto ring_one = [](const InstanceData& x) {
    if (x.ring.one) return *x.ring.one;
    Instance inst = build_instance(x, false);
    return inst.ring->group().to_user(inst.ring->one());
  };
  auto pad = [](const IntVector& v, std::size_t before, std::size_t total) {
    IntVector out(total);
    for (std::size_t i = 0; i < v.size(); ++i) out[before + i] = v[i];
    return out;
  };
  for (const auto* x : {&a, &b})
    for (const auto& row : x->ring.mul)
      if (row.size() != x->ring.num_gens) throw InputError("prod: factors need full mul tables");

  const std::size_t ka = a.ring.num_gens, kb = b.ring.num_gens, k = ka + kb;
  const std::size_t la = a.module.num_gens, lb = b.module.num_gens, l = la + lb;
  InstanceData out;
  out.ring.num_gens = k;
  for (const auto& r : a.ring.relations) out.ring.relations.push_back(pad(r, 0, k));
  for (const auto& r : b.ring.relations) out.ring.relations.push_back(pad(r, ka, k));
  out.ring.mul.assign(k, std::vector<IntVector>(k, zeros(k)));
  for (std::size_t i = 0; i < ka; ++i)
    for (std::size_t j = 0; j < ka; ++j) out.ring.mul[i][j] = pad(a.ring.mul[i][j], 0, k);
  for (std::size_t i = 0; i < kb; ++i)
    for (std::size_t j = 0; j < kb; ++j) out.ring.mul[ka + i][ka + j] = pad(b.ring.mul[i][j], ka, k);
  IntVector one = pad(ring_one(a), 0, k);
  const IntVector one_b = ring_one(b);
  for (std::size_t i = 0; i < kb; ++i) one[ka + i] = one_b[i];
  out.ring.one = std::move(one);

  out.module.num_gens = l;
  for (const auto& r : a.module.relations) out.module.relations.push_back(pad(r, 0, l));
  for (const auto& r : b.module.relations) out.module.relations.push_back(pad(r, la, l));
  out.module.action.assign(k, std::vector<IntVector>(l, zeros(l)));
  for (std::size_t i = 0; i < ka; ++i)
    for (std::size_t j = 0; j < la; ++j) out.module.action[i][j] = pad(a.module.action[i][j], 0, l);
  for (std::size_t i = 0; i < kb; ++i)
    for (std::size_t j = 0; j < lb; ++j) out.module.action[ka + i][la + j] = pad(b.module.action[i][j], la, l);
  return out;
}

InstanceData generate(const GenParams& params) { return generate_with(params, Limits{}); }

}  // namespace cyclicity
