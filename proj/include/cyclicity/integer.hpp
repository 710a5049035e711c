#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace cyclicity {

/// Arbitrary-precision integer used for every coordinate, order and matrix entry.
using Integer = mpz_class;
using IntVector = std::vector<Integer>;

/// acc += a * b without temporaries.
inline void addmul(Integer& acc, const Integer& a, const Integer& b) {
  mpz_addmul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

/// acc -= a * b without temporaries.
inline void submul(Integer& acc, const Integer& a, const Integer& b) {
  mpz_submul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

/// Least non-negative residue of x modulo m (m > 0), in place.
inline void reduce_mod(Integer& x, const Integer& m) {
  mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
}

inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline int cmpabs(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

inline bool divides(const Integer& d, const Integer& x) {
  return mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t()) != 0;
}

struct Bezout {
  Integer g, s, t;  // g = s*a + t*b, g >= 0
};

inline Bezout xgcd(const Integer& a, const Integer& b) {
  Bezout r;
  mpz_gcdext(r.g.get_mpz_t(), r.s.get_mpz_t(), r.t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline bool is_zero(const IntVector& v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

/// floor(log2 n) for n >= 1.
inline std::size_t floor_log2(const Integer& n) { return mpz_sizeinbase(n.get_mpz_t(), 2) - 1; }

}  // namespace cyclicity
