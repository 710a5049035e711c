#include "cyclicity/linalg.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "cyclicity/errors.hpp"

namespace cyclicity {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> init) {
  rows_ = init.size();
  cols_ = rows_ ? init.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : init) {
    if (r.size() != cols_) throw InputError("IntMatrix: ragged initializer");
    for (long x : r) data_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw InputError("IntMatrix::from_rows: row length mismatch");
    std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
  }
  return m;
}

IntVector IntMatrix::row_vector(std::size_t i) const {
  auto r = row(i);
  return {r.begin(), r.end()};
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (sgn(factor) == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) {
    const Integer& s = (*this)(src, j);
    if (sgn(s) != 0) addmul((*this)(dst, j), factor, s);
  }
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (sgn(factor) == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) {
    const Integer& s = (*this)(i, src);
    if (sgn(s) != 0) addmul((*this)(i, dst), factor, s);
  }
}

void IntMatrix::negate_row(std::size_t i) {
  for (auto& x : row(i)) x = -x;
}

void IntMatrix::negate_col(std::size_t j) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return sgn(x) == 0; });
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw InputError("IntMatrix product: dimension mismatch");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t l = 0; l < a.cols_; ++l) {
      const Integer& x = a(i, l);
      if (sgn(x) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) addmul(c(i, j), x, b(l, j));
    }
  return c;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

IntVector mul_vec(std::span<const Integer> x, const IntMatrix& a) {
  if (x.size() != a.rows()) throw InputError("mul_vec: dimension mismatch");
  IntVector out(a.cols());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (sgn(x[i]) == 0) continue;
    auto r = a.row(i);
    for (std::size_t j = 0; j < r.size(); ++j)
      if (sgn(r[j]) != 0) addmul(out[j], x[i], r[j]);
  }
  return out;
}

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw InputError("determinant: matrix not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(a(k, k)) == 0) {
      std::size_t p = k + 1;
      while (p < n && sgn(a(p, k)) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = a(k, k) * a(i, j) - a(i, k) * a(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = std::move(v);
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

IntVector SnfResult::diagonal() const {
  IntVector out;
  for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) out.push_back(d(i, i));
  return out;
}

namespace {

// Position of the entry of smallest nonzero magnitude in the block [r0.., c0..],
// first in row-major order on ties.
std::optional<std::pair<std::size_t, std::size_t>> smallest_entry(const IntMatrix& a, std::size_t r0,
                                                                  std::size_t c0) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  Integer best_abs;
  for (std::size_t i = r0; i < a.rows(); ++i)
    for (std::size_t j = c0; j < a.cols(); ++j) {
      const Integer& x = a(i, j);
      if (sgn(x) == 0) continue;
      if (!best || cmpabs(x, best_abs) < 0) {
        best = {i, j};
        best_abs = abs(x);
        if (best_abs == 1) return best;
      }
    }
  return best;
}

Integer trunc_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

SnfResult snf(const IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  IntMatrix a = m;
  IntMatrix u = IntMatrix::identity(rows);
  IntMatrix v = IntMatrix::identity(cols);
  IntMatrix v_inv = IntMatrix::identity(cols);

  auto row_op = [&](std::size_t dst, std::size_t src, const Integer& f) {
    a.add_row_multiple(dst, src, f);
    u.add_row_multiple(dst, src, f);
  };
  // col dst += f col src; the inverse acts on rows of v_inv.
  auto col_op = [&](std::size_t dst, std::size_t src, const Integer& f) {
    a.add_col_multiple(dst, src, f);
    v.add_col_multiple(dst, src, f);
    v_inv.add_row_multiple(src, dst, -f);
  };

  const std::size_t n = std::min(rows, cols);
  for (std::size_t t = 0; t < n; ++t) {
    bool finished = false;
    while (true) {
      auto pos = smallest_entry(a, t, t);
      if (!pos) {
        finished = true;
        break;
      }
      auto [pi, pj] = *pos;
      a.swap_rows(t, pi);
      u.swap_rows(t, pi);
      a.swap_cols(t, pj);
      v.swap_cols(t, pj);
      v_inv.swap_rows(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (sgn(a(i, t)) == 0) continue;
        row_op(i, t, -trunc_div(a(i, t), a(t, t)));
        if (sgn(a(i, t)) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (sgn(a(t, j)) == 0) continue;
        col_op(j, t, -trunc_div(a(t, j), a(t, t)));
        if (sgn(a(t, j)) != 0) clean = false;
      }
      if (!clean) continue;

      // Enforce the divisibility chain: pull an offending row into row t.
      std::optional<std::size_t> bad_row;
      for (std::size_t i = t + 1; i < rows && !bad_row; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!divides(a(t, t), a(i, j))) {
            bad_row = i;
            break;
          }
      if (!bad_row) break;
      row_op(t, *bad_row, 1);
    }
    if (finished) break;
    if (sgn(a(t, t)) < 0) {
      a.negate_row(t);
      u.negate_row(t);
    }
  }
  return {std::move(a), std::move(u), std::move(v), std::move(v_inv)};
}

HnfResult hnf(const IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  IntMatrix h = m;
  IntMatrix t = IntMatrix::identity(rows);
  std::vector<std::size_t> pivots;

  std::size_t p = 0;
  for (std::size_t j = 0; j < cols && p < rows; ++j) {
    bool found = false;
    while (true) {
      std::optional<std::size_t> best;
      for (std::size_t i = p; i < rows; ++i)
        if (sgn(h(i, j)) != 0 && (!best || cmpabs(h(i, j), h(*best, j)) < 0)) best = i;
      if (!best) break;
      found = true;
      h.swap_rows(p, *best);
      t.swap_rows(p, *best);
      bool clean = true;
      for (std::size_t i = p + 1; i < rows; ++i) {
        if (sgn(h(i, j)) == 0) continue;
        Integer q = -trunc_div(h(i, j), h(p, j));
        h.add_row_multiple(i, p, q);
        t.add_row_multiple(i, p, q);
        if (sgn(h(i, j)) != 0) clean = false;
      }
      if (clean) break;
    }
    if (!found) continue;
    if (sgn(h(p, j)) < 0) {
      h.negate_row(p);
      t.negate_row(p);
    }
    for (std::size_t i = 0; i < p; ++i) {
      Integer q = -floor_div(h(i, j), h(p, j));
      h.add_row_multiple(i, p, q);
      t.add_row_multiple(i, p, q);
    }
    pivots.push_back(j);
    ++p;
  }
  return {std::move(h), std::move(t), std::move(pivots)};
}

namespace {

IntMatrix stack(const IntMatrix& top, const IntMatrix& bottom) {
  IntMatrix s(top.rows() + bottom.rows(), top.cols());
  for (std::size_t i = 0; i < top.rows(); ++i) std::copy(top.row(i).begin(), top.row(i).end(), s.row(i).begin());
  for (std::size_t i = 0; i < bottom.rows(); ++i)
    std::copy(bottom.row(i).begin(), bottom.row(i).end(), s.row(top.rows() + i).begin());
  return s;
}

}  // namespace

std::optional<IntVector> solve_congruence(const IntMatrix& a, const IntMatrix& l, std::span<const Integer> t) {
  const std::size_t n = t.size();
  if (a.cols() != n || l.cols() != n) throw InputError("solve_congruence: dimension mismatch");
  const std::size_t k = a.rows();
  IntMatrix s = stack(a, l);
  HnfResult hr = hnf(s);

  IntVector residual(t.begin(), t.end());
  IntVector z(s.rows());
  for (std::size_t p = 0; p < hr.pivot_cols.size(); ++p) {
    const std::size_t c = hr.pivot_cols[p];
    if (sgn(residual[c]) == 0) continue;
    if (!divides(hr.h(p, c), residual[c])) return std::nullopt;
    Integer q = residual[c] / hr.h(p, c);
    auto hrow = hr.h.row(p);
    for (std::size_t j = c; j < n; ++j) submul(residual[j], q, hrow[j]);
    z[p] = std::move(q);
  }
  if (!is_zero(residual)) return std::nullopt;

  IntVector coeffs = mul_vec(z, hr.t);
  IntVector x(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(k));
  IntVector lattice_part(coeffs.begin() + static_cast<std::ptrdiff_t>(k), coeffs.end());

  IntVector check = mul_vec(x, a);
  IntVector lcomb = mul_vec(lattice_part, l);
  for (std::size_t j = 0; j < n; ++j)
    if (check[j] + lcomb[j] != t[j]) throw InvariantViolation("solve_congruence: substitution check failed");
  return x;
}

IntMatrix kernel_mod_lattice(const IntMatrix& a, const IntMatrix& l) {
  const std::size_t k = a.rows(), n = a.cols();
  if (l.cols() != n) throw InputError("kernel_mod_lattice: dimension mismatch");
  if (hnf(l).pivot_cols.size() != n) throw NotFiniteError("kernel_mod_lattice: infinite codomain (lattice not full rank)");

  IntMatrix block(k + l.rows(), n + k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < n; ++j) block(i, j) = a(i, j);
    block(i, n + i) = 1;
  }
  for (std::size_t i = 0; i < l.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) block(k + i, j) = l(i, j);

  HnfResult hr = hnf(block);
  std::vector<IntVector> kernel_rows;
  for (std::size_t p = 0; p < hr.pivot_cols.size(); ++p) {
    if (hr.pivot_cols[p] < n) continue;
    auto r = hr.h.row(p);
    kernel_rows.emplace_back(r.begin() + static_cast<std::ptrdiff_t>(n), r.end());
  }
  return IntMatrix::from_rows(kernel_rows, k);
}

ModularSnfResult snf_mod(const IntMatrix& m, const Integer& modulus) {
  if (sgn(modulus) <= 0) throw InputError("snf_mod: modulus must be positive");
  const std::size_t rows = m.rows(), cols = m.cols();
  IntMatrix a = m;
  for (std::size_t i = 0; i < rows; ++i)
    for (auto& x : a.row(i)) reduce_mod(x, modulus);
  IntMatrix v = IntMatrix::identity(cols);
  IntMatrix v_inv = IntMatrix::identity(cols);
  if (modulus == 1) return {IntVector(cols, Integer(1)), std::move(v), std::move(v_inv)};

  auto reduce_row = [&](IntMatrix& x, std::size_t i) {
    for (auto& e : x.row(i)) reduce_mod(e, modulus);
  };
  auto reduce_col = [&](IntMatrix& x, std::size_t j) {
    for (std::size_t i = 0; i < x.rows(); ++i) reduce_mod(x(i, j), modulus);
  };
  // [row t; row i] <- [[s, t'], [-b/g, a/g]] [row t; row i]
  // When the pivot already divides the entry, plain elimination: a Bezout pair
  // such as xgcd(1, 1) = (0, 1) would swap the rows and undo the column pass.
  auto bezout = [](const Integer& p, const Integer& q) {
    return divides(p, q) ? Bezout{p, 1, 0} : xgcd(p, q);
  };
  auto row_combine = [&](std::size_t t, std::size_t i, std::size_t col) {
    Bezout b = bezout(a(t, col), a(i, col));
    Integer x = a(i, col) / b.g, y = a(t, col) / b.g;
    for (std::size_t j = 0; j < cols; ++j) {
      Integer top = b.s * a(t, j) + b.t * a(i, j);
      Integer bottom = y * a(i, j) - x * a(t, j);
      a(t, j) = std::move(top);
      a(i, j) = std::move(bottom);
    }
    reduce_row(a, t);
    reduce_row(a, i);
  };
  // [col t, col j] <- [col t, col j] [[s, -b/g], [t', a/g]], mirrored on v and v_inv
  auto col_combine = [&](std::size_t t, std::size_t j, std::size_t row) {
    Bezout b = bezout(a(row, t), a(row, j));
    Integer x = a(row, j) / b.g, y = a(row, t) / b.g;
    auto apply = [&](IntMatrix& mat) {
      for (std::size_t i = 0; i < mat.rows(); ++i) {
        Integer left = b.s * mat(i, t) + b.t * mat(i, j);
        Integer right = y * mat(i, j) - x * mat(i, t);
        mat(i, t) = std::move(left);
        mat(i, j) = std::move(right);
      }
      reduce_col(mat, t);
      reduce_col(mat, j);
    };
    apply(a);
    apply(v);
    for (std::size_t c = 0; c < cols; ++c) {
      Integer top = y * v_inv(t, c) + x * v_inv(j, c);
      Integer bottom = b.s * v_inv(j, c) - b.t * v_inv(t, c);
      v_inv(t, c) = std::move(top);
      v_inv(j, c) = std::move(bottom);
    }
    reduce_row(v_inv, t);
    reduce_row(v_inv, j);
  };

  IntVector diag(cols, modulus);
  const std::size_t n = std::min(rows, cols);
  for (std::size_t t = 0; t < n; ++t) {
    auto pos = smallest_entry(a, t, t);
    if (!pos) break;
    a.swap_rows(t, pos->first);
    a.swap_cols(t, pos->second);
    v.swap_cols(t, pos->second);
    v_inv.swap_rows(t, pos->second);
    while (true) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i)
        if (sgn(a(i, t)) != 0) row_combine(t, i, t);
      for (std::size_t j = t + 1; j < cols; ++j)
        if (sgn(a(t, j)) != 0) {
          col_combine(t, j, t);
          clean = false;
        }
      if (!clean) {
        for (std::size_t i = t + 1; i < rows; ++i)
          if (sgn(a(i, t)) != 0) {
            clean = false;
            break;
          }
        if (!clean) continue;
      }
      Integer pivot = gcd(a(t, t), modulus);
      std::optional<std::size_t> bad_row;
      for (std::size_t i = t + 1; i < rows && !bad_row; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!divides(pivot, a(i, j))) {
            bad_row = i;
            break;
          }
      if (!bad_row) {
        diag[t] = pivot;
        break;
      }
      a.add_row_multiple(t, *bad_row, 1);
      reduce_row(a, t);
    }
  }
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < cols; ++i) reduce_mod(v(i, j), diag[j]);
  return {std::move(diag), std::move(v), std::move(v_inv)};
}

// ---------------------------------------------------------------------------

ModularHermite::ModularHermite(IntVector moduli) : moduli_(std::move(moduli)) {
  for (const auto& m : moduli_)
    if (sgn(m) <= 0) throw InputError("ModularHermite: moduli must be positive");
  rows_.resize(moduli_.size());
  pivots_ = moduli_;
}

void ModularHermite::reduce_tail(IntVector& v, std::size_t from) const {
  for (std::size_t k = from; k < v.size(); ++k)
    if (sgn(v[k]) != 0) reduce_mod(v[k], moduli_[k]);
}

void ModularHermite::insert(std::span<const Integer> v) {
  const std::size_t n = dim();
  if (v.size() != n) throw InputError("ModularHermite::insert: length mismatch");
  IntVector w(v.begin(), v.end());
  reduce_tail(w, 0);

  for (std::size_t j = 0; j < n; ++j) {
    if (sgn(w[j]) == 0) continue;
    const Integer& p = pivots_[j];
    IntVector& h = rows_[j];
    if (divides(p, w[j])) {
      if (!h.empty()) {
        Integer q = w[j] / p;
        for (std::size_t k = j + 1; k < n; ++k)
          if (sgn(h[k]) != 0) submul(w[k], q, h[k]);
        reduce_tail(w, j + 1);
      }
      w[j] = 0;
      continue;
    }
    Bezout b = xgcd(p, w[j]);
    Integer p_over_g = p / b.g;
    Integer w_over_g = w[j] / b.g;
    IntVector new_h(n);
    new_h[j] = b.g;
    if (h.empty()) {
      // h = m_j e_j: only the pivot entry is nonzero
      for (std::size_t k = j + 1; k < n; ++k)
        if (sgn(w[k]) != 0) new_h[k] = b.t * w[k];
      for (std::size_t k = j + 1; k < n; ++k) w[k] *= p_over_g;
    } else {
      for (std::size_t k = j + 1; k < n; ++k) {
        if (sgn(h[k]) != 0) addmul(new_h[k], b.s, h[k]);
        if (sgn(w[k]) != 0) addmul(new_h[k], b.t, w[k]);
        w[k] *= p_over_g;
        if (sgn(h[k]) != 0) submul(w[k], w_over_g, h[k]);
      }
    }
    w[j] = 0;
    reduce_tail(new_h, j + 1);
    reduce_tail(w, j + 1);
    pivots_[j] = b.g;
    h = std::move(new_h);
  }
}

bool ModularHermite::reduce(IntVector& w, std::size_t upto) const {
  const std::size_t n = dim();
  if (w.size() != n || upto > n) throw InputError("ModularHermite::reduce: length mismatch");
  reduce_tail(w, 0);
  for (std::size_t j = 0; j < upto; ++j) {
    if (sgn(w[j]) == 0) continue;
    if (!divides(pivots_[j], w[j])) return false;
    const IntVector& h = rows_[j];
    if (!h.empty()) {
      Integer q = w[j] / pivots_[j];
      for (std::size_t k = j + 1; k < n; ++k)
        if (sgn(h[k]) != 0) submul(w[k], q, h[k]);
      reduce_tail(w, j + 1);
    }
    w[j] = 0;
  }
  return true;
}

bool ModularHermite::contains(std::span<const Integer> v) const {
  IntVector w(v.begin(), v.end());
  return reduce(w, dim());
}

const Integer& ModularHermite::pivot(std::size_t j) const { return pivots_.at(j); }

IntVector ModularHermite::row(std::size_t j) const {
  if (!rows_.at(j).empty()) return rows_[j];
  IntVector r(dim());
  r[j] = moduli_[j];
  return r;
}

Integer ModularHermite::index() const {
  Integer r = 1;
  for (const auto& p : pivots_) r *= p;
  return r;
}

Integer ModularHermite::quotient_order() const {
  Integer r = 1;
  for (std::size_t j = 0; j < dim(); ++j) r *= moduli_[j] / pivots_[j];
  return r;
}

void ModularHermite::normalize() {
  const std::size_t n = dim();
  for (std::size_t i = 0; i < n; ++i) {
    IntVector& h = rows_[i];
    if (h.empty()) continue;
    for (std::size_t k = i + 1; k < n; ++k) {
      if (rows_[k].empty() || sgn(h[k]) == 0 || h[k] < pivots_[k]) continue;
      Integer q = floor_div(h[k], pivots_[k]);
      const IntVector& hk = rows_[k];
      for (std::size_t c = k; c < n; ++c)
        if (sgn(hk[c]) != 0) submul(h[c], q, hk[c]);
      reduce_tail(h, k + 1);
    }
  }
}

IntMatrix ModularHermite::basis() const {
  IntMatrix b(dim(), dim());
  for (std::size_t j = 0; j < dim(); ++j) {
    IntVector r = row(j);
    std::copy(r.begin(), r.end(), b.row(j).begin());
  }
  return b;
}

bool operator==(const ModularHermite& a, const ModularHermite& b) {
  if (a.moduli_ != b.moduli_ || a.pivots_ != b.pivots_) return false;
  for (std::size_t j = 0; j < a.dim(); ++j)
    if (a.row(j) != b.row(j)) return false;
  return true;
}

}  // namespace cyclicity
