#pragma once

// Exact integer linear algebra: Smith and Hermite normal forms, congruence
// solving, and kernels of maps into finite quotients of Z^n.
//
// Conventions: lattices are spanned by matrix rows, vectors are rows, and a
// matrix acts on a vector by right multiplication (x -> x * A).

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cyclicity/integer.hpp"

namespace cyclicity {

/// Dense row-major matrix of unbounded integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> init);

  static IntMatrix identity(std::size_t n);
  /// Builds a matrix from rows of equal length; `cols` fixes the width when there are no rows.
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Integer> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Integer> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  IntVector row_vector(std::size_t i) const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  /// col[dst] += factor * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  void negate_row(std::size_t i);
  void negate_col(std::size_t j);

  IntMatrix transpose() const;
  bool is_zero() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// x * A for a row vector x.
IntVector mul_vec(std::span<const Integer> x, const IntMatrix& a);

/// Determinant by fraction-free elimination (Bareiss).
Integer determinant(const IntMatrix& m);

struct SnfResult {
  IntMatrix d;      // diagonal, d(i,i) | d(i+1,i+1), nonzero entries positive
  IntMatrix u;      // rows x rows, unimodular
  IntMatrix v;      // cols x cols, unimodular
  IntMatrix v_inv;  // inverse of v
  /// Diagonal entries of d, min(rows, cols) of them.
  IntVector diagonal() const;
};

/// Smith normal form: u * m * v == d.
SnfResult snf(const IntMatrix& m);

struct HnfResult {
  IntMatrix h;  // row Hermite normal form
  IntMatrix t;  // unimodular, t * m == h
  std::vector<std::size_t> pivot_cols;  // pivot column of each nonzero row of h
};

/// Row Hermite normal form: echelon, positive pivots, entries above a pivot
/// reduced into [0, pivot), zero rows last.
HnfResult hnf(const IntMatrix& m);

/// Finds x with x * a == t modulo the row lattice of l, or nullopt if none exists.
/// a is k x n, l is m x n, t has length n.
std::optional<IntVector> solve_congruence(const IntMatrix& a, const IntMatrix& l, std::span<const Integer> t);

/// Basis (as rows) of { x in Z^k : x * a in rowspan(l) }. l must have rank n.
IntMatrix kernel_mod_lattice(const IntMatrix& a, const IntMatrix& l);

struct ModularSnfResult {
  IntVector diagonal;  // s_1 | s_2 | ... | s_c, each dividing the modulus
  IntMatrix v;         // c x c, column j reduced mod s_j
  IntMatrix v_inv;     // v_inv * v == identity, column j taken mod s_j
};

/// Smith form of the lattice rowspan(a) + n Z^c, computed with every entry kept
/// in [0, n). x -> x * v (column j taken mod s_j) is an isomorphism from
/// Z^c / (rowspan(a) + n Z^c) onto the direct sum of Z/s_j.
ModularSnfResult snf_mod(const IntMatrix& a, const Integer& n);

/// A full-rank lattice L in Z^n known to contain every m_j * e_j, kept as a
/// lower-left-zero triangular basis whose entries in column j stay in [0, m_j).
///
/// Row j has its pivot in column j; the pivot divides m_j. Rows that are still
/// the initial m_j * e_j are stored implicitly, so sparse updates stay cheap
/// even for wide lattices.
class ModularHermite {
 public:
  ModularHermite() = default;
  explicit ModularHermite(IntVector moduli);

  std::size_t dim() const { return moduli_.size(); }
  const IntVector& moduli() const { return moduli_; }

  /// Adds v to the generating set. v has length dim().
  void insert(std::span<const Integer> v);

  /// True when v lies in L.
  bool contains(std::span<const Integer> v) const;

  /// Subtracts basis rows from w until its first `upto` entries vanish.
  /// Returns false (leaving w partially reduced) when that is impossible.
  bool reduce(IntVector& w, std::size_t upto) const;

  /// Pivot in column j (equals m_j when row j is untouched).
  const Integer& pivot(std::size_t j) const;

  /// Whether row j is still m_j * e_j.
  bool row_is_modulus(std::size_t j) const { return rows_[j].empty(); }

  /// Materialized row j; entries right of the pivot lie in [0, m_k).
  IntVector row(std::size_t j) const;

  /// [Z^n : L] = product of pivots.
  Integer index() const;

  /// [L : diag(m) Z^n] = product of m_j / pivot_j.
  Integer quotient_order() const;

  /// Reduces entries above each pivot into [0, pivot), giving the unique HNF.
  void normalize();

  /// The n x n triangular basis (call normalize() first for the canonical form).
  IntMatrix basis() const;

  friend bool operator==(const ModularHermite& a, const ModularHermite& b);

 private:
  void reduce_tail(IntVector& v, std::size_t from) const;

  IntVector moduli_;
  std::vector<IntVector> rows_;  // empty vector = implicit m_j * e_j
  IntVector pivots_;
};

}  // namespace cyclicity
