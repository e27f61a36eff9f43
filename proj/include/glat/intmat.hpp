#ifndef GLAT_INTMAT_HPP
#define GLAT_INTMAT_HPP

#include <gmpxx.h>

#include <initializer_list>
#include <optional>
#include <vector>

#include "glat/util.hpp"

namespace glat {

using Int = mpz_class;

// Dense matrix over Z with arbitrary-precision entries.  Entry growth in
// Smith reduction is unbounded, so machine integers are not an option here.
class IntMat {
public:
  IntMat() : rows_(0), cols_(0) {}
  IntMat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}
  IntMat(std::initializer_list<std::initializer_list<long>> rws);

  static IntMat identity(int n);
  static IntMat zero(int rows, int cols) { return IntMat(rows, cols); }
  static IntMat col_vector(const std::vector<Int>& v);
  static IntMat diagonal(const std::vector<Int>& d);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Int& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  const Int& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

  bool operator==(const IntMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
  bool is_zero() const;
  bool is_identity() const;

  IntMat transpose() const;
  IntMat operator*(const IntMat& o) const;
  IntMat operator+(const IntMat& o) const;
  IntMat operator-(const IntMat& o) const;
  IntMat operator-() const;
  IntMat scaled(const Int& c) const;
  std::vector<Int> apply(const std::vector<Int>& v) const;  // matrix * column vector

  IntMat col(int j) const;
  std::vector<Int> col_vec(int j) const;
  void set_col(int j, const std::vector<Int>& v);
  IntMat cols_subset(const std::vector<int>& idx) const;
  IntMat rows_subset(const std::vector<int>& idx) const;

  static IntMat hstack(const IntMat& a, const IntMat& b);
  static IntMat vstack(const IntMat& a, const IntMat& b);

  void swap_rows(int i, int j);
  void swap_cols(int i, int j);

  std::string str() const;

private:
  int rows_, cols_;
  std::vector<Int> a_;
};

// Smith normal form: u * a * v = d with u, v unimodular and d diagonal with
// d1 | d2 | ... | dr, all nonnegative.
struct Snf {
  IntMat u, d, v;
  int rank = 0;
  std::vector<Int> diag() const;  // the nonzero invariant factors, in order
};

Snf smith(const IntMat& a);

// Z-basis of { x : a x = 0 }, returned as matrix columns.  The basis spans a
// saturated sublattice (it is the full integer kernel).
IntMat kernel_basis(const IntMat& a);

Int det(const IntMat& a);  // Bareiss, exact

// Inverse of a matrix with det +-1.
IntMat inverse_unimodular(const IntMat& a);

int rank(const IntMat& a);

// Factored solver for repeated right-hand sides of a x = b over Z.
class IntSolver {
public:
  explicit IntSolver(IntMat a) : a_(std::move(a)), f_(smith(a_)) {}
  // Particular solution with all free coordinates set to zero (the
  // documented deterministic choice); nullopt when no integer solution.
  std::optional<std::vector<Int>> solve(const std::vector<Int>& b) const;
  // Column-wise solve; nullopt when any column fails.
  std::optional<IntMat> solve_mat(const IntMat& b) const;
  const Snf& snf() const { return f_; }

private:
  IntMat a_;
  Snf f_;
};

std::optional<std::vector<Int>> solve_integer(const IntMat& a, const std::vector<Int>& b);

// True when the columns of `sub` span the same lattice as the columns of
// `super` (both must already satisfy span(sub) <= span(super) for the
// containment direction the caller cares about; this checks mutual solve).
bool same_column_lattice(const IntMat& a, const IntMat& b);

}  // namespace glat

#endif
