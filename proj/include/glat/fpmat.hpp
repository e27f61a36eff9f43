#ifndef GLAT_FPMAT_HPP
#define GLAT_FPMAT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "glat/util.hpp"

namespace glat {

// Dense matrix over F_p, p prime, p <= 64 (documented bound; entries fit
// comfortably in 32 bits with 64-bit intermediates).
class FpMat {
public:
  FpMat() : p_(2), rows_(0), cols_(0) {}
  FpMat(uint32_t p, int rows, int cols) : p_(p), rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

  static FpMat identity(uint32_t p, int n);
  static FpMat from_rows(uint32_t p, const std::vector<std::vector<uint32_t>>& rows);

  uint32_t p() const { return p_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  uint32_t& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  uint32_t at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

  bool operator==(const FpMat& o) const { return p_ == o.p_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
  bool is_zero() const;
  bool is_identity() const;

  FpMat operator*(const FpMat& o) const;
  FpMat operator+(const FpMat& o) const;
  FpMat operator-(const FpMat& o) const;
  FpMat scaled(uint32_t c) const;
  FpMat transpose() const;
  FpMat pow(uint64_t e) const;
  uint32_t trace() const;
  std::vector<uint32_t> apply(const std::vector<uint32_t>& v) const;

  static FpMat hstack(const FpMat& a, const FpMat& b);
  static FpMat vstack(const FpMat& a, const FpMat& b);
  FpMat rows_subset(const std::vector<int>& idx) const;
  FpMat cols_subset(const std::vector<int>& idx) const;

  std::string str() const;

private:
  uint32_t p_;
  int rows_, cols_;
  std::vector<uint32_t> a_;
};

struct Rref {
  FpMat mat;                   // reduced row echelon form
  std::vector<int> pivot_cols; // ascending
  int rank() const { return int(pivot_cols.size()); }
};

Rref rref(const FpMat& a);
int fp_rank(const FpMat& a);
FpMat fp_nullspace(const FpMat& a);                 // kernel basis as columns
std::optional<FpMat> fp_inverse(const FpMat& a);
std::optional<std::vector<uint32_t>> fp_solve(const FpMat& a, const std::vector<uint32_t>& b);
uint32_t fp_inv_scalar(uint32_t p, uint32_t x);

// Row-space utilities (bases kept as RREF rows; deterministic).
FpMat row_basis(const FpMat& rows);
bool in_row_space(const FpMat& basis, const std::vector<uint32_t>& v);
FpMat row_space_sum(const FpMat& a, const FpMat& b);

// Quotient of F_p^dim by the row space of `sub`: coordinates of the class of
// a vector are its entries at the non-pivot columns after reduction.
struct FpQuotient {
  uint32_t p;
  int dim;                      // ambient dimension
  FpMat sub;                    // RREF basis of the subspace
  std::vector<int> pivot_cols;  // pivot columns of sub, ascending
  std::vector<int> coord_cols;  // non-pivot columns, ascending
  std::vector<uint32_t> project(const std::vector<uint32_t>& v) const;
  FpMat induced(const FpMat& op) const;  // operator on the quotient
  // A preferred lift of quotient basis vector j (unit vector at coord_cols[j]).
  std::vector<uint32_t> lift(int j) const;
};
FpQuotient fp_quotient(uint32_t p, int dim, const FpMat& sub_rows);

// Monic characteristic polynomial, coefficients ascending (c[0] + c[1] x + ...).
std::vector<uint32_t> charpoly(const FpMat& a);
bool is_nilpotent(const FpMat& a);

// Univariate polynomials over F_p, coefficient vectors ascending degree.
using FpPoly = std::vector<uint32_t>;
FpPoly poly_trim(FpPoly f);
int poly_deg(const FpPoly& f);
FpPoly poly_mul(uint32_t p, const FpPoly& a, const FpPoly& b);
FpPoly poly_mod(uint32_t p, FpPoly a, const FpPoly& m);
FpPoly poly_gcd(uint32_t p, FpPoly a, FpPoly b);  // monic gcd
FpPoly poly_deriv(uint32_t p, const FpPoly& f);
FpMat poly_eval_mat(const FpPoly& f, const FpMat& a);

// Full factorization into monic irreducibles with multiplicity, produced by
// squarefree decomposition plus deterministic Berlekamp splitting; the factor
// list is sorted (degree, then lexicographic coefficients).
std::vector<std::pair<FpPoly, int>> poly_factor(uint32_t p, const FpPoly& f);

}  // namespace glat

#endif
