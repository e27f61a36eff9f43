#include "glat/intmat.hpp"

#include <algorithm>
#include <sstream>

namespace glat {

IntMat::IntMat(std::initializer_list<std::initializer_list<long>> rws) {
  rows_ = int(rws.size());
  cols_ = rows_ ? int(rws.begin()->size()) : 0;
  a_.resize(size_t(rows_) * cols_);
  int i = 0;
  for (const auto& r : rws) {
    require(int(r.size()) == cols_, "ragged initializer");
    int j = 0;
    for (long x : r) at(i, j++) = x;
    ++i;
  }
}

IntMat IntMat::identity(int n) {
  IntMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMat IntMat::col_vector(const std::vector<Int>& v) {
  IntMat m(int(v.size()), 1);
  for (size_t i = 0; i < v.size(); ++i) m.at(int(i), 0) = v[i];
  return m;
}

IntMat IntMat::diagonal(const std::vector<Int>& d) {
  IntMat m(int(d.size()), int(d.size()));
  for (size_t i = 0; i < d.size(); ++i) m.at(int(i), int(i)) = d[i];
  return m;
}

bool IntMat::is_zero() const {
  for (const Int& x : a_)
    if (x != 0) return false;
  return true;
}

bool IntMat::is_identity() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (at(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

IntMat IntMat::transpose() const {
  IntMat m(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
  return m;
}

IntMat IntMat::operator*(const IntMat& o) const {
  require(cols_ == o.rows_, "matrix product shape mismatch");
  IntMat m(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Int& x = at(i, k);
      if (x == 0) continue;
      for (int j = 0; j < o.cols_; ++j) m.at(i, j) += x * o.at(k, j);
    }
  return m;
}

IntMat IntMat::operator+(const IntMat& o) const {
  require(rows_ == o.rows_ && cols_ == o.cols_, "matrix sum shape mismatch");
  IntMat m(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] + o.a_[i];
  return m;
}

IntMat IntMat::operator-(const IntMat& o) const {
  require(rows_ == o.rows_ && cols_ == o.cols_, "matrix difference shape mismatch");
  IntMat m(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] - o.a_[i];
  return m;
}

IntMat IntMat::operator-() const {
  IntMat m(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = -a_[i];
  return m;
}

IntMat IntMat::scaled(const Int& c) const {
  IntMat m(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = c * a_[i];
  return m;
}

std::vector<Int> IntMat::apply(const std::vector<Int>& v) const {
  require(int(v.size()) == cols_, "apply shape mismatch");
  std::vector<Int> out(rows_);
  for (int i = 0; i < rows_; ++i) {
    Int s = 0;
    for (int j = 0; j < cols_; ++j)
      if (at(i, j) != 0) s += at(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

IntMat IntMat::col(int j) const {
  IntMat m(rows_, 1);
  for (int i = 0; i < rows_; ++i) m.at(i, 0) = at(i, j);
  return m;
}

std::vector<Int> IntMat::col_vec(int j) const {
  std::vector<Int> v(rows_);
  for (int i = 0; i < rows_; ++i) v[i] = at(i, j);
  return v;
}

void IntMat::set_col(int j, const std::vector<Int>& v) {
  require(int(v.size()) == rows_, "set_col shape mismatch");
  for (int i = 0; i < rows_; ++i) at(i, j) = v[i];
}

IntMat IntMat::cols_subset(const std::vector<int>& idx) const {
  IntMat m(rows_, int(idx.size()));
  for (size_t j = 0; j < idx.size(); ++j)
    for (int i = 0; i < rows_; ++i) m.at(i, int(j)) = at(i, idx[j]);
  return m;
}

IntMat IntMat::rows_subset(const std::vector<int>& idx) const {
  IntMat m(int(idx.size()), cols_);
  for (size_t i = 0; i < idx.size(); ++i)
    for (int j = 0; j < cols_; ++j) m.at(int(i), j) = at(idx[i], j);
  return m;
}

IntMat IntMat::hstack(const IntMat& a, const IntMat& b) {
  require(a.rows() == b.rows(), "hstack shape mismatch");
  IntMat m(a.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
    for (int j = 0; j < b.cols(); ++j) m.at(i, a.cols() + j) = b.at(i, j);
  }
  return m;
}

IntMat IntMat::vstack(const IntMat& a, const IntMat& b) {
  require(a.cols() == b.cols(), "vstack shape mismatch");
  IntMat m(a.rows() + b.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m.at(a.rows() + i, j) = b.at(i, j);
  return m;
}

void IntMat::swap_rows(int i, int j) {
  if (i == j) return;
  for (int k = 0; k < cols_; ++k) std::swap(at(i, k), at(j, k));
}

void IntMat::swap_cols(int i, int j) {
  if (i == j) return;
  for (int k = 0; k < rows_; ++k) std::swap(at(k, i), at(k, j));
}

std::string IntMat::str() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < rows_; ++i) {
    os << (i ? " [" : "[");
    for (int j = 0; j < cols_; ++j) os << (j ? ", " : "") << at(i, j);
    os << "]";
    if (i + 1 < rows_) os << "\n";
  }
  os << "]";
  return os.str();
}

std::vector<Int> Snf::diag() const {
  std::vector<Int> out;
  for (int i = 0; i < rank; ++i) out.push_back(d.at(i, i));
  return out;
}

namespace {

// In-place row operation helpers that mirror every step into u (rows) or
// v (cols) so that u * a_orig * v stays equal to the working matrix.
void add_row(IntMat& m, IntMat& u, int dst, int src, const Int& c) {
  for (int j = 0; j < m.cols(); ++j) m.at(dst, j) += c * m.at(src, j);
  for (int j = 0; j < u.cols(); ++j) u.at(dst, j) += c * u.at(src, j);
}

void add_col(IntMat& m, IntMat& v, int dst, int src, const Int& c) {
  for (int i = 0; i < m.rows(); ++i) m.at(i, dst) += c * m.at(i, src);
  for (int i = 0; i < v.rows(); ++i) v.at(i, dst) += c * v.at(i, src);
}

void negate_row(IntMat& m, IntMat& u, int i) {
  for (int j = 0; j < m.cols(); ++j) m.at(i, j) = -m.at(i, j);
  for (int j = 0; j < u.cols(); ++j) u.at(i, j) = -u.at(i, j);
}

}  // namespace

Snf smith(const IntMat& a) {
  Snf f;
  f.d = a;
  f.u = IntMat::identity(a.rows());
  f.v = IntMat::identity(a.cols());
  IntMat& d = f.d;
  IntMat& u = f.u;
  IntMat& v = f.v;
  const int n = std::min(a.rows(), a.cols());

  for (int t = 0; t < n; ++t) {
    // pivot: smallest nonzero absolute value in the trailing block
    int pi = -1, pj = -1;
    Int best;
    for (int i = t; i < d.rows(); ++i)
      for (int j = t; j < d.cols(); ++j) {
        if (d.at(i, j) == 0) continue;
        Int m = abs(d.at(i, j));
        if (pi < 0 || m < best) {
          best = m;
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;  // trailing block is zero
    d.swap_rows(t, pi);
    u.swap_rows(t, pi);
    d.swap_cols(t, pj);
    v.swap_cols(t, pj);

    for (;;) {
      bool clean = true;
      for (int i = t + 1; i < d.rows(); ++i) {
        if (d.at(i, t) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), d.at(i, t).get_mpz_t(), d.at(t, t).get_mpz_t());
        add_row(d, u, i, t, -q);
        if (d.at(i, t) != 0) {
          d.swap_rows(t, i);
          u.swap_rows(t, i);
          clean = false;
        }
      }
      for (int j = t + 1; j < d.cols(); ++j) {
        if (d.at(t, j) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), d.at(t, j).get_mpz_t(), d.at(t, t).get_mpz_t());
        add_col(d, v, j, t, -q);
        if (d.at(t, j) != 0) {
          d.swap_cols(t, j);
          v.swap_cols(t, j);
          clean = false;
        }
      }
      if (!clean) continue;
      // pivot must divide the whole trailing block; if not, fold the
      // offending row in and keep reducing
      int bi = -1, bj = -1;
      for (int i = t + 1; i < d.rows() && bi < 0; ++i)
        for (int j = t + 1; j < d.cols(); ++j)
          if (d.at(i, j) % d.at(t, t) != 0) {
            bi = i;
            bj = j;
            break;
          }
      if (bi < 0) break;
      (void)bj;
      add_row(d, u, t, bi, 1);
    }
    if (d.at(t, t) < 0) negate_row(d, u, t);
  }

  int r = 0;
  while (r < n && d.at(r, r) != 0) ++r;
  f.rank = r;
  return f;
}

IntMat kernel_basis(const IntMat& a) {
  if (a.cols() == 0) return IntMat(0, 0);
  if (a.rows() == 0) return IntMat::identity(a.cols());
  Snf f = smith(a);
  std::vector<int> free_cols;
  for (int j = f.rank; j < a.cols(); ++j) free_cols.push_back(j);
  return f.v.cols_subset(free_cols);
}

Int det(const IntMat& a) {
  require(a.rows() == a.cols(), "det of non-square matrix");
  int n = a.rows();
  if (n == 0) return 1;
  IntMat m = a;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m.at(k, k) == 0) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (m.at(i, k) != 0) {
          piv = i;
          break;
        }
      if (piv < 0) return 0;
      m.swap_rows(k, piv);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        Int num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
        mpz_divexact(m.at(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    prev = m.at(k, k);
  }
  return sign > 0 ? m.at(n - 1, n - 1) : -m.at(n - 1, n - 1);
}

IntMat inverse_unimodular(const IntMat& a) {
  Snf f = smith(a);
  require(f.rank == a.rows() && a.rows() == a.cols(), "inverse of singular matrix");
  for (int i = 0; i < f.rank; ++i) require(f.d.at(i, i) == 1, "inverse of non-unimodular matrix");
  // a^{-1} = v * u  (since u a v = I)
  return f.v * f.u;
}

int rank(const IntMat& a) { return smith(a).rank; }

std::optional<std::vector<Int>> IntSolver::solve(const std::vector<Int>& b) const {
  require(int(b.size()) == a_.rows(), "solve shape mismatch");
  std::vector<Int> c = f_.u.apply(b);
  std::vector<Int> y(a_.cols());
  for (int i = 0; i < a_.rows(); ++i) {
    if (i < f_.rank) {
      if (i < a_.cols()) {
        if (c[i] % f_.d.at(i, i) != 0) return std::nullopt;
        y[i] = c[i] / f_.d.at(i, i);
      }
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return f_.v.apply(y);
}

std::optional<IntMat> IntSolver::solve_mat(const IntMat& b) const {
  IntMat x(a_.cols(), b.cols());
  for (int j = 0; j < b.cols(); ++j) {
    auto xi = solve(b.col_vec(j));
    if (!xi) return std::nullopt;
    x.set_col(j, *xi);
  }
  return x;
}

std::optional<std::vector<Int>> solve_integer(const IntMat& a, const std::vector<Int>& b) {
  return IntSolver(a).solve(b);
}

bool same_column_lattice(const IntMat& a, const IntMat& b) {
  require(a.rows() == b.rows(), "lattice comparison shape mismatch");
  IntSolver sa(a), sb(b);
  return sa.solve_mat(b).has_value() && sb.solve_mat(a).has_value();
}

}  // namespace glat
