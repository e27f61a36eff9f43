#include "glat/fpmat.hpp"

#include <algorithm>
#include <sstream>

namespace glat {

namespace {
inline uint32_t addm(uint32_t a, uint32_t b, uint32_t p) { return (a + b) % p; }
inline uint32_t subm(uint32_t a, uint32_t b, uint32_t p) { return (a + p - b % p) % p; }
inline uint32_t mulm(uint32_t a, uint32_t b, uint32_t p) { return uint32_t((uint64_t(a) * b) % p); }
}  // namespace

uint32_t fp_inv_scalar(uint32_t p, uint32_t x) {
  x %= p;
  require(x != 0, "inverse of zero mod p");
  uint32_t r = 1;
  uint64_t base = x, e = p - 2;  // Fermat
  while (e) {
    if (e & 1) r = mulm(r, uint32_t(base), p);
    base = (base * base) % p;
    e >>= 1;
  }
  return r;
}

FpMat FpMat::identity(uint32_t p, int n) {
  FpMat m(p, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

FpMat FpMat::from_rows(uint32_t p, const std::vector<std::vector<uint32_t>>& rows) {
  int r = int(rows.size());
  int c = r ? int(rows[0].size()) : 0;
  FpMat m(p, r, c);
  for (int i = 0; i < r; ++i) {
    require(int(rows[i].size()) == c, "ragged rows");
    for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j] % p;
  }
  return m;
}

bool FpMat::is_zero() const {
  for (uint32_t x : a_)
    if (x) return false;
  return true;
}

bool FpMat::is_identity() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (at(i, j) != (i == j ? 1u : 0u)) return false;
  return true;
}

FpMat FpMat::operator*(const FpMat& o) const {
  require(p_ == o.p_ && cols_ == o.rows_, "fp product shape mismatch");
  FpMat m(p_, rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      uint64_t x = at(i, k);
      if (!x) continue;
      for (int j = 0; j < o.cols_; ++j)
        m.at(i, j) = uint32_t((m.at(i, j) + x * o.at(k, j)) % p_);
    }
  return m;
}

FpMat FpMat::operator+(const FpMat& o) const {
  require(p_ == o.p_ && rows_ == o.rows_ && cols_ == o.cols_, "fp sum shape mismatch");
  FpMat m(p_, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = addm(a_[i], o.a_[i], p_);
  return m;
}

FpMat FpMat::operator-(const FpMat& o) const {
  require(p_ == o.p_ && rows_ == o.rows_ && cols_ == o.cols_, "fp difference shape mismatch");
  FpMat m(p_, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = subm(a_[i], o.a_[i], p_);
  return m;
}

FpMat FpMat::scaled(uint32_t c) const {
  FpMat m(p_, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = mulm(a_[i], c % p_, p_);
  return m;
}

FpMat FpMat::transpose() const {
  FpMat m(p_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
  return m;
}

FpMat FpMat::pow(uint64_t e) const {
  require(rows_ == cols_, "pow of non-square");
  FpMat r = identity(p_, rows_), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

uint32_t FpMat::trace() const {
  require(rows_ == cols_, "trace of non-square");
  uint32_t t = 0;
  for (int i = 0; i < rows_; ++i) t = addm(t, at(i, i), p_);
  return t;
}

std::vector<uint32_t> FpMat::apply(const std::vector<uint32_t>& v) const {
  require(int(v.size()) == cols_, "fp apply shape mismatch");
  std::vector<uint32_t> out(rows_, 0);
  for (int i = 0; i < rows_; ++i) {
    uint64_t s = 0;
    for (int j = 0; j < cols_; ++j) s += uint64_t(at(i, j)) * v[j];
    out[i] = uint32_t(s % p_);
  }
  return out;
}

FpMat FpMat::hstack(const FpMat& a, const FpMat& b) {
  require(a.p() == b.p() && a.rows() == b.rows(), "fp hstack mismatch");
  FpMat m(a.p(), a.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
    for (int j = 0; j < b.cols(); ++j) m.at(i, a.cols() + j) = b.at(i, j);
  }
  return m;
}

FpMat FpMat::vstack(const FpMat& a, const FpMat& b) {
  require(a.p() == b.p() && a.cols() == b.cols(), "fp vstack mismatch");
  FpMat m(a.p(), a.rows() + b.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) m.at(a.rows() + i, j) = b.at(i, j);
  return m;
}

FpMat FpMat::rows_subset(const std::vector<int>& idx) const {
  FpMat m(p_, int(idx.size()), cols_);
  for (size_t i = 0; i < idx.size(); ++i)
    for (int j = 0; j < cols_; ++j) m.at(int(i), j) = at(idx[i], j);
  return m;
}

FpMat FpMat::cols_subset(const std::vector<int>& idx) const {
  FpMat m(p_, rows_, int(idx.size()));
  for (int i = 0; i < rows_; ++i)
    for (size_t j = 0; j < idx.size(); ++j) m.at(i, int(j)) = at(i, idx[j]);
  return m;
}

std::string FpMat::str() const {
  std::ostringstream os;
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) os << (j ? " " : "[") << at(i, j);
    os << "]" << (i + 1 < rows_ ? "\n" : "");
  }
  return os.str();
}

Rref rref(const FpMat& a) {
  Rref r;
  r.mat = a;
  FpMat& m = r.mat;
  uint32_t p = a.p();
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int piv = -1;
    for (int i = row; i < m.rows(); ++i)
      if (m.at(i, col)) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(row, j));
    uint32_t inv = fp_inv_scalar(p, m.at(row, col));
    for (int j = 0; j < m.cols(); ++j) m.at(row, j) = mulm(m.at(row, j), inv, p);
    for (int i = 0; i < m.rows(); ++i) {
      if (i == row || !m.at(i, col)) continue;
      uint32_t c = m.at(i, col);
      for (int j = 0; j < m.cols(); ++j) m.at(i, j) = subm(m.at(i, j), mulm(c, m.at(row, j), p), p);
    }
    r.pivot_cols.push_back(col);
    ++row;
  }
  return r;
}

int fp_rank(const FpMat& a) { return rref(a).rank(); }

FpMat fp_nullspace(const FpMat& a) {
  Rref r = rref(a);
  uint32_t p = a.p();
  std::vector<int> free_cols;
  {
    size_t k = 0;
    for (int j = 0; j < a.cols(); ++j) {
      if (k < r.pivot_cols.size() && r.pivot_cols[k] == j)
        ++k;
      else
        free_cols.push_back(j);
    }
  }
  FpMat ns(p, a.cols(), int(free_cols.size()));
  for (size_t t = 0; t < free_cols.size(); ++t) {
    int fc = free_cols[t];
    ns.at(fc, int(t)) = 1;
    for (size_t i = 0; i < r.pivot_cols.size(); ++i)
      ns.at(r.pivot_cols[i], int(t)) = subm(0, r.mat.at(int(i), fc), p);
  }
  return ns;
}

std::optional<FpMat> fp_inverse(const FpMat& a) {
  require(a.rows() == a.cols(), "fp inverse of non-square");
  Rref r = rref(FpMat::hstack(a, FpMat::identity(a.p(), a.rows())));
  // invertible iff every pivot lands in the left block
  for (int i = 0; i < a.rows(); ++i)
    if (i >= r.rank() || r.pivot_cols[i] >= a.cols()) return std::nullopt;
  std::vector<int> right;
  for (int j = 0; j < a.cols(); ++j) right.push_back(a.cols() + j);
  return r.mat.cols_subset(right);
}

std::optional<std::vector<uint32_t>> fp_solve(const FpMat& a, const std::vector<uint32_t>& b) {
  FpMat bm(a.p(), a.rows(), 1);
  for (int i = 0; i < a.rows(); ++i) bm.at(i, 0) = b[i] % a.p();
  Rref r = rref(FpMat::hstack(a, bm));
  std::vector<uint32_t> x(a.cols(), 0);
  for (int i = 0; i < r.rank(); ++i) {
    if (r.pivot_cols[i] == a.cols()) return std::nullopt;  // inconsistent
    x[r.pivot_cols[i]] = r.mat.at(i, a.cols());
  }
  return x;
}

FpMat row_basis(const FpMat& rows) {
  Rref r = rref(rows);
  std::vector<int> keep;
  for (int i = 0; i < r.rank(); ++i) keep.push_back(i);
  return r.mat.rows_subset(keep);
}

bool in_row_space(const FpMat& basis, const std::vector<uint32_t>& v) {
  FpMat vm(basis.p(), 1, basis.cols());
  for (int j = 0; j < basis.cols(); ++j) vm.at(0, j) = v[j] % basis.p();
  return fp_rank(FpMat::vstack(basis, vm)) == fp_rank(basis);
}

FpMat row_space_sum(const FpMat& a, const FpMat& b) { return row_basis(FpMat::vstack(a, b)); }

std::vector<uint32_t> FpQuotient::project(const std::vector<uint32_t>& v) const {
  std::vector<uint32_t> w = v;
  for (auto& x : w) x %= p;
  for (size_t i = 0; i < pivot_cols.size(); ++i) {
    uint32_t c = w[pivot_cols[i]];
    if (!c) continue;
    for (int j = 0; j < dim; ++j) w[j] = subm(w[j], mulm(c, sub.at(int(i), j), p), p);
  }
  std::vector<uint32_t> out;
  out.reserve(coord_cols.size());
  for (int j : coord_cols) out.push_back(w[j]);
  return out;
}

std::vector<uint32_t> FpQuotient::lift(int j) const {
  std::vector<uint32_t> v(dim, 0);
  v[coord_cols[j]] = 1;
  return v;
}

FpMat FpQuotient::induced(const FpMat& op) const {
  int q = int(coord_cols.size());
  FpMat m(p, q, q);
  for (int j = 0; j < q; ++j) {
    auto w = project(op.apply(lift(j)));
    for (int i = 0; i < q; ++i) m.at(i, j) = w[i];
  }
  return m;
}

FpQuotient fp_quotient(uint32_t p, int dim, const FpMat& sub_rows) {
  FpQuotient q;
  q.p = p;
  q.dim = dim;
  Rref r = rref(sub_rows.rows() ? sub_rows : FpMat(p, 0, dim));
  std::vector<int> keep;
  for (int i = 0; i < r.rank(); ++i) keep.push_back(i);
  q.sub = r.mat.rows_subset(keep);
  q.pivot_cols = r.pivot_cols;
  size_t k = 0;
  for (int j = 0; j < dim; ++j) {
    if (k < r.pivot_cols.size() && r.pivot_cols[k] == j)
      ++k;
    else
      q.coord_cols.push_back(j);
  }
  return q;
}

std::vector<uint32_t> charpoly(const FpMat& a) {
  require(a.rows() == a.cols(), "charpoly of non-square");
  const int n = a.rows();
  const uint32_t p = a.p();
  if (n == 0) return {1};
  // Hessenberg reduction (similarity), then the leading-minor recurrence.
  FpMat h = a;
  for (int j = 0; j < n - 1; ++j) {
    int piv = -1;
    for (int i = j + 1; i < n; ++i)
      if (h.at(i, j)) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != j + 1) {
      for (int k = 0; k < n; ++k) std::swap(h.at(piv, k), h.at(j + 1, k));
      for (int k = 0; k < n; ++k) std::swap(h.at(k, piv), h.at(k, j + 1));
    }
    uint32_t inv = fp_inv_scalar(p, h.at(j + 1, j));
    for (int i = j + 2; i < n; ++i) {
      uint32_t c = mulm(h.at(i, j), inv, p);
      if (!c) continue;
      for (int k = 0; k < n; ++k) h.at(i, k) = subm(h.at(i, k), mulm(c, h.at(j + 1, k), p), p);
      for (int k = 0; k < n; ++k) h.at(k, j + 1) = addm(h.at(k, j + 1), mulm(c, h.at(k, i), p), p);
    }
  }
  // p_k(x) = charpoly of leading k x k block of the Hessenberg matrix
  std::vector<FpPoly> cp(n + 1);
  cp[0] = {1};
  for (int k = 1; k <= n; ++k) {
    // cp[k] = (x - h[k-1][k-1]) * cp[k-1] - sum over trailing products
    FpPoly t(cp[k - 1].size() + 1, 0);
    for (size_t i = 0; i < cp[k - 1].size(); ++i) {
      t[i + 1] = addm(t[i + 1], cp[k - 1][i], p);
      t[i] = subm(t[i], mulm(h.at(k - 1, k - 1), cp[k - 1][i], p), p);
    }
    uint32_t prod = 1;
    for (int m = 1; m < k; ++m) {
      prod = mulm(prod, h.at(k - m, k - m - 1), p);
      if (!prod) break;
      uint32_t c = mulm(prod, h.at(k - m - 1, k - 1), p);
      if (!c) continue;
      for (size_t i = 0; i < cp[k - m - 1].size(); ++i)
        t[i] = subm(t[i], mulm(c, cp[k - m - 1][i], p), p);
    }
    cp[k] = t;
  }
  return cp[n];
}

bool is_nilpotent(const FpMat& a) {
  auto c = charpoly(a);
  for (size_t i = 0; i + 1 < c.size(); ++i)
    if (c[i]) return false;
  return true;
}

FpPoly poly_trim(FpPoly f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

int poly_deg(const FpPoly& f) {
  for (int i = int(f.size()) - 1; i >= 0; --i)
    if (f[i]) return i;
  return -1;
}

FpPoly poly_mul(uint32_t p, const FpPoly& a, const FpPoly& b) {
  if (poly_deg(a) < 0 || poly_deg(b) < 0) return {};
  FpPoly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = addm(c[i + j], mulm(a[i], b[j], p), p);
  }
  return poly_trim(c);
}

static FpPoly poly_divmod(uint32_t p, FpPoly a, const FpPoly& b, FpPoly* quot) {
  a = poly_trim(a);
  int db = poly_deg(b);
  require(db >= 0, "division by zero polynomial");
  FpPoly q(std::max<int>(0, int(a.size()) - db), 0);
  uint32_t lead_inv = fp_inv_scalar(p, b[db]);
  for (int i = poly_deg(a); i >= db; --i) {
    if (i >= int(a.size()) || !a[i]) continue;
    uint32_t c = mulm(a[i], lead_inv, p);
    q[i - db] = c;
    for (int j = 0; j <= db; ++j) a[i - db + j] = subm(a[i - db + j], mulm(c, b[j], p), p);
  }
  if (quot) *quot = poly_trim(q);
  return poly_trim(a);
}

FpPoly poly_mod(uint32_t p, FpPoly a, const FpPoly& m) { return poly_divmod(p, std::move(a), m, nullptr); }

static FpPoly poly_monic(uint32_t p, FpPoly f) {
  f = poly_trim(f);
  int d = poly_deg(f);
  if (d < 0) return f;
  uint32_t inv = fp_inv_scalar(p, f[d]);
  for (auto& c : f) c = mulm(c, inv, p);
  return f;
}

FpPoly poly_gcd(uint32_t p, FpPoly a, FpPoly b) {
  a = poly_trim(std::move(a));
  b = poly_trim(std::move(b));
  while (poly_deg(b) >= 0) {
    FpPoly r = poly_mod(p, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(p, a);
}

FpPoly poly_deriv(uint32_t p, const FpPoly& f) {
  FpPoly d;
  for (size_t i = 1; i < f.size(); ++i) d.push_back(mulm(f[i], uint32_t(i % p), p));
  return poly_trim(d);
}

FpMat poly_eval_mat(const FpPoly& f, const FpMat& a) {
  FpMat r(a.p(), a.rows(), a.cols());
  FpMat x = FpMat::identity(a.p(), a.rows());
  for (size_t i = 0; i < f.size(); ++i) {
    if (f[i]) r = r + x.scaled(f[i]);
    if (i + 1 < f.size()) x = x * a;
  }
  return r;
}

namespace {

// Berlekamp splitting of a squarefree monic polynomial.
void berlekamp_split(uint32_t p, const FpPoly& f, std::vector<FpPoly>& out) {
  int n = poly_deg(f);
  if (n <= 1) {
    out.push_back(f);
    return;
  }
  // Q matrix: row i = x^{i p} mod f
  FpMat q(p, n, n);
  // x^p mod f
  FpPoly acc = {1};
  {
    uint64_t e = p;
    FpPoly base = {0, 1};
    while (e) {
      if (e & 1) acc = poly_mod(p, poly_mul(p, acc, base), f);
      base = poly_mod(p, poly_mul(p, base, base), f);
      e >>= 1;
    }
  }
  FpPoly cur = {1};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < int(cur.size()); ++j) q.at(i, j) = cur[j];
    cur = poly_mod(p, poly_mul(p, cur, acc), f);
  }
  FpMat qt = q.transpose() - FpMat::identity(p, n);
  FpMat ns = fp_nullspace(qt);
  int r = ns.cols();
  if (r == 1) {
    out.push_back(f);
    return;
  }
  // split using each nullspace basis vector and each shift c
  std::vector<FpPoly> parts = {f};
  for (int t = 0; t < r && int(parts.size()) < r; ++t) {
    FpPoly b(n, 0);
    for (int i = 0; i < n; ++i) b[i] = ns.at(i, t);
    b = poly_trim(b);
    if (poly_deg(b) <= 0) continue;
    for (uint32_t c = 0; c < p && int(parts.size()) < r; ++c) {
      FpPoly bc = b;
      if (bc.empty()) bc = {0};
      bc[0] = subm(bc[0], c, p);
      std::vector<FpPoly> next;
      for (const auto& g : parts) {
        if (poly_deg(g) <= 1) {
          next.push_back(g);
          continue;
        }
        FpPoly d = poly_gcd(p, g, bc);
        if (poly_deg(d) <= 0 || poly_deg(d) == poly_deg(g)) {
          next.push_back(g);
        } else {
          FpPoly quot;
          poly_divmod(p, g, d, &quot);
          next.push_back(d);
          next.push_back(poly_monic(p, quot));
        }
      }
      parts = std::move(next);
    }
  }
  for (auto& g : parts) out.push_back(poly_monic(p, std::move(g)));
}

}  // namespace

std::vector<std::pair<FpPoly, int>> poly_factor(uint32_t p, const FpPoly& f0) {
  std::vector<std::pair<FpPoly, int>> result;
  FpPoly f = poly_monic(p, f0);
  require(poly_deg(f) >= 0, "factor of zero polynomial");

  // squarefree decomposition, char p aware
  std::vector<std::pair<FpPoly, int>> sqf;  // (squarefree part, multiplicity)
  struct Item {
    FpPoly f;
    int mult;
  };
  std::vector<Item> work = {{f, 1}};
  while (!work.empty()) {
    Item it = work.back();
    work.pop_back();
    if (poly_deg(it.f) <= 0) continue;
    FpPoly d = poly_deriv(p, it.f);
    if (poly_deg(d) < 0) {
      // f = g(x^p); over F_p the coefficients transfer directly
      FpPoly g;
      for (size_t i = 0; i < it.f.size(); i += p) g.push_back(it.f[i]);
      work.push_back({poly_trim(g), it.mult * int(p)});
      continue;
    }
    FpPoly g = poly_gcd(p, it.f, d);
    if (poly_deg(g) == 0) {
      sqf.push_back({it.f, it.mult});
    } else {
      FpPoly quot;
      poly_divmod(p, it.f, g, &quot);
      sqf.push_back({poly_monic(p, quot), it.mult});  // squarefree radical part may repeat; dedup below
      work.push_back({g, it.mult});
    }
  }

  std::vector<std::pair<FpPoly, int>> irr;  // accumulate with multiplicity
  for (auto& [sf, mult] : sqf) {
    std::vector<FpPoly> out;
    berlekamp_split(p, sf, out);
    for (auto& g : out) irr.push_back({g, mult});
  }
  // combine equal factors
  std::sort(irr.begin(), irr.end(), [](const auto& a, const auto& b) {
    if (poly_deg(a.first) != poly_deg(b.first)) return poly_deg(a.first) < poly_deg(b.first);
    return a.first < b.first;
  });
  for (auto& [g, m] : irr) {
    if (!result.empty() && result.back().first == g)
      result.back().second += m;
    else
      result.push_back({g, m});
  }
  return result;
}

}  // namespace glat
