#include "glat/finab.hpp"

#include <algorithm>
#include <sstream>

namespace glat {

FinAb FinAb::from_presentation(const IntMat& rel) {
  FinAb g;
  g.ambient_rank_ = rel.rows();
  const int n = rel.rows();
  Snf f = smith(rel);
  check(f.rank == n, ErrorKind::input,
        "presentation has infinite cokernel of free rank " + std::to_string(n - f.rank));
  IntMat uinv = inverse_unimodular(f.u);
  std::vector<int> keep;
  for (int i = 0; i < n; ++i)
    if (f.d.at(i, i) > 1) keep.push_back(i);
  g.factors_.reserve(keep.size());
  for (int i : keep) g.factors_.push_back(f.d.at(i, i));
  g.proj_ = f.u.rows_subset(keep);
  g.lift_ = uinv.cols_subset(keep);
  // relation lattice: U^{-1} * diag(delta) with delta_i = d_i (or 1 when dropped)
  IntMat delta(n, n);
  for (int i = 0; i < n; ++i) delta.at(i, i) = f.d.at(i, i) > 1 ? f.d.at(i, i) : Int(1);
  g.rel_ambient_ = uinv * delta;
  return g;
}

FinAb FinAb::cyclic(const Int& n) {
  require(n >= 1, "cyclic group modulus must be >= 1");
  IntMat rel(1, 1);
  rel.at(0, 0) = n;
  return from_presentation(rel);
}

Int FinAb::order() const {
  Int o = 1;
  for (const Int& d : factors_) o *= d;
  return o;
}

std::vector<Int> FinAb::project(const std::vector<Int>& ambient) const {
  require(int(ambient.size()) == ambient_rank_, "project: ambient size mismatch");
  return reduce(proj_.apply(ambient));
}

std::vector<Int> FinAb::lift(int i) const { return lift_.col_vec(i); }

std::vector<Int> FinAb::reduce(std::vector<Int> coords) const {
  require(coords.size() == factors_.size(), "reduce: coordinate size mismatch");
  for (size_t i = 0; i < coords.size(); ++i) {
    mpz_fdiv_r(coords[i].get_mpz_t(), coords[i].get_mpz_t(), factors_[i].get_mpz_t());
  }
  return coords;
}

bool FinAb::coords_equal(const std::vector<Int>& a, const std::vector<Int>& b) const {
  std::vector<Int> x = a, y = b;
  return reduce(std::move(x)) == reduce(std::move(y));
}

std::vector<std::vector<Int>> FinAb::all_elements(long limit) const {
  check(order() <= limit, ErrorKind::capacity, "group too large to enumerate");
  std::vector<std::vector<Int>> out;
  std::vector<Int> cur(factors_.size(), 0);
  for (;;) {
    out.push_back(cur);
    int i = int(factors_.size()) - 1;
    while (i >= 0) {
      cur[i] += 1;
      if (cur[i] < factors_[i]) break;
      cur[i] = 0;
      --i;
    }
    if (i < 0) break;
  }
  return out;
}

std::string FinAb::str() const {
  if (factors_.empty()) return "0";
  std::vector<std::string> parts;
  for (const Int& d : factors_) parts.push_back("Z/" + d.get_str());
  return join(parts, " x ");
}

FinAbMap::FinAbMap(FinAb src, FinAb tgt, IntMat matrix)
    : src_(std::move(src)), tgt_(std::move(tgt)), mat_(std::move(matrix)) {
  require(mat_.rows() == tgt_.num_gens() && mat_.cols() == src_.num_gens(),
          "FinAbMap matrix shape mismatch");
  for (int j = 0; j < mat_.cols(); ++j) {
    for (int i = 0; i < mat_.rows(); ++i) {
      require(src_.factors()[j] * mat_.at(i, j) % tgt_.factors()[i] == 0,
              "map does not respect generator orders");
      mpz_fdiv_r(mat_.at(i, j).get_mpz_t(), mat_.at(i, j).get_mpz_t(),
                 tgt_.factors()[i].get_mpz_t());
    }
  }
}

FinAbMap FinAbMap::zero(const FinAb& src, const FinAb& tgt) {
  return FinAbMap(src, tgt, IntMat(tgt.num_gens(), src.num_gens()));
}

FinAbMap FinAbMap::identity(const FinAb& g) {
  return FinAbMap(g, g, IntMat::identity(g.num_gens()));
}

std::vector<Int> FinAbMap::apply(const std::vector<Int>& coords) const {
  return tgt_.reduce(mat_.apply(coords));
}

FinAbMap FinAbMap::compose(const FinAbMap& inner) const {
  require(inner.tgt_.same_type(src_), "composition type mismatch");
  return FinAbMap(inner.src_, tgt_, mat_ * inner.mat_);
}

FinAbMap FinAbMap::operator+(const FinAbMap& o) const {
  require(src_.same_type(o.src_) && tgt_.same_type(o.tgt_), "sum type mismatch");
  return FinAbMap(src_, tgt_, mat_ + o.mat_);
}

FinAbMap FinAbMap::operator-(const FinAbMap& o) const {
  require(src_.same_type(o.src_) && tgt_.same_type(o.tgt_), "difference type mismatch");
  return FinAbMap(src_, tgt_, mat_ - o.mat_);
}

FinAbMap FinAbMap::scaled(const Int& c) const { return FinAbMap(src_, tgt_, mat_.scaled(c)); }

bool FinAbMap::operator==(const FinAbMap& o) const {
  if (!src_.same_type(o.src_) || !tgt_.same_type(o.tgt_)) return false;
  for (int i = 0; i < mat_.rows(); ++i)
    for (int j = 0; j < mat_.cols(); ++j)
      if ((mat_.at(i, j) - o.mat_.at(i, j)) % tgt_.factors()[i] != 0) return false;
  return true;
}

bool FinAbMap::is_zero() const {
  for (int i = 0; i < mat_.rows(); ++i)
    for (int j = 0; j < mat_.cols(); ++j)
      if (mat_.at(i, j) % tgt_.factors()[i] != 0) return false;
  return true;
}

bool FinAbMap::is_identity() const {
  if (!src_.same_type(tgt_)) return false;
  return *this == identity(src_);
}

bool FinAbMap::is_surjective() const {
  if (tgt_.is_trivial()) return true;
  IntMat rel = IntMat::hstack(mat_, IntMat::diagonal(tgt_.factors()));
  Snf f = smith(rel);
  if (f.rank < tgt_.num_gens()) return false;
  for (int i = 0; i < f.rank; ++i)
    if (f.d.at(i, i) != 1) return false;
  return true;
}

bool FinAbMap::is_injective() const { return kernel(*this).sub.is_trivial(); }

std::string FinAbMap::str() const { return src_.str() + " -> " + tgt_.str() + " : " + mat_.str(); }

SubgroupEmbedding subgroup_from_generators(const FinAb& amb, const IntMat& gens) {
  require(gens.rows() == amb.num_gens(), "generator coordinate size mismatch");
  const int m = gens.cols();
  // relations among the generators: y with gens*y = 0 in amb
  IntMat block = IntMat::hstack(gens, IntMat::diagonal(amb.factors()));
  IntMat ker = kernel_basis(block);
  std::vector<int> ys;
  for (int i = 0; i < m; ++i) ys.push_back(i);
  IntMat rel = ker.rows_subset(ys);
  SubgroupEmbedding out;
  out.sub = FinAb::from_presentation(rel);
  // canonical generators of sub, written in amb coordinates
  IntMat embed(amb.num_gens(), out.sub.num_gens());
  for (int j = 0; j < out.sub.num_gens(); ++j) {
    std::vector<Int> e = gens.apply(out.sub.lift(j));
    embed.set_col(j, amb.reduce(std::move(e)));
  }
  // injective by construction: rel is the full relation lattice of the
  // generator tuple, so sub carries exactly the span of gens
  out.embed = FinAbMap(out.sub, amb, std::move(embed));
  return out;
}

std::optional<std::vector<Int>> express_in_subgroup(const SubgroupEmbedding& emb,
                                                    const std::vector<Int>& v) {
  const FinAb& amb = emb.embed.tgt();
  if (emb.sub.is_trivial()) {
    std::vector<Int> r = amb.reduce(std::vector<Int>(v));
    for (const Int& x : r)
      if (x != 0) return std::nullopt;
    return std::vector<Int>{};
  }
  IntMat block = IntMat::hstack(emb.embed.matrix(), IntMat::diagonal(amb.factors()));
  auto sol = solve_integer(block, v);
  if (!sol) return std::nullopt;
  std::vector<Int> coords(sol->begin(), sol->begin() + emb.sub.num_gens());
  return emb.sub.reduce(std::move(coords));
}

std::optional<FinAbMap> corestrict_to_subgroup(const SubgroupEmbedding& emb, const FinAbMap& f) {
  require(f.tgt().same_type(emb.embed.tgt()), "corestrict: ambient mismatch");
  IntMat m(emb.sub.num_gens(), f.src().num_gens());
  for (int j = 0; j < f.src().num_gens(); ++j) {
    auto c = express_in_subgroup(emb, f.matrix().col_vec(j));
    if (!c) return std::nullopt;
    m.set_col(j, *c);
  }
  return FinAbMap(f.src(), emb.sub, std::move(m));
}

SubgroupEmbedding kernel(const FinAbMap& f) {
  // x in ker iff mat*x = 0 mod tgt factors; find integer solutions
  IntMat block = IntMat::hstack(f.matrix(), IntMat::diagonal(f.tgt().factors()));
  IntMat ker = kernel_basis(block);
  std::vector<int> xs;
  for (int i = 0; i < f.src().num_gens(); ++i) xs.push_back(i);
  IntMat gens = ker.rows_subset(xs);
  IntMat all = IntMat::hstack(gens, IntMat::diagonal(f.src().factors()));
  IntMat reduced(all.rows(), all.cols());
  for (int i = 0; i < all.rows(); ++i)
    for (int j = 0; j < all.cols(); ++j) {
      Int v = all.at(i, j);
      mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), f.src().factors()[i].get_mpz_t());
      reduced.at(i, j) = v;
    }
  return subgroup_from_generators(f.src(), reduced);
}

SubgroupEmbedding image(const FinAbMap& f) { return subgroup_from_generators(f.tgt(), f.matrix()); }

QuotientData quotient_by(const FinAb& amb, const IntMat& gens) {
  require(gens.rows() == amb.num_gens(), "quotient generator size mismatch");
  IntMat rel = IntMat::hstack(IntMat::diagonal(amb.factors()), gens);
  QuotientData out;
  out.quot = FinAb::from_presentation(rel);
  IntMat pm(out.quot.num_gens(), amb.num_gens());
  for (int j = 0; j < amb.num_gens(); ++j) {
    std::vector<Int> e(amb.num_gens(), 0);
    e[j] = 1;
    pm.set_col(j, out.quot.project(e));
  }
  out.proj = FinAbMap(amb, out.quot, std::move(pm));
  return out;
}

FinAbMap map_from_ambient_images(const FinAb& src, const FinAb& tgt, const IntMat& ambient_images) {
  require(ambient_images.rows() == tgt.ambient_rank() && ambient_images.cols() == src.num_gens(),
          "ambient image shape mismatch");
  IntMat m(tgt.num_gens(), src.num_gens());
  for (int j = 0; j < src.num_gens(); ++j) m.set_col(j, tgt.project(ambient_images.col_vec(j)));
  return FinAbMap(src, tgt, std::move(m));
}

FinAbMap induced_map(const IntMat& f_raw, const FinAb& src, const FinAb& tgt) {
  check(f_raw.cols() == src.ambient_rank() && f_raw.rows() == tgt.ambient_rank(), ErrorKind::input,
        "induced_map: ambient shape mismatch");
  IntMat mapped = f_raw * src.ambient_relations();
  for (int j = 0; j < mapped.cols(); ++j) {
    std::vector<Int> c = tgt.project(mapped.col_vec(j));
    for (const Int& x : c)
      check(x == 0, ErrorKind::input,
            "map not well-defined on quotients: relation " + std::to_string(j) + " violated");
  }
  IntMat m(tgt.num_gens(), src.num_gens());
  for (int j = 0; j < src.num_gens(); ++j) m.set_col(j, tgt.project(f_raw.apply(src.lift(j))));
  return FinAbMap(src, tgt, std::move(m));
}

}  // namespace glat
