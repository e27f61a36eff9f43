#ifndef GLAT_FINAB_HPP
#define GLAT_FINAB_HPP

#include <optional>
#include <string>
#include <vector>

#include "glat/intmat.hpp"

namespace glat {

// Finite abelian group in invariant-factor form d1 | d2 | ... | dk, di >= 2.
// Carries projection/lift data relative to the ambient presentation it was
// built from, so elements can move between ambient and canonical coordinates.
class FinAb {
public:
  FinAb() = default;  // trivial group with 0-dimensional ambient

  // Quotient of Z^n by the column lattice of rel (n = rel.rows()).  Errors
  // if the quotient is infinite, reporting the free rank.
  static FinAb from_presentation(const IntMat& rel);
  static FinAb trivial() { return FinAb(); }
  static FinAb cyclic(const Int& n);

  const std::vector<Int>& factors() const { return factors_; }
  int num_gens() const { return int(factors_.size()); }
  bool is_trivial() const { return factors_.empty(); }
  Int order() const;
  Int exponent() const { return factors_.empty() ? Int(1) : factors_.back(); }

  int ambient_rank() const { return ambient_rank_; }
  // canonical coordinates of an ambient vector
  std::vector<Int> project(const std::vector<Int>& ambient) const;
  // ambient representative of canonical generator i
  std::vector<Int> lift(int i) const;
  // columns generate the full relation lattice in the ambient coordinates
  const IntMat& ambient_relations() const { return rel_ambient_; }

  std::vector<Int> reduce(std::vector<Int> coords) const;  // mod factors, into [0, d)
  bool coords_equal(const std::vector<Int>& a, const std::vector<Int>& b) const;
  std::vector<Int> zero() const { return std::vector<Int>(factors_.size(), 0); }

  // All elements in odometer order (capacity-checked against `limit`).
  std::vector<std::vector<Int>> all_elements(long limit = 1 << 20) const;

  std::string str() const;  // e.g. "Z/2 x Z/2", "0"
  bool same_type(const FinAb& o) const { return factors_ == o.factors_; }

private:
  std::vector<Int> factors_;
  int ambient_rank_ = 0;
  IntMat proj_;         // k x n
  IntMat lift_;         // n x k
  IntMat rel_ambient_;  // n x n
};

// Homomorphism between finite abelian groups in canonical coordinates.
// matrix is (tgt.num_gens() x src.num_gens()), entries reduced mod the
// target factors; construction checks d_src(j) * column_j = 0 in tgt.
class FinAbMap {
public:
  FinAbMap() = default;
  FinAbMap(FinAb src, FinAb tgt, IntMat matrix);

  static FinAbMap zero(const FinAb& src, const FinAb& tgt);
  static FinAbMap identity(const FinAb& g);

  const FinAb& src() const { return src_; }
  const FinAb& tgt() const { return tgt_; }
  const IntMat& matrix() const { return mat_; }

  std::vector<Int> apply(const std::vector<Int>& coords) const;
  FinAbMap compose(const FinAbMap& inner) const;  // this after inner
  FinAbMap operator+(const FinAbMap& o) const;
  FinAbMap operator-(const FinAbMap& o) const;
  FinAbMap scaled(const Int& c) const;
  bool operator==(const FinAbMap& o) const;
  bool is_zero() const;
  bool is_identity() const;

  bool is_surjective() const;
  bool is_injective() const;
  bool is_isomorphism() const { return is_surjective() && is_injective(); }

  std::string str() const;

private:
  FinAb src_, tgt_;
  IntMat mat_;
};

// Subgroup of `amb` generated by the given canonical-coordinate columns:
// returns the abstract group S and an embedding map S -> amb.
struct SubgroupEmbedding {
  FinAb sub;
  FinAbMap embed;  // sub -> ambient
};
SubgroupEmbedding subgroup_from_generators(const FinAb& amb, const IntMat& gens);

// Coordinates of v in the subgroup given by `emb` (error if v not inside).
std::optional<std::vector<Int>> express_in_subgroup(const SubgroupEmbedding& emb,
                                                    const std::vector<Int>& v);
// Column-wise version for whole maps: given f : X -> amb with image inside
// the subgroup, rewrite as X -> sub.
std::optional<FinAbMap> corestrict_to_subgroup(const SubgroupEmbedding& emb, const FinAbMap& f);

SubgroupEmbedding kernel(const FinAbMap& f);
SubgroupEmbedding image(const FinAbMap& f);

// Quotient amb / <gens>: the group and the projection map amb -> Q.
struct QuotientData {
  FinAb quot;
  FinAbMap proj;  // amb -> quot
};
QuotientData quotient_by(const FinAb& amb, const IntMat& gens);

// Build the map determined by images of the source's canonical generators
// given in ambient coordinates of tgt's presentation.
FinAbMap map_from_ambient_images(const FinAb& src, const FinAb& tgt, const IntMat& ambient_images);

// Induced map on quotients from an ambient-level integer matrix
// f_raw : Z^{src_amb} -> Z^{tgt_amb}; errors (naming the violated generator)
// when f_raw does not respect the relation lattices.
FinAbMap induced_map(const IntMat& f_raw, const FinAb& src, const FinAb& tgt);

}  // namespace glat

#endif
