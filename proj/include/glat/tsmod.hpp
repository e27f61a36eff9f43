#ifndef GLAT_TSMOD_HPP
#define GLAT_TSMOD_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "glat/fpmat.hpp"
#include "glat/glattice.hpp"
#include "glat/perm.hpp"

namespace glat {

// Module over F_p given by invertible generator matrices; when `group` is
// set the generators align with the group's generator list and the action
// of every element is materialized.
class FpModule {
public:
  static constexpr int kMaxDim = 256;

  FpModule() = default;
  FpModule(uint32_t p, int dim, std::vector<FpMat> gen_mats,
           std::shared_ptr<const PermGroup> group = nullptr);

  uint32_t p() const { return p_; }
  int dim() const { return dim_; }
  const std::vector<FpMat>& gens() const { return gen_mats_; }
  const std::shared_ptr<const PermGroup>& group() const { return group_; }
  const FpMat& elem(int e) const;  // requires group

  // module on the subspace spanned by the columns of `basis` (must be
  // invariant under every generator)
  FpModule restricted(const FpMat& basis) const;
  // module on the quotient by the row space `sub_rows`
  FpModule quotient(const FpMat& sub_rows) const;

  // canonical isomorphism-stable ordering key: dimension, then the
  // concatenated characteristic polynomials of the generators
  std::vector<uint32_t> fingerprint() const;

private:
  uint32_t p_ = 2;
  int dim_ = 0;
  std::vector<FpMat> gen_mats_;
  std::shared_ptr<const PermGroup> group_;
  std::vector<FpMat> elem_mats_;
};

FpModule fp_module_from_lattice(const GLattice& l, uint32_t p);
FpModule fp_perm_module(const ClassTable& t, const Subgroup& h, uint32_t p);
FpModule fp_regular_module(std::shared_ptr<const PermGroup> w, uint32_t p);

// F_p-basis of the algebra of module maps u -> v.
std::vector<FpMat> fp_hom_space(const FpModule& u, const FpModule& v);
std::vector<FpMat> fp_end_algebra(const FpModule& u);

// Isomorphism test by searching Hom(u, v) for an invertible element:
// basis elements, seeded random combinations, then exhaustive enumeration
// when p^dim Hom is small.
bool fp_isomorphic(const FpModule& u, const FpModule& v);

// Indecomposable summands with multiplicities, canonically ordered by
// (dim, fingerprint).  Every component's endomorphism algebra is certified
// local by exhausting it (each element invertible or nilpotent).
std::vector<std::pair<FpModule, int>> split_indecomposables(const FpModule& u);

// Composition factors (simple subquotients) with multiplicity, canonically
// ordered; Norton-style certified irreducibility.
std::vector<std::pair<FpModule, int>> composition_factors(const FpModule& u);

struct VertexResult {
  int class_idx = -1;   // p-subgroup class in the ClassTable
  bool projective = false;  // trivial vertex
  FpMat witness;        // H-endomorphism whose relative trace is the identity
};
// Higman criterion: minimal p-subgroup class H with id in the image of the
// relative trace on End_{F_pH}(u); u must be indecomposable.
VertexResult vertex(const ClassTable& t, const FpModule& u);

// U[H] = U^H / sum of relative traces from maximal proper subgroups, as a
// module over w = N_G(H)/H (the caller supplies the quotient so generator
// alignment is shared with the simple-module list).
FpModule brauer_quotient(const ClassTable& t, const FpModule& u, const Subgroup& h,
                         const QuotientGroup& w);

// All simple F_p w-modules, canonically ordered by (dim, fingerprint).
std::vector<FpModule> simple_fp_modules(std::shared_ptr<const PermGroup> w, uint32_t p);

// J(F_p w) acting on a module: the radical subspace (rows) of m.
FpMat radical_subspace(const FpModule& m);

struct TSLabel {
  int p = 2;
  std::string vertex_class;  // canonical class label
  int vertex_order = 0;
  int simple_index = 0;

  bool operator<(const TSLabel& o) const {
    if (p != o.p) return p < o.p;
    if (vertex_order != o.vertex_order) return vertex_order < o.vertex_order;
    if (vertex_class != o.vertex_class) return vertex_class < o.vertex_class;
    return simple_index < o.simple_index;
  }
  bool operator==(const TSLabel& o) const {
    return p == o.p && vertex_class == o.vertex_class && simple_index == o.simple_index;
  }
  std::string str() const;
};

// Finitely supported multiplicity vector over TSLabels with the
// componentwise partial order.
struct MultiplicityVector {
  std::map<TSLabel, int> entries;

  int at(const TSLabel& l) const;
  MultiplicityVector operator+(const MultiplicityVector& o) const;
  // componentwise difference; negative entries are dropped to the caller's
  // peril (use geq first)
  MultiplicityVector minus(const MultiplicityVector& o) const;
  bool geq(const MultiplicityVector& o) const;  // this >= o componentwise
  bool operator==(const MultiplicityVector& o) const;
  bool is_zero() const;
  std::string str() const;
};

struct CatalogEntry {
  TSLabel label;
  FpModule realization;
  VertexResult vertex_info;
  std::string head_structure;  // description of the Brauer-quotient head
};

class TrivialSourceCatalog {
public:
  static TrivialSourceCatalog build(const ClassTable& t);

  const ClassTable& table() const { return *table_; }
  const std::vector<int>& primes() const { return primes_; }
  const std::vector<CatalogEntry>& entries() const { return entries_; }
  const CatalogEntry& entry(const TSLabel& l) const;
  const std::vector<FpModule>& simples_of_quotient(const std::string& cls, int p) const;
  const QuotientGroup& quotient_of_class(const std::string& cls) const;

  // decomposition of F_p[X] for one transitive orbit, nontrivial-vertex
  // summands matched against the catalog (memoized per class and prime)
  MultiplicityVector orbit_vector(const std::string& cls);

private:
  const ClassTable* table_ = nullptr;
  std::vector<int> primes_;
  std::vector<CatalogEntry> entries_;
  std::map<std::pair<std::string, int>, std::vector<FpModule>> simples_;
  std::map<std::string, QuotientGroup> quotients_;
  std::map<std::string, MultiplicityVector> orbit_cache_;
};

MultiplicityVector multiplicity_vector(TrivialSourceCatalog& catalog, const GSetSpec& x);

struct MultTable {
  std::vector<std::string> row_labels;  // class labels, all classes
  std::vector<TSLabel> columns;
  std::vector<std::vector<int>> cells;
};
MultTable multiplicity_table(TrivialSourceCatalog& catalog);

}  // namespace glat

#endif
