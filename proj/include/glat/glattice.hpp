#ifndef GLAT_GLATTICE_HPP
#define GLAT_GLATTICE_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "glat/finab.hpp"
#include "glat/intmat.hpp"
#include "glat/perm.hpp"

namespace glat {

// A formal disjoint union of coset spaces G/H, named by subgroup class labels.
struct GSetSpec {
  std::vector<std::string> orbits;

  bool empty() const { return orbits.empty(); }
  GSetSpec sorted(const ClassTable& t) const;
  std::string str() const;  // "G/2.1 + G/4.1"
  bool operator==(const GSetSpec& o) const { return orbits == o.orbits; }
  bool operator<(const GSetSpec& o) const { return orbits < o.orbits; }
};

// Coset bookkeeping carried by permutation lattices so that basis vectors
// stay identified with cosets all the way to the report layer.
struct PermStructure {
  GSetSpec spec;
  std::vector<int> orbit_offset;                      // basis offset per orbit
  std::vector<Subgroup> orbit_subgroup;               // class representative per orbit
  std::vector<std::vector<uint16_t>> orbit_coset_rep; // local coset -> lex-least element
  std::vector<std::vector<int>> coset_of;             // per orbit: element -> local coset
  std::vector<std::vector<uint16_t>> elem_perm;       // per element: global basis permutation
  int orbit_of_basis(int b) const;
};

// Z-free module with a G-action by unimodular matrices.  Construction
// materializes the action of every group element and verifies that the
// generator assignment extends to a homomorphism.
class GLattice {
public:
  static constexpr int kMaxRank = 64;

  GLattice(std::shared_ptr<const PermGroup> group, int rank, std::map<std::string, IntMat> gen_action);

  const PermGroup& group() const { return *group_; }
  std::shared_ptr<const PermGroup> group_ptr() const { return group_; }
  int rank() const { return rank_; }
  const IntMat& action(int elem) const { return elem_action_[elem]; }
  const std::map<std::string, IntMat>& gen_action() const { return gen_action_; }

  const std::optional<PermStructure>& perm() const { return perm_; }
  void set_perm_structure(PermStructure p) { perm_ = std::move(p); }

private:
  std::shared_ptr<const PermGroup> group_;
  int rank_;
  std::map<std::string, IntMat> gen_action_;
  std::vector<IntMat> elem_action_;
  std::optional<PermStructure> perm_;
};

// A ZG-map between lattices (commutes with every generator action).
struct LatticeMap {
  IntMat matrix;  // tgt.rank x src.rank
};

// Basis element of Hom_ZG(src, tgt); when both sides are permutation
// lattices each element carries its double-coset tag [K g H] (K the target
// orbit subgroup, H the source orbit subgroup).
struct HomBasisElem {
  IntMat matrix;
  int src_orbit = -1, tgt_orbit = -1;
  std::optional<DoubleCoset> tag;
};

GLattice perm_lattice(const ClassTable& t, const GSetSpec& x);
GLattice trivial_lattice(const ClassTable& t);  // Z[G/G]
GLattice dual(const GLattice& l);
GLattice direct_sum(const GLattice& a, const GLattice& b);

// Action restricted to the sublattice spanned by the columns of `basis`
// (must be G-stable and of full column rank).
GLattice restrict_to_sublattice(const GLattice& l, const IntMat& basis);

IntMat norm_matrix(const Subgroup& h, const GLattice& l);
// Z-basis of L^H as matrix columns (saturated).
IntMat fixed_sublattice(const Subgroup& h, const GLattice& l);

bool is_equivariant(const GLattice& src, const GLattice& tgt, const IntMat& f);
std::vector<HomBasisElem> hom_basis(const GLattice& src, const GLattice& tgt);

// ---- predicates and resolutions (implemented in resolutions.cpp) ----

enum class LatticePredicate { flasque, coflasque, invertible };

struct PredicateWitness {
  bool value = false;
  // on failure of flasque/coflasque (or of the necessary condition for
  // invertible): the offending class and its nonzero Tate group
  std::optional<std::string> failing_class;
  std::optional<FinAb> failing_group;
  // for invertible = true: a ZG-section of the first-type coflasque cover
  std::optional<IntMat> section;
  std::string note;
};

PredicateWitness lattice_predicate(const ClassTable& t, const GLattice& l, LatticePredicate which);

enum class ResolutionKind { flasque1, flasque2, coflasque1, coflasque2 };

struct ExactnessCert {
  bool left_injective = false;
  bool right_surjective = false;
  bool middle_exact = false;
  bool composite_zero = false;
  bool ok() const { return left_injective && right_surjective && middle_exact && composite_zero; }
};

ExactnessCert certify_short_exact(const IntMat& left_map, const IntMat& right_map);

struct Resolution {
  ResolutionKind kind;
  GLattice left, middle, right;
  IntMat map_left;   // left -> middle
  IntMat map_right;  // middle -> right
  GSetSpec perm_spec;  // the G-set of the permutation term
  ExactnessCert cert;
  // audit trail for the second-type construction (first-type pieces)
  std::shared_ptr<Resolution> audit_flasque_first;
  std::shared_ptr<Resolution> audit_coflasque_of_f;
};

Resolution coflasque_res_first(const ClassTable& t, const GLattice& l);
Resolution flasque_res_first(const ClassTable& t, const GLattice& l);
Resolution coflasque_res_second(const ClassTable& t, const GLattice& l);

struct RetractCert {
  bool value = false;
  PredicateWitness invertibility;      // of the coflasque term
  std::shared_ptr<Resolution> res;     // the second-type resolution used
};

RetractCert retract_rational(const ClassTable& t, const GLattice& m);

}  // namespace glat

#endif
