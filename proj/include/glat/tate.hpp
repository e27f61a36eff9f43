#ifndef GLAT_TATE_HPP
#define GLAT_TATE_HPP

#include <map>
#include <memory>
#include <vector>

#include "glat/finab.hpp"
#include "glat/glattice.hpp"

namespace glat {

// Tate cohomology of one subgroup with coefficients in a lattice, together
// with the data needed to convert between explicit representatives and
// canonical coordinates.
//
// Representative spaces by degree:
//   0   : fixed vectors of L^H (length = rank)
//   -1  : norm-kernel vectors (length = rank)
//   1   : full cocycle tables c : H -> L, stored as a vector of length
//         rank * |H| laid out as c(h_0), c(h_1), ... over the sorted
//         element list of H (h_0 = identity, c(h_0) = 0)
class TateValue {
public:
  static constexpr int kMaxDeg1Order = 24;

  int subgroup = -1;  // subgroup index in the ClassTable
  int degree = 0;     // -1, 0, or 1
  FinAb group;

  // basis of the representative lattice (Z^k -> representative space)
  IntMat basis;

  std::vector<Int> rep_of_gen(int i) const;                     // representative of generator i
  std::vector<Int> project_rep(const std::vector<Int>& rep) const;  // representative -> coords
  bool rep_in_lattice(const std::vector<Int>& rep) const;

private:
  friend TateValue tate_value_impl(const ClassTable&, int, const GLattice&, int);
  std::shared_ptr<IntSolver> basis_solver_;
};

TateValue tate_value(const ClassTable& t, int sub_idx, const GLattice& l, int degree);

// Convenience: just the group (used by the flasque/coflasque predicates).
FinAb tate_group(const ClassTable& t, int sub_idx, const GLattice& l, int degree);

// The full subgroup-indexed datum: values at every subgroup (all members,
// not only class representatives) with restriction, corestriction, and
// conjugation maps.
struct MackeyDatum {
  const ClassTable* table = nullptr;
  std::shared_ptr<const GLattice> lattice;
  int degree = 0;
  std::vector<TateValue> values;                    // by subgroup index
  std::map<std::pair<int, int>, FinAbMap> res;      // (K, H) with H <= K : M(K) -> M(H)
  std::map<std::pair<int, int>, FinAbMap> cor;      // (K, H) with H <= K : M(H) -> M(K)
  std::map<std::pair<int, int>, FinAbMap> conj;     // (g, H) : M(H) -> M(gHg^-1)

  const FinAbMap& res_map(int k, int h) const;
  const FinAbMap& cor_map(int k, int h) const;
  const FinAbMap& conj_map(int g, int h) const;
};

// jobs > 1 computes the per-subgroup values concurrently; the result is
// independent of the job count.
MackeyDatum mackey_datum(const ClassTable& t, std::shared_ptr<const GLattice> l, int degree,
                         int jobs = 1);

struct MackeyReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Checks the five Mackey axioms plus the cohomological axiom
// (cor . res = index) over every subgroup pair and every group element.
MackeyReport verify_mackey_axioms(const MackeyDatum& d);

// Induced map on Tate values from an equivariant lattice map src -> tgt
// (coefficient functoriality), at one subgroup.
FinAbMap induced_on_tate(const TateValue& src_val, const TateValue& tgt_val, const IntMat& f,
                         const ClassTable& t, const GLattice& src, const GLattice& tgt);

}  // namespace glat

#endif
