#ifndef GLAT_TAU_HPP
#define GLAT_TAU_HPP

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "glat/finab.hpp"
#include "glat/tate.hpp"
#include "glat/tsmod.hpp"

namespace glat {

// Double-coset symbol [K g H]: underlying ZG-map Z[G/H] -> Z[G/K] sending
// e_H to the sum of the K-cosets inside H g^{-1} K; on Mackey values it acts
// as I^H . C_{g^-1} . R^K : M(K) -> M(H) through the intersection subgroups.
struct DCSymbol {
  int k_sub = -1;   // subgroup index (target orbit of the underlying map)
  int h_sub = -1;   // subgroup index (source orbit)
  uint16_t rep = 0; // lex-least element of K g H

  bool operator<(const DCSymbol& o) const {
    if (k_sub != o.k_sub) return k_sub < o.k_sub;
    if (h_sub != o.h_sub) return h_sub < o.h_sub;
    return rep < o.rep;
  }
  bool operator==(const DCSymbol& o) const {
    return k_sub == o.k_sub && h_sub == o.h_sub && rep == o.rep;
  }
};

// The double-coset algebra on all ordered subgroup pairs, with coefficients
// mod n = |G|, together with the ideal of maps factoring through the
// regular orbit.  Products compose the underlying maps, so a module action
// satisfies act(mult(a,b)) = act(b) . act(a).
class TauAlgebra {
public:
  static constexpr int kMaxGroupOrder = 48;

  static TauAlgebra build(const ClassTable& t);

  const ClassTable& table() const { return *table_; }
  long modulus() const { return modulus_; }
  int num_symbols() const { return int(symbols_.size()); }
  const std::vector<DCSymbol>& symbols() const { return symbols_; }
  const DCSymbol& symbol(int i) const { return symbols_[i]; }
  int symbol_index(int k_sub, int h_sub, int elem) const;  // elem anywhere in K g H

  // identity = sum of [H e H] over all subgroups
  std::vector<int> identity_symbols() const;

  // structure constants of the composition product (integer coefficients);
  // empty when the middle subgroups differ
  std::map<int, long> mult(int a, int b) const;

  // generators of the two-sided ideal spanned by maps through Z[G/1],
  // as coefficient vectors over the symbol basis (mod n)
  const std::vector<std::vector<long>>& ideal_generators() const;

  // additive group of the quotient algebra (Z/n)^symbols / ideal
  const FinAb& additive_group() const;

private:
  const ClassTable* table_ = nullptr;
  long modulus_ = 1;
  std::vector<DCSymbol> symbols_;
  std::map<std::tuple<int, int, uint16_t>, int> index_;
  // per subgroup: coset reps and element -> coset lookup
  std::vector<std::vector<uint16_t>> coset_reps_;
  std::vector<std::vector<int>> coset_of_;
  std::vector<std::vector<int>> dc_of_elem_;  // per (k,h) pair key: element -> symbol
  std::map<std::pair<int, int>, std::vector<int>> block_;  // (k,h) -> symbol list
  mutable std::optional<std::vector<std::vector<long>>> ideal_;
  mutable std::optional<FinAb> additive_;

  std::vector<long> compose_as_coset_vector(int a, int b) const;
};

// A finite module over the double-coset algebra presented by its values at
// every subgroup with the res/cor/conj component maps.  The value at the
// trivial subgroup vanishes.
struct TMackModule {
  const ClassTable* table = nullptr;
  std::shared_ptr<const MackeyDatum> datum;  // set when built from a lattice
  std::vector<FinAb> values;                 // by subgroup index
  std::map<std::pair<int, int>, FinAbMap> res, cor;  // (K,H), H <= K
  std::map<std::pair<int, int>, FinAbMap> conj;      // (g, H)

  const FinAbMap& res_map(int k, int h) const { return res.at({k, h}); }
  const FinAbMap& cor_map(int k, int h) const { return cor.at({k, h}); }
  const FinAbMap& conj_map(int g, int h) const { return conj.at({g, h}); }
  FinAbMap conj_elem(int g, int h) const { return conj.at({g, h}); }

  Int order() const;
  bool is_trivial() const;
  // action of a symbol: M(K) -> M(H)
  FinAbMap act_symbol(const DCSymbol& s) const;
};

TMackModule tmack_from_datum(const ClassTable& t, std::shared_ptr<const MackeyDatum> d);
TMackModule hat0_tmack(const ClassTable& t, const GSetSpec& x, int jobs = 1);
TMackModule h1_tmack(const ClassTable& t, std::shared_ptr<const GLattice> m, int jobs = 1);
TMackModule tmack_direct_sum(const TMackModule& a, const TMackModule& b);

// componentwise module map commuting with the structure maps
struct TMackHom {
  std::vector<FinAbMap> comps;  // per subgroup
  bool is_surjective() const;
};

// full Hom group between two modules, with deterministic enumeration
struct TMackHomSpace {
  FinAb group;                                // abstract hom group
  std::vector<std::vector<IntMat>> gen_maps;  // per generator: matrices per subgroup
  const TMackModule *src = nullptr, *tgt = nullptr;

  TMackHom element(const std::vector<Int>& coords) const;
  // first element (odometer order over the canonical generators) passing
  // the predicate; nullopt when none does
  std::optional<TMackHom> first(const std::function<bool(const TMackHom&)>& pred,
                                long limit = 1 << 21) const;
};

TMackHomSpace tmack_hom_space(const TMackModule& src, const TMackModule& tgt);

struct TMackSub {
  TMackModule module;
  std::vector<FinAbMap> embed;  // per subgroup: sub(J) -> parent(J)
};
TMackSub kernel_submodule(const TMackModule& m, const TMackHom& f);

// mod-p graded reduction with the canonical generator list
// [proj_J ...] ++ [res bundle] ++ [cor bundle] ++ [conj_s per generator]
struct GradedFpModule {
  FpModule mod;
  std::vector<int> block_offset;  // per subgroup
  std::vector<int> block_dim;
};
GradedFpModule graded_mod_p(const TMackModule& m, uint32_t p);

// simple modules of the double-coset algebra at p, labeled by vertex class
// and simple-module index of the vertex quotient
struct TauSimple {
  TSLabel label;
  GradedFpModule realization;
};

class TmackContext {
public:
  explicit TmackContext(const ClassTable& t);

  const ClassTable& table() const { return *table_; }
  TrivialSourceCatalog& catalog() { return catalog_; }
  const std::vector<TauSimple>& simples(int p);
  const TMackModule& hat0_orbit(const std::string& cls);
  TMackModule hat0(const GSetSpec& x);
  TMackModule h1(std::shared_ptr<const GLattice> m);

  // multiplicities of the simple heads: the projective cover vector
  MultiplicityVector cover_vector(const TMackModule& n);

  int jobs = 1;

private:
  const ClassTable* table_;
  TrivialSourceCatalog catalog_;
  std::map<std::string, TMackModule> hat0_cache_;
  std::map<int, std::vector<TauSimple>> simples_;
};

}  // namespace glat

#endif
