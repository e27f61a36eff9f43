#ifndef GLAT_PRESENTATIONS_HPP
#define GLAT_PRESENTATIONS_HPP

#include <optional>

#include "glat/tau.hpp"

namespace glat {

// one double-coset term of psi: coeff * [K g H] between the named orbits
struct PsiTerm {
  long coeff = 0;
  int src_orbit = -1, tgt_orbit = -1;  // positions in x1 / x0
  int k_sub = -1, h_sub = -1;          // subgroup indices of the symbol
  uint16_t rep = 0;
};

struct PresentationSpec {
  GSetSpec x0, x1;
  IntMat psi;                      // Z[X1] -> Z[X0]
  std::vector<PsiTerm> psi_terms;  // double-coset expansion of psi
  std::vector<FinAbMap> epsilon;   // per subgroup: H^0(X0)(J) -> H^1(M)(J)

  struct SubCert {
    bool surjective = false;
    bool composite_zero = false;
    bool kernel_matches = false;
    bool ok() const { return surjective && composite_zero && kernel_matches; }
  };
  std::vector<SubCert> cert;
  bool certified() const;

  MultiplicityVector alpha0, alpha1;  // multiplicity vectors of X0 and X1
  MultiplicityVector kernel_cover;    // cover vector of ker(epsilon)
};

struct BettiPair {
  MultiplicityVector beta0, beta1;
};

// Gated on retract rationality: refusal (ErrorKind::refusal) otherwise.
BettiPair betti_presentation(TmackContext& ctx, std::shared_ptr<const GLattice> m);

// Admissibility of a projective chain against the minimal Betti vectors:
// the padding R_d = sum_{i<=d} (-1)^{d-i} (alpha_i - beta_i) must stay
// nonnegative for every d.
bool admissible_chain(const std::vector<MultiplicityVector>& alpha,
                      const std::vector<MultiplicityVector>& beta);

bool presentation_admissible(TmackContext& ctx, const BettiPair& betti, const GSetSpec& x0,
                             const GSetSpec& x1);

// All inclusion-minimal X0 with mult(X0) >= beta0, each paired with its
// canonical minimal X1 (least excess, then least total degree, then lex).
std::vector<std::pair<GSetSpec, GSetSpec>> enumerate_minimal_presentations(
    TmackContext& ctx, const MultiplicityVector& beta0, const MultiplicityVector& beta1);

// Inclusion-minimal multisets of orbits whose multiplicity vector covers
// the target (helper shared with the enumeration above).
std::vector<GSetSpec> minimal_covers(TmackContext& ctx, const MultiplicityVector& target);

PresentationSpec realize_presentation(TmackContext& ctx, std::shared_ptr<const GLattice> m,
                                      const GSetSpec& x0, const GSetSpec& x1);

// Same, but with the lattice map pinned by the caller: finds a complementing
// epsilon and certifies; errors when psi is not equivariant or no epsilon
// completes it exactly.
PresentationSpec presentation_from_psi(TmackContext& ctx, std::shared_ptr<const GLattice> m,
                                       const GSetSpec& x0, const GSetSpec& x1, const IntMat& psi);

struct ExactnessReport {
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

// Recomputes psi* and the exactness conditions at every subgroup from
// scratch (fresh cohomology of fresh lattices) and checks naturality of the
// stored epsilon; independent of how the spec was produced.
ExactnessReport verify_exactness(TmackContext& ctx, std::shared_ptr<const GLattice> m,
                                 const PresentationSpec& spec);

}  // namespace glat

#endif
