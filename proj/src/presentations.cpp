#include "glat/presentations.hpp"

#include <algorithm>
#include <set>

namespace glat {

bool PresentationSpec::certified() const {
  if (cert.empty()) return false;
  for (const auto& c : cert)
    if (!c.ok()) return false;
  return true;
}

BettiPair betti_presentation(TmackContext& ctx, std::shared_ptr<const GLattice> m) {
  const ClassTable& t = ctx.table();
  RetractCert rc = retract_rational(t, *m);
  if (!rc.value) {
    std::string why = "lattice is not retract rational";
    if (rc.invertibility.failing_class)
      why += ": nonzero Tate group " + rc.invertibility.failing_group->str() + " at class " +
             *rc.invertibility.failing_class + " of the coflasque term";
    else if (!rc.invertibility.note.empty())
      why += ": " + rc.invertibility.note;
    fail(ErrorKind::refusal, why);
  }

  BettiPair out;
  TMackModule n = ctx.h1(m);
  out.beta0 = ctx.cover_vector(n);
  if (out.beta0.is_zero()) return out;  // beta1 = 0 as well

  // over-cover X* built from the vertex classes of the support of beta0;
  // Schanuel: cover(ker) = beta1 + (mult(X*) - beta0)
  GSetSpec xstar;
  for (auto& [label, mult] : out.beta0.entries)
    for (int i = 0; i < mult; ++i) xstar.orbits.push_back(label.vertex_class);
  xstar = xstar.sorted(t);
  TMackModule tstar = ctx.hat0(xstar);
  TMackHomSpace hs = tmack_hom_space(tstar, n);
  auto eps = hs.first([](const TMackHom& h) { return h.is_surjective(); });
  require(eps.has_value(), "over-cover admits no surjection onto H^1");
  TMackSub ker = kernel_submodule(tstar, *eps);
  MultiplicityVector kc = ctx.cover_vector(ker.module);
  MultiplicityVector alpha = multiplicity_vector(ctx.catalog(), xstar);
  MultiplicityVector padding = alpha.minus(out.beta0);
  require(kc.geq(padding), "kernel cover must dominate the padding");
  out.beta1 = kc.minus(padding);
  return out;
}

bool admissible_chain(const std::vector<MultiplicityVector>& alpha,
                      const std::vector<MultiplicityVector>& beta) {
  // R_d = alpha_d - beta_d - R_{d-1} must be >= 0 for all d (R_{-1} = 0);
  // the R_d are the projective paddings split off at each stage
  size_t len = std::max(alpha.size(), beta.size());
  MultiplicityVector r;  // R_{d-1}
  for (size_t d = 0; d < len; ++d) {
    MultiplicityVector a = d < alpha.size() ? alpha[d] : MultiplicityVector{};
    MultiplicityVector b = d < beta.size() ? beta[d] : MultiplicityVector{};
    MultiplicityVector need = b + r;
    if (!a.geq(need)) return false;
    r = a.minus(need);
  }
  return r.is_zero() || true;
}

bool presentation_admissible(TmackContext& ctx, const BettiPair& betti, const GSetSpec& x0,
                             const GSetSpec& x1) {
  MultiplicityVector a0 = multiplicity_vector(ctx.catalog(), x0);
  MultiplicityVector a1 = multiplicity_vector(ctx.catalog(), x1);
  return admissible_chain({a0, a1}, {betti.beta0, betti.beta1});
}

namespace {

std::vector<std::string> nontrivial_class_labels(const ClassTable& t) {
  std::vector<std::string> out;
  for (const auto& cl : t.classes())
    if (!cl.is_trivial()) out.push_back(cl.label);
  return out;
}

int total_mass(const MultiplicityVector& v) {
  int s = 0;
  for (auto& [k, c] : v.entries) s += c;
  return s;
}

long total_degree(const ClassTable& t, const GSetSpec& x) {
  long s = 0;
  for (auto& label : x.orbits)
    s += t.group().order() / t.classes()[t.class_by_label(label)].representative.order();
  return s;
}

void enum_multisets(const std::vector<std::string>& labels, int max_size,
                    std::vector<std::string>& cur, size_t from,
                    const std::function<void(const std::vector<std::string>&)>& fn) {
  fn(cur);
  if (int(cur.size()) >= max_size) return;
  for (size_t i = from; i < labels.size(); ++i) {
    cur.push_back(labels[i]);
    enum_multisets(labels, max_size, cur, i, fn);
    cur.pop_back();
  }
}

}  // namespace

std::vector<GSetSpec> minimal_covers(TmackContext& ctx, const MultiplicityVector& target) {
  const ClassTable& t = ctx.table();
  if (target.is_zero()) return {GSetSpec{}};
  auto labels = nontrivial_class_labels(t);
  int cap = total_mass(target);
  std::vector<GSetSpec> covers;
  std::vector<std::string> cur;
  enum_multisets(labels, cap, cur, 0, [&](const std::vector<std::string>& ms) {
    if (ms.empty()) return;
    MultiplicityVector v;
    for (auto& l : ms) v = v + ctx.catalog().orbit_vector(l);
    if (!v.geq(target)) return;
    covers.push_back(GSetSpec{ms});
  });
  // keep the inclusion-minimal ones: no orbit deletable
  std::vector<GSetSpec> minimal;
  for (auto& c : covers) {
    bool min = true;
    for (size_t i = 0; i < c.orbits.size() && min; ++i) {
      MultiplicityVector v;
      for (size_t j = 0; j < c.orbits.size(); ++j)
        if (j != i) v = v + ctx.catalog().orbit_vector(c.orbits[j]);
      if (v.geq(target)) min = false;
    }
    if (min) minimal.push_back(c.sorted(t));
  }
  std::sort(minimal.begin(), minimal.end());
  minimal.erase(std::unique(minimal.begin(), minimal.end()), minimal.end());
  return minimal;
}

namespace {

GSetSpec canonical_minimal_x1(TmackContext& ctx, const MultiplicityVector& kappa) {
  const ClassTable& t = ctx.table();
  auto candidates = minimal_covers(ctx, kappa);
  require(!candidates.empty(), "no orbit multiset covers the kernel vector");
  // least excess, then least total degree, then lexicographic
  auto key = [&](const GSetSpec& x) {
    MultiplicityVector v;
    for (auto& l : x.orbits) v = v + ctx.catalog().orbit_vector(l);
    int excess = total_mass(v) - total_mass(kappa);
    return std::tuple<int, long, std::vector<std::string>>(excess, total_degree(t, x), x.orbits);
  };
  GSetSpec best = candidates.front();
  for (auto& c : candidates)
    if (key(c) < key(best)) best = c;
  return best;
}

}  // namespace

std::vector<std::pair<GSetSpec, GSetSpec>> enumerate_minimal_presentations(
    TmackContext& ctx, const MultiplicityVector& beta0, const MultiplicityVector& beta1) {
  std::vector<std::pair<GSetSpec, GSetSpec>> out;
  for (auto& x0 : minimal_covers(ctx, beta0)) {
    MultiplicityVector a0 = multiplicity_vector(ctx.catalog(), x0);
    MultiplicityVector kappa = beta1 + a0.minus(beta0);
    if (kappa.is_zero()) {
      out.push_back({x0, GSetSpec{}});
      continue;
    }
    out.push_back({x0, canonical_minimal_x1(ctx, kappa)});
  }
  return out;
}

namespace {

// expansion machinery shared by realize / pinned-psi paths
struct DcExpansion {
  std::vector<HomBasisElem> basis;
  std::vector<std::vector<FinAbMap>> induced;  // per basis element, per subgroup
};

DcExpansion dc_expansion(TmackContext& ctx, const TMackModule& t1, const TMackModule& t0) {
  const ClassTable& t = ctx.table();
  DcExpansion e;
  const GLattice &l1 = *t1.datum->lattice, &l0 = *t0.datum->lattice;
  e.basis = hom_basis(l1, l0);
  for (auto& b : e.basis) {
    std::vector<FinAbMap> maps;
    for (int j = 0; j < t.num_subgroups(); ++j)
      maps.push_back(
          induced_on_tate(t1.datum->values[j], t0.datum->values[j], b.matrix, t, l1, l0));
    e.induced.push_back(std::move(maps));
  }
  return e;
}

// solve sum_b c_b * induced_b = target (componentwise, modulo the target
// orders); returns the coefficients reduced into [0, |G|)
std::optional<std::vector<long>> solve_dc_coefficients(TmackContext& ctx, const DcExpansion& e,
                                                       const std::vector<FinAbMap>& target) {
  const ClassTable& t = ctx.table();
  long n = t.group().order();
  std::vector<std::vector<Int>> rows;
  std::vector<Int> mods, rhs;
  for (int j = 0; j < t.num_subgroups(); ++j) {
    const FinAbMap& tj = target[j];
    for (int a = 0; a < tj.matrix().rows(); ++a)
      for (int b2 = 0; b2 < tj.matrix().cols(); ++b2) {
        std::vector<Int> row(e.basis.size());
        for (size_t b = 0; b < e.basis.size(); ++b) row[b] = e.induced[b][j].matrix().at(a, b2);
        rows.push_back(std::move(row));
        mods.push_back(tj.tgt().factors()[a]);
        rhs.push_back(tj.matrix().at(a, b2));
      }
  }
  IntMat big(int(rows.size()), int(e.basis.size()) + int(rows.size()));
  for (size_t r = 0; r < rows.size(); ++r) {
    for (size_t b = 0; b < e.basis.size(); ++b) big.at(int(r), int(b)) = rows[r][b];
    big.at(int(r), int(e.basis.size() + r)) = mods[r];
  }
  auto sol = solve_integer(big, rhs);
  if (!sol) return std::nullopt;
  std::vector<long> c(e.basis.size());
  for (size_t b = 0; b < e.basis.size(); ++b) {
    Int v = (*sol)[b];
    mpz_fdiv_r_ui(v.get_mpz_t(), v.get_mpz_t(), uint32_t(n));
    c[b] = v.get_si();
  }
  return c;
}

std::vector<PsiTerm> psi_terms_from(const ClassTable& t, const DcExpansion& e,
                                    const std::vector<long>& coeffs) {
  std::vector<PsiTerm> out;
  for (size_t b = 0; b < e.basis.size(); ++b) {
    if (!coeffs[b]) continue;
    PsiTerm term;
    term.coeff = coeffs[b];
    term.src_orbit = e.basis[b].src_orbit;
    term.tgt_orbit = e.basis[b].tgt_orbit;
    const DoubleCoset& dc = *e.basis[b].tag;
    term.k_sub = t.subgroup_index(dc.left);
    term.h_sub = t.subgroup_index(dc.right);
    term.rep = dc.rep;
    out.push_back(term);
  }
  return out;
}

IntMat psi_from_terms(const DcExpansion& e, const std::vector<long>& coeffs, int rows, int cols) {
  IntMat psi(rows, cols);
  for (size_t b = 0; b < e.basis.size(); ++b)
    if (coeffs[b]) psi = psi + e.basis[b].matrix.scaled(coeffs[b]);
  return psi;
}

void certify(TmackContext& ctx, PresentationSpec& spec, const TMackModule& t0,
             const TMackModule& t1, const TMackModule& n) {
  const ClassTable& t = ctx.table();
  const GLattice &l1 = *t1.datum->lattice, &l0 = *t0.datum->lattice;
  spec.cert.clear();
  for (int j = 0; j < t.num_subgroups(); ++j) {
    PresentationSpec::SubCert c;
    FinAbMap psij =
        induced_on_tate(t1.datum->values[j], t0.datum->values[j], spec.psi, t, l1, l0);
    const FinAbMap& epsj = spec.epsilon[j];
    c.surjective = epsj.is_surjective();
    c.composite_zero = epsj.compose(psij).is_zero();
    SubgroupEmbedding im = image(psij);
    SubgroupEmbedding ker = kernel(epsj);
    c.kernel_matches = im.sub.order() == ker.sub.order();
    spec.cert.push_back(c);
  }
  (void)n;
}

}  // namespace

PresentationSpec realize_presentation(TmackContext& ctx, std::shared_ptr<const GLattice> m,
                                      const GSetSpec& x0, const GSetSpec& x1) {
  const ClassTable& t = ctx.table();
  PresentationSpec spec;
  spec.x0 = x0;
  spec.x1 = x1;
  TMackModule n = ctx.h1(m);
  TMackModule t0 = ctx.hat0(x0);
  TMackModule t1 = ctx.hat0(x1);

  if (x0.orbits.empty()) {
    check(n.is_trivial(), ErrorKind::input, "empty X0 needs vanishing H^1");
    spec.psi = IntMat(0, 0);
    for (int j = 0; j < t.num_subgroups(); ++j) {
      spec.epsilon.push_back(FinAbMap::zero(FinAb::trivial(), n.values[j]));
      spec.cert.push_back({true, true, true});
    }
    return spec;
  }

  // surjection eps, deterministic first-found in the hom enumeration
  TMackHomSpace hs0 = tmack_hom_space(t0, n);
  auto eps = hs0.first([](const TMackHom& h) { return h.is_surjective(); });
  check(eps.has_value(), ErrorKind::input,
        "no surjection H^0(X0) -> H^1(M); the pair is not admissible");

  TMackSub ker = kernel_submodule(t0, *eps);
  TMackHomSpace hs1 = tmack_hom_space(t1, ker.module);
  auto theta = hs1.first([](const TMackHom& h) { return h.is_surjective(); });
  check(theta.has_value(), ErrorKind::input,
        "no surjection H^0(X1) onto the kernel; the pair is not admissible");

  // embed theta into T0 and express it through the double-coset basis
  std::vector<FinAbMap> theta_t0;
  for (int j = 0; j < t.num_subgroups(); ++j)
    theta_t0.push_back(ker.embed[j].compose(theta->comps[j]));
  DcExpansion e = dc_expansion(ctx, t1, t0);
  auto coeffs = solve_dc_coefficients(ctx, e, theta_t0);
  require(coeffs.has_value(), "module map must lift through the double-coset basis");
  spec.psi = psi_from_terms(e, *coeffs, t0.datum->lattice->rank(), t1.datum->lattice->rank());
  spec.psi_terms = psi_terms_from(t, e, *coeffs);
  for (int j = 0; j < t.num_subgroups(); ++j) spec.epsilon.push_back(eps->comps[j]);

  certify(ctx, spec, t0, t1, n);
  require(spec.certified(), "realized presentation failed its own certificate");
  spec.alpha0 = multiplicity_vector(ctx.catalog(), x0);
  spec.alpha1 = multiplicity_vector(ctx.catalog(), x1);
  spec.kernel_cover = ctx.cover_vector(ker.module);
  return spec;
}

PresentationSpec presentation_from_psi(TmackContext& ctx, std::shared_ptr<const GLattice> m,
                                       const GSetSpec& x0, const GSetSpec& x1,
                                       const IntMat& psi) {
  const ClassTable& t = ctx.table();
  PresentationSpec spec;
  spec.x0 = x0;
  spec.x1 = x1;
  spec.psi = psi;
  TMackModule n = ctx.h1(m);
  TMackModule t0 = ctx.hat0(x0);
  TMackModule t1 = ctx.hat0(x1);
  const GLattice &l1 = *t1.datum->lattice, &l0 = *t0.datum->lattice;
  check(psi.rows() == l0.rank() && psi.cols() == l1.rank(), ErrorKind::input,
        "psi has the wrong shape for the chosen orbits");
  check(is_equivariant(l1, l0, psi), ErrorKind::input, "psi is not a ZG-module map");

  // integral expansion in the double-coset basis (it is a Z-basis)
  DcExpansion e = dc_expansion(ctx, t1, t0);
  {
    const int n2 = l0.rank() * l1.rank();
    IntMat sys(n2, int(e.basis.size()));
    std::vector<Int> rhs(n2);
    for (size_t b = 0; b < e.basis.size(); ++b)
      for (int i = 0; i < l0.rank(); ++i)
        for (int j = 0; j < l1.rank(); ++j) sys.at(i * l1.rank() + j, int(b)) = e.basis[b].matrix.at(i, j);
    for (int i = 0; i < l0.rank(); ++i)
      for (int j = 0; j < l1.rank(); ++j) rhs[i * l1.rank() + j] = psi.at(i, j);
    auto c = solve_integer(sys, rhs);
    require(c.has_value(), "equivariant map must expand in the double-coset basis");
    std::vector<long> coeffs;
    for (auto& x : *c) coeffs.push_back(x.get_si());
    spec.psi_terms = psi_terms_from(t, e, coeffs);
  }

  // find an epsilon making the pinned psi exact at every subgroup
  std::vector<FinAbMap> psij;
  for (int j = 0; j < t.num_subgroups(); ++j)
    psij.push_back(induced_on_tate(t1.datum->values[j], t0.datum->values[j], psi, t, l1, l0));
  TMackHomSpace hs0 = tmack_hom_space(t0, n);
  auto eps = hs0.first([&](const TMackHom& h) {
    if (!h.is_surjective()) return false;
    for (int j = 0; j < t.num_subgroups(); ++j) {
      if (!h.comps[j].compose(psij[j]).is_zero()) return false;
      if (image(psij[j]).sub.order() != kernel(h.comps[j]).sub.order()) return false;
    }
    return true;
  });
  check(eps.has_value(), ErrorKind::input,
        "no surjection onto H^1 makes the pinned psi exact");
  for (int j = 0; j < t.num_subgroups(); ++j) spec.epsilon.push_back(eps->comps[j]);
  certify(ctx, spec, t0, t1, n);
  require(spec.certified(), "pinned presentation failed its certificate");
  spec.alpha0 = multiplicity_vector(ctx.catalog(), x0);
  spec.alpha1 = multiplicity_vector(ctx.catalog(), x1);
  TMackHom epsc = *eps;
  TMackSub ker = kernel_submodule(t0, epsc);
  spec.kernel_cover = ctx.cover_vector(ker.module);
  return spec;
}

ExactnessReport verify_exactness(TmackContext& ctx, std::shared_ptr<const GLattice> m,
                                 const PresentationSpec& spec) {
  ExactnessReport rep;
  const ClassTable& t = ctx.table();
  auto complain = [&](const std::string& s) { rep.failures.push_back(s); };

  if (spec.x0.orbits.empty()) {
    TMackModule n = ctx.h1(m);
    if (!n.is_trivial()) complain("empty presentation but H^1 does not vanish");
    return rep;
  }

  // fresh lattices and cohomology
  auto l0 = std::make_shared<GLattice>(perm_lattice(t, spec.x0));
  auto l1 = std::make_shared<GLattice>(perm_lattice(t, spec.x1));
  MackeyDatum d0 = mackey_datum(t, l0, 0, ctx.jobs);
  MackeyDatum d1 = mackey_datum(t, l1, 0, ctx.jobs);
  MackeyDatum dn = mackey_datum(t, m, 1, ctx.jobs);

  if (spec.psi.rows() != l0->rank() || spec.psi.cols() != l1->rank()) {
    complain("psi shape mismatch");
    return rep;
  }
  if (!is_equivariant(*l1, *l0, spec.psi)) complain("psi is not equivariant");
  if (int(spec.epsilon.size()) != t.num_subgroups()) {
    complain("epsilon component count mismatch");
    return rep;
  }

  for (int j = 0; j < t.num_subgroups(); ++j) {
    const std::string name = t.classes()[t.class_of(j)].label + "#" + std::to_string(j);
    const FinAbMap& epsj = spec.epsilon[j];
    if (!epsj.src().same_type(d0.values[j].group) || !epsj.tgt().same_type(dn.values[j].group)) {
      complain("epsilon has wrong type at " + name);
      continue;
    }
    FinAbMap psij = induced_on_tate(d1.values[j], d0.values[j], spec.psi, t, *l1, *l0);
    if (!epsj.is_surjective()) complain("epsilon not surjective at " + name);
    if (!epsj.compose(psij).is_zero()) complain("eps . psi* nonzero at " + name);
    if (image(psij).sub.order() != kernel(epsj).sub.order())
      complain("im psi* != ker eps at " + name);
  }

  // naturality of epsilon with respect to the structure maps
  for (int k = 0; k < t.num_subgroups(); ++k)
    for (int h : t.maximal_subgroups_of(k)) {
      if (!(spec.epsilon[h].compose(d0.res.at({k, h})) ==
            dn.res.at({k, h}).compose(spec.epsilon[k])))
        complain("epsilon not natural for res at pair (" + std::to_string(k) + "," +
                 std::to_string(h) + ")");
      if (!(spec.epsilon[k].compose(d0.cor.at({k, h})) ==
            dn.cor.at({k, h}).compose(spec.epsilon[h])))
        complain("epsilon not natural for cor at pair (" + std::to_string(k) + "," +
                 std::to_string(h) + ")");
    }
  return rep;
}

}  // namespace glat
