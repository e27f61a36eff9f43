#include "glat/tsmod.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace glat {

FpModule::FpModule(uint32_t p, int dim, std::vector<FpMat> gen_mats,
                   std::shared_ptr<const PermGroup> group)
    : p_(p), dim_(dim), gen_mats_(std::move(gen_mats)), group_(std::move(group)) {
  check(dim <= kMaxDim, ErrorKind::capacity,
        "module dimension exceeds bound " + std::to_string(kMaxDim));
  for (auto& m : gen_mats_) {
    require(m.p() == p && m.rows() == dim && m.cols() == dim, "generator matrix shape mismatch");
    // group actions must be invertible; bare algebra generator lists
    // (projections, bundled restrictions) need not be
    require(!group_ || fp_inverse(m).has_value(), "generator action must be invertible mod p");
  }
  if (group_) {
    require(int(gen_mats_.size()) == group_->num_generators(), "generator count mismatch");
    const int n = group_->order();
    elem_mats_.assign(n, FpMat());
    for (int e = 0; e < n; ++e) {
      FpMat m = FpMat::identity(p_, dim_);
      for (int k : group_->word_for(e)) m = m * gen_mats_[k];
      elem_mats_[e] = std::move(m);
    }
    for (int k = 0; k < group_->num_generators(); ++k) {
      int s = group_->generator_index(k);
      for (int e = 0; e < n; ++e)
        require(elem_mats_[group_->mul(s, e)] == gen_mats_[k] * elem_mats_[e],
                "generator matrices break the group relations mod p");
    }
  }
}

const FpMat& FpModule::elem(int e) const {
  require(group_ != nullptr, "element action needs a group-backed module");
  return elem_mats_[e];
}

FpModule FpModule::restricted(const FpMat& basis) const {
  require(basis.rows() == dim_, "restriction basis shape mismatch");
  // solve basis * X = gen * basis for each generator
  std::vector<FpMat> gens;
  for (const auto& gm : gen_mats_) {
    FpMat rhs = gm * basis;
    FpMat x(p_, basis.cols(), basis.cols());
    for (int j = 0; j < basis.cols(); ++j) {
      std::vector<uint32_t> col(rhs.rows());
      for (int i = 0; i < rhs.rows(); ++i) col[i] = rhs.at(i, j);
      auto sol = fp_solve(basis, col);
      require(sol.has_value(), "subspace is not invariant");
      for (int i = 0; i < basis.cols(); ++i) x.at(i, j) = (*sol)[i];
    }
    gens.push_back(std::move(x));
  }
  return FpModule(p_, basis.cols(), std::move(gens), group_);
}

FpModule FpModule::quotient(const FpMat& sub_rows) const {
  FpQuotient q = fp_quotient(p_, dim_, sub_rows);
  std::vector<FpMat> gens;
  for (const auto& gm : gen_mats_) gens.push_back(q.induced(gm));
  return FpModule(p_, int(q.coord_cols.size()), std::move(gens), group_);
}

std::vector<uint32_t> FpModule::fingerprint() const {
  std::vector<uint32_t> fp;
  fp.push_back(uint32_t(dim_));
  for (const auto& m : gen_mats_) {
    auto c = charpoly(m);
    fp.insert(fp.end(), c.begin(), c.end());
  }
  return fp;
}

FpModule fp_module_from_lattice(const GLattice& l, uint32_t p) {
  std::vector<FpMat> gens;
  const PermGroup& g = l.group();
  for (int k = 0; k < g.num_generators(); ++k) {
    const IntMat& a = l.gen_action().at(g.generator_name(k));
    FpMat m(p, l.rank(), l.rank());
    for (int i = 0; i < l.rank(); ++i)
      for (int j = 0; j < l.rank(); ++j) {
        Int v = a.at(i, j);
        mpz_fdiv_r_ui(v.get_mpz_t(), v.get_mpz_t(), p);
        m.at(i, j) = uint32_t(v.get_ui());
      }
    gens.push_back(std::move(m));
  }
  return FpModule(p, l.rank(), std::move(gens), l.group_ptr());
}

FpModule fp_perm_module(const ClassTable& t, const Subgroup& h, uint32_t p) {
  GSetSpec spec{{t.classes()[t.class_of(t.subgroup_index(h))].label}};
  return fp_module_from_lattice(perm_lattice(t, spec), p);
}

FpModule fp_regular_module(std::shared_ptr<const PermGroup> w, uint32_t p) {
  const int n = w->order();
  check(n <= FpModule::kMaxDim, ErrorKind::capacity, "regular module too large");
  std::vector<FpMat> gens;
  for (int k = 0; k < w->num_generators(); ++k) {
    int s = w->generator_index(k);
    FpMat m(p, n, n);
    for (int e = 0; e < n; ++e) m.at(w->mul(s, e), e) = 1;
    gens.push_back(std::move(m));
  }
  return FpModule(p, n, std::move(gens), w);
}

std::vector<FpMat> fp_hom_space(const FpModule& u, const FpModule& v) {
  require(u.p() == v.p(), "hom space needs equal characteristic");
  require(u.gens().size() == v.gens().size(), "hom space needs aligned generators");
  const uint32_t p = u.p();
  const int du = u.dim(), dv = v.dim();
  // unknowns: entries of F (dv x du), column-major
  FpMat constraints(p, 0, du * dv);
  bool first = true;
  for (size_t k = 0; k < u.gens().size(); ++k) {
    const FpMat &mu = u.gens()[k], &mv = v.gens()[k];
    FpMat block(p, du * dv, du * dv);
    for (int j = 0; j < du; ++j)
      for (int i = 0; i < dv; ++i) {
        int row = j * dv + i;
        for (int a = 0; a < dv; ++a)
          block.at(row, j * dv + a) = (block.at(row, j * dv + a) + mv.at(i, a)) % p;
        for (int b = 0; b < du; ++b)
          block.at(row, b * dv + i) = (block.at(row, b * dv + i) + p - mu.at(b, j)) % p;
      }
    constraints = first ? block : FpMat::vstack(constraints, block);
    first = false;
  }
  FpMat ns = fp_nullspace(constraints);
  std::vector<FpMat> out;
  for (int t2 = 0; t2 < ns.cols(); ++t2) {
    FpMat f(p, dv, du);
    for (int j = 0; j < du; ++j)
      for (int i = 0; i < dv; ++i) f.at(i, j) = ns.at(j * dv + i, t2);
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<FpMat> fp_end_algebra(const FpModule& u) { return fp_hom_space(u, u); }

namespace {

constexpr long kEnumBudget = 1 << 20;

// enumerate all F_p-combinations of the given matrices (excluding zero)
template <typename Fn>
bool enumerate_combinations(uint32_t p, const std::vector<FpMat>& basis, Fn&& fn) {
  if (basis.empty()) return true;
  long total = 1;
  for (size_t i = 0; i < basis.size(); ++i) {
    total *= p;
    check(total <= kEnumBudget, ErrorKind::capacity, "combination space too large to exhaust");
  }
  std::vector<uint32_t> c(basis.size(), 0);
  for (long it = 1; it < total; ++it) {
    int i = int(c.size()) - 1;
    while (true) {
      if (++c[i] < p) break;
      c[i--] = 0;
    }
    FpMat m(p, basis[0].rows(), basis[0].cols());
    for (size_t k = 0; k < basis.size(); ++k)
      if (c[k]) m = m + basis[k].scaled(c[k]);
    if (!fn(m)) return false;
  }
  return true;
}

std::optional<FpMat> find_invertible_hom(const FpModule& u, const FpModule& v) {
  if (u.dim() != v.dim()) return std::nullopt;
  if (u.dim() == 0) return FpMat(u.p(), 0, 0);
  auto homs = fp_hom_space(u, v);
  if (homs.empty()) return std::nullopt;
  for (const auto& h : homs)
    if (fp_inverse(h)) return h;
  SplitMix64 rng(0x715bb0caULL);
  for (int trial = 0; trial < 64; ++trial) {
    FpMat m(u.p(), v.dim(), u.dim());
    for (const auto& h : homs) m = m + h.scaled(uint32_t(rng.below(u.p())));
    if (fp_inverse(m)) return m;
  }
  // exhaustive fallback for small hom spaces
  long total = 1;
  for (size_t i = 0; i < homs.size(); ++i) {
    total *= u.p();
    if (total > kEnumBudget) return std::nullopt;  // random phase is decisive in practice
  }
  std::optional<FpMat> found;
  enumerate_combinations(u.p(), homs, [&](const FpMat& m) {
    if (fp_inverse(m)) {
      found = m;
      return false;
    }
    return true;
  });
  return found;
}

FpMat column_space_basis(const FpMat& m) {
  // basis (as columns) of the column space via rref of the transpose
  FpMat rb = row_basis(m.transpose());
  return rb.transpose();
}

}  // namespace

bool fp_isomorphic(const FpModule& u, const FpModule& v) {
  if (u.dim() != v.dim() || u.p() != v.p()) return false;
  if (u.fingerprint() != v.fingerprint()) return false;  // necessary condition
  return find_invertible_hom(u, v).has_value();
}

namespace {

// Fitting decomposition along f: U = ker f^dim + im f^dim; both invariant.
bool fitting_split(const FpModule& u, const FpMat& f, FpModule& part1, FpModule& part2) {
  FpMat fn = f.pow(uint64_t(std::max(1, u.dim())));
  FpMat ker = fp_nullspace(fn);
  if (ker.cols() == 0 || ker.cols() == u.dim()) return false;
  FpMat img = column_space_basis(fn);
  require(ker.cols() + img.cols() == u.dim(), "Fitting ranks must be complementary");
  part1 = u.restricted(ker);
  part2 = u.restricted(img);
  return true;
}

void split_rec(const FpModule& u, std::vector<FpModule>& out) {
  if (u.dim() == 0) return;
  auto endo = fp_end_algebra(u);
  if (endo.size() == 1) {
    out.push_back(u);  // End = F_p . id is local
    return;
  }
  FpModule a, b;
  // deterministic candidates: basis elements, pairwise sums, then the
  // seeded pseudorandom phase
  for (const auto& f : endo)
    if (fitting_split(u, f, a, b)) {
      split_rec(a, out);
      split_rec(b, out);
      return;
    }
  for (size_t i = 0; i < endo.size(); ++i)
    for (size_t j = i + 1; j < endo.size(); ++j)
      if (fitting_split(u, endo[i] + endo[j], a, b)) {
        split_rec(a, out);
        split_rec(b, out);
        return;
      }
  SplitMix64 rng(0x5eedc0deULL);
  for (int trial = 0; trial < 40 + 10 * u.dim(); ++trial) {
    FpMat m(u.p(), u.dim(), u.dim());
    for (const auto& f : endo) m = m + f.scaled(uint32_t(rng.below(u.p())));
    if (fitting_split(u, m, a, b)) {
      split_rec(a, out);
      split_rec(b, out);
      return;
    }
  }
  // certify locality by exhausting the endomorphism algebra: every element
  // must be invertible or nilpotent (otherwise its Fitting pair splits)
  bool local = true;
  FpModule pa, pb;
  bool done = false;
  enumerate_combinations(u.p(), endo, [&](const FpMat& m) {
    if (fp_inverse(m) || is_nilpotent(m)) return true;
    local = false;
    require(fitting_split(u, m, pa, pb), "non-unit non-nilpotent element must split");
    done = true;
    return false;
  });
  if (!local && done) {
    split_rec(pa, out);
    split_rec(pb, out);
    return;
  }
  out.push_back(u);
}

}  // namespace

std::vector<std::pair<FpModule, int>> split_indecomposables(const FpModule& u) {
  std::vector<FpModule> parts;
  split_rec(u, parts);
  std::sort(parts.begin(), parts.end(), [](const FpModule& a, const FpModule& b) {
    return a.fingerprint() < b.fingerprint();
  });
  std::vector<std::pair<FpModule, int>> out;
  for (auto& part : parts) {
    bool merged = false;
    for (auto& [rep, mult] : out)
      if (fp_isomorphic(rep, part)) {
        ++mult;
        merged = true;
        break;
      }
    if (!merged) out.push_back({std::move(part), 1});
  }
  int total = 0;
  for (auto& [rep, mult] : out) total += rep.dim() * mult;
  require(total == u.dim(), "summand dimensions must add up");
  return out;
}

namespace {

// spin: smallest invariant subspace containing v, as a column basis
FpMat spin(const FpModule& u, const std::vector<uint32_t>& v) {
  FpMat rows(u.p(), 1, u.dim());
  for (int j = 0; j < u.dim(); ++j) rows.at(0, j) = v[j];
  rows = row_basis(rows);
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& gm : u.gens()) {
      for (int i = 0; i < rows.rows(); ++i) {
        std::vector<uint32_t> w(u.dim());
        for (int j2 = 0; j2 < u.dim(); ++j2) w[j2] = rows.at(i, j2);
        auto img = gm.apply(w);
        if (!in_row_space(rows, img)) {
          FpMat add(u.p(), 1, u.dim());
          for (int j2 = 0; j2 < u.dim(); ++j2) add.at(0, j2) = img[j2];
          rows = row_basis(FpMat::vstack(rows, add));
          grew = true;
        }
      }
    }
  }
  return rows.transpose();
}

// module over the transposed generator matrices (the opposite-algebra
// action); a subspace here has a module annihilator back in u
FpModule transpose_module(const FpModule& u) {
  std::vector<FpMat> gens;
  for (const auto& gm : u.gens()) gens.push_back(gm.transpose());
  return FpModule(u.p(), u.dim(), std::move(gens));
}

// envelope element: deterministic pseudorandom combination of generator words
FpMat envelope_element(const FpModule& u, SplitMix64& rng) {
  FpMat m(u.p(), u.dim(), u.dim());
  int terms = 2 + int(rng.below(3));
  for (int t2 = 0; t2 < terms; ++t2) {
    FpMat w = FpMat::identity(u.p(), u.dim());
    int len = 1 + int(rng.below(3));
    for (int s = 0; s < len; ++s) w = w * u.gens()[rng.below(u.gens().size())];
    m = m + w.scaled(1 + uint32_t(rng.below(u.p() - 1 ? u.p() - 1 : 1)));
  }
  return m;
}

// one chop step: find a proper nonzero submodule, or certify irreducibility
std::optional<FpMat> find_proper_submodule(const FpModule& u) {
  if (u.dim() <= 1) return std::nullopt;
  if (u.gens().empty()) {
    // every subspace is a submodule
    FpMat b(u.p(), u.dim(), 1);
    b.at(0, 0) = 1;
    return b;
  }
  SplitMix64 rng(0xc40bb1edULL);
  for (int attempt = 0; attempt < 60; ++attempt) {
    FpMat theta = envelope_element(u, rng);
    auto fac = poly_factor(u.p(), charpoly(theta));
    for (auto& [q, mult] : fac) {
      FpMat qt = poly_eval_mat(q, theta);
      FpMat ker = fp_nullspace(qt);
      if (ker.cols() == 0) continue;
      long count = 1;
      bool small = true;
      for (int i = 0; i < ker.cols(); ++i) {
        count *= u.p();
        if (count > (1 << 13)) {
          small = false;
          break;
        }
      }
      if (!small) continue;
      // scan every nonzero kernel vector
      bool all_full = true;
      std::optional<FpMat> proper;
      std::vector<uint32_t> coef(ker.cols(), 0);
      for (long it = 1; it < count; ++it) {
        int i = int(coef.size()) - 1;
        while (true) {
          if (++coef[i] < u.p()) break;
          coef[i--] = 0;
        }
        std::vector<uint32_t> v(u.dim(), 0);
        for (int kcol = 0; kcol < ker.cols(); ++kcol)
          if (coef[kcol])
            for (int r = 0; r < u.dim(); ++r)
              v[r] = (v[r] + uint64_t(coef[kcol]) * ker.at(r, kcol)) % u.p();
        FpMat s = spin(u, v);
        if (s.cols() < u.dim()) {
          proper = s;
          all_full = false;
          break;
        }
      }
      if (proper) return proper;
      if (!all_full) continue;
      // dual side: scan ker q(theta^T) in the transpose module
      FpModule ut = transpose_module(u);
      // theta is generally not expressible through ut's generators, so use
      // theta^T directly (its kernel is still what the criterion needs)
      FpMat kert = fp_nullspace(qt.transpose());
      if (kert.cols() == 0) continue;
      long count2 = 1;
      bool small2 = true;
      for (int i = 0; i < kert.cols(); ++i) {
        count2 *= u.p();
        if (count2 > (1 << 13)) {
          small2 = false;
          break;
        }
      }
      if (!small2) continue;
      bool dual_all_full = true;
      std::optional<FpMat> dual_proper;
      std::vector<uint32_t> coef2(kert.cols(), 0);
      for (long it = 1; it < count2; ++it) {
        int i = int(coef2.size()) - 1;
        while (true) {
          if (++coef2[i] < u.p()) break;
          coef2[i--] = 0;
        }
        std::vector<uint32_t> w(u.dim(), 0);
        for (int kcol = 0; kcol < kert.cols(); ++kcol)
          if (coef2[kcol])
            for (int r = 0; r < u.dim(); ++r)
              w[r] = (w[r] + uint64_t(coef2[kcol]) * kert.at(r, kcol)) % u.p();
        FpMat s = spin(ut, w);
        if (s.cols() < u.dim()) {
          dual_proper = s;
          dual_all_full = false;
          break;
        }
      }
      if (dual_proper) {
        // a submodule W of the transpose gives the invariant annihilator
        // W-perp = nullspace of W^T in the original module
        FpMat sub = fp_nullspace(dual_proper->transpose());
        require(sub.cols() > 0 && sub.cols() < u.dim(), "annihilator must be proper");
        return sub;
      }
      if (all_full && dual_all_full) return std::nullopt;  // certified irreducible
    }
  }
  fail(ErrorKind::capacity, "irreducibility test exhausted its attempts");
}

void chop_rec(const FpModule& u, std::vector<FpModule>& out) {
  if (u.dim() == 0) return;
  auto sub = find_proper_submodule(u);
  if (!sub) {
    out.push_back(u);
    return;
  }
  chop_rec(u.restricted(*sub), out);
  chop_rec(u.quotient(sub->transpose()), out);
}

}  // namespace

std::vector<std::pair<FpModule, int>> composition_factors(const FpModule& u) {
  std::vector<FpModule> parts;
  chop_rec(u, parts);
  std::sort(parts.begin(), parts.end(), [](const FpModule& a, const FpModule& b) {
    return a.fingerprint() < b.fingerprint();
  });
  std::vector<std::pair<FpModule, int>> out;
  for (auto& part : parts) {
    bool merged = false;
    for (auto& [rep, mult] : out)
      if (fp_isomorphic(rep, part)) {
        ++mult;
        merged = true;
        break;
      }
    if (!merged) out.push_back({std::move(part), 1});
  }
  return out;
}

VertexResult vertex(const ClassTable& t, const FpModule& u) {
  require(u.group() != nullptr, "vertex needs a group-backed module");
  const PermGroup& g = *u.group();
  const uint32_t p = u.p();
  std::vector<SubgroupClass> pcls = p_subgroup_classes(g, int(p));
  // ascending subgroup order; the trivial class comes first
  for (const auto& cl : pcls) {
    const Subgroup& h = cl.representative;
    // End over F_p H: commute only with the subgroup action
    std::vector<FpMat> hgens;
    for (auto s : h.gens) hgens.push_back(u.elem(s));
    FpModule uh(p, u.dim(), hgens);  // no group: bare generator list
    auto endo_h = fp_end_algebra(uh);
    // relative trace over a left transversal of H in G
    auto transversal = left_transversal(whole_group(g), h);
    std::vector<FpMat> traced;
    for (const auto& f : endo_h) {
      FpMat s(p, u.dim(), u.dim());
      for (auto x : transversal) {
        FpMat gx = u.elem(x);
        FpMat gxi = u.elem(g.inv(x));
        s = s + gx * f * gxi;
      }
      traced.push_back(std::move(s));
    }
    // solve: identity in the span of the traced endomorphisms
    if (!traced.empty()) {
      const int d2 = u.dim() * u.dim();
      FpMat sys(p, d2, int(traced.size()));
      for (size_t b = 0; b < traced.size(); ++b)
        for (int i = 0; i < u.dim(); ++i)
          for (int j = 0; j < u.dim(); ++j) sys.at(i * u.dim() + j, int(b)) = traced[b].at(i, j);
      std::vector<uint32_t> rhs(d2, 0);
      for (int i = 0; i < u.dim(); ++i) rhs[i * u.dim() + i] = 1;
      auto sol = fp_solve(sys, rhs);
      if (sol) {
        VertexResult r;
        r.class_idx = -1;
        for (size_t ci = 0; ci < t.classes().size(); ++ci)
          if (t.classes()[ci].label == cl.label) r.class_idx = int(ci);
        require(r.class_idx >= 0, "vertex class missing from the class table");
        r.projective = cl.is_trivial();
        FpMat wit(p, u.dim(), u.dim());
        for (size_t b = 0; b < traced.size(); ++b)
          if ((*sol)[b]) wit = wit + endo_h[b].scaled((*sol)[b]);
        r.witness = wit;
        return r;
      }
    }
  }
  fail(ErrorKind::internal, "module is not relatively projective for any p-subgroup");
}

FpModule brauer_quotient(const ClassTable& t, const FpModule& u, const Subgroup& h,
                         const QuotientGroup& w) {
  require(u.group() != nullptr, "Brauer quotient needs a group-backed module");
  const PermGroup& g = *u.group();
  const uint32_t p = u.p();
  // fixed subspace U^H
  FpMat stacked(p, 0, u.dim());
  bool first = true;
  for (auto s : h.gens) {
    FpMat d = u.elem(s) - FpMat::identity(p, u.dim());
    stacked = first ? d : FpMat::vstack(stacked, d);
    first = false;
  }
  FpMat fixed = first ? FpMat::identity(p, u.dim()) : fp_nullspace(stacked);
  const int k = fixed.cols();

  // relative traces from maximal proper subgroups, in fixed coordinates
  std::vector<std::vector<uint32_t>> trace_rows;
  int h_idx = t.subgroup_index(h);
  for (int q_idx : t.maximal_subgroups_of(h_idx)) {
    const Subgroup& q = t.subgroup(q_idx);
    // fixed space of q
    FpMat stq(p, 0, u.dim());
    bool fq = true;
    for (auto s : q.gens) {
      FpMat d = u.elem(s) - FpMat::identity(p, u.dim());
      stq = fq ? d : FpMat::vstack(stq, d);
      fq = false;
    }
    FpMat fixq = fq ? FpMat::identity(p, u.dim()) : fp_nullspace(stq);
    auto transversal = left_transversal(h, q);
    for (int j = 0; j < fixq.cols(); ++j) {
      std::vector<uint32_t> v(u.dim());
      for (int i = 0; i < u.dim(); ++i) v[i] = fixq.at(i, j);
      std::vector<uint32_t> acc(u.dim(), 0);
      for (auto x : transversal) {
        auto img = u.elem(x).apply(v);
        for (int i = 0; i < u.dim(); ++i) acc[i] = (acc[i] + img[i]) % p;
      }
      auto coords = fp_solve(fixed, acc);
      require(coords.has_value(), "relative trace must land in the fixed space");
      trace_rows.push_back(*coords);
    }
  }
  FpMat traces = FpMat::from_rows(p, trace_rows.empty()
                                         ? std::vector<std::vector<uint32_t>>{}
                                         : trace_rows);
  if (trace_rows.empty()) traces = FpMat(p, 0, k);
  FpQuotient q = fp_quotient(p, k, traces);

  // action of the quotient group's generators through the stored section
  std::vector<FpMat> wgens;
  for (int kg = 0; kg < w.group->num_generators(); ++kg) {
    int lift = w.section[w.group->generator_index(kg)];
    FpMat act_fixed(p, k, k);
    FpMat rhs = u.elem(lift) * fixed;
    for (int j = 0; j < k; ++j) {
      std::vector<uint32_t> col(u.dim());
      for (int i = 0; i < u.dim(); ++i) col[i] = rhs.at(i, j);
      auto sol = fp_solve(fixed, col);
      require(sol.has_value(), "normalizer action must preserve the fixed space");
      for (int i = 0; i < k; ++i) act_fixed.at(i, j) = (*sol)[i];
    }
    wgens.push_back(q.induced(act_fixed));
  }
  return FpModule(p, int(q.coord_cols.size()), std::move(wgens), w.group);
}

std::vector<FpModule> simple_fp_modules(std::shared_ptr<const PermGroup> w, uint32_t p) {
  check(w->order() <= 24, ErrorKind::capacity, "simple-module enumeration needs |W| <= 24");
  FpModule reg = fp_regular_module(w, p);
  auto factors = composition_factors(reg);
  std::vector<FpModule> out;
  for (auto& [m, mult] : factors) out.push_back(m);
  std::sort(out.begin(), out.end(), [](const FpModule& a, const FpModule& b) {
    return a.fingerprint() < b.fingerprint();
  });
  // duplicates already collapsed by composition_factors; assert the order
  // key separates the classes
  for (size_t i = 0; i + 1 < out.size(); ++i)
    require(out[i].fingerprint() != out[i + 1].fingerprint(),
            "simple-module fingerprint collision; refine the ordering key");
  return out;
}

FpMat radical_subspace(const FpModule& m) {
  require(m.group() != nullptr, "radical needs a group-backed module");
  const uint32_t p = m.p();
  auto w = m.group();
  auto simples = simple_fp_modules(w, p);
  // J(F_p W) = kernel of the map to the product of simple actions
  int cols = 0;
  for (auto& s : simples) cols += s.dim() * s.dim();
  FpMat mu(p, w->order(), cols);
  for (int e = 0; e < w->order(); ++e) {
    int off = 0;
    for (auto& s : simples) {
      const FpMat& rho = s.elem(e);
      for (int i = 0; i < s.dim(); ++i)
        for (int j = 0; j < s.dim(); ++j) mu.at(e, off + i * s.dim() + j) = rho.at(i, j);
      off += s.dim() * s.dim();
    }
  }
  // kernel of mu^T x = 0 over group-algebra coefficient vectors
  FpMat jbasis = fp_nullspace(mu.transpose());
  // radical subspace: sum over J-basis of (sum_e c_e rho_M(e)) M
  std::vector<std::vector<uint32_t>> rows;
  for (int t2 = 0; t2 < jbasis.cols(); ++t2) {
    FpMat op(p, m.dim(), m.dim());
    for (int e = 0; e < w->order(); ++e)
      if (jbasis.at(e, t2)) op = op + m.elem(e).scaled(jbasis.at(e, t2));
    for (int j = 0; j < m.dim(); ++j) {
      std::vector<uint32_t> col(m.dim());
      for (int i = 0; i < m.dim(); ++i) col[i] = op.at(i, j);
      rows.push_back(col);
    }
  }
  if (rows.empty()) return FpMat(p, 0, m.dim());
  return row_basis(FpMat::from_rows(p, rows));
}

std::string TSLabel::str() const {
  return "(" + vertex_class + "," + std::to_string(simple_index) + ")@p" + std::to_string(p);
}

int MultiplicityVector::at(const TSLabel& l) const {
  auto it = entries.find(l);
  return it == entries.end() ? 0 : it->second;
}

MultiplicityVector MultiplicityVector::operator+(const MultiplicityVector& o) const {
  MultiplicityVector r = *this;
  for (auto& [k, v] : o.entries) r.entries[k] += v;
  return r;
}

MultiplicityVector MultiplicityVector::minus(const MultiplicityVector& o) const {
  MultiplicityVector r = *this;
  for (auto& [k, v] : o.entries) {
    r.entries[k] -= v;
    require(r.entries[k] >= 0, "multiplicity difference went negative");
    if (r.entries[k] == 0) r.entries.erase(k);
  }
  return r;
}

bool MultiplicityVector::geq(const MultiplicityVector& o) const {
  for (auto& [k, v] : o.entries)
    if (at(k) < v) return false;
  return true;
}

bool MultiplicityVector::operator==(const MultiplicityVector& o) const {
  MultiplicityVector a = *this, b = o;
  for (auto it = a.entries.begin(); it != a.entries.end();)
    it = it->second == 0 ? a.entries.erase(it) : std::next(it);
  for (auto it = b.entries.begin(); it != b.entries.end();)
    it = it->second == 0 ? b.entries.erase(it) : std::next(it);
  return a.entries == b.entries;
}

bool MultiplicityVector::is_zero() const {
  for (auto& [k, v] : entries)
    if (v != 0) return false;
  return true;
}

std::string MultiplicityVector::str() const {
  if (is_zero()) return "0";
  std::vector<std::string> parts;
  for (auto& [k, v] : entries)
    if (v != 0) parts.push_back(k.str() + ":" + std::to_string(v));
  return join(parts, " + ");
}

TrivialSourceCatalog TrivialSourceCatalog::build(const ClassTable& t) {
  TrivialSourceCatalog cat;
  cat.table_ = &t;
  int n = t.group().order();
  for (int p = 2; p <= n; ++p) {
    bool prime = true;
    for (int d = 2; d * d <= p; ++d)
      if (p % d == 0) prime = false;
    if (prime && n % p == 0) cat.primes_.push_back(p);
  }

  for (int p : cat.primes_) {
    for (const auto& cl : p_subgroup_classes(t.group(), p)) {
      if (cl.is_trivial()) continue;
      const Subgroup& h = cl.representative;
      if (!cat.quotients_.count(cl.label)) {
        Subgroup nh = normalizer(t.group(), h);
        cat.quotients_[cl.label] = quotient_as_perm_group(t.group(), nh, h);
      }
      const QuotientGroup& w = cat.quotients_.at(cl.label);
      auto simples = simple_fp_modules(w.group, uint32_t(p));
      cat.simples_[{cl.label, p}] = simples;

      // locate each T_{H,V} inside F_p[G/H]
      FpModule perm = fp_perm_module(t, h, uint32_t(p));
      auto summands = split_indecomposables(perm);
      std::vector<int> found(simples.size(), 0);
      for (auto& [summand, mult] : summands) {
        VertexResult vx = vertex(t, summand);
        if (t.classes()[vx.class_idx].label != cl.label) continue;
        FpModule bq = brauer_quotient(t, summand, h, w);
        FpMat rad = radical_subspace(bq);
        FpModule head = bq.quotient(rad);
        int match = -1;
        for (size_t j = 0; j < simples.size(); ++j)
          if (fp_isomorphic(head, simples[j])) match = int(j);
        check(match >= 0, ErrorKind::internal,
              "Brauer-quotient head of a vertex-" + cl.label + " summand matches no simple");
        CatalogEntry e;
        e.label = TSLabel{p, cl.label, h.order(), match};
        e.realization = summand;
        e.vertex_info = vx;
        e.head_structure = "simple #" + std::to_string(match) + " of the vertex quotient";
        check(found[match] == 0, ErrorKind::internal,
              "duplicate trivial source module for label " + e.label.str());
        found[match] = 1;
        cat.entries_.push_back(std::move(e));
      }
      for (size_t j = 0; j < simples.size(); ++j)
        check(found[j] == 1, ErrorKind::internal,
              "missing trivial source module for vertex " + cl.label + ", simple " +
                  std::to_string(j));
    }
  }
  std::sort(cat.entries_.begin(), cat.entries_.end(),
            [](const CatalogEntry& a, const CatalogEntry& b) { return a.label < b.label; });
  // realizations must be pairwise non-isomorphic
  for (size_t i = 0; i < cat.entries_.size(); ++i)
    for (size_t j = i + 1; j < cat.entries_.size(); ++j)
      if (cat.entries_[i].label.p == cat.entries_[j].label.p)
        require(!fp_isomorphic(cat.entries_[i].realization, cat.entries_[j].realization),
                "catalog realizations must be pairwise non-isomorphic");
  return cat;
}

const CatalogEntry& TrivialSourceCatalog::entry(const TSLabel& l) const {
  for (auto& e : entries_)
    if (e.label == l) return e;
  fail(ErrorKind::input, "no catalog entry " + l.str());
}

const std::vector<FpModule>& TrivialSourceCatalog::simples_of_quotient(const std::string& cls,
                                                                       int p) const {
  auto it = simples_.find({cls, p});
  require(it != simples_.end(), "no simple-module list for class " + cls);
  return it->second;
}

const QuotientGroup& TrivialSourceCatalog::quotient_of_class(const std::string& cls) const {
  auto it = quotients_.find(cls);
  require(it != quotients_.end(), "no quotient group for class " + cls);
  return it->second;
}

MultiplicityVector TrivialSourceCatalog::orbit_vector(const std::string& cls) {
  auto hit = orbit_cache_.find(cls);
  if (hit != orbit_cache_.end()) return hit->second;
  const ClassTable& t = *table_;
  const Subgroup& h = t.classes()[t.class_by_label(cls)].representative;
  MultiplicityVector out;
  for (int p : primes_) {
    FpModule perm = fp_perm_module(t, h, uint32_t(p));
    auto summands = split_indecomposables(perm);
    int dim_seen = 0;
    for (auto& [summand, mult] : summands) {
      dim_seen += summand.dim() * mult;
      VertexResult vx = vertex(t, summand);
      if (vx.projective) continue;  // trivial vertex summands are dropped
      const std::string& vcls = t.classes()[vx.class_idx].label;
      int match = -1;
      for (auto& e : entries_) {
        if (e.label.p != p || e.label.vertex_class != vcls) continue;
        if (e.realization.dim() == summand.dim() && fp_isomorphic(e.realization, summand))
          match = 1;
        if (match == 1) {
          out.entries[e.label] += mult;
          break;
        }
      }
      check(match == 1, ErrorKind::internal,
            "summand of F_" + std::to_string(p) + "[G/" + cls + "] matches no catalog entry");
    }
    require(dim_seen == perm.dim(), "dimension bookkeeping failed");
  }
  orbit_cache_[cls] = out;
  return out;
}

MultiplicityVector multiplicity_vector(TrivialSourceCatalog& catalog, const GSetSpec& x) {
  MultiplicityVector out;
  for (const auto& label : x.orbits) out = out + catalog.orbit_vector(label);
  return out;
}

MultTable multiplicity_table(TrivialSourceCatalog& catalog) {
  MultTable table;
  for (auto& e : catalog.entries()) table.columns.push_back(e.label);
  for (const auto& cl : catalog.table().classes()) {
    table.row_labels.push_back(cl.label);
    MultiplicityVector v = catalog.orbit_vector(cl.label);
    std::vector<int> row;
    for (auto& c : table.columns) row.push_back(v.at(c));
    table.cells.push_back(std::move(row));
  }
  return table;
}

}  // namespace glat
