#include "glat/glattice.hpp"
#include "glat/tate.hpp"

#include <algorithm>

namespace glat {

namespace {

// Sublattice spanned by the columns of the given matrices (saturation NOT
// taken; this is the honest ZG-span as a lattice).
IntMat column_span_basis(const IntMat& cols) {
  if (cols.cols() == 0) return IntMat(cols.rows(), 0);
  // image basis from the Smith decomposition: first r columns of U^{-1} D
  Snf f = smith(cols);
  IntMat uinv = inverse_unimodular(f.u);
  IntMat img(cols.rows(), f.rank);
  for (int j = 0; j < f.rank; ++j) {
    std::vector<Int> v = uinv.col_vec(j);
    for (auto& x : v) x *= f.d.at(j, j);
    img.set_col(j, v);
  }
  return img;
}

bool lattice_contains(const IntMat& basis, const std::vector<Int>& v) {
  if (basis.cols() == 0) {
    for (const Int& x : v)
      if (x != 0) return false;
    return true;
  }
  return IntSolver(basis).solve(v).has_value();
}

bool lattices_equal_full(const IntMat& basis, int rank) {
  if (basis.cols() < rank) return false;
  Snf f = smith(basis);
  if (f.rank < rank) return false;
  for (int i = 0; i < f.rank; ++i)
    if (f.d.at(i, i) != 1) return false;
  return true;
}

}  // namespace

ExactnessCert certify_short_exact(const IntMat& left_map, const IntMat& right_map) {
  ExactnessCert c;
  c.left_injective = rank(left_map) == left_map.cols();
  {
    Snf f = smith(right_map);
    c.right_surjective = f.rank == right_map.rows();
    for (int i = 0; i < f.rank && c.right_surjective; ++i)
      if (f.d.at(i, i) != 1) c.right_surjective = false;
  }
  c.composite_zero = (right_map * left_map).is_zero();
  c.middle_exact = false;
  IntMat ker = kernel_basis(right_map);
  auto x = IntSolver(ker).solve_mat(left_map);
  if (x && ker.cols() == rank(left_map)) {
    // image = kernel exactly iff the coordinates matrix is surjective over Z
    Snf f = smith(*x);
    bool exact = f.rank == ker.cols();
    for (int i = 0; i < f.rank && exact; ++i)
      if (f.d.at(i, i) != 1) exact = false;
    c.middle_exact = exact;
  }
  return c;
}

namespace {

struct CoverData {
  GSetSpec spec;
  IntMat pi;  // rank_L x rank_P
};

// Permutation cover P -> L hitting every fixed sublattice: processing
// classes by descending subgroup order, an orbit G/H mapped onto a fixed
// vector is added only while pi(P^H) still misses part of L^H, and the
// trivial class contributes greedy regular orbits until pi is surjective.
// (One orbit per abelian-group generator of every L^H would also work but
// blows the middle ranks up on permutation inputs.)
CoverData permutation_cover(const ClassTable& t, const GLattice& l) {
  const PermGroup& g = t.group();
  CoverData out;
  struct Orbit {
    Subgroup sub;
    std::vector<Int> v;
    std::vector<uint16_t> coset_reps;
    std::vector<int> coset_of;
  };
  std::vector<Orbit> orbits;
  std::vector<IntMat> pi_blocks;
  std::vector<std::vector<Int>> span_cols;

  auto add_orbit = [&](const std::string& label, const Subgroup& h, const std::vector<Int>& v) {
    out.spec.orbits.push_back(label);
    auto cosets = left_cosets(g, h);
    Orbit orb;
    orb.sub = h;
    orb.v = v;
    orb.coset_of.assign(g.order(), -1);
    IntMat block(l.rank(), int(cosets.size()));
    for (size_t c = 0; c < cosets.size(); ++c) {
      orb.coset_reps.push_back(cosets[c].first);
      for (auto e : cosets[c].second) orb.coset_of[e] = int(c);
      auto img = l.action(cosets[c].first).apply(v);
      block.set_col(int(c), img);
      span_cols.push_back(img);
    }
    orbits.push_back(std::move(orb));
    pi_blocks.push_back(std::move(block));
  };

  // pi-images of a basis of (P so far)^H: per orbit, one column per H-orbit
  // of cosets (the image of that orbit sum)
  auto fixed_image_cols = [&](const Subgroup& h) {
    std::vector<std::vector<Int>> cols;
    for (const auto& orb : orbits) {
      std::vector<bool> seen(orb.coset_reps.size(), false);
      for (size_t c = 0; c < orb.coset_reps.size(); ++c) {
        if (seen[c]) continue;
        std::vector<Int> acc(l.rank(), 0);
        // H-orbit of coset c
        std::vector<int> stack = {int(c)};
        seen[c] = true;
        while (!stack.empty()) {
          int cur = stack.back();
          stack.pop_back();
          auto img = l.action(orb.coset_reps[cur]).apply(orb.v);
          for (int i = 0; i < l.rank(); ++i) acc[i] += img[i];
          for (auto s : h.gens) {
            int nxt = orb.coset_of[g.mul(s, orb.coset_reps[cur])];
            if (!seen[nxt]) {
              seen[nxt] = true;
              stack.push_back(nxt);
            }
          }
        }
        cols.push_back(std::move(acc));
      }
    }
    IntMat m(l.rank(), int(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j) m.set_col(int(j), cols[j]);
    return m;
  };

  std::vector<const SubgroupClass*> by_desc;
  for (const auto& cl : t.classes())
    if (!cl.is_trivial()) by_desc.push_back(&cl);
  std::sort(by_desc.begin(), by_desc.end(), [](const SubgroupClass* a, const SubgroupClass* b) {
    int oa = a->representative.order(), ob = b->representative.order();
    return oa != ob ? oa > ob : a->representative.elems < b->representative.elems;
  });

  for (const SubgroupClass* cl : by_desc) {
    IntMat lf = fixed_sublattice(cl->representative, l);
    if (lf.cols() == 0) continue;
    IntMat have = fixed_image_cols(cl->representative);
    std::optional<IntSolver> solver;
    if (have.cols() > 0) solver.emplace(have);
    for (int j = 0; j < lf.cols(); ++j) {
      bool covered = solver && solver->solve(lf.col_vec(j)).has_value();
      if (covered) continue;
      add_orbit(cl->label, cl->representative, lf.col_vec(j));
      have = fixed_image_cols(cl->representative);
      solver.emplace(have);
    }
  }

  // greedy regular orbits until the span is all of L
  const std::string triv_label = t.classes().front().label;
  const Subgroup triv = t.classes().front().representative;
  for (;;) {
    IntMat span(l.rank(), int(span_cols.size()));
    for (size_t j = 0; j < span_cols.size(); ++j) span.set_col(int(j), span_cols[j]);
    if (lattices_equal_full(span, l.rank())) break;
    IntMat span_b = column_span_basis(span);
    int pick = -1;
    for (int i = 0; i < l.rank() && pick < 0; ++i) {
      std::vector<Int> e(l.rank(), 0);
      e[i] = 1;
      if (!lattice_contains(span_b, e)) pick = i;
    }
    require(pick >= 0, "span misses the lattice but contains every basis vector");
    std::vector<Int> e(l.rank(), 0);
    e[pick] = 1;
    add_orbit(triv_label, triv, e);
  }

  // orbit order in the spec matches the block order of pi by construction
  IntMat pi(l.rank(), 0);
  bool first = true;
  for (auto& b : pi_blocks) {
    pi = first ? b : IntMat::hstack(pi, b);
    first = false;
  }
  if (first) pi = IntMat(l.rank(), 0);
  out.pi = pi;
  return out;
}

FinAb tate_group_quick(const ClassTable& t, int sub_idx, const GLattice& l, int degree) {
  return tate_group(t, sub_idx, l, degree);
}

}  // namespace

PredicateWitness lattice_predicate(const ClassTable& t, const GLattice& l, LatticePredicate which) {
  PredicateWitness w;
  auto scan = [&](int degree) -> bool {
    for (const auto& cl : t.classes()) {
      FinAb h = tate_group_quick(t, t.subgroup_index(cl.representative), l, degree);
      if (!h.is_trivial()) {
        w.failing_class = cl.label;
        w.failing_group = h;
        return false;
      }
    }
    return true;
  };

  if (which == LatticePredicate::flasque) {
    w.value = scan(-1);
    return w;
  }
  if (which == LatticePredicate::coflasque) {
    w.value = scan(1);
    return w;
  }

  // invertible: first the necessary vanishing (a failing class gives the
  // witness), then the splitting test on a first-type coflasque cover
  if (!scan(-1)) {
    w.value = false;
    w.note = "not flasque, hence not invertible";
    return w;
  }
  if (l.rank() <= 24 && !scan(1)) {
    w.value = false;
    w.note = "not coflasque, hence not invertible";
    return w;
  }
  Resolution r = coflasque_res_first(t, l);
  // section s : L -> P with pi s = id, solved inside Hom_ZG(L, P)
  auto basis = hom_basis(l, r.middle);
  const int n2 = l.rank() * l.rank();
  IntMat sys(n2, int(basis.size()));
  for (size_t b = 0; b < basis.size(); ++b) {
    IntMat comp = r.map_right * basis[b].matrix;
    for (int i = 0; i < l.rank(); ++i)
      for (int j = 0; j < l.rank(); ++j) sys.at(i * l.rank() + j, int(b)) = comp.at(i, j);
  }
  std::vector<Int> rhs(n2, 0);
  for (int i = 0; i < l.rank(); ++i) rhs[i * l.rank() + i] = 1;
  auto sol = solve_integer(sys, rhs);
  if (!sol) {
    w.value = false;
    w.note = "first-type coflasque cover admits no equivariant section";
    return w;
  }
  IntMat section(r.middle.rank(), l.rank());
  for (size_t b = 0; b < basis.size(); ++b)
    if ((*sol)[b] != 0) section = section + basis[b].matrix.scaled((*sol)[b]);
  require((r.map_right * section).is_identity(), "section equation not satisfied");
  require(is_equivariant(l, r.middle, section), "section must be equivariant");
  w.value = true;
  w.section = section;
  return w;
}

Resolution coflasque_res_first(const ClassTable& t, const GLattice& l) {
  CoverData cover = permutation_cover(t, l);
  GLattice middle = perm_lattice(t, cover.spec);
  IntMat ker = kernel_basis(cover.pi);
  GLattice left = restrict_to_sublattice(middle, ker);
  Resolution r{ResolutionKind::coflasque1, std::move(left), std::move(middle), l,
               ker, cover.pi, cover.spec, ExactnessCert{}, nullptr, nullptr};
  r.cert = certify_short_exact(r.map_left, r.map_right);
  require(r.cert.ok(), "first-type coflasque resolution must be exact");
  // Coflasqueness of the kernel: H^1(H, C) is the cokernel of
  // H^0(H, P) -> H^0(H, L) since the middle is permutation, so it vanishes
  // when pi maps P^H onto L^H on the nose.  Small kernels get the direct
  // predicate as well.
  for (const auto& cl : t.classes()) {
    IntMat pf = r.map_right * fixed_sublattice(cl.representative, r.middle);
    IntMat lf = fixed_sublattice(cl.representative, l);
    bool onto = lf.cols() == 0 || IntSolver(pf).solve_mat(lf).has_value();
    require(onto, "permutation cover misses a fixed sublattice at class " + cl.label);
  }
  if (r.left.rank() <= 24) {
    PredicateWitness cw = lattice_predicate(t, r.left, LatticePredicate::coflasque);
    require(cw.value, "kernel of the permutation cover must be coflasque");
  }
  return r;
}

Resolution flasque_res_first(const ClassTable& t, const GLattice& l) {
  Resolution c = coflasque_res_first(t, dual(l));
  Resolution r{ResolutionKind::flasque1, l, dual(c.middle), dual(c.left),
               c.map_right.transpose(), c.map_left.transpose(), c.perm_spec,
               ExactnessCert{}, nullptr, nullptr};
  r.cert = certify_short_exact(r.map_left, r.map_right);
  require(r.cert.ok(), "first-type flasque resolution must be exact");
  return r;
}

Resolution coflasque_res_second(const ClassTable& t, const GLattice& l) {
  // flasque resolution 0 -> L -> P -> F -> 0, coflasque cover
  // 0 -> B -> Q -> F -> 0, then pull back P x_F Q.
  Resolution fl = flasque_res_first(t, l);
  Resolution cf = coflasque_res_first(t, fl.right);

  GLattice pq = direct_sum(fl.middle, cf.middle);
  IntMat glue(fl.right.rank(), pq.rank());
  for (int i = 0; i < fl.right.rank(); ++i) {
    for (int j = 0; j < fl.middle.rank(); ++j) glue.at(i, j) = fl.map_right.at(i, j);
    for (int j = 0; j < cf.middle.rank(); ++j) glue.at(i, fl.middle.rank() + j) = -cf.map_right.at(i, j);
  }
  IntMat cbasis = kernel_basis(glue);
  GLattice c = restrict_to_sublattice(pq, cbasis);

  // L -> C: x -> (map_left(x), 0) expressed in the kernel basis
  IntMat lifted(pq.rank(), l.rank());
  for (int i = 0; i < fl.middle.rank(); ++i)
    for (int j = 0; j < l.rank(); ++j) lifted.at(i, j) = fl.map_left.at(i, j);
  auto expr = IntSolver(cbasis).solve_mat(lifted);
  require(expr.has_value(), "image of L must lie in the pullback");
  // C -> Q: the Q-component of the kernel basis
  IntMat proj(cf.middle.rank(), c.rank());
  for (int i = 0; i < cf.middle.rank(); ++i)
    for (int j = 0; j < c.rank(); ++j) proj.at(i, j) = cbasis.at(fl.middle.rank() + i, j);
  Resolution r{ResolutionKind::coflasque2, l, std::move(c), cf.middle,
               *expr, proj, cf.perm_spec, ExactnessCert{}, nullptr, nullptr};
  r.cert = certify_short_exact(r.map_left, r.map_right);
  require(r.cert.ok(), "second-type coflasque resolution must be exact");

  // coflasqueness of C through the defining sequence: since the middle of
  // 0 -> C -> P + Q -> F -> 0 is permutation, H^1(H, C) vanishes iff
  // H^0(H, P + Q) -> H^0(H, F) is surjective
  for (const auto& cl : t.classes()) {
    int sub = t.subgroup_index(cl.representative);
    TateValue src = tate_value(t, sub, pq, 0);
    TateValue tgt = tate_value(t, sub, fl.right, 0);
    FinAbMap m = induced_on_tate(src, tgt, glue, t, pq, fl.right);
    require(m.is_surjective(), "pullback term fails coflasqueness at class " + cl.label);
  }

  r.audit_flasque_first = std::make_shared<Resolution>(std::move(fl));
  r.audit_coflasque_of_f = std::make_shared<Resolution>(std::move(cf));
  return r;
}

RetractCert retract_rational(const ClassTable& t, const GLattice& m) {
  RetractCert out;
  out.res = std::make_shared<Resolution>(coflasque_res_second(t, m));
  out.invertibility = lattice_predicate(t, out.res->middle, LatticePredicate::invertible);
  out.value = out.invertibility.value;
  return out;
}

}  // namespace glat
