#include "glat/glattice.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace glat {

GSetSpec GSetSpec::sorted(const ClassTable& t) const {
  GSetSpec s = *this;
  std::sort(s.orbits.begin(), s.orbits.end(), [&](const std::string& a, const std::string& b) {
    int ca = t.class_by_label(a), cb = t.class_by_label(b);
    int oa = t.classes()[ca].representative.order(), ob = t.classes()[cb].representative.order();
    return oa != ob ? oa < ob : a < b;
  });
  return s;
}

std::string GSetSpec::str() const {
  if (orbits.empty()) return "(empty)";
  std::vector<std::string> parts;
  for (const auto& o : orbits) parts.push_back("G/" + o);
  return join(parts, " + ");
}

int PermStructure::orbit_of_basis(int b) const {
  for (size_t i = 0; i + 1 < orbit_offset.size(); ++i)
    if (b < orbit_offset[i + 1]) return int(i);
  return int(orbit_offset.size()) - 1;
}

GLattice::GLattice(std::shared_ptr<const PermGroup> group, int rank,
                   std::map<std::string, IntMat> gen_action)
    : group_(std::move(group)), rank_(rank), gen_action_(std::move(gen_action)) {
  check(rank >= 0 && rank <= kMaxRank, ErrorKind::capacity,
        "lattice rank out of supported range 0.." + std::to_string(kMaxRank));
  check(int(gen_action_.size()) == group_->num_generators(), ErrorKind::input,
        "need one action matrix per group generator");
  std::vector<const IntMat*> gen_mat(group_->num_generators());
  for (int k = 0; k < group_->num_generators(); ++k) {
    auto it = gen_action_.find(group_->generator_name(k));
    check(it != gen_action_.end(), ErrorKind::input,
          "missing action matrix for generator " + group_->generator_name(k));
    check(it->second.rows() == rank && it->second.cols() == rank, ErrorKind::input,
          "action matrix shape mismatch for generator " + group_->generator_name(k));
    Int d = det(it->second);
    check(d == 1 || d == -1, ErrorKind::input,
          "action of generator " + group_->generator_name(k) + " is not invertible over Z");
    gen_mat[k] = &it->second;
  }

  // extend to all elements along BFS words, then verify the homomorphism
  // property on every (generator, element) pair
  const int n = group_->order();
  elem_action_.assign(n, IntMat());
  for (int e = 0; e < n; ++e) {
    IntMat m = IntMat::identity(rank);
    for (int k : group_->word_for(e)) m = m * (*gen_mat[k]);
    elem_action_[e] = std::move(m);
  }
  for (int k = 0; k < group_->num_generators(); ++k) {
    int s = group_->generator_index(k);
    for (int e = 0; e < n; ++e) {
      check(elem_action_[group_->mul(s, e)] == (*gen_mat[k]) * elem_action_[e], ErrorKind::input,
            "generator matrices do not satisfy the group relations");
    }
  }
}

GLattice perm_lattice(const ClassTable& t, const GSetSpec& x) {
  const PermGroup& g = t.group();
  PermStructure ps;
  ps.spec = x;
  int offset = 0;
  for (const auto& label : x.orbits) {
    int ci = t.class_by_label(label);
    const Subgroup& h = t.classes()[ci].representative;
    auto cosets = left_cosets(g, h);
    ps.orbit_offset.push_back(offset);
    ps.orbit_subgroup.push_back(h);
    std::vector<uint16_t> reps;
    std::vector<int> coset_of(g.order(), -1);
    for (size_t c = 0; c < cosets.size(); ++c) {
      reps.push_back(cosets[c].first);
      for (auto e : cosets[c].second) coset_of[e] = int(c);
    }
    ps.orbit_coset_rep.push_back(std::move(reps));
    ps.coset_of.push_back(std::move(coset_of));
    offset += int(cosets.size());
  }
  const int rank = offset;
  check(rank <= GLattice::kMaxRank, ErrorKind::capacity, "permutation lattice rank too large");

  ps.elem_perm.resize(g.order());
  for (int e = 0; e < g.order(); ++e) {
    std::vector<uint16_t> perm(rank);
    for (size_t orb = 0; orb < ps.orbit_subgroup.size(); ++orb) {
      int off = ps.orbit_offset[orb];
      for (size_t c = 0; c < ps.orbit_coset_rep[orb].size(); ++c) {
        int img = ps.coset_of[orb][g.mul(e, ps.orbit_coset_rep[orb][c])];
        perm[off + int(c)] = uint16_t(off + img);
      }
    }
    ps.elem_perm[e] = std::move(perm);
  }

  std::map<std::string, IntMat> act;
  for (int k = 0; k < g.num_generators(); ++k) {
    int e = g.generator_index(k);
    IntMat m(rank, rank);
    for (int b = 0; b < rank; ++b) m.at(ps.elem_perm[e][b], b) = 1;
    act[g.generator_name(k)] = std::move(m);
  }
  GLattice l(t.group_ptr(), rank, std::move(act));
  l.set_perm_structure(std::move(ps));
  return l;
}

GLattice trivial_lattice(const ClassTable& t) {
  return perm_lattice(t, GSetSpec{{t.classes().back().label}});
}

GLattice dual(const GLattice& l) {
  std::map<std::string, IntMat> act;
  const PermGroup& g = l.group();
  for (int k = 0; k < g.num_generators(); ++k) {
    int e = g.generator_index(k);
    act[g.generator_name(k)] = l.action(g.inv(e)).transpose();
  }
  GLattice d(l.group_ptr(), l.rank(), std::move(act));
  // permutation lattices are self-dual with the same coset basis
  if (l.perm()) d.set_perm_structure(*l.perm());
  return d;
}

GLattice direct_sum(const GLattice& a, const GLattice& b) {
  require(&a.group() == &b.group(), "direct sum across different groups");
  const PermGroup& g = a.group();
  std::map<std::string, IntMat> act;
  for (int k = 0; k < g.num_generators(); ++k) {
    const std::string& name = g.generator_name(k);
    const IntMat &ma = a.gen_action().at(name), &mb = b.gen_action().at(name);
    IntMat m(a.rank() + b.rank(), a.rank() + b.rank());
    for (int i = 0; i < a.rank(); ++i)
      for (int j = 0; j < a.rank(); ++j) m.at(i, j) = ma.at(i, j);
    for (int i = 0; i < b.rank(); ++i)
      for (int j = 0; j < b.rank(); ++j) m.at(a.rank() + i, a.rank() + j) = mb.at(i, j);
    act[name] = std::move(m);
  }
  GLattice s(a.group_ptr(), a.rank() + b.rank(), std::move(act));
  if (a.perm() && b.perm()) {
    PermStructure ps;
    const PermStructure &pa = *a.perm(), &pb = *b.perm();
    ps.spec.orbits = pa.spec.orbits;
    for (const auto& o : pb.spec.orbits) ps.spec.orbits.push_back(o);
    ps.orbit_offset = pa.orbit_offset;
    for (int off : pb.orbit_offset) ps.orbit_offset.push_back(off + a.rank());
    ps.orbit_subgroup = pa.orbit_subgroup;
    ps.orbit_subgroup.insert(ps.orbit_subgroup.end(), pb.orbit_subgroup.begin(), pb.orbit_subgroup.end());
    ps.orbit_coset_rep = pa.orbit_coset_rep;
    ps.orbit_coset_rep.insert(ps.orbit_coset_rep.end(), pb.orbit_coset_rep.begin(), pb.orbit_coset_rep.end());
    ps.coset_of = pa.coset_of;
    ps.coset_of.insert(ps.coset_of.end(), pb.coset_of.begin(), pb.coset_of.end());
    ps.elem_perm.resize(g.order());
    for (int e = 0; e < g.order(); ++e) {
      std::vector<uint16_t> perm(pa.elem_perm[e]);
      for (auto v : pb.elem_perm[e]) perm.push_back(uint16_t(v + a.rank()));
      ps.elem_perm[e] = std::move(perm);
    }
    s.set_perm_structure(std::move(ps));
  }
  return s;
}

GLattice restrict_to_sublattice(const GLattice& l, const IntMat& basis) {
  require(basis.rows() == l.rank(), "sublattice basis shape mismatch");
  IntSolver solver(basis);
  const PermGroup& g = l.group();
  std::map<std::string, IntMat> act;
  for (int k = 0; k < g.num_generators(); ++k) {
    int e = g.generator_index(k);
    auto x = solver.solve_mat(l.action(e) * basis);
    require(x.has_value(), "sublattice is not G-stable");
    act[g.generator_name(k)] = *x;
  }
  return GLattice(l.group_ptr(), basis.cols(), std::move(act));
}

IntMat norm_matrix(const Subgroup& h, const GLattice& l) {
  IntMat n(l.rank(), l.rank());
  for (auto e : h.elems) n = n + l.action(e);
  return n;
}

IntMat fixed_sublattice(const Subgroup& h, const GLattice& l) {
  if (h.gens.empty()) return IntMat::identity(l.rank());
  IntMat stacked(0, l.rank());
  bool first = true;
  for (auto s : h.gens) {
    IntMat d = l.action(s) - IntMat::identity(l.rank());
    stacked = first ? d : IntMat::vstack(stacked, d);
    first = false;
  }
  return kernel_basis(stacked);
}

bool is_equivariant(const GLattice& src, const GLattice& tgt, const IntMat& f) {
  require(f.rows() == tgt.rank() && f.cols() == src.rank(), "equivariance shape mismatch");
  const PermGroup& g = src.group();
  for (int k = 0; k < g.num_generators(); ++k) {
    int e = g.generator_index(k);
    if (!(tgt.action(e) * f == f * src.action(e))) return false;
  }
  return true;
}

namespace {

// Hom(Z[G/H], L) ~ L^H: the basis map for v sends the coset u H to u . v.
std::vector<HomBasisElem> hom_from_perm(const GLattice& src, const GLattice& tgt) {
  const PermStructure& ps = *src.perm();
  std::vector<HomBasisElem> out;
  for (size_t orb = 0; orb < ps.orbit_subgroup.size(); ++orb) {
    IntMat fixed = fixed_sublattice(ps.orbit_subgroup[orb], tgt);
    int off = ps.orbit_offset[orb];
    int num_cosets = int(ps.orbit_coset_rep[orb].size());
    for (int j = 0; j < fixed.cols(); ++j) {
      std::vector<Int> v = fixed.col_vec(j);
      HomBasisElem e;
      e.src_orbit = int(orb);
      e.matrix = IntMat(tgt.rank(), src.rank());
      for (int c = 0; c < num_cosets; ++c) {
        std::vector<Int> img = tgt.action(ps.orbit_coset_rep[orb][c]).apply(v);
        e.matrix.set_col(off + c, img);
      }
      out.push_back(std::move(e));
    }
  }
  return out;
}

// Hom(L, Z[G/K]) ~ (L^dual)^K: f_v(m) = sum over cosets xK of v(x^{-1} m).
std::vector<HomBasisElem> hom_into_perm(const GLattice& src, const GLattice& tgt) {
  const PermStructure& ps = *tgt.perm();
  GLattice srcd = dual(src);
  std::vector<HomBasisElem> out;
  for (size_t orb = 0; orb < ps.orbit_subgroup.size(); ++orb) {
    IntMat fixed = fixed_sublattice(ps.orbit_subgroup[orb], srcd);
    int off = ps.orbit_offset[orb];
    int num_cosets = int(ps.orbit_coset_rep[orb].size());
    for (int j = 0; j < fixed.cols(); ++j) {
      std::vector<Int> v = fixed.col_vec(j);
      HomBasisElem e;
      e.tgt_orbit = int(orb);
      e.matrix = IntMat(tgt.rank(), src.rank());
      for (int c = 0; c < num_cosets; ++c) {
        int xinv = src.group().inv(ps.orbit_coset_rep[orb][c]);
        // row (off + c) of the matrix is v^T . action(x^{-1})
        const IntMat& a = src.action(xinv);
        for (int col = 0; col < src.rank(); ++col) {
          Int s = 0;
          for (int r = 0; r < src.rank(); ++r) s += v[r] * a.at(r, col);
          e.matrix.at(off + c, col) = s;
        }
      }
      out.push_back(std::move(e));
    }
  }
  return out;
}

std::vector<HomBasisElem> hom_generic(const GLattice& src, const GLattice& tgt) {
  const PermGroup& g = src.group();
  const int rs = src.rank(), rt = tgt.rank();
  // unknowns: entries of F (rt x rs), column-major vectorization
  IntMat constraints(0, rs * rt);
  bool first = true;
  for (int k = 0; k < g.num_generators(); ++k) {
    int e = g.generator_index(k);
    const IntMat &ms = src.action(e), &mt = tgt.action(e);
    // condition: mt * F - F * ms = 0
    IntMat block(rs * rt, rs * rt);
    for (int j = 0; j < rs; ++j)
      for (int i = 0; i < rt; ++i) {
        int row = j * rt + i;
        for (int a = 0; a < rt; ++a) block.at(row, j * rt + a) += mt.at(i, a);
        for (int b = 0; b < rs; ++b) block.at(row, b * rt + i) -= ms.at(b, j);
      }
    constraints = first ? block : IntMat::vstack(constraints, block);
    first = false;
  }
  IntMat ker = kernel_basis(constraints);
  std::vector<HomBasisElem> out;
  for (int t = 0; t < ker.cols(); ++t) {
    HomBasisElem e;
    e.matrix = IntMat(rt, rs);
    for (int j = 0; j < rs; ++j)
      for (int i = 0; i < rt; ++i) e.matrix.at(i, j) = ker.at(j * rt + i, t);
    out.push_back(std::move(e));
  }
  return out;
}

// Both permutation: the double-coset basis.  The tag [K g H] pairs the
// target orbit subgroup K with the source orbit subgroup H; the tagged map
// sends the coset u H to the sum of the K-cosets inside u . (K g H)^{-1}.
std::vector<HomBasisElem> hom_perm_perm(const GLattice& src, const GLattice& tgt) {
  const PermGroup& g = src.group();
  const PermStructure& pss = *src.perm();
  const PermStructure& pst = *tgt.perm();
  std::vector<HomBasisElem> out;
  for (size_t so = 0; so < pss.orbit_subgroup.size(); ++so) {
    const Subgroup& h = pss.orbit_subgroup[so];
    for (size_t to = 0; to < pst.orbit_subgroup.size(); ++to) {
      const Subgroup& k = pst.orbit_subgroup[to];
      for (auto& dc : double_cosets(g, k, h)) {
        HomBasisElem e;
        e.src_orbit = int(so);
        e.tgt_orbit = int(to);
        e.matrix = IntMat(tgt.rank(), src.rank());
        // image of e_H: the K-cosets meeting (K g H)^{-1} = H g^{-1} K
        std::set<int> base_cosets;
        for (auto x : dc.elems) base_cosets.insert(pst.coset_of[to][g.inv(x)]);
        int soff = pss.orbit_offset[so], toff = pst.orbit_offset[to];
        for (size_t c = 0; c < pss.orbit_coset_rep[so].size(); ++c) {
          int u = pss.orbit_coset_rep[so][c];
          for (int bc : base_cosets) {
            int img = pst.coset_of[to][g.mul(u, pst.orbit_coset_rep[to][bc])];
            e.matrix.at(toff + img, soff + int(c)) += 1;
          }
        }
        e.tag = dc;
        out.push_back(std::move(e));
      }
    }
  }
  return out;
}

}  // namespace

std::vector<HomBasisElem> hom_basis(const GLattice& src, const GLattice& tgt) {
  require(&src.group() == &tgt.group(), "hom across different groups");
  std::vector<HomBasisElem> out;
  if (src.perm() && tgt.perm())
    out = hom_perm_perm(src, tgt);
  else if (src.perm())
    out = hom_from_perm(src, tgt);
  else if (tgt.perm())
    out = hom_into_perm(src, tgt);
  else
    out = hom_generic(src, tgt);
  for (auto& e : out) require(is_equivariant(src, tgt, e.matrix), "hom basis element not equivariant");
  return out;
}

}  // namespace glat
