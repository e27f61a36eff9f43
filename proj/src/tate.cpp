#include "glat/tate.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <future>
#include <set>

namespace glat {

namespace {

// position of each subgroup element inside its sorted element list
std::vector<int> position_table(const PermGroup& g, const Subgroup& h) {
  std::vector<int> pos(g.order(), -1);
  for (size_t i = 0; i < h.elems.size(); ++i) pos[h.elems[i]] = int(i);
  return pos;
}

std::vector<Int> cocycle_entry(const std::vector<Int>& table, int pos, int rank) {
  return std::vector<Int>(table.begin() + size_t(pos) * rank,
                          table.begin() + size_t(pos + 1) * rank);
}

void set_cocycle_entry(std::vector<Int>& table, int pos, const std::vector<Int>& v) {
  std::copy(v.begin(), v.end(), table.begin() + size_t(pos) * v.size());
}

// checks c(ab) = c(a) + a.c(b) over all pairs, exactly
void verify_cocycle_table(const PermGroup& g, const Subgroup& h, const GLattice& l,
                          const std::vector<Int>& table, const std::vector<int>& pos) {
  const int r = l.rank();
  for (auto a : h.elems)
    for (auto b : h.elems) {
      std::vector<Int> lhs = cocycle_entry(table, pos[g.mul(a, b)], r);
      std::vector<Int> rhs = l.action(a).apply(cocycle_entry(table, pos[b], r));
      const std::vector<Int> ca = cocycle_entry(table, pos[a], r);
      for (int i = 0; i < r; ++i) rhs[i] += ca[i];
      require(lhs == rhs, "cocycle identity fails on a stored representative");
    }
}

}  // namespace

std::vector<Int> TateValue::rep_of_gen(int i) const { return basis.apply(group.lift(i)); }

std::vector<Int> TateValue::project_rep(const std::vector<Int>& rep) const {
  if (group.is_trivial()) return {};
  auto x = basis_solver_->solve(rep);
  require(x.has_value(), "representative lies outside the representative lattice");
  return group.project(*x);
}

bool TateValue::rep_in_lattice(const std::vector<Int>& rep) const {
  if (basis.cols() == 0) {
    for (const Int& v : rep)
      if (v != 0) return false;
    return true;
  }
  return basis_solver_->solve(rep).has_value();
}

TateValue tate_value_impl(const ClassTable& t, int sub_idx, const GLattice& l, int degree) {
  const PermGroup& g = t.group();
  const Subgroup& h = t.subgroup(sub_idx);
  const int r = l.rank();
  TateValue v;
  v.subgroup = sub_idx;
  v.degree = degree;

  if (degree == 0) {
    IntMat fixed = fixed_sublattice(h, l);
    IntMat n = norm_matrix(h, l);
    IntSolver fs(fixed);
    auto x = fs.solve_mat(n);  // norm image in fixed coordinates
    require(x.has_value(), "norm image must lie in the fixed sublattice");
    v.group = FinAb::from_presentation(*x);
    v.basis = fixed;
  } else if (degree == -1) {
    IntMat n = norm_matrix(h, l);
    IntMat ker = kernel_basis(n);
    // augmentation sublattice: span of (a - 1) L over all a in H
    IntMat aug(r, 0);
    bool first = true;
    for (auto a : h.elems) {
      if (a == 0) continue;
      IntMat d = l.action(a) - IntMat::identity(r);
      aug = first ? d : IntMat::hstack(aug, d);
      first = false;
    }
    if (first) aug = IntMat(r, 0);
    IntSolver ks(ker);
    auto x = ks.solve_mat(aug);
    require(x.has_value(), "augmentation sublattice must lie in the norm kernel");
    v.group = FinAb::from_presentation(*x);
    v.basis = ker;
  } else if (degree == 1) {
    check(h.order() <= TateValue::kMaxDeg1Order, ErrorKind::capacity,
          "degree-1 value needs |H| <= " + std::to_string(TateValue::kMaxDeg1Order));
    const int m = h.order();
    auto pos = position_table(g, h);
    // unknowns: full table c(h_0..h_{m-1}) in Z^{r m}
    // rows: c(e) = 0, and c(s b) - c(s) - s.c(b) = 0 for generators s, all b
    const std::vector<uint16_t>& gens = h.gens;
    IntMat cond(r * (1 + int(gens.size()) * m), r * m);
    for (int i = 0; i < r; ++i) cond.at(i, i) = 1;  // c(identity) = 0
    int row = r;
    for (auto s : gens) {
      const IntMat& ms = l.action(s);
      for (auto b : h.elems) {
        int psb = pos[g.mul(s, b)], ps = pos[s], pb = pos[b];
        for (int i = 0; i < r; ++i) {
          cond.at(row + i, psb * r + i) += 1;
          cond.at(row + i, ps * r + i) -= 1;
          for (int j = 0; j < r; ++j) cond.at(row + i, pb * r + j) -= ms.at(i, j);
        }
        row += r;
      }
    }
    IntMat z1 = kernel_basis(cond);
    // coboundaries c_v(a) = (a - 1) v
    IntMat b1(r * m, r);
    for (int j = 0; j < r; ++j) {
      for (auto a : h.elems) {
        int pa = pos[a];
        const IntMat& ma = l.action(a);
        for (int i = 0; i < r; ++i) b1.at(pa * r + i, j) = ma.at(i, j) - (i == j ? 1 : 0);
      }
    }
    IntSolver zs(z1);
    auto x = zs.solve_mat(b1);
    require(x.has_value(), "coboundaries must be cocycles");
    v.group = FinAb::from_presentation(*x);
    v.basis = z1;
    v.basis_solver_ = std::make_shared<IntSolver>(v.basis);
    for (int i = 0; i < v.group.num_gens(); ++i) verify_cocycle_table(g, h, l, v.rep_of_gen(i), pos);
    return v;
  } else {
    fail(ErrorKind::input, "supported degrees are -1, 0, 1");
  }
  v.basis_solver_ = std::make_shared<IntSolver>(v.basis);
  return v;
}

TateValue tate_value(const ClassTable& t, int sub_idx, const GLattice& l, int degree) {
  return tate_value_impl(t, sub_idx, l, degree);
}

FinAb tate_group(const ClassTable& t, int sub_idx, const GLattice& l, int degree) {
  return tate_value(t, sub_idx, l, degree).group;
}

namespace {

std::vector<Int> rep_res(const ClassTable& t, const GLattice& l, int degree, int k_idx, int h_idx,
                         const std::vector<Int>& rep) {
  const PermGroup& g = t.group();
  const Subgroup &k = t.subgroup(k_idx), &h = t.subgroup(h_idx);
  const int r = l.rank();
  if (degree == 0) return rep;  // inclusion of fixed vectors
  if (degree == -1) {
    // transfer against right cosets: v -> sum over t with K = union of H t
    std::vector<Int> out(r, 0);
    for (auto tt : right_transversal(k, h)) {
      auto w = l.action(tt).apply(rep);
      for (int i = 0; i < r; ++i) out[i] += w[i];
    }
    return out;
  }
  // degree 1: restrict the table
  auto posk = position_table(g, k), posh = position_table(g, h);
  std::vector<Int> out(size_t(r) * h.order(), 0);
  for (auto a : h.elems) set_cocycle_entry(out, posh[a], cocycle_entry(rep, posk[a], r));
  return out;
}

std::vector<Int> rep_cor(const ClassTable& t, const GLattice& l, int degree, int k_idx, int h_idx,
                         const std::vector<Int>& rep) {
  const PermGroup& g = t.group();
  const Subgroup &k = t.subgroup(k_idx), &h = t.subgroup(h_idx);
  const int r = l.rank();
  if (degree == 0) {
    // relative transfer over the fixed lex-least left transversal
    std::vector<Int> out(r, 0);
    for (auto tt : left_transversal(k, h)) {
      auto w = l.action(tt).apply(rep);
      for (int i = 0; i < r; ++i) out[i] += w[i];
    }
    return out;
  }
  if (degree == -1) return rep;  // inclusion of norm kernels
  // degree 1: cocycle transfer against the fixed left transversal
  auto transversal = left_transversal(k, h);
  auto posk = position_table(g, k), posh = position_table(g, h);
  std::vector<int> coset_of(g.order(), -1);
  for (size_t i = 0; i < transversal.size(); ++i)
    for (auto e : h.elems) coset_of[g.mul(transversal[i], e)] = int(i);
  std::vector<Int> out(size_t(r) * k.order(), 0);
  for (auto a : k.elems) {
    std::vector<Int> acc(r, 0);
    for (auto ti : transversal) {
      int ati = g.mul(a, ti);
      int tj = transversal[coset_of[ati]];
      int hi = g.mul(g.inv(tj), ati);  // lands in H
      auto w = l.action(tj).apply(cocycle_entry(rep, posh[hi], r));
      for (int i = 0; i < r; ++i) acc[i] += w[i];
    }
    set_cocycle_entry(out, posk[a], acc);
  }
  return out;
}

std::vector<Int> rep_conj(const ClassTable& t, const GLattice& l, int degree, int g_elem, int h_idx,
                          const std::vector<Int>& rep) {
  const PermGroup& g = t.group();
  const Subgroup& h = t.subgroup(h_idx);
  const int r = l.rank();
  if (degree == 0 || degree == -1) return l.action(g_elem).apply(rep);
  int h2_idx = t.conjugate(g_elem, h_idx);
  const Subgroup& h2 = t.subgroup(h2_idx);
  auto posh = position_table(g, h), posh2 = position_table(g, h2);
  std::vector<Int> out(size_t(r) * h2.order(), 0);
  int ginv = g.inv(g_elem);
  for (auto x : h2.elems) {
    int back = g.mul(g.mul(ginv, x), g_elem);  // g^{-1} x g lies in H
    auto w = l.action(g_elem).apply(cocycle_entry(rep, posh[back], r));
    set_cocycle_entry(out, posh2[x], w);
  }
  return out;
}

FinAbMap map_on_values(const TateValue& src, const TateValue& tgt,
                       const std::function<std::vector<Int>(const std::vector<Int>&)>& f) {
  IntMat m(tgt.group.num_gens(), src.group.num_gens());
  for (int i = 0; i < src.group.num_gens(); ++i) m.set_col(i, tgt.project_rep(f(src.rep_of_gen(i))));
  return FinAbMap(src.group, tgt.group, std::move(m));
}

}  // namespace

const FinAbMap& MackeyDatum::res_map(int k, int h) const {
  auto it = res.find({k, h});
  require(it != res.end(), "missing restriction map");
  return it->second;
}

const FinAbMap& MackeyDatum::cor_map(int k, int h) const {
  auto it = cor.find({k, h});
  require(it != cor.end(), "missing corestriction map");
  return it->second;
}

const FinAbMap& MackeyDatum::conj_map(int g, int h) const {
  auto it = conj.find({g, h});
  require(it != conj.end(), "missing conjugation map");
  return it->second;
}

MackeyDatum mackey_datum(const ClassTable& t, std::shared_ptr<const GLattice> l, int degree,
                         int jobs) {
  MackeyDatum d;
  d.table = &t;
  d.lattice = l;
  d.degree = degree;
  const int n = t.num_subgroups();
  d.values.resize(n);
  if (jobs > 1) {
    std::atomic<int> next{0};
    std::vector<std::future<void>> futs;
    int workers = std::min(jobs, n);
    for (int w = 0; w < workers; ++w)
      futs.push_back(std::async(std::launch::async, [&] {
        for (;;) {
          int i = next.fetch_add(1);
          if (i >= n) return;
          d.values[i] = tate_value(t, i, *l, degree);
        }
      }));
    for (auto& f : futs) f.get();
  } else {
    for (int i = 0; i < n; ++i) d.values[i] = tate_value(t, i, *l, degree);
  }

  for (int k = 0; k < n; ++k)
    for (int h = 0; h < n; ++h) {
      if (!t.leq(h, k)) continue;
      d.res[{k, h}] = map_on_values(d.values[k], d.values[h], [&](const std::vector<Int>& rep) {
        return rep_res(t, *l, degree, k, h, rep);
      });
      d.cor[{k, h}] = map_on_values(d.values[h], d.values[k], [&](const std::vector<Int>& rep) {
        return rep_cor(t, *l, degree, k, h, rep);
      });
    }
  for (int g = 0; g < t.group().order(); ++g)
    for (int h = 0; h < n; ++h) {
      int h2 = t.conjugate(g, h);
      d.conj[{g, h}] = map_on_values(d.values[h], d.values[h2], [&](const std::vector<Int>& rep) {
        return rep_conj(t, *l, degree, g, h, rep);
      });
    }
  return d;
}

namespace {

// double cosets J x H inside K, lex-least representatives
std::vector<uint16_t> double_coset_reps_in(const PermGroup& g, const Subgroup& k,
                                           const Subgroup& j, const Subgroup& h) {
  std::vector<bool> used(g.order(), false);
  std::vector<uint16_t> reps;
  for (auto x : k.elems) {
    if (used[x]) continue;
    reps.push_back(x);
    for (auto a : j.elems)
      for (auto b : h.elems) used[g.mul(g.mul(a, x), b)] = true;
  }
  return reps;
}

}  // namespace

MackeyReport verify_mackey_axioms(const MackeyDatum& d) {
  MackeyReport rep;
  const ClassTable& t = *d.table;
  const PermGroup& g = t.group();
  const int n = t.num_subgroups();
  auto complain = [&](const std::string& s) { rep.violations.push_back(s); };
  auto sub_name = [&](int i) { return t.classes()[t.class_of(i)].label + "#" + std::to_string(i); };

  // identity morphisms
  for (int h = 0; h < n; ++h) {
    if (!d.res_map(h, h).is_identity()) complain("R^H_H != id at " + sub_name(h));
    if (!d.cor_map(h, h).is_identity()) complain("I^H_H != id at " + sub_name(h));
    for (auto e : t.subgroup(h).elems)
      if (!d.conj_map(e, h).is_identity())
        complain("C_h != id at " + sub_name(h) + ", element " + std::to_string(e));
  }

  // transitivity
  for (int k = 0; k < n; ++k)
    for (int h = 0; h < n; ++h) {
      if (!t.leq(h, k)) continue;
      for (int j = 0; j < n; ++j) {
        if (!t.leq(j, h)) continue;
        if (!(d.res_map(h, j).compose(d.res_map(k, h)) == d.res_map(k, j)))
          complain("R transitivity fails at " + sub_name(j) + " <= " + sub_name(h) + " <= " +
                   sub_name(k));
        if (!(d.cor_map(k, h).compose(d.cor_map(h, j)) == d.cor_map(k, j)))
          complain("I transitivity fails at " + sub_name(j) + " <= " + sub_name(h) + " <= " +
                   sub_name(k));
      }
    }

  // conjugation composition
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b)
      for (int h = 0; h < n; ++h) {
        int hb = t.conjugate(b, h);
        if (!(d.conj_map(a, hb).compose(d.conj_map(b, h)) == d.conj_map(g.mul(a, b), h)))
          complain("C_g C_h != C_gh at " + sub_name(h) + " with g=" + std::to_string(a) +
                   " h=" + std::to_string(b));
      }

  // conjugation compatibility with R and I
  for (int x = 0; x < g.order(); ++x)
    for (int k = 0; k < n; ++k)
      for (int h = 0; h < n; ++h) {
        if (!t.leq(h, k)) continue;
        int xk = t.conjugate(x, k), xh = t.conjugate(x, h);
        if (!(d.conj_map(x, h).compose(d.res_map(k, h)) ==
              d.res_map(xk, xh).compose(d.conj_map(x, k))))
          complain("C/R compatibility fails at " + sub_name(h) + " <= " + sub_name(k) +
                   " with g=" + std::to_string(x));
        if (!(d.conj_map(x, k).compose(d.cor_map(k, h)) ==
              d.cor_map(xk, xh).compose(d.conj_map(x, h))))
          complain("C/I compatibility fails at " + sub_name(h) + " <= " + sub_name(k) +
                   " with g=" + std::to_string(x));
      }

  // double coset axiom: R^K_J I^K_H = sum over x in [J\K/H] of
  // I^J_{xHx^-1 cap J} C_x R^H_{H cap x^-1 J x}
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) {
      if (!t.leq(j, k)) continue;
      for (int h = 0; h < n; ++h) {
        if (!t.leq(h, k)) continue;
        FinAbMap lhs = d.res_map(k, j).compose(d.cor_map(k, h));
        FinAbMap sum = FinAbMap::zero(d.values[h].group, d.values[j].group);
        for (auto x : double_coset_reps_in(g, t.subgroup(k), t.subgroup(j), t.subgroup(h))) {
          int xinv_j = t.conjugate(g.inv(x), j);
          int s = t.intersection(h, xinv_j);  // H cap x^{-1} J x
          int s2 = t.conjugate(x, s);         // x H x^{-1} cap J
          sum = sum + d.cor_map(j, s2).compose(d.conj_map(x, s).compose(d.res_map(h, s)));
        }
        if (!(lhs == sum))
          complain("double coset axiom fails for J=" + sub_name(j) + " H=" + sub_name(h) +
                   " inside K=" + sub_name(k));
      }
    }

  // cohomological axiom
  for (int k = 0; k < n; ++k)
    for (int h = 0; h < n; ++h) {
      if (!t.leq(h, k)) continue;
      int index = t.subgroup(k).order() / t.subgroup(h).order();
      FinAbMap lhs = d.cor_map(k, h).compose(d.res_map(k, h));
      if (!(lhs == FinAbMap::identity(d.values[k].group).scaled(index)))
        complain("I.R != index at " + sub_name(h) + " <= " + sub_name(k));
    }

  return rep;
}

FinAbMap induced_on_tate(const TateValue& src_val, const TateValue& tgt_val, const IntMat& f,
                         const ClassTable& t, const GLattice& src, const GLattice& tgt) {
  require(src_val.degree == tgt_val.degree && src_val.subgroup == tgt_val.subgroup,
          "induced map needs matching degree and subgroup");
  require(is_equivariant(src, tgt, f), "induced map needs an equivariant matrix");
  const int deg = src_val.degree;
  const int rs = src.rank(), rt = tgt.rank();
  const Subgroup& h = t.subgroup(src_val.subgroup);
  return map_on_values(src_val, tgt_val, [&](const std::vector<Int>& rep) {
    if (deg == 0 || deg == -1) return f.apply(rep);
    std::vector<Int> out(size_t(rt) * h.order(), 0);
    for (int pos = 0; pos < h.order(); ++pos) {
      std::vector<Int> entry(rep.begin() + size_t(pos) * rs, rep.begin() + size_t(pos + 1) * rs);
      auto w = f.apply(entry);
      std::copy(w.begin(), w.end(), out.begin() + size_t(pos) * rt);
    }
    return out;
  });
}

}  // namespace glat
