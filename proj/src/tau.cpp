#include "glat/tau.hpp"

#include <algorithm>
#include <set>

namespace glat {

TauAlgebra TauAlgebra::build(const ClassTable& t) {
  check(t.group().order() <= kMaxGroupOrder, ErrorKind::capacity,
        "double-coset algebra supports |G| <= " + std::to_string(kMaxGroupOrder));
  TauAlgebra a;
  a.table_ = &t;
  a.modulus_ = t.group().order();
  const PermGroup& g = t.group();
  const int n = t.num_subgroups();

  a.coset_reps_.resize(n);
  a.coset_of_.resize(n);
  for (int s = 0; s < n; ++s) {
    auto cosets = left_cosets(g, t.subgroup(s));
    a.coset_of_[s].assign(g.order(), -1);
    for (size_t c = 0; c < cosets.size(); ++c) {
      a.coset_reps_[s].push_back(cosets[c].first);
      for (auto e : cosets[c].second) a.coset_of_[s][e] = int(c);
    }
  }

  for (int k = 0; k < n; ++k)
    for (int h = 0; h < n; ++h) {
      auto dcs = double_cosets(g, t.subgroup(k), t.subgroup(h));
      std::vector<int> lookup(g.order(), -1);
      std::vector<int> blk;
      for (auto& dc : dcs) {
        DCSymbol sym{k, h, dc.rep};
        int idx = int(a.symbols_.size());
        a.symbols_.push_back(sym);
        a.index_[{k, h, dc.rep}] = idx;
        blk.push_back(idx);
        for (auto e : dc.elems) lookup[e] = idx;
      }
      a.dc_of_elem_.push_back(std::move(lookup));
      a.block_[{k, h}] = std::move(blk);
    }
  return a;
}

int TauAlgebra::symbol_index(int k_sub, int h_sub, int elem) const {
  const int n = table_->num_subgroups();
  int sym = dc_of_elem_[size_t(k_sub) * n + h_sub][elem];
  require(sym >= 0, "element has no double coset symbol");
  return sym;
}

std::vector<int> TauAlgebra::identity_symbols() const {
  std::vector<int> out;
  for (int s = 0; s < table_->num_subgroups(); ++s) out.push_back(index_.at({s, s, 0}));
  return out;
}

std::vector<long> TauAlgebra::compose_as_coset_vector(int ai, int bi) const {
  const DCSymbol &sa = symbols_[ai], &sb = symbols_[bi];
  require(sa.h_sub == sb.k_sub, "composition needs matching middle subgroup");
  const PermGroup& g = table_->group();
  const int n = table_->num_subgroups();
  const int A = sa.k_sub, B = sa.h_sub, C = sb.h_sub;

  // phi_b(e_C) = sum of B-cosets inside C h^-1 B; phi_a(e_B) similarly
  std::set<int> xcosets, ycosets;
  const auto& lookup_b = dc_of_elem_[size_t(B) * n + C];
  for (int e = 0; e < g.order(); ++e)
    if (lookup_b[e] == bi) xcosets.insert(coset_of_[B][g.inv(e)]);
  const auto& lookup_a = dc_of_elem_[size_t(A) * n + B];
  for (int e = 0; e < g.order(); ++e)
    if (lookup_a[e] == ai) ycosets.insert(coset_of_[A][g.inv(e)]);

  std::vector<long> v(coset_reps_[A].size(), 0);
  for (int xc : xcosets) {
    int x = coset_reps_[B][xc];
    for (int yc : ycosets) {
      int y = coset_reps_[A][yc];
      v[coset_of_[A][g.mul(x, y)]] += 1;
    }
  }
  return v;
}

std::map<int, long> TauAlgebra::mult(int ai, int bi) const {
  std::map<int, long> out;
  const DCSymbol &sa = symbols_[ai], &sb = symbols_[bi];
  if (sa.h_sub != sb.k_sub) return out;
  const PermGroup& g = table_->group();
  const int A = sa.k_sub, C = sb.h_sub;
  std::vector<long> v = compose_as_coset_vector(ai, bi);
  for (int sym : block_.at({A, C})) {
    int d = symbols_[sym].rep;
    long coeff = v[coset_of_[A][g.inv(d)]];
    if (coeff) out[sym] = coeff;
    // the coefficient is constant on the C-orbit of cosets by equivariance
  }
  return out;
}

const std::vector<std::vector<long>>& TauAlgebra::ideal_generators() const {
  if (ideal_) return *ideal_;
  ideal_.emplace();
  const PermGroup& g = table_->group();
  const int n = table_->num_subgroups();
  const int triv = 0;
  for (int A = 0; A < n; ++A)
    for (int C = 0; C < n; ++C) {
      for (int x : block_.at({A, triv}))
        for (int y : block_.at({triv, C})) {
          auto prod = mult(x, y);
          std::vector<long> vec(symbols_.size(), 0);
          for (auto& [sym, c] : prod) vec[sym] = ((c % modulus_) + modulus_) % modulus_;
          ideal_->push_back(std::move(vec));
        }
    }
  (void)g;
  return *ideal_;
}

const FinAb& TauAlgebra::additive_group() const {
  if (additive_) return *additive_;
  const auto& gens = ideal_generators();
  const int nsym = int(symbols_.size());
  IntMat rel(nsym, nsym + int(gens.size()));
  for (int i = 0; i < nsym; ++i) rel.at(i, i) = modulus_;
  for (size_t j = 0; j < gens.size(); ++j)
    for (int i = 0; i < nsym; ++i) rel.at(i, nsym + int(j)) = gens[j][i];
  additive_ = FinAb::from_presentation(rel);
  return *additive_;
}

Int TMackModule::order() const {
  Int o = 1;
  for (const auto& v : values) o *= v.order();
  return o;
}

bool TMackModule::is_trivial() const { return order() == 1; }

FinAbMap TMackModule::act_symbol(const DCSymbol& s) const {
  const ClassTable& t = *table;
  const PermGroup& g = t.group();
  int ginv = g.inv(s.rep);
  int s1 = t.intersection(s.k_sub, t.conjugate(s.rep, s.h_sub));  // K cap gHg^-1
  int s2 = t.conjugate(ginv, s1);                                 // H cap g^-1 K g
  FinAbMap r = res_map(s.k_sub, s1);
  FinAbMap c = conj_map(ginv, s1);
  FinAbMap i = cor_map(s.h_sub, s2);
  return i.compose(c.compose(r));
}

TMackModule tmack_from_datum(const ClassTable& t, std::shared_ptr<const MackeyDatum> d) {
  TMackModule m;
  m.table = &t;
  m.datum = d;
  for (auto& v : d->values) m.values.push_back(v.group);
  m.res = d->res;
  m.cor = d->cor;
  m.conj = d->conj;
  require(m.values[t.trivial_subgroup_index()].is_trivial(),
          "Tate condition: the value at the trivial subgroup must vanish");
  return m;
}

TMackModule hat0_tmack(const ClassTable& t, const GSetSpec& x, int jobs) {
  if (x.orbits.empty()) {
    // zero module
    TMackModule m;
    m.table = &t;
    m.values.assign(t.num_subgroups(), FinAb::trivial());
    for (int k = 0; k < t.num_subgroups(); ++k)
      for (int h = 0; h < t.num_subgroups(); ++h)
        if (t.leq(h, k)) {
          m.res[{k, h}] = FinAbMap::zero(FinAb::trivial(), FinAb::trivial());
          m.cor[{k, h}] = m.res[{k, h}];
        }
    for (int g = 0; g < t.group().order(); ++g)
      for (int h = 0; h < t.num_subgroups(); ++h)
        m.conj[{g, h}] = FinAbMap::zero(FinAb::trivial(), FinAb::trivial());
    return m;
  }
  auto lat = std::make_shared<GLattice>(perm_lattice(t, x));
  auto d = std::make_shared<MackeyDatum>(mackey_datum(t, lat, 0, jobs));
  return tmack_from_datum(t, d);
}

TMackModule h1_tmack(const ClassTable& t, std::shared_ptr<const GLattice> m, int jobs) {
  auto d = std::make_shared<MackeyDatum>(mackey_datum(t, m, 1, jobs));
  return tmack_from_datum(t, d);
}

namespace {

FinAb finab_dsum(const FinAb& a, const FinAb& b) {
  std::vector<Int> d;
  for (auto& x : a.factors()) d.push_back(x);
  for (auto& x : b.factors()) d.push_back(x);
  return FinAb::from_presentation(IntMat::diagonal(d));
}

FinAbMap map_dsum(const FinAbMap& fa, const FinAbMap& fb, const FinAb& src, const FinAb& tgt) {
  IntMat raw(tgt.ambient_rank(), src.ambient_rank());
  for (int i = 0; i < fa.matrix().rows(); ++i)
    for (int j = 0; j < fa.matrix().cols(); ++j) raw.at(i, j) = fa.matrix().at(i, j);
  for (int i = 0; i < fb.matrix().rows(); ++i)
    for (int j = 0; j < fb.matrix().cols(); ++j)
      raw.at(fa.matrix().rows() + i, fa.matrix().cols() + j) = fb.matrix().at(i, j);
  return induced_map(raw, src, tgt);
}

}  // namespace

TMackModule tmack_direct_sum(const TMackModule& a, const TMackModule& b) {
  require(a.table == b.table, "direct sum across different tables");
  TMackModule m;
  m.table = a.table;
  const ClassTable& t = *a.table;
  for (int i = 0; i < t.num_subgroups(); ++i) m.values.push_back(finab_dsum(a.values[i], b.values[i]));
  // res maps M(K) -> M(H), cor the other way; key = (K, H)
  for (auto& [key, fa] : a.res)
    m.res[key] = map_dsum(fa, b.res.at(key), m.values[key.first], m.values[key.second]);
  for (auto& [key, fa] : a.cor)
    m.cor[key] = map_dsum(fa, b.cor.at(key), m.values[key.second], m.values[key.first]);
  for (auto& [key, fa] : a.conj) {
    int h2 = t.conjugate(key.first, key.second);
    m.conj[key] = map_dsum(fa, b.conj.at(key), m.values[key.second], m.values[h2]);
  }
  return m;
}

namespace {

// fast surjectivity for torsion maps: surjective iff surjective mod every
// prime dividing the target exponent
bool fast_surjective(const FinAbMap& f) {
  const FinAb& tgt = f.tgt();
  if (tgt.is_trivial()) return true;
  Int expo = tgt.exponent();
  for (Int p = 2; p <= expo; ++p) {
    if (expo % p != 0) continue;
    bool prime = true;
    for (Int d = 2; d * d <= p; ++d)
      if (p % d == 0) prime = false;
    if (!prime) continue;
    uint32_t pp = uint32_t(p.get_ui());
    std::vector<int> rows;
    for (int i = 0; i < tgt.num_gens(); ++i)
      if (tgt.factors()[i] % p == 0) rows.push_back(i);
    FpMat m(pp, int(rows.size()), f.src().num_gens());
    for (size_t i = 0; i < rows.size(); ++i)
      for (int j = 0; j < f.src().num_gens(); ++j) {
        Int v = f.matrix().at(rows[i], j);
        mpz_fdiv_r_ui(v.get_mpz_t(), v.get_mpz_t(), pp);
        m.at(int(i), j) = uint32_t(v.get_ui());
      }
    if (fp_rank(m) != int(rows.size())) return false;
  }
  return true;
}

}  // namespace

bool TMackHom::is_surjective() const {
  for (const auto& c : comps)
    if (!fast_surjective(c)) return false;
  return true;
}

TMackHomSpace tmack_hom_space(const TMackModule& src, const TMackModule& tgt) {
  require(src.table == tgt.table, "hom across different tables");
  const ClassTable& t = *src.table;
  const int n = t.num_subgroups();

  // variable layout
  std::vector<int> base(n, 0);
  int nvars = 0;
  for (int j = 0; j < n; ++j) {
    base[j] = nvars;
    nvars += tgt.values[j].num_gens() * src.values[j].num_gens();
  }
  auto var = [&](int j, int a, int b) { return base[j] + a * src.values[j].num_gens() + b; };
  std::vector<Int> dvar(nvars);
  for (int j = 0; j < n; ++j)
    for (int a = 0; a < tgt.values[j].num_gens(); ++a)
      for (int b = 0; b < src.values[j].num_gens(); ++b)
        dvar[var(j, a, b)] = tgt.values[j].factors()[a];

  std::vector<std::vector<std::pair<int, Int>>> eq_rows;  // sparse rows
  std::vector<Int> eq_mod;
  auto add_eq = [&](std::vector<std::pair<int, Int>> row, Int mod) {
    eq_rows.push_back(std::move(row));
    eq_mod.push_back(std::move(mod));
  };

  // validity of each component map
  for (int j = 0; j < n; ++j)
    for (int a = 0; a < tgt.values[j].num_gens(); ++a)
      for (int b = 0; b < src.values[j].num_gens(); ++b)
        add_eq({{var(j, a, b), src.values[j].factors()[b]}}, tgt.values[j].factors()[a]);

  // commuting with one structure map pair (maps M(c1) -> M(c2)):
  // X_{c2} . f_src - f_tgt . X_{c1} = 0
  auto add_commute = [&](int c1, int c2, const FinAbMap& fsrc, const FinAbMap& ftgt) {
    const int rs1 = src.values[c1].num_gens();
    const int rt2 = tgt.values[c2].num_gens();
    for (int a = 0; a < rt2; ++a)
      for (int b = 0; b < rs1; ++b) {
        std::vector<std::pair<int, Int>> row;
        // (X_{c2} . f_src)(a,b) = sum_m X_{c2}(a,m) f_src(m,b)
        for (int m = 0; m < src.values[c2].num_gens(); ++m) {
          const Int& c = fsrc.matrix().at(m, b);
          if (c != 0) row.push_back({var(c2, a, m), c});
        }
        // -(f_tgt . X_{c1})(a,b) = -sum_m f_tgt(a,m) X_{c1}(m,b)
        for (int m = 0; m < tgt.values[c1].num_gens(); ++m) {
          const Int& c = ftgt.matrix().at(a, m);
          if (c != 0) row.push_back({var(c1, m, b), -c});
        }
        if (!row.empty()) add_eq(std::move(row), tgt.values[c2].factors()[a]);
      }
  };

  for (int k = 0; k < n; ++k)
    for (int h : t.maximal_subgroups_of(k)) {
      add_commute(k, h, src.res_map(k, h), tgt.res_map(k, h));  // res: M(K) -> M(H)
      add_commute(h, k, src.cor_map(k, h), tgt.cor_map(k, h));  // cor: M(H) -> M(K)
    }
  for (int kgen = 0; kgen < t.group().num_generators(); ++kgen) {
    int s = t.group().generator_index(kgen);
    for (int j = 0; j < n; ++j)
      add_commute(j, t.conjugate(s, j), src.conj_map(s, j), tgt.conj_map(s, j));
  }

  // solution lattice of E x = 0 (mod per-row moduli)
  const int neq = int(eq_rows.size());
  IntMat big(neq, nvars + neq);
  for (int r = 0; r < neq; ++r) {
    for (auto& [v, c] : eq_rows[r]) big.at(r, v) += c;
    big.at(r, nvars + r) = eq_mod[r];
  }
  IntMat ker = kernel_basis(big);
  std::vector<int> xs(nvars);
  for (int i = 0; i < nvars; ++i) xs[i] = i;
  IntMat sols = ker.rows_subset(xs);
  // reduce solution generators mod the variable moduli
  for (int i = 0; i < sols.rows(); ++i)
    for (int j = 0; j < sols.cols(); ++j)
      mpz_fdiv_r(sols.at(i, j).get_mpz_t(), sols.at(i, j).get_mpz_t(), dvar[i].get_mpz_t());

  // abstract hom group: relations among the solution generators in prod Z/dvar
  IntMat block = IntMat::hstack(sols, IntMat::diagonal(dvar));
  IntMat kery = kernel_basis(block);
  std::vector<int> ys(sols.cols());
  for (int i = 0; i < sols.cols(); ++i) ys[i] = i;
  IntMat rel = kery.rows_subset(ys);

  TMackHomSpace hs;
  hs.src = &src;
  hs.tgt = &tgt;
  hs.group = FinAb::from_presentation(rel);
  for (int i = 0; i < hs.group.num_gens(); ++i) {
    std::vector<Int> coords = sols.apply(hs.group.lift(i));
    std::vector<IntMat> mats;
    for (int j = 0; j < n; ++j) {
      IntMat m(tgt.values[j].num_gens(), src.values[j].num_gens());
      for (int a = 0; a < m.rows(); ++a)
        for (int b = 0; b < m.cols(); ++b) {
          Int v = coords[var(j, a, b)];
          mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), tgt.values[j].factors()[a].get_mpz_t());
          m.at(a, b) = v;
        }
      mats.push_back(std::move(m));
    }
    hs.gen_maps.push_back(std::move(mats));
  }
  return hs;
}

TMackHom TMackHomSpace::element(const std::vector<Int>& coords) const {
  const ClassTable& t = *src->table;
  TMackHom hom;
  for (int j = 0; j < t.num_subgroups(); ++j) {
    IntMat m(tgt->values[j].num_gens(), src->values[j].num_gens());
    for (size_t i = 0; i < gen_maps.size(); ++i)
      if (coords[i] != 0) m = m + gen_maps[i][j].scaled(coords[i]);
    hom.comps.push_back(FinAbMap(src->values[j], tgt->values[j], std::move(m)));
  }
  return hom;
}

std::optional<TMackHom> TMackHomSpace::first(const std::function<bool(const TMackHom&)>& pred,
                                             long limit) const {
  check(group.order() <= limit, ErrorKind::capacity, "hom space too large to enumerate");
  for (const auto& coords : group.all_elements(limit)) {
    TMackHom h = element(coords);
    if (pred(h)) return h;
  }
  return std::nullopt;
}

TMackSub kernel_submodule(const TMackModule& m, const TMackHom& f) {
  const ClassTable& t = *m.table;
  TMackSub out;
  out.module.table = m.table;
  std::vector<SubgroupEmbedding> kers;
  for (int j = 0; j < t.num_subgroups(); ++j) {
    SubgroupEmbedding ke = kernel(f.comps[j]);
    out.module.values.push_back(ke.sub);
    out.embed.push_back(ke.embed);
    kers.push_back(std::move(ke));
  }
  auto restrict_map = [&](int c1, int c2, const FinAbMap& fm) {
    FinAbMap through = fm.compose(kers[c1].embed);
    auto down = corestrict_to_subgroup(kers[c2], through);
    require(down.has_value(), "structure map must preserve the kernel");
    return *down;
  };
  for (auto& [key, fm] : m.res) out.module.res[key] = restrict_map(key.first, key.second, fm);
  for (auto& [key, fm] : m.cor) out.module.cor[key] = restrict_map(key.second, key.first, fm);
  for (auto& [key, fm] : m.conj) {
    int h2 = t.conjugate(key.first, key.second);
    out.module.conj[key] = restrict_map(key.second, h2, fm);
  }
  return out;
}

GradedFpModule graded_mod_p(const TMackModule& m, uint32_t p) {
  const ClassTable& t = *m.table;
  const int n = t.num_subgroups();
  GradedFpModule out;
  std::vector<std::vector<int>> pgens(n);  // indices of p-divisible generators
  int total = 0;
  for (int j = 0; j < n; ++j) {
    out.block_offset.push_back(total);
    for (int i = 0; i < m.values[j].num_gens(); ++i)
      if (m.values[j].factors()[i] % p == 0) pgens[j].push_back(i);
    out.block_dim.push_back(int(pgens[j].size()));
    total += int(pgens[j].size());
  }

  auto embed_block_map = [&](FpMat& big, int c1, int c2, const FinAbMap& fm) {
    for (size_t a = 0; a < pgens[c2].size(); ++a)
      for (size_t b = 0; b < pgens[c1].size(); ++b) {
        Int v = fm.matrix().at(pgens[c2][a], pgens[c1][b]);
        mpz_fdiv_r_ui(v.get_mpz_t(), v.get_mpz_t(), p);
        big.at(out.block_offset[c2] + int(a), out.block_offset[c1] + int(b)) =
            uint32_t(v.get_ui());
      }
  };

  std::vector<FpMat> gens;
  // block projections
  for (int j = 0; j < n; ++j) {
    FpMat e(p, total, total);
    for (int i = 0; i < out.block_dim[j]; ++i)
      e.at(out.block_offset[j] + i, out.block_offset[j] + i) = 1;
    gens.push_back(std::move(e));
  }
  // bundled restriction and corestriction over maximal pairs
  FpMat res_big(p, total, total), cor_big(p, total, total);
  for (int k = 0; k < n; ++k)
    for (int h : t.maximal_subgroups_of(k)) {
      embed_block_map(res_big, k, h, m.res_map(k, h));
      embed_block_map(cor_big, h, k, m.cor_map(k, h));
    }
  gens.push_back(std::move(res_big));
  gens.push_back(std::move(cor_big));
  // conjugation per group generator
  for (int kgen = 0; kgen < t.group().num_generators(); ++kgen) {
    int s = t.group().generator_index(kgen);
    FpMat c(p, total, total);
    for (int j = 0; j < n; ++j) embed_block_map(c, j, t.conjugate(s, j), m.conj_map(s, j));
    gens.push_back(std::move(c));
  }
  out.mod = FpModule(p, total, std::move(gens));
  return out;
}

TmackContext::TmackContext(const ClassTable& t)
    : table_(&t), catalog_(TrivialSourceCatalog::build(t)) {}

const TMackModule& TmackContext::hat0_orbit(const std::string& cls) {
  auto it = hat0_cache_.find(cls);
  if (it != hat0_cache_.end()) return it->second;
  TMackModule m = hat0_tmack(*table_, GSetSpec{{cls}}, jobs);
  return hat0_cache_.emplace(cls, std::move(m)).first->second;
}

TMackModule TmackContext::hat0(const GSetSpec& x) { return hat0_tmack(*table_, x, jobs); }

TMackModule TmackContext::h1(std::shared_ptr<const GLattice> m) {
  return h1_tmack(*table_, std::move(m), jobs);
}

const std::vector<TauSimple>& TmackContext::simples(int p) {
  auto it = simples_.find(p);
  if (it != simples_.end()) return it->second;
  const ClassTable& t = *table_;

  // sum of the orbit modules over all classes; every simple is a quotient
  // of it, hence a composition factor of its mod-p reduction
  TMackModule big;
  bool first = true;
  for (const auto& cl : t.classes()) {
    const TMackModule& orb = hat0_orbit(cl.label);
    big = first ? orb : tmack_direct_sum(big, orb);
    first = false;
  }
  GradedFpModule graded = graded_mod_p(big, uint32_t(p));
  auto factors = composition_factors(graded.mod);

  std::vector<TauSimple> out;
  const int n = t.num_subgroups();
  for (auto& [factor, mult] : factors) {
    if (factor.dim() == 0) continue;
    // block dimensions via the projection generators
    std::vector<int> bdim(n, 0);
    for (int j = 0; j < n; ++j) bdim[j] = fp_rank(factor.gens()[j]);
    // minimal support subgroup(s)
    int min_order = 1 << 30;
    for (int j = 0; j < n; ++j)
      if (bdim[j] > 0) min_order = std::min(min_order, t.subgroup(j).order());
    require(min_order < (1 << 30), "simple factor has empty support");
    std::set<int> min_classes;
    for (int j = 0; j < n; ++j)
      if (bdim[j] > 0 && t.subgroup(j).order() == min_order) min_classes.insert(t.class_of(j));
    require(min_classes.size() == 1, "minimal support must be a single conjugacy class");
    int cls_idx = *min_classes.begin();
    const std::string& cls = t.classes()[cls_idx].label;
    int hrep = t.representative_of_class(cls_idx);

    // the block at the representative as a module over the vertex quotient
    const QuotientGroup& w = catalog_.quotient_of_class(cls);
    FpMat proj = factor.gens()[hrep];
    FpMat block = row_basis(proj.transpose()).transpose();  // column basis of the block
    std::vector<FpMat> wgens;
    const int conj_base = n + 2;
    for (int kg = 0; kg < w.group->num_generators(); ++kg) {
      int lift = w.section[w.group->generator_index(kg)];
      FpMat cm = FpMat::identity(factor.p(), factor.dim());
      for (int kk : t.group().word_for(lift)) cm = cm * factor.gens()[conj_base + kk];
      // restrict to the block
      FpMat rhs = cm * block;
      FpMat x(factor.p(), block.cols(), block.cols());
      for (int j2 = 0; j2 < block.cols(); ++j2) {
        std::vector<uint32_t> col(rhs.rows());
        for (int i2 = 0; i2 < rhs.rows(); ++i2) col[i2] = rhs.at(i2, j2);
        auto sol = fp_solve(block, col);
        require(sol.has_value(), "conjugation must preserve the support block");
        for (int i2 = 0; i2 < block.cols(); ++i2) x.at(i2, j2) = (*sol)[i2];
      }
      wgens.push_back(std::move(x));
    }
    FpModule vmod(uint32_t(p), block.cols(), wgens, w.group);
    const auto& simples_w = catalog_.simples_of_quotient(cls, p);
    int match = -1;
    for (size_t j = 0; j < simples_w.size(); ++j)
      if (fp_isomorphic(vmod, simples_w[j])) match = int(j);
    check(match >= 0, ErrorKind::internal,
          "support block of a simple factor matches no simple of the vertex quotient");

    TauSimple s;
    s.label = TSLabel{p, cls, t.classes()[cls_idx].representative.order(), match};
    s.realization.mod = factor;
    s.realization.block_offset = graded.block_offset;  // offsets are not meaningful here
    s.realization.block_dim = bdim;
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(),
            [](const TauSimple& a, const TauSimple& b) { return a.label < b.label; });
  for (size_t i = 0; i + 1 < out.size(); ++i)
    require(!(out[i].label == out[i + 1].label), "duplicate simple label");
  // cross-check against the catalog label set
  size_t expected = 0;
  for (auto& e : catalog_.entries())
    if (e.label.p == p) ++expected;
  require(out.size() == expected, "simple count disagrees with the catalog");
  for (auto& s : out) catalog_.entry(s.label);  // throws when absent
  return simples_.emplace(p, std::move(out)).first->second;
}

MultiplicityVector TmackContext::cover_vector(const TMackModule& n) {
  MultiplicityVector out;
  for (int p : catalog_.primes()) {
    GradedFpModule graded = graded_mod_p(n, uint32_t(p));
    if (graded.mod.dim() == 0) continue;
    for (const auto& s : simples(p)) {
      auto homs = fp_hom_space(graded.mod, s.realization.mod);
      if (homs.empty()) continue;
      auto endo = fp_end_algebra(s.realization.mod);
      require(homs.size() % endo.size() == 0, "hom dimension must be a multiple of End(S)");
      int mult = int(homs.size() / endo.size());
      if (mult) out.entries[s.label] += mult;
    }
  }
  return out;
}

}  // namespace glat
