#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "glat/presentations.hpp"
#include "glat/tau.hpp"

using namespace glat;
using namespace glat_test;

namespace {

struct Fix {
  std::shared_ptr<PermGroup> g = make_d12();
  ClassTable t = ClassTable::build(g);
  std::map<std::string, std::string> alias = d12_aliases(*g, t.classes());
  TmackContext ctx{t};
  std::string cls(const std::string& a) const { return alias.at(a); }
  int rep(const std::string& a) const {
    return t.representative_of_class(t.class_by_label(cls(a)));
  }

  // canonical TSLabel of a published table-2 module
  TSLabel label_of(int p, const std::string& alias_cls, const FpModule& want) {
    for (auto& e : ctx.catalog().entries())
      if (e.label.p == p && e.label.vertex_class == cls(alias_cls) &&
          e.realization.dim() == want.dim() && fp_isomorphic(e.realization, want))
        return e.label;
    throw Error(ErrorKind::internal, "catalog entry not found");
  }
  FpModule t2(const std::string& which);
};

FpModule Fix::t2(const std::string& which) {
  auto mk = [&](uint32_t p, std::vector<std::vector<uint32_t>> tau,
                std::vector<std::vector<uint32_t>> delta,
                std::vector<std::vector<uint32_t>> sigma) {
    std::vector<FpMat> gens = {FpMat::from_rows(p, tau), FpMat::from_rows(p, delta),
                               FpMat::from_rows(p, sigma)};
    return FpModule(p, int(tau.size()), gens, g);
  };
  if (which == "A1,2") return mk(2, {{0, 1}, {1, 0}}, {{0, 1}, {1, 1}}, {{1, 0}, {0, 1}});
  if (which == "A2,1") return mk(2, {{1, 0}, {0, 1}}, {{1, 0}, {0, 1}}, {{0, 1}, {1, 0}});
  if (which == "C,1") return mk(2, {{1}}, {{1}}, {{1}});
  if (which == "B,0") return mk(3, {{1}}, {{1}}, {{1}});
  if (which == "B,2") return mk(3, {{1}}, {{1}}, {{2}});
  throw Error(ErrorKind::input, "unknown label");
}

Fix& fix() {
  static Fix f;
  return f;
}

}  // namespace

TEST_CASE("double-coset algebra of C2") {
  auto g = make_c2();
  ClassTable t = ClassTable::build(g);
  TauAlgebra tau = TauAlgebra::build(t);
  // blocks: (1,1) has two symbols, the other three blocks one each
  CHECK(tau.num_symbols() == 5);
  CHECK(tau.modulus() == 2);
  // identity decomposes as the sum of [H e H]
  auto ids = tau.identity_symbols();
  CHECK(ids.size() == 2);
  for (int i : ids) {
    auto sq = tau.mult(i, i);
    REQUIRE(sq.size() == 1);
    CHECK(sq.begin()->first == i);
    CHECK(sq.begin()->second == 1);
  }
  // additive quotient by the ideal is a single Z/2
  CHECK(tau.additive_group().factors() == std::vector<Int>{2});
}

TEST_CASE("double-coset algebra of S3: identity and associativity spot checks") {
  auto g = make_s3();
  ClassTable t = ClassTable::build(g);
  TauAlgebra tau = TauAlgebra::build(t);
  auto ids = tau.identity_symbols();
  // sum of [HeH] is a two-sided identity on the symbol basis
  for (int s = 0; s < tau.num_symbols(); ++s) {
    std::map<int, long> left_sum, right_sum;
    for (int i : ids) {
      for (auto& [k, c] : tau.mult(i, s)) left_sum[k] += c;
      for (auto& [k, c] : tau.mult(s, i)) right_sum[k] += c;
    }
    for (auto it = left_sum.begin(); it != left_sum.end();)
      it = it->second == 0 ? left_sum.erase(it) : std::next(it);
    for (auto it = right_sum.begin(); it != right_sum.end();)
      it = it->second == 0 ? right_sum.erase(it) : std::next(it);
    CHECK(left_sum == std::map<int, long>{{s, 1}});
    CHECK(right_sum == std::map<int, long>{{s, 1}});
  }
  // associativity on a sample of triples
  SplitMix64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    int a = int(rng.below(tau.num_symbols()));
    int b = int(rng.below(tau.num_symbols()));
    int c = int(rng.below(tau.num_symbols()));
    std::map<int, long> lhs, rhs;
    for (auto& [ab, cab] : tau.mult(a, b))
      for (auto& [abc, cc] : tau.mult(ab, c)) lhs[abc] += cab * cc;
    for (auto& [bc, cbc] : tau.mult(b, c))
      for (auto& [abc, cc] : tau.mult(a, bc)) rhs[abc] += cbc * cc;
    for (auto it = lhs.begin(); it != lhs.end();)
      it = it->second == 0 ? lhs.erase(it) : std::next(it);
    for (auto it = rhs.begin(); it != rhs.end();)
      it = it->second == 0 ? rhs.erase(it) : std::next(it);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("symbol actions agree with restriction, corestriction, products") {
  Fix& f = fix();
  TauAlgebra tau = TauAlgebra::build(f.t);
  const TMackModule& m = f.ctx.hat0_orbit(f.cls("C"));

  // [K e H] with H <= K acts as plain restriction, [H e K] as corestriction
  int kidx = f.rep("E1"), hidx = f.rep("B");
  REQUIRE(f.t.leq(hidx, kidx));
  DCSymbol res_sym{kidx, hidx, 0};
  CHECK(m.act_symbol(res_sym) == m.res_map(kidx, hidx));
  DCSymbol cor_sym{hidx, kidx, 0};
  CHECK(m.act_symbol(cor_sym) == m.cor_map(kidx, hidx));

  // structure constants match composition of actions on a hat0 module
  SplitMix64 rng(1234);
  int checked = 0;
  while (checked < 60) {
    int a = int(rng.below(tau.num_symbols()));
    int b = int(rng.below(tau.num_symbols()));
    const DCSymbol &sa = tau.symbol(a), &sb = tau.symbol(b);
    if (sa.h_sub != sb.k_sub) continue;
    ++checked;
    // act(a . b) = act(b) . act(a)
    FinAbMap lhs = m.act_symbol(sb).compose(m.act_symbol(sa));
    FinAbMap rhs = FinAbMap::zero(m.values[sa.k_sub], m.values[sb.h_sub]);
    for (auto& [cidx, coeff] : tau.mult(a, b))
      rhs = rhs + m.act_symbol(tau.symbol(cidx)).scaled(coeff);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("hat0 and h1 modules") {
  Fix& f = fix();
  // hat0(G/1) is the zero module (free permutation module)
  TMackModule reg = f.ctx.hat0_orbit(f.cls("1"));
  CHECK(reg.is_trivial());
  // hat0(G/G) at G is Z/12
  const TMackModule& tg = f.ctx.hat0_orbit(f.cls("G"));
  CHECK(tg.values[f.rep("G")].factors() == std::vector<Int>{12});

  auto m = std::make_shared<GLattice>(make_dp6_lattice(f.g));
  TMackModule n = f.ctx.h1(m);
  CHECK(n.values[f.rep("A1")].factors() == std::vector<Int>{2, 2});
  CHECK(n.values[f.rep("B")].factors() == std::vector<Int>{3});
  CHECK(n.values[0].is_trivial());  // Tate condition
}

TEST_CASE("hom spaces: sizes and kernels") {
  Fix& f = fix();
  auto m = std::make_shared<GLattice>(make_dp6_lattice(f.g));
  TMackModule n = f.ctx.h1(m);
  // Hom(hat0(G/H), N) has |N(H)| elements (Yoneda)
  for (const std::string a : {"A1", "B", "C", "E1"}) {
    const TMackModule& t0 = f.ctx.hat0_orbit(f.cls(a));
    TMackHomSpace hs = tmack_hom_space(t0, n);
    CAPTURE(a);
    CHECK(hs.group.order() == n.values[f.rep(a)].order());
  }
}

TEST_CASE("cover vectors and the two multiplicity routes") {
  Fix& f = fix();
  auto m = std::make_shared<GLattice>(make_dp6_lattice(f.g));
  TMackModule n = f.ctx.h1(m);
  MultiplicityVector beta0 = f.ctx.cover_vector(n);
  TSLabel a12 = f.label_of(2, "A1", f.t2("A1,2"));
  TSLabel b2 = f.label_of(3, "B", f.t2("B,2"));
  MultiplicityVector expect;
  expect.entries = {{a12, 1}, {b2, 1}};
  CAPTURE(beta0.str());
  CHECK(beta0 == expect);

  // route agreement: tau-module head vs meataxe decomposition
  for (const std::string a : {"A1", "B", "C", "D", "E1", "G"}) {
    MultiplicityVector via_head = f.ctx.cover_vector(f.ctx.hat0_orbit(f.cls(a)));
    MultiplicityVector via_meataxe = f.ctx.catalog().orbit_vector(f.cls(a));
    CAPTURE(a);
    CAPTURE(via_head.str());
    CAPTURE(via_meataxe.str());
    CHECK(via_head == via_meataxe);
  }
}

TEST_CASE("betti pair of the fixture lattice") {
  Fix& f = fix();
  auto m = std::make_shared<GLattice>(make_dp6_lattice(f.g));
  BettiPair b = betti_presentation(f.ctx, m);
  TSLabel a12 = f.label_of(2, "A1", f.t2("A1,2"));
  TSLabel b2 = f.label_of(3, "B", f.t2("B,2"));
  MultiplicityVector expect;
  expect.entries = {{a12, 1}, {b2, 1}};
  CHECK(b.beta0 == expect);
  CHECK(b.beta1.is_zero());

  // permutation lattice: both vectors vanish
  auto p = std::make_shared<GLattice>(perm_lattice(f.t, GSetSpec{{f.cls("B")}}));
  BettiPair bp = betti_presentation(f.ctx, p);
  CHECK(bp.beta0.is_zero());
  CHECK(bp.beta1.is_zero());
}

TEST_CASE("betti gate refuses non-retract-rational input") {
  auto g = make_c2c2();
  ClassTable t = ClassTable::build(g);
  TmackContext ctx(t);
  // norm-one lattice of C2 x C2
  GLattice reg = perm_lattice(t, GSetSpec{{t.classes().front().label}});
  IntMat v(4, 1);
  for (int i = 0; i < 4; ++i) v.at(i, 0) = 1;
  Snf fsnf = smith(v);
  std::vector<int> keep = {1, 2, 3};
  IntMat proj = fsnf.u.rows_subset(keep);
  IntMat lift = inverse_unimodular(fsnf.u).cols_subset(keep);
  std::map<std::string, IntMat> act;
  for (int k = 0; k < g->num_generators(); ++k) {
    const std::string& name = g->generator_name(k);
    act[name] = proj * reg.gen_action().at(name) * lift;
  }
  auto n1 = std::make_shared<GLattice>(GLattice(g, 3, act));
  CHECK_THROWS_AS(betti_presentation(ctx, n1), Error);
  try {
    betti_presentation(ctx, n1);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::refusal);
  }
}

TEST_CASE("enumeration of minimal presentations") {
  Fix& f = fix();
  auto m = std::make_shared<GLattice>(make_dp6_lattice(f.g));
  BettiPair b = betti_presentation(f.ctx, m);
  auto pairs = enumerate_minimal_presentations(f.ctx, b.beta0, b.beta1);
  REQUIRE(pairs.size() == 4);
  std::set<std::vector<std::string>> x0s;
  for (auto& [x0, x1] : pairs) x0s.insert(x0.orbits);
  std::set<std::vector<std::string>> want;
  auto sorted_pair = [&](const std::string& a, const std::string& b2) {
    GSetSpec s{{f.cls(a), f.cls(b2)}};
    return s.sorted(f.t).orbits;
  };
  want.insert(sorted_pair("A1", "B"));
  want.insert(sorted_pair("C", "B"));
  want.insert(sorted_pair("A1", "E1"));
  want.insert(sorted_pair("C", "E1"));
  CHECK(x0s == want);

  // the choice leading to the published description
  for (auto& [x0, x1] : pairs) {
    if (x0.orbits != sorted_pair("C", "E1")) continue;
    CHECK(x1.orbits == sorted_pair("A2", "G"));
  }

  // beta0 = 0 gives the empty pair
  auto empty_pairs = enumerate_minimal_presentations(f.ctx, MultiplicityVector{}, MultiplicityVector{});
  REQUIRE(empty_pairs.size() == 1);
  CHECK(empty_pairs[0].first.empty());
  CHECK(empty_pairs[0].second.empty());
}

TEST_CASE("realize and verify the published choice") {
  Fix& f = fix();
  auto m = std::make_shared<GLattice>(make_dp6_lattice(f.g));
  GSetSpec x0 = GSetSpec{{f.cls("C"), f.cls("E1")}}.sorted(f.t);
  GSetSpec x1 = GSetSpec{{f.cls("A2"), f.cls("G")}}.sorted(f.t);
  PresentationSpec spec = realize_presentation(f.ctx, m, x0, x1);
  CHECK(spec.certified());
  CHECK(!spec.psi_terms.empty());

  // kernel cover vector matches the published decomposition
  TSLabel c1 = f.label_of(2, "C", f.t2("C,1"));
  TSLabel a21 = f.label_of(2, "A2", f.t2("A2,1"));
  TSLabel b0 = f.label_of(3, "B", f.t2("B,0"));
  MultiplicityVector want;
  want.entries = {{c1, 1}, {a21, 1}, {b0, 1}};
  CAPTURE(spec.kernel_cover.str());
  CHECK(spec.kernel_cover == want);

  // full re-verification from scratch
  ExactnessReport rep = verify_exactness(f.ctx, m, spec);
  CAPTURE(rep.failures.empty() ? "" : rep.failures.front().c_str());
  CHECK(rep.ok());

  // inequality law: alpha0 >= beta0 and alpha1 >= beta1 + (alpha0 - beta0)
  BettiPair betti = betti_presentation(f.ctx, m);
  CHECK(spec.alpha0.geq(betti.beta0));
  CHECK(spec.alpha1.geq(betti.beta1 + spec.alpha0.minus(betti.beta0)));

  // fault injection: zero psi breaks exactness
  PresentationSpec broken = spec;
  broken.psi = IntMat(spec.psi.rows(), spec.psi.cols());
  ExactnessReport rep2 = verify_exactness(f.ctx, m, broken);
  CHECK(!rep2.ok());
}

TEST_CASE("empty presentation for a permutation lattice") {
  Fix& f = fix();
  auto p = std::make_shared<GLattice>(perm_lattice(f.t, GSetSpec{{f.cls("E1")}}));
  PresentationSpec spec = realize_presentation(f.ctx, p, GSetSpec{}, GSetSpec{});
  CHECK(spec.certified());
  CHECK(verify_exactness(f.ctx, p, spec).ok());
}

TEST_CASE("admissibility recurrence") {
  MultiplicityVector b0, b1, a0, a1;
  TSLabel x{2, "4.1", 4, 0}, y{3, "3.1", 3, 0};
  b0.entries = {{x, 1}};
  b1.entries = {{y, 1}};
  a0.entries = {{x, 2}};
  a1.entries = {{x, 1}, {y, 1}};
  CHECK(admissible_chain({a0, a1}, {b0, b1}));
  // not enough x in degree 1 to absorb the padding
  a1.entries = {{y, 1}};
  CHECK(!admissible_chain({a0, a1}, {b0, b1}));
  // alpha0 below beta0
  a0.entries = {};
  CHECK(!admissible_chain({a0, a1}, {b0, b1}));
}
