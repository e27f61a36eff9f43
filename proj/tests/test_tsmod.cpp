#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "glat/tsmod.hpp"

using namespace glat;
using namespace glat_test;

namespace {

struct D12Fix {
  std::shared_ptr<PermGroup> g = make_d12();
  ClassTable t = ClassTable::build(g);
  std::map<std::string, std::string> alias = d12_aliases(*g, t.classes());
  std::string cls(const std::string& a) const { return alias.at(a); }
  Subgroup rep(const std::string& a) const {
    return t.classes()[t.class_by_label(cls(a))].representative;
  }
};

// the published matrices of the trivial source modules with nontrivial
// vertex, reduced mod p, in generator order (tau, delta, sigma)
FpModule table2_module(const D12Fix& f, const std::string& which) {
  auto mk = [&](uint32_t p, std::vector<std::vector<uint32_t>> tau,
                std::vector<std::vector<uint32_t>> delta,
                std::vector<std::vector<uint32_t>> sigma) {
    std::vector<FpMat> gens = {FpMat::from_rows(p, tau), FpMat::from_rows(p, delta),
                               FpMat::from_rows(p, sigma)};
    return FpModule(p, int(tau.size()), gens, f.g);
  };
  uint32_t p2 = 2, p3 = 3;
  if (which == "A1,1") return mk(p2, {{0, 1}, {1, 0}}, {{1, 0}, {0, 1}}, {{1, 0}, {0, 1}});
  if (which == "A1,2") return mk(p2, {{0, 1}, {1, 0}}, {{0, 1}, {1, 1}}, {{1, 0}, {0, 1}});
  if (which == "A2,1") return mk(p2, {{1, 0}, {0, 1}}, {{1, 0}, {0, 1}}, {{0, 1}, {1, 0}});
  if (which == "A3,1") return mk(p2, {{0, 1}, {1, 0}}, {{1, 0}, {0, 1}}, {{0, 1}, {1, 0}});
  if (which == "C,1") return mk(p2, {{1}}, {{1}}, {{1}});
  if (which == "B,0") return mk(p3, {{1}}, {{1}}, {{1}});
  if (which == "B,1") return mk(p3, {{2}}, {{1}}, {{1}});
  if (which == "B,2") return mk(p3, {{1}}, {{1}}, {{2}});
  if (which == "B,3") return mk(p3, {{2}}, {{1}}, {{2}});
  throw Error(ErrorKind::input, "unknown table2 label");
}

}  // namespace

TEST_CASE("module splitting on the fixture permutation modules") {
  D12Fix f;
  // F_2[G/C] (dim 3) -> dims 2 + 1
  FpModule pc = fp_perm_module(f.t, f.rep("C"), 2);
  auto parts = split_indecomposables(pc);
  REQUIRE(parts.size() == 2);
  CHECK(parts[0].first.dim() + parts[1].first.dim() == 3);
  CHECK(parts[0].second == 1);
  CHECK(parts[1].second == 1);

  // F_3[G/B] (dim 4) -> four one-dimensional summands
  FpModule pb = fp_perm_module(f.t, f.rep("B"), 3);
  auto parts3 = split_indecomposables(pb);
  int count = 0;
  for (auto& [m, mult] : parts3) {
    CHECK(m.dim() == 1);
    count += mult;
  }
  CHECK(count == 4);

  // a simple module splits as itself
  FpModule simple = table2_module(f, "B,1");
  auto sp = split_indecomposables(simple);
  REQUIRE(sp.size() == 1);
  CHECK(sp[0].second == 1);
  CHECK(sp[0].first.dim() == 1);
}

TEST_CASE("isomorphism testing separates the table modules") {
  D12Fix f;
  std::vector<std::string> labels2 = {"A1,1", "A1,2", "A2,1", "A3,1"};
  for (auto& a : labels2)
    for (auto& b : labels2) {
      CAPTURE(a);
      CAPTURE(b);
      CHECK(fp_isomorphic(table2_module(f, a), table2_module(f, b)) == (a == b));
    }
  std::vector<std::string> labels3 = {"B,0", "B,1", "B,2", "B,3"};
  for (auto& a : labels3)
    for (auto& b : labels3)
      CHECK(fp_isomorphic(table2_module(f, a), table2_module(f, b)) == (a == b));
}

TEST_CASE("vertices of the named summands") {
  D12Fix f;
  // trivial module: Sylow vertex (C at p=2, B at p=3)
  FpModule triv2 = fp_perm_module(f.t, whole_group(*f.g), 2);
  VertexResult v2 = vertex(f.t, triv2);
  CHECK(f.t.classes()[v2.class_idx].label == f.cls("C"));
  CHECK(!v2.projective);

  FpModule triv3 = fp_perm_module(f.t, whole_group(*f.g), 3);
  VertexResult v3 = vertex(f.t, triv3);
  CHECK(f.t.classes()[v3.class_idx].label == f.cls("B"));

  // the 2-dimensional summand of F_2[G/C] has vertex A1
  FpModule pc = fp_perm_module(f.t, f.rep("C"), 2);
  auto parts = split_indecomposables(pc);
  for (auto& [m, mult] : parts) {
    VertexResult v = vertex(f.t, m);
    if (m.dim() == 2) CHECK(f.t.classes()[v.class_idx].label == f.cls("A1"));
    if (m.dim() == 1) CHECK(f.t.classes()[v.class_idx].label == f.cls("C"));
  }

  // projective indecomposable: trivial vertex, flagged
  FpModule reg = fp_perm_module(f.t, trivial_subgroup(*f.g), 3);
  auto rparts = split_indecomposables(reg);
  for (auto& [m, mult] : rparts) CHECK(vertex(f.t, m).projective);
}

TEST_CASE("Brauer quotients") {
  D12Fix f;
  Subgroup c = f.rep("C");
  QuotientGroup w = quotient_as_perm_group(*f.g, normalizer(*f.g, c), c);
  FpModule pc = fp_perm_module(f.t, c, 2);
  FpModule bq = brauer_quotient(f.t, pc, c, w);
  CHECK(bq.dim() == 1);  // the identity coset is the only C-fixed line modulo traces

  // vanishing fixed space gives the zero module
  FpModule mb = fp_module_from_lattice(make_dp6_lattice(f.g), 2);
  Subgroup a1 = f.rep("A1");
  QuotientGroup wa = quotient_as_perm_group(*f.g, normalizer(*f.g, a1), a1);
  FpModule bq2 = brauer_quotient(f.t, mb, a1, wa);
  // sigma = -id = +id mod 2, so everything is fixed; traces from 1 cover
  // the image of the norm... dimension is whatever it is, just check sanity
  CHECK(bq2.dim() >= 0);

  // free module: vanishing Brauer quotient at any nontrivial p-subgroup
  FpModule reg = fp_perm_module(f.t, trivial_subgroup(*f.g), 2);
  FpModule bq3 = brauer_quotient(f.t, reg, a1, wa);
  CHECK(bq3.dim() == 0);
}

TEST_CASE("simple modules of the vertex quotients") {
  D12Fix f;
  // N(A1)/A1 is S3: two simples over F_2, of dims 1 and 2
  Subgroup a1 = f.rep("A1");
  QuotientGroup wa = quotient_as_perm_group(*f.g, normalizer(*f.g, a1), a1);
  auto s2 = simple_fp_modules(wa.group, 2);
  REQUIRE(s2.size() == 2);
  CHECK(s2[0].dim() == 1);
  CHECK(s2[1].dim() == 2);

  // N(B)/B is C2 x C2: four sign characters over F_3
  Subgroup b = f.rep("B");
  QuotientGroup wb = quotient_as_perm_group(*f.g, normalizer(*f.g, b), b);
  auto s3 = simple_fp_modules(wb.group, 3);
  REQUIRE(s3.size() == 4);
  for (auto& s : s3) CHECK(s.dim() == 1);

  // trivial group: one simple
  auto triv = make_trivial();
  CHECK(simple_fp_modules(triv, 2).size() == 1);
}

TEST_CASE("catalog matches the published table") {
  D12Fix f;
  TrivialSourceCatalog cat = TrivialSourceCatalog::build(f.t);
  REQUIRE(cat.primes() == std::vector<int>{2, 3});

  std::map<std::string, int> dim_by_class2;
  int n2 = 0, n3 = 0;
  for (auto& e : cat.entries()) {
    if (e.label.p == 2) {
      ++n2;
      dim_by_class2[e.label.vertex_class] += 0;  // touch
    } else {
      ++n3;
      CHECK(e.realization.dim() == 1);
      CHECK(e.label.vertex_class == f.cls("B"));
    }
  }
  CHECK(n2 == 5);
  CHECK(n3 == 4);

  // p=2 labels: (A1,x) twice with dim 2, (A2,x), (A3,x) dim 2, (C,x) dim 1
  std::map<std::string, std::vector<int>> dims2;
  for (auto& e : cat.entries())
    if (e.label.p == 2) dims2[e.label.vertex_class].push_back(e.realization.dim());
  CHECK(dims2[f.cls("A1")] == std::vector<int>{2, 2});
  CHECK(dims2[f.cls("A2")] == std::vector<int>{2});
  CHECK(dims2[f.cls("A3")] == std::vector<int>{2});
  CHECK(dims2[f.cls("C")] == std::vector<int>{1});

  // every catalog realization is isomorphic to its published counterpart
  auto find_entry = [&](int p, const std::string& vcls, int dim,
                        const FpModule& want) -> bool {
    for (auto& e : cat.entries())
      if (e.label.p == p && e.label.vertex_class == vcls && e.realization.dim() == dim &&
          fp_isomorphic(e.realization, want))
        return true;
    return false;
  };
  CHECK(find_entry(2, f.cls("A1"), 2, table2_module(f, "A1,1")));
  CHECK(find_entry(2, f.cls("A1"), 2, table2_module(f, "A1,2")));
  CHECK(find_entry(2, f.cls("A2"), 2, table2_module(f, "A2,1")));
  CHECK(find_entry(2, f.cls("A3"), 2, table2_module(f, "A3,1")));
  CHECK(find_entry(2, f.cls("C"), 1, table2_module(f, "C,1")));
  for (auto& lbl : {"B,0", "B,1", "B,2", "B,3"})
    CHECK(find_entry(3, f.cls("B"), 1, table2_module(f, lbl)));
}

TEST_CASE("small-group catalogs") {
  // C2: single entry, vertex C2, dim 1
  auto c2 = make_c2();
  ClassTable t2 = ClassTable::build(c2);
  TrivialSourceCatalog cat2 = TrivialSourceCatalog::build(t2);
  REQUIRE(cat2.entries().size() == 1);
  CHECK(cat2.entries()[0].realization.dim() == 1);
  CHECK(cat2.entries()[0].label.vertex_order == 2);

  // S3: p=2 gives the C2-vertex entries, p=3 gives two sign simples at C3
  auto s3 = make_s3();
  ClassTable t3 = ClassTable::build(s3);
  TrivialSourceCatalog cat3 = TrivialSourceCatalog::build(t3);
  int p2 = 0, p3 = 0;
  for (auto& e : cat3.entries()) (e.label.p == 2 ? p2 : p3)++;
  CHECK(p2 == 1);  // N(C2)/C2 is trivial, so a single simple
  CHECK(p3 == 2);  // N(C3)/C3 = C2 gives two sign characters over F_3
}

TEST_CASE("multiplicity vectors match the published decomposition table") {
  D12Fix f;
  TrivialSourceCatalog cat = TrivialSourceCatalog::build(f.t);

  auto label_of = [&](int p, const std::string& alias_cls, const FpModule& want) {
    for (auto& e : cat.entries())
      if (e.label.p == p && e.label.vertex_class == f.cls(alias_cls) &&
          e.realization.dim() == want.dim() && fp_isomorphic(e.realization, want))
        return e.label;
    throw Error(ErrorKind::internal, "catalog entry not found");
  };
  TSLabel A11 = label_of(2, "A1", table2_module(f, "A1,1"));
  TSLabel A12 = label_of(2, "A1", table2_module(f, "A1,2"));
  TSLabel A21 = label_of(2, "A2", table2_module(f, "A2,1"));
  TSLabel A31 = label_of(2, "A3", table2_module(f, "A3,1"));
  TSLabel C1 = label_of(2, "C", table2_module(f, "C,1"));
  TSLabel B0 = label_of(3, "B", table2_module(f, "B,0"));
  TSLabel B1 = label_of(3, "B", table2_module(f, "B,1"));
  TSLabel B2 = label_of(3, "B", table2_module(f, "B,2"));
  TSLabel B3 = label_of(3, "B", table2_module(f, "B,3"));

  auto expect = [&](const std::string& alias_cls, std::map<TSLabel, int> want) {
    MultiplicityVector v = cat.orbit_vector(f.cls(alias_cls));
    MultiplicityVector w;
    w.entries = want;
    CAPTURE(alias_cls);
    CAPTURE(v.str());
    CHECK(v == w);
  };
  expect("A1", {{A11, 1}, {A12, 2}});
  expect("A2", {{A21, 1}});
  expect("A3", {{A31, 1}});
  expect("C", {{A12, 1}, {C1, 1}});
  expect("B", {{B0, 1}, {B1, 1}, {B2, 1}, {B3, 1}});
  expect("D", {{A11, 1}, {B0, 1}, {B1, 1}});
  expect("E1", {{A21, 1}, {B0, 1}, {B2, 1}});
  expect("E2", {{A31, 1}, {B0, 1}, {B3, 1}});
  expect("G", {{C1, 1}, {B0, 1}});
  expect("1", {});  // the regular module is projective

  // additivity over disjoint unions
  GSetSpec x{{f.cls("C"), f.cls("E1")}};
  MultiplicityVector vx = multiplicity_vector(cat, x);
  MultiplicityVector sum = cat.orbit_vector(f.cls("C")) + cat.orbit_vector(f.cls("E1"));
  CHECK(vx == sum);

  // full table shape
  MultTable table = multiplicity_table(cat);
  CHECK(table.columns.size() == 9);
  CHECK(table.row_labels.size() == 10);
}
