#ifndef GLAT_TESTS_FIXTURES_HPP
#define GLAT_TESTS_FIXTURES_HPP

// Shared test fixtures: the dihedral group of order 12 embedded in S5 with
// generators tau=(12), delta=(123), sigma=(45), its rank-2 lattice from the
// degree-6 del Pezzo torus, and the paper-style class aliases A1..E2.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "glat/glattice.hpp"
#include "glat/perm.hpp"

namespace glat_test {

using namespace glat;

inline std::shared_ptr<PermGroup> make_d12() {
  std::vector<Perm> gens = {
      parse_cycles("(1 2)", 5),
      parse_cycles("(1 2 3)", 5),
      parse_cycles("(4 5)", 5),
  };
  return std::make_shared<PermGroup>(5, gens, std::vector<std::string>{"tau", "delta", "sigma"});
}

inline std::shared_ptr<PermGroup> make_s3() {
  std::vector<Perm> gens = {parse_cycles("(1 2)", 3), parse_cycles("(1 2 3)", 3)};
  return std::make_shared<PermGroup>(3, gens, std::vector<std::string>{"a", "b"});
}

inline std::shared_ptr<PermGroup> make_c4() {
  std::vector<Perm> gens = {parse_cycles("(1 2 3 4)", 4)};
  return std::make_shared<PermGroup>(4, gens, std::vector<std::string>{"r"});
}

inline std::shared_ptr<PermGroup> make_c2c2() {
  std::vector<Perm> gens = {parse_cycles("(1 2)", 4), parse_cycles("(3 4)", 4)};
  return std::make_shared<PermGroup>(4, gens, std::vector<std::string>{"a", "b"});
}

inline std::shared_ptr<PermGroup> make_c2() {
  std::vector<Perm> gens = {parse_cycles("(1 2)", 2)};
  return std::make_shared<PermGroup>(2, gens, std::vector<std::string>{"s"});
}

inline std::shared_ptr<PermGroup> make_trivial() {
  return std::make_shared<PermGroup>(1, std::vector<Perm>{}, std::vector<std::string>{});
}

// Subgroup generated by products of named generators; each word is a
// whitespace-separated product like "sigma tau".
inline Subgroup subgroup_by_words(const PermGroup& g, const std::vector<std::string>& words) {
  std::vector<uint16_t> gens;
  for (const auto& w : words) {
    Perm p = perm_identity(g.degree());
    std::string tok;
    std::istringstream is(w);
    while (is >> tok) {
      auto k = g.generator_by_name(tok);
      if (!k) throw Error(ErrorKind::input, "unknown generator " + tok);
      p = perm_mul(p, g.element(g.generator_index(*k)));
    }
    gens.push_back(uint16_t(g.index_of(p)));
  }
  return subgroup_generated(g, gens);
}

// Class label (canonical "order.index") of the class containing the subgroup
// generated by the given words.
inline std::string class_of_words(const PermGroup& g, const std::vector<SubgroupClass>& classes,
                                  const std::vector<std::string>& words) {
  Subgroup h = subgroup_by_words(g, words);
  for (const auto& cl : classes)
    for (const auto& m : cl.members)
      if (m.elems == h.elems) return cl.label;
  throw Error(ErrorKind::internal, "subgroup not found in class list");
}

// Paper-style aliases for the D12 fixture.
inline std::map<std::string, std::string> d12_aliases(const PermGroup& g,
                                                      const std::vector<SubgroupClass>& classes) {
  std::map<std::string, std::string> a;  // alias -> canonical label
  a["1"] = class_of_words(g, classes, {});
  a["A1"] = class_of_words(g, classes, {"sigma"});
  a["A2"] = class_of_words(g, classes, {"tau"});
  a["A3"] = class_of_words(g, classes, {"sigma tau"});
  a["B"] = class_of_words(g, classes, {"delta"});
  a["C"] = class_of_words(g, classes, {"sigma", "tau"});
  a["D"] = class_of_words(g, classes, {"sigma delta"});
  a["E1"] = class_of_words(g, classes, {"tau", "delta"});
  a["E2"] = class_of_words(g, classes, {"sigma tau", "delta"});
  a["G"] = class_of_words(g, classes, {"tau", "delta", "sigma"});
  return a;
}

// The rank-2 character lattice of the torus in a degree-6 del Pezzo surface:
// tau swaps coordinates, delta acts with order 3, sigma is -identity.
inline GLattice make_dp6_lattice(std::shared_ptr<PermGroup> g) {
  std::map<std::string, IntMat> act;
  act["tau"] = IntMat{{0, 1}, {1, 0}};
  act["delta"] = IntMat{{0, -1}, {1, -1}};
  act["sigma"] = IntMat{{-1, 0}, {0, -1}};
  return GLattice(std::move(g), 2, act);
}

// Rank-1 sign lattice through the quotient onto <sigma>.
inline GLattice make_sign_lattice(std::shared_ptr<PermGroup> g) {
  std::map<std::string, IntMat> act;
  for (int k = 0; k < g->num_generators(); ++k) {
    const std::string& name = g->generator_name(k);
    act[name] = (name == "sigma") ? IntMat{{-1}} : IntMat{{1}};
  }
  return GLattice(std::move(g), 1, act);
}

inline GLattice make_trivial_lattice(std::shared_ptr<PermGroup> g, int rank = 1) {
  std::map<std::string, IntMat> act;
  for (int k = 0; k < g->num_generators(); ++k) act[g->generator_name(k)] = IntMat::identity(rank);
  return GLattice(std::move(g), rank, act);
}

}  // namespace glat_test

#endif
