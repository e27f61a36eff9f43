#ifndef GLAT_PERM_HPP
#define GLAT_PERM_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "glat/util.hpp"

namespace glat {

// Permutation of {0..degree-1} as a dense image array.  Composition order is
// fixed throughout as "apply right first": (f*g)(x) = f(g(x)).
using Perm = std::vector<uint8_t>;

Perm perm_identity(int degree);
Perm perm_mul(const Perm& f, const Perm& g);
Perm perm_inverse(const Perm& f);

// Parses one generator in cycle notation, e.g. "(1 2)(4 5)"; points are
// 1-indexed in text, 0-indexed internally.  Cycles within one generator must
// not overlap.
Perm parse_cycles(const std::string& text, int degree);
std::string cycle_string(const Perm& f);  // 1-indexed rendering

// A finite permutation group with its element list materialized.
// Supported order is <= kMaxGroupOrder; no stabilizer chains.
class PermGroup {
public:
  static constexpr int kMaxGroupOrder = 200;

  PermGroup(int degree, std::vector<Perm> generators, std::vector<std::string> gen_names = {});

  int degree() const { return degree_; }
  int order() const { return int(elements_.size()); }
  const std::vector<Perm>& elements() const { return elements_; }
  const Perm& element(int i) const { return elements_[i]; }
  int index_of(const Perm& f) const;

  int num_generators() const { return int(gen_idx_.size()); }
  int generator_index(int k) const { return gen_idx_[k]; }
  const std::string& generator_name(int k) const { return gen_names_[k]; }
  std::optional<int> generator_by_name(const std::string& name) const;

  int mul(int a, int b) const { return mul_[size_t(a) * order() + b]; }
  int inv(int a) const { return inv_[a]; }
  int conj(int g, int a) const { return mul(mul(g, a), inv(g)); }  // g a g^{-1}
  int identity() const { return 0; }  // the identity is lexicographically least
  int element_order(int a) const;

  // Word in generator indices with product equal to element a (BFS-shortest,
  // deterministic).  Empty for the identity.
  std::vector<int> word_for(int a) const;

private:
  int degree_;
  std::vector<Perm> elements_;           // sorted lexicographically
  std::map<Perm, int> index_;
  std::vector<int> gen_idx_;
  std::vector<std::string> gen_names_;
  std::vector<uint16_t> mul_, inv_;
  std::vector<std::pair<int, int>> bfs_parent_;  // (parent element, generator used)
};

// A subgroup given by its sorted element-index list plus a minimal
// generating list (searched by size, lexicographically first).
struct Subgroup {
  const PermGroup* parent = nullptr;
  std::vector<uint16_t> elems;  // sorted ascending; canonical key
  std::vector<uint16_t> gens;   // minimal generating list

  int order() const { return int(elems.size()); }
  bool contains(int e) const;
  bool operator==(const Subgroup& o) const { return parent == o.parent && elems == o.elems; }
  bool operator<(const Subgroup& o) const { return elems < o.elems; }
};

Subgroup subgroup_from_elements(const PermGroup& g, std::vector<uint16_t> elems);
Subgroup subgroup_generated(const PermGroup& g, const std::vector<uint16_t>& gens);
Subgroup whole_group(const PermGroup& g);
Subgroup trivial_subgroup(const PermGroup& g);
Subgroup conjugate_subgroup(const Subgroup& h, int g);
bool is_subgroup_of(const Subgroup& h, const Subgroup& k);  // h <= k
bool is_normal_in(const Subgroup& h, const Subgroup& n);
Subgroup intersect(const Subgroup& a, const Subgroup& b);

struct SubgroupClass {
  Subgroup representative;        // lexicographically least member
  std::vector<Subgroup> members;  // full conjugacy orbit, sorted
  std::string label;              // canonical "order.index" id
  std::string structure;          // e.g. "C2", "C2xC2", "S3", "D12"
  bool is_trivial() const { return representative.order() == 1; }
};

// All subgroups of g up to conjugacy, sorted by (order, representative).
// Capacity bound: |g| <= kMaxSubgroupEnumOrder.
constexpr int kMaxSubgroupEnumOrder = 48;
std::vector<SubgroupClass> subgroup_classes(const PermGroup& g);

// Classes whose representative has p-power order, the trivial class first.
std::vector<SubgroupClass> p_subgroup_classes(const PermGroup& g, int p);

Subgroup normalizer(const PermGroup& g, const Subgroup& h);

// The quotient n/h acting on its own cosets (faithful since h must be normal
// in n), with the projection and a lex-least section.
struct QuotientGroup {
  std::shared_ptr<PermGroup> group;
  std::vector<int> projection;      // parent element index -> quotient element index (-1 outside n)
  std::vector<uint16_t> section;    // quotient element index -> lex-least preimage in n
};
QuotientGroup quotient_as_perm_group(const PermGroup& g, const Subgroup& n, const Subgroup& h);

struct DoubleCoset {
  Subgroup left;   // K
  Subgroup right;  // H
  uint16_t rep;    // lexicographically least element of K g H
  std::vector<uint16_t> elems;
};

// Partition of g into K g H double cosets, ordered by representative.
std::vector<DoubleCoset> double_cosets(const PermGroup& g, const Subgroup& k, const Subgroup& h);

// Left cosets x H, each as (lex-least representative, sorted members),
// ordered by representative; the identity coset comes first.
std::vector<std::pair<uint16_t, std::vector<uint16_t>>> left_cosets(const PermGroup& g, const Subgroup& h);
// Left transversal of h in k (k >= h), lex-least representatives.
std::vector<uint16_t> left_transversal(const Subgroup& k, const Subgroup& h);
// Right transversal: k = union of h * t over returned t.
std::vector<uint16_t> right_transversal(const Subgroup& k, const Subgroup& h);

// Small-group structure name used in reports: invariant factors for abelian
// groups, named families (S3, D8, Q8, A4, Dic3, D2m) otherwise.
std::string structure_name(const Subgroup& h);

// Indexed view of the full subgroup lattice of one group: every subgroup
// (not just class representatives), inclusion data, and class membership.
// Built once and shared by the cohomology and module layers.
class ClassTable {
public:
  static ClassTable build(std::shared_ptr<const PermGroup> group);

  const PermGroup& group() const { return *group_; }
  std::shared_ptr<const PermGroup> group_ptr() const { return group_; }
  const std::vector<SubgroupClass>& classes() const { return classes_; }

  int num_subgroups() const { return int(subgroups_.size()); }
  const Subgroup& subgroup(int i) const { return subgroups_[i]; }
  int subgroup_index(const Subgroup& h) const;
  int class_of(int sub_idx) const { return class_of_[sub_idx]; }
  int representative_of_class(int class_idx) const { return rep_sub_[class_idx]; }
  int class_by_label(const std::string& label) const;
  int trivial_subgroup_index() const { return 0; }
  int whole_group_index() const { return int(subgroups_.size()) - 1; }

  bool leq(int h, int k) const { return leq_[size_t(h) * subgroups_.size() + k]; }
  const std::vector<int>& maximal_subgroups_of(int k) const { return maximal_in_[k]; }
  int conjugate(int g, int sub_idx) const;   // index of g H g^{-1}
  int intersection(int a, int b) const;

private:
  std::shared_ptr<const PermGroup> group_;
  std::vector<SubgroupClass> classes_;
  std::vector<Subgroup> subgroups_;  // sorted by (order, elems); trivial first, G last
  std::map<std::vector<uint16_t>, int> index_;
  std::vector<int> class_of_, rep_sub_;
  std::map<std::string, int> label_to_class_;
  std::vector<char> leq_;
  std::vector<std::vector<int>> maximal_in_;
};

}  // namespace glat

#endif
