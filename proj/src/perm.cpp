#include "glat/perm.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace glat {

Perm perm_identity(int degree) {
  Perm p(degree);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Perm perm_mul(const Perm& f, const Perm& g) {
  require(f.size() == g.size(), "degree mismatch in composition");
  Perm h(f.size());
  for (size_t i = 0; i < f.size(); ++i) h[i] = f[g[i]];
  return h;
}

Perm perm_inverse(const Perm& f) {
  Perm h(f.size());
  for (size_t i = 0; i < f.size(); ++i) h[f[i]] = uint8_t(i);
  return h;
}

Perm parse_cycles(const std::string& text, int degree) {
  Perm p = perm_identity(degree);
  std::vector<bool> moved(degree, false);
  size_t i = 0;
  auto skip_ws = [&] { while (i < text.size() && isspace((unsigned char)text[i])) ++i; };
  skip_ws();
  if (i < text.size() && (text.compare(i, 2, "()") == 0 || text.compare(i, 2, "e") == 0)) {
    return p;  // identity spellings
  }
  bool any = false;
  while (i < text.size()) {
    skip_ws();
    if (i >= text.size()) break;
    check(text[i] == '(', ErrorKind::input, "expected '(' in cycle notation: " + text);
    ++i;
    std::vector<int> cyc;
    for (;;) {
      skip_ws();
      check(i < text.size(), ErrorKind::input, "unterminated cycle: " + text);
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (text[i] == ',') {
        ++i;
        continue;
      }
      check(isdigit((unsigned char)text[i]), ErrorKind::input, "expected point in cycle: " + text);
      int v = 0;
      while (i < text.size() && isdigit((unsigned char)text[i])) v = v * 10 + (text[i++] - '0');
      check(v >= 1 && v <= degree, ErrorKind::input,
            "point " + std::to_string(v) + " out of range 1.." + std::to_string(degree));
      cyc.push_back(v - 1);
    }
    any = true;
    check(cyc.size() >= 2 || cyc.empty(), ErrorKind::input, "cycle of length 1 in: " + text);
    for (size_t k = 0; k < cyc.size(); ++k) {
      check(!moved[cyc[k]], ErrorKind::input,
            "overlapping cycles at point " + std::to_string(cyc[k] + 1) + " in: " + text);
      moved[cyc[k]] = true;
    }
    for (size_t k = 0; k < cyc.size(); ++k) p[cyc[k]] = uint8_t(cyc[(k + 1) % cyc.size()]);
  }
  check(any, ErrorKind::input, "empty generator text");
  return p;
}

std::string cycle_string(const Perm& f) {
  std::ostringstream os;
  std::vector<bool> seen(f.size(), false);
  bool any = false;
  for (size_t i = 0; i < f.size(); ++i) {
    if (seen[i] || f[i] == i) continue;
    os << "(";
    size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      os << (first ? "" : " ") << (j + 1);
      first = false;
      j = f[j];
    }
    os << ")";
    any = true;
  }
  return any ? os.str() : "()";
}

PermGroup::PermGroup(int degree, std::vector<Perm> generators, std::vector<std::string> gen_names)
    : degree_(degree) {
  check(degree >= 1 && degree <= 255, ErrorKind::input, "degree out of range 1..255");
  for (const auto& g : generators)
    check(int(g.size()) == degree, ErrorKind::input, "generator degree mismatch");

  // closure by BFS; record shortest-word parents for word_for()
  std::map<Perm, int> idx;
  std::vector<Perm> elems;
  std::vector<std::pair<int, int>> parent;
  Perm id = perm_identity(degree);
  idx[id] = 0;
  elems.push_back(id);
  parent.push_back({-1, -1});
  for (size_t head = 0; head < elems.size(); ++head) {
    for (size_t k = 0; k < generators.size(); ++k) {
      Perm n = perm_mul(generators[k], elems[head]);
      if (idx.count(n)) continue;
      check(int(elems.size()) < kMaxGroupOrder, ErrorKind::capacity,
            "group order exceeds supported bound " + std::to_string(kMaxGroupOrder));
      idx[n] = int(elems.size());
      elems.push_back(n);
      parent.push_back({int(head), int(k)});
    }
  }

  // re-number in lexicographic order (identity is automatically least)
  std::vector<int> order_of(elems.size());
  std::vector<int> by_lex(elems.size());
  std::iota(by_lex.begin(), by_lex.end(), 0);
  std::sort(by_lex.begin(), by_lex.end(), [&](int a, int b) { return elems[a] < elems[b]; });
  elements_.resize(elems.size());
  bfs_parent_.resize(elems.size());
  for (size_t new_i = 0; new_i < by_lex.size(); ++new_i) {
    elements_[new_i] = elems[by_lex[new_i]];
    order_of[by_lex[new_i]] = int(new_i);
    index_[elements_[new_i]] = int(new_i);
  }
  for (size_t old_i = 0; old_i < elems.size(); ++old_i) {
    auto [par, gen] = parent[old_i];
    bfs_parent_[order_of[old_i]] = {par < 0 ? -1 : order_of[par], gen};
  }
  require(elements_[0] == id, "identity must sort first");

  const int n = order();
  mul_.resize(size_t(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) mul_[size_t(a) * n + b] = uint16_t(index_.at(perm_mul(elements_[a], elements_[b])));
  inv_.resize(n);
  for (int a = 0; a < n; ++a) inv_[a] = uint16_t(index_.at(perm_inverse(elements_[a])));

  if (gen_names.empty())
    for (size_t k = 0; k < generators.size(); ++k) gen_names.push_back("g" + std::to_string(k + 1));
  check(gen_names.size() == generators.size(), ErrorKind::input, "generator name count mismatch");
  for (size_t k = 0; k < generators.size(); ++k) {
    gen_idx_.push_back(index_.at(generators[k]));
    gen_names_.push_back(gen_names[k]);
  }
}

int PermGroup::index_of(const Perm& f) const {
  auto it = index_.find(f);
  require(it != index_.end(), "element not in group");
  return it->second;
}

std::optional<int> PermGroup::generator_by_name(const std::string& name) const {
  for (size_t k = 0; k < gen_names_.size(); ++k)
    if (gen_names_[k] == name) return int(k);
  return std::nullopt;
}

int PermGroup::element_order(int a) const {
  int e = a, n = 1;
  while (e != 0) {
    e = mul(a, e);
    ++n;
  }
  return n;
}

std::vector<int> PermGroup::word_for(int a) const {
  std::vector<int> w;
  while (a != 0) {
    auto [par, gen] = bfs_parent_[a];
    require(par >= 0, "broken BFS parent chain");
    w.push_back(gen);
    a = par;
  }
  // parents record left-multiplication, so the word reads left to right
  return w;
}

bool Subgroup::contains(int e) const {
  return std::binary_search(elems.begin(), elems.end(), uint16_t(e));
}

namespace {

std::vector<uint16_t> closure(const PermGroup& g, std::vector<uint16_t> seed) {
  std::vector<bool> in(g.order(), false);
  std::vector<uint16_t> elems = {0};
  in[0] = true;
  std::vector<uint16_t> gens;
  for (auto s : seed)
    if (!in[s]) {
      in[s] = true;
      elems.push_back(s);
      gens.push_back(s);
    } else if (s != 0) {
      gens.push_back(s);
    }
  for (size_t head = 0; head < elems.size(); ++head)
    for (auto s : gens) {
      int n = g.mul(s, elems[head]);
      if (!in[n]) {
        in[n] = true;
        elems.push_back(uint16_t(n));
      }
    }
  std::sort(elems.begin(), elems.end());
  return elems;
}

std::vector<uint16_t> minimal_generators(const PermGroup& g, const std::vector<uint16_t>& elems) {
  if (elems.size() == 1) return {};
  // try generating sets of size 1, 2, ... choosing the lexicographically
  // first tuple that works; subgroup orders here stay tiny
  std::vector<uint16_t> nonid;
  for (auto e : elems)
    if (e != 0) nonid.push_back(e);
  for (auto a : nonid)
    if (closure(g, {a}) == elems) return {a};
  for (size_t i = 0; i < nonid.size(); ++i)
    for (size_t j = i + 1; j < nonid.size(); ++j)
      if (closure(g, {nonid[i], nonid[j]}) == elems) return {nonid[i], nonid[j]};
  for (size_t i = 0; i < nonid.size(); ++i)
    for (size_t j = i + 1; j < nonid.size(); ++j)
      for (size_t k = j + 1; k < nonid.size(); ++k)
        if (closure(g, {nonid[i], nonid[j], nonid[k]}) == elems)
          return {nonid[i], nonid[j], nonid[k]};
  for (size_t i = 0; i < nonid.size(); ++i)
    for (size_t j = i + 1; j < nonid.size(); ++j)
      for (size_t k = j + 1; k < nonid.size(); ++k)
        for (size_t l = k + 1; l < nonid.size(); ++l)
          if (closure(g, {nonid[i], nonid[j], nonid[k], nonid[l]}) == elems)
            return {nonid[i], nonid[j], nonid[k], nonid[l]};
  fail(ErrorKind::capacity, "subgroup needs more than 4 generators");
}

}  // namespace

Subgroup subgroup_from_elements(const PermGroup& g, std::vector<uint16_t> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  require(!elems.empty() && elems[0] == 0, "subgroup must contain the identity");
  require(closure(g, elems) == elems, "element set not closed");
  Subgroup h;
  h.parent = &g;
  h.elems = elems;
  h.gens = minimal_generators(g, elems);
  return h;
}

Subgroup subgroup_generated(const PermGroup& g, const std::vector<uint16_t>& gens) {
  return subgroup_from_elements(g, closure(g, gens));
}

Subgroup whole_group(const PermGroup& g) {
  std::vector<uint16_t> all(g.order());
  std::iota(all.begin(), all.end(), 0);
  return subgroup_from_elements(g, all);
}

Subgroup trivial_subgroup(const PermGroup& g) { return subgroup_from_elements(g, {0}); }

Subgroup conjugate_subgroup(const Subgroup& h, int g) {
  const PermGroup& gp = *h.parent;
  std::vector<uint16_t> elems;
  elems.reserve(h.elems.size());
  for (auto e : h.elems) elems.push_back(uint16_t(gp.conj(g, e)));
  return subgroup_from_elements(gp, std::move(elems));
}

bool is_subgroup_of(const Subgroup& h, const Subgroup& k) {
  return std::includes(k.elems.begin(), k.elems.end(), h.elems.begin(), h.elems.end());
}

bool is_normal_in(const Subgroup& h, const Subgroup& n) {
  for (auto g : n.gens) {
    for (auto e : h.elems)
      if (!h.contains(h.parent->conj(g, e))) return false;
  }
  return true;
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  std::vector<uint16_t> elems;
  std::set_intersection(a.elems.begin(), a.elems.end(), b.elems.begin(), b.elems.end(),
                        std::back_inserter(elems));
  return subgroup_from_elements(*a.parent, std::move(elems));
}

std::vector<SubgroupClass> subgroup_classes(const PermGroup& g) {
  check(g.order() <= kMaxSubgroupEnumOrder, ErrorKind::capacity,
        "subgroup enumeration supports |G| <= " + std::to_string(kMaxSubgroupEnumOrder) +
            ", got " + std::to_string(g.order()));

  // breadth-first closure: extend each known subgroup by one element
  std::set<std::vector<uint16_t>> seen;
  std::vector<std::vector<uint16_t>> all;
  std::vector<uint16_t> triv = {0};
  seen.insert(triv);
  all.push_back(triv);
  for (size_t head = 0; head < all.size(); ++head) {
    std::vector<uint16_t> base = all[head];
    for (int e = 1; e < g.order(); ++e) {
      if (std::binary_search(base.begin(), base.end(), uint16_t(e))) continue;
      std::vector<uint16_t> ext = base;
      ext.push_back(uint16_t(e));
      auto cl = closure(g, ext);
      if (seen.insert(cl).second) all.push_back(cl);
    }
  }

  // conjugacy orbits
  std::set<std::vector<uint16_t>> assigned;
  std::vector<SubgroupClass> classes;
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  for (const auto& elems : all) {
    if (assigned.count(elems)) continue;
    std::set<std::vector<uint16_t>> orbit;
    for (int x = 0; x < g.order(); ++x) {
      std::vector<uint16_t> c;
      c.reserve(elems.size());
      for (auto e : elems) c.push_back(uint16_t(g.conj(x, e)));
      std::sort(c.begin(), c.end());
      orbit.insert(std::move(c));
    }
    SubgroupClass cl;
    for (const auto& m : orbit) {
      assigned.insert(m);
      cl.members.push_back(subgroup_from_elements(g, m));
    }
    std::sort(cl.members.begin(), cl.members.end());
    cl.representative = cl.members.front();
    classes.push_back(std::move(cl));
  }
  std::sort(classes.begin(), classes.end(), [](const SubgroupClass& a, const SubgroupClass& b) {
    if (a.representative.order() != b.representative.order())
      return a.representative.order() < b.representative.order();
    return a.representative.elems < b.representative.elems;
  });
  std::map<int, int> counter;
  for (auto& cl : classes) {
    int ord = cl.representative.order();
    cl.label = std::to_string(ord) + "." + std::to_string(++counter[ord]);
    cl.structure = structure_name(cl.representative);
  }
  return classes;
}

std::vector<SubgroupClass> p_subgroup_classes(const PermGroup& g, int p) {
  check(p >= 2, ErrorKind::input, "p must be a prime >= 2");
  for (int d = 2; d * d <= p; ++d) check(p % d != 0, ErrorKind::input, "p must be prime");
  std::vector<SubgroupClass> out;
  for (auto& cl : subgroup_classes(g)) {
    int ord = cl.representative.order();
    while (ord % p == 0) ord /= p;
    if (ord == 1) out.push_back(cl);  // includes the trivial class (p^0)
  }
  return out;
}

Subgroup normalizer(const PermGroup& g, const Subgroup& h) {
  std::vector<uint16_t> elems;
  for (int x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (auto e : h.elems)
      if (!h.contains(g.conj(x, e))) {
        ok = false;
        break;
      }
    if (ok) elems.push_back(uint16_t(x));
  }
  return subgroup_from_elements(g, std::move(elems));
}

std::vector<std::pair<uint16_t, std::vector<uint16_t>>> left_cosets(const PermGroup& g, const Subgroup& h) {
  std::vector<bool> used(g.order(), false);
  std::vector<std::pair<uint16_t, std::vector<uint16_t>>> cosets;
  for (int x = 0; x < g.order(); ++x) {
    if (used[x]) continue;
    std::vector<uint16_t> c;
    for (auto e : h.elems) c.push_back(uint16_t(g.mul(x, e)));
    std::sort(c.begin(), c.end());
    for (auto e : c) used[e] = true;
    cosets.push_back({uint16_t(x), std::move(c)});  // x is lex-least: scan order
  }
  return cosets;
}

std::vector<uint16_t> left_transversal(const Subgroup& k, const Subgroup& h) {
  require(is_subgroup_of(h, k), "transversal requires h <= k");
  const PermGroup& g = *k.parent;
  std::set<uint16_t> used;
  std::vector<uint16_t> reps;
  for (auto x : k.elems) {
    if (used.count(x)) continue;
    reps.push_back(x);
    for (auto e : h.elems) used.insert(uint16_t(g.mul(x, e)));
  }
  return reps;
}

std::vector<uint16_t> right_transversal(const Subgroup& k, const Subgroup& h) {
  require(is_subgroup_of(h, k), "transversal requires h <= k");
  const PermGroup& g = *k.parent;
  std::set<uint16_t> used;
  std::vector<uint16_t> reps;
  for (auto x : k.elems) {
    if (used.count(x)) continue;
    reps.push_back(x);
    for (auto e : h.elems) used.insert(uint16_t(g.mul(e, x)));
  }
  return reps;
}

QuotientGroup quotient_as_perm_group(const PermGroup& g, const Subgroup& n, const Subgroup& h) {
  check(is_subgroup_of(h, n), ErrorKind::input, "quotient requires h <= n");
  check(is_normal_in(h, n), ErrorKind::input, "subgroup is not normal in its overgroup");
  // cosets of h in n, identified by lex-least representative
  std::map<uint16_t, int> coset_of;  // element -> coset index
  std::vector<uint16_t> reps;
  for (auto x : n.elems) {
    if (coset_of.count(x)) continue;
    int ci = int(reps.size());
    reps.push_back(x);
    for (auto e : h.elems) coset_of[uint16_t(g.mul(x, e))] = ci;
  }
  int deg = int(reps.size());
  check(deg <= 255, ErrorKind::capacity, "quotient degree exceeds 255");

  auto act = [&](uint16_t a) {
    Perm p(deg);
    for (int c = 0; c < deg; ++c) p[c] = uint8_t(coset_of.at(uint16_t(g.mul(a, reps[c]))));
    return p;
  };
  std::vector<Perm> qgens;
  std::vector<std::string> qnames;
  for (size_t k = 0; k < n.gens.size(); ++k) {
    Perm p = act(n.gens[k]);
    qgens.push_back(p);
    qnames.push_back("q" + std::to_string(k + 1));
  }
  if (qgens.empty()) {
    qgens.push_back(perm_identity(deg));
    qnames.push_back("q1");
  }
  QuotientGroup q;
  q.group = std::make_shared<PermGroup>(deg, qgens, qnames);
  q.projection.assign(g.order(), -1);
  std::map<int, uint16_t> first_preimage;
  for (auto x : n.elems) {
    int qi = q.group->index_of(act(x));
    q.projection[x] = qi;
    if (!first_preimage.count(qi)) first_preimage[qi] = x;  // n.elems ascending -> lex-least
  }
  q.section.resize(q.group->order());
  for (auto& [qi, x] : first_preimage) q.section[qi] = x;
  return q;
}

std::vector<DoubleCoset> double_cosets(const PermGroup& g, const Subgroup& k, const Subgroup& h) {
  std::vector<bool> used(g.order(), false);
  std::vector<DoubleCoset> out;
  for (int x = 0; x < g.order(); ++x) {
    if (used[x]) continue;
    DoubleCoset dc;
    dc.left = k;
    dc.right = h;
    dc.rep = uint16_t(x);  // scan order makes this the lex-least element
    std::set<uint16_t> elems;
    for (auto a : k.elems)
      for (auto b : h.elems) elems.insert(uint16_t(g.mul(g.mul(a, x), b)));
    for (auto e : elems) {
      used[e] = true;
      dc.elems.push_back(e);
    }
    out.push_back(std::move(dc));
  }
  return out;
}

namespace {

// Abelian invariant factors recovered from element-order statistics.
std::vector<int> abelian_type(const PermGroup& g, const std::vector<uint16_t>& elems) {
  int n = int(elems.size());
  std::map<int, std::vector<int>> p_lambda;  // prime -> partition (descending exponents)
  for (int p = 2; p <= n; ++p) {
    if (n % p) continue;
    bool prime = true;
    for (int d = 2; d * d <= p; ++d)
      if (p % d == 0) prime = false;
    if (!prime) continue;
    // s_k = log_p #{x : x^{p^k} = 1}; the partition's conjugate increments
    std::vector<int> s = {0};
    for (int k = 1;; ++k) {
      int64_t pk = 1;
      for (int t = 0; t < k; ++t) pk *= p;
      int cnt = 0;
      for (auto e : elems) {
        int ord = g.element_order(e);
        if (pk % ord == 0) ++cnt;
      }
      int sk = 0;
      while (cnt > 1) {
        cnt /= p;
        ++sk;
      }
      s.push_back(sk);
      if (s[k] == s[k - 1]) break;
    }
    // #parts >= k equals s[k] - s[k-1]
    std::vector<int> lambda(s[1], 0);
    for (size_t k = 1; k < s.size(); ++k) {
      int parts_ge_k = s[k] - s[k - 1];
      for (int t = 0; t < parts_ge_k; ++t) lambda[t] = int(k);
    }
    if (!lambda.empty()) p_lambda[p] = lambda;
  }
  size_t maxlen = 0;
  for (auto& [p, l] : p_lambda) maxlen = std::max(maxlen, l.size());
  std::vector<int> factors(maxlen, 1);
  for (auto& [p, l] : p_lambda)
    for (size_t i = 0; i < l.size(); ++i) {
      int64_t pe = 1;
      for (int t = 0; t < l[i]; ++t) pe *= p;
      factors[i] *= int(pe);
    }
  std::sort(factors.begin(), factors.end());  // ascending divisibility chain
  return factors;
}

}  // namespace

std::string structure_name(const Subgroup& h) {
  const PermGroup& g = *h.parent;
  int n = h.order();
  if (n == 1) return "1";

  bool abelian = true;
  for (auto a : h.gens)
    for (auto b : h.gens)
      if (g.mul(a, b) != g.mul(b, a)) abelian = false;
  if (abelian) {
    auto f = abelian_type(g, h.elems);
    std::vector<std::string> parts;
    for (int d : f) parts.push_back("C" + std::to_string(d));
    return join(parts, "x");
  }

  int involutions = 0, max_order = 1;
  for (auto e : h.elems) {
    int o = g.element_order(e);
    if (o == 2) ++involutions;
    max_order = std::max(max_order, o);
  }
  // dihedral: cyclic index-2 subgroup inverted by an involution
  if (n % 2 == 0 && max_order >= n / 2) {
    for (auto r : h.elems) {
      if (g.element_order(r) != n / 2) continue;
      for (auto t : h.elems) {
        if (g.element_order(t) != 2) continue;
        if (g.conj(t, r) == g.inv(r)) {
          // confirm <r, t> = h
          if (subgroup_generated(g, {r, t}).elems == h.elems)
            return n == 6 ? "S3" : "D" + std::to_string(n);
        }
      }
    }
  }
  if (n == 8 && involutions == 1) return "Q8";
  if (n == 12 && involutions == 3) return "A4";
  if (n == 12 && involutions == 1) return "Dic3";
  if (n == 24 && involutions == 9) return "S4";
  return "nonabelian" + std::to_string(n) + "i" + std::to_string(involutions);
}

ClassTable ClassTable::build(std::shared_ptr<const PermGroup> group) {
  ClassTable t;
  t.group_ = std::move(group);
  t.classes_ = subgroup_classes(*t.group_);
  for (const auto& cl : t.classes_)
    for (const auto& m : cl.members) t.subgroups_.push_back(m);
  std::sort(t.subgroups_.begin(), t.subgroups_.end(),
            [](const Subgroup& a, const Subgroup& b) {
              return a.order() != b.order() ? a.order() < b.order() : a.elems < b.elems;
            });
  for (size_t i = 0; i < t.subgroups_.size(); ++i) t.index_[t.subgroups_[i].elems] = int(i);
  t.class_of_.assign(t.subgroups_.size(), -1);
  t.rep_sub_.assign(t.classes_.size(), -1);
  for (size_t c = 0; c < t.classes_.size(); ++c) {
    t.label_to_class_[t.classes_[c].label] = int(c);
    t.rep_sub_[c] = t.index_.at(t.classes_[c].representative.elems);
    for (const auto& m : t.classes_[c].members) t.class_of_[t.index_.at(m.elems)] = int(c);
  }
  const int n = int(t.subgroups_.size());
  t.leq_.assign(size_t(n) * n, 0);
  for (int h = 0; h < n; ++h)
    for (int k = 0; k < n; ++k)
      if (is_subgroup_of(t.subgroups_[h], t.subgroups_[k])) t.leq_[size_t(h) * n + k] = 1;
  t.maximal_in_.resize(n);
  for (int k = 0; k < n; ++k) {
    for (int h = 0; h < n; ++h) {
      if (h == k || !t.leq(h, k)) continue;
      bool maximal = true;
      for (int m = 0; m < n && maximal; ++m)
        if (m != h && m != k && t.leq(h, m) && t.leq(m, k)) maximal = false;
      if (maximal) t.maximal_in_[k].push_back(h);
    }
  }
  require(t.subgroups_.front().order() == 1 && t.subgroups_.back().order() == t.group_->order(),
          "subgroup table must start at 1 and end at G");
  return t;
}

int ClassTable::subgroup_index(const Subgroup& h) const {
  auto it = index_.find(h.elems);
  require(it != index_.end(), "subgroup not in table");
  return it->second;
}

int ClassTable::class_by_label(const std::string& label) const {
  auto it = label_to_class_.find(label);
  check(it != label_to_class_.end(), ErrorKind::input, "unknown subgroup class label: " + label);
  return it->second;
}

int ClassTable::conjugate(int g, int sub_idx) const {
  std::vector<uint16_t> elems;
  elems.reserve(subgroups_[sub_idx].elems.size());
  for (auto e : subgroups_[sub_idx].elems) elems.push_back(uint16_t(group_->conj(g, e)));
  std::sort(elems.begin(), elems.end());
  auto it = index_.find(elems);
  require(it != index_.end(), "conjugate subgroup not in table");
  return it->second;
}

int ClassTable::intersection(int a, int b) const {
  std::vector<uint16_t> elems;
  std::set_intersection(subgroups_[a].elems.begin(), subgroups_[a].elems.end(),
                        subgroups_[b].elems.begin(), subgroups_[b].elems.end(),
                        std::back_inserter(elems));
  auto it = index_.find(elems);
  require(it != index_.end(), "intersection subgroup not in table");
  return it->second;
}

}  // namespace glat
