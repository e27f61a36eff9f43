#ifndef GLAT_TESTS_ORACLES_HPP
#define GLAT_TESTS_ORACLES_HPP

// Independent test oracles.  Everything here is deliberately self-contained:
// the mod-m linear algebra and the abelian-group reconstruction share no
// code with the library paths they are used to check.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "glat/glattice.hpp"
#include "glat/perm.hpp"

namespace glat_oracle {

using glat::ClassTable;
using glat::GLattice;
using glat::Subgroup;

inline long norm_mod(long x, long m) { return ((x % m) + m) % m; }

inline long pow_long(long b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

inline long inv_mod(long a, long m) {
  // extended gcd; a must be a unit mod m
  long t = 0, newt = 1, r = m, newr = norm_mod(a, m);
  while (newr != 0) {
    long q = r / newr;
    std::swap(t -= q * newt, newt);
    std::swap(r -= q * newr, newr);
  }
  if (t < 0) t += m;
  return t;
}

// Row span over Z/p^e in Howell-style form: rows have strictly increasing
// pivot columns, each pivot entry is a power of p, and the span is closed
// under multiplication by p^(e-v) (annihilator rows are inserted on the
// fly), so reduce() yields canonical coset representatives.
struct PPEchelon {
  long p = 2;
  int e = 1;
  long q = 2;  // p^e
  int cols = 0;
  std::vector<std::vector<long>> rows;
  std::vector<int> pivcol;
  std::vector<int> pivv;  // pivot = p^pivv

  static int val_of(long x, long p, int e) {
    if (x == 0) return e;
    int v = 0;
    while (x % p == 0) {
      x /= p;
      ++v;
    }
    return v;
  }

  void insert(std::vector<long> r) {
    for (auto& x : r) x = norm_mod(x, q);
    for (;;) {
      int pc = -1;
      for (int c = 0; c < cols; ++c)
        if (r[c]) {
          pc = c;
          break;
        }
      if (pc < 0) return;
      int idx = -1;
      for (size_t i = 0; i < rows.size(); ++i)
        if (pivcol[i] == pc) idx = int(i);
      if (idx < 0) {
        // new pivot column: normalize so the pivot is a pure p-power
        int v = val_of(r[pc], p, e);
        long unit = r[pc] / pow_long(p, v);
        long ui = inv_mod(norm_mod(unit, q), q);
        for (auto& x : r) x = norm_mod(x * ui, q);
        size_t at = 0;
        while (at < rows.size() && pivcol[at] < pc) ++at;
        rows.insert(rows.begin() + at, r);
        pivcol.insert(pivcol.begin() + at, pc);
        pivv.insert(pivv.begin() + at, v);
        if (v > 0) {
          std::vector<long> ann(cols);
          for (int c = 0; c < cols; ++c) ann[c] = norm_mod(r[c] * pow_long(p, e - v), q);
          insert(ann);
        }
        return;
      }
      int vr = val_of(r[pc], p, e);
      if (vr >= pivv[idx]) {
        long k = r[pc] / pow_long(p, pivv[idx]);
        for (int c = 0; c < cols; ++c) r[c] = norm_mod(r[c] - k * rows[idx][c], q);
      } else {
        // the new row has the smaller valuation at this column: swap it in
        std::vector<long> old = rows[idx];
        rows.erase(rows.begin() + idx);
        pivcol.erase(pivcol.begin() + idx);
        pivv.erase(pivv.begin() + idx);
        insert(r);
        insert(old);
        return;
      }
    }
  }

  std::vector<long> reduce(std::vector<long> v) const {
    for (auto& x : v) x = norm_mod(x, q);
    for (size_t i = 0; i < rows.size(); ++i) {
      int pc = pivcol[i];
      long pv = pow_long(p, pivv[i]);
      long k = v[pc] / pv;
      if (k == 0) continue;
      for (int c = 0; c < cols; ++c) v[c] = norm_mod(v[c] - k * rows[i][c], q);
    }
    return v;
  }

  bool contains(const std::vector<long>& v) const {
    auto r = reduce(v);
    for (long x : r)
      if (x) return false;
    return true;
  }
};

inline std::vector<std::pair<long, int>> prime_powers(long m) {
  std::vector<std::pair<long, int>> out;
  for (long p = 2; p <= m; ++p) {
    if (m % p) continue;
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  return out;
}

// Span of a set of vectors mod m, CRT-split into prime-power components.
struct ModSpan {
  long m = 1;
  std::vector<PPEchelon> parts;

  static ModSpan build(long m, int cols, const std::vector<std::vector<long>>& gens) {
    ModSpan s;
    s.m = m;
    for (auto [p, e] : prime_powers(m)) {
      PPEchelon ech;
      ech.p = p;
      ech.e = e;
      ech.q = pow_long(p, e);
      ech.cols = cols;
      for (const auto& g : gens) ech.insert(g);
      s.parts.push_back(std::move(ech));
    }
    return s;
  }

  // canonical representative of v + span; equal keys iff equal cosets
  std::vector<long> canon(const std::vector<long>& v) const {
    std::vector<long> key;
    for (const auto& part : parts) {
      auto r = part.reduce(v);
      key.insert(key.end(), r.begin(), r.end());
    }
    return key;
  }

  bool contains(const std::vector<long>& v) const {
    for (const auto& part : parts)
      if (!part.contains(v)) return false;
    return true;
  }
};

// Solvability of A x = b (mod m): b must lie in the column span of A.
inline bool mod_solvable(long m, const std::vector<std::vector<long>>& a,
                         const std::vector<long>& b) {
  if (a.empty()) {
    for (long x : b)
      if (norm_mod(x, m)) return false;
    return true;
  }
  int nvars = int(a[0].size());
  int neqs = int(a.size());
  std::vector<std::vector<long>> cols;
  for (int j = 0; j < nvars; ++j) {
    std::vector<long> col(neqs);
    for (int i = 0; i < neqs; ++i) col[i] = a[i][j];
    cols.push_back(std::move(col));
  }
  ModSpan span = ModSpan::build(m, neqs, cols);
  return span.contains(b);
}

// invariant factors of a finite abelian group from its element orders
inline std::vector<long> invariant_factors_from_orders(const std::vector<long>& orders) {
  long n = long(orders.size());
  std::map<long, std::vector<int>> plists;
  for (long p = 2; p <= n; ++p) {
    bool prime = true;
    for (long d = 2; d * d <= p; ++d)
      if (p % d == 0) prime = false;
    if (!prime || n % p) continue;
    std::vector<long> s = {0};
    for (int k = 1;; ++k) {
      long pk = pow_long(p, k);
      long cnt = 0;
      for (long o : orders)
        if (pk % o == 0) ++cnt;
      long sk = 0;
      while (cnt > 1) {
        cnt /= p;
        ++sk;
      }
      s.push_back(sk);
      if (s[k] == s[k - 1]) break;
    }
    std::vector<int> lambda(size_t(s[1]), 0);
    for (size_t k = 1; k < s.size(); ++k)
      for (long t2 = 0; t2 < s[k] - s[k - 1]; ++t2) lambda[t2] = int(k);
    if (!lambda.empty()) plists[p] = lambda;
  }
  size_t len = 0;
  for (auto& [p, l] : plists) len = std::max(len, l.size());
  std::vector<long> factors(len, 1);
  for (auto& [p, l] : plists)
    for (size_t i = 0; i < l.size(); ++i) factors[i] *= pow_long(p, l[i]);
  std::sort(factors.begin(), factors.end());
  return factors;
}

// ---- brute-force H^1(H, L) over the finite quotient L/mL, m = |H|^2 ----
//
// Enumerates cocycle tables valued mod m from per-generator candidate scans
// plus propagation, keeps the integrally liftable ones (lifting to a mod-m^2
// cocycle decides integral liftability at this torsion bound), and reads off
// the group structure of liftable tables modulo reduced coboundaries.
inline std::vector<long> brute_force_h1(const ClassTable& t, int sub_idx, const GLattice& l) {
  const glat::PermGroup& g = t.group();
  const Subgroup& h = t.subgroup(sub_idx);
  const long hord = h.order();
  const long m = hord * hord;
  const int r = l.rank();
  if (hord == 1 || r == 0) return {};

  std::vector<int> pos(g.order(), -1);
  for (size_t i = 0; i < h.elems.size(); ++i) pos[h.elems[i]] = int(i);
  auto actl = [&](int e, const std::vector<long>& v) {
    std::vector<long> out(r, 0);
    const auto& a = l.action(e);
    for (int i = 0; i < r; ++i) {
      long s = 0;
      for (int j = 0; j < r; ++j) s += a.at(i, j).get_si() * v[j];
      out[i] = norm_mod(s, m);
    }
    return out;
  };

  // candidate values for one generator: (sum of its powers) * c = 0 mod m
  auto candidates = [&](int s) {
    int ord = g.element_order(s);
    std::vector<std::vector<long>> powsum(r, std::vector<long>(r, 0));
    int e = 0;
    for (int k = 0; k < ord; ++k) {
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) powsum[i][j] += l.action(e).at(i, j).get_si();
      e = g.mul(s, e);
    }
    std::vector<std::vector<long>> out;
    std::vector<long> v(r, 0);
    long total = 1;
    for (int i = 0; i < r; ++i) total *= m;
    glat::check(total <= 2200000, glat::ErrorKind::capacity, "oracle scan too large");
    for (long it = 0; it < total; ++it) {
      bool ok = true;
      for (int i = 0; i < r && ok; ++i) {
        long s2 = 0;
        for (int j = 0; j < r; ++j) s2 += powsum[i][j] * v[j];
        if (norm_mod(s2, m) != 0) ok = false;
      }
      if (ok) out.push_back(v);
      int i = r - 1;
      while (i >= 0) {
        if (++v[i] < m) break;
        v[i--] = 0;
      }
    }
    return out;
  };

  const std::vector<uint16_t>& gens = h.gens;
  std::vector<std::vector<std::vector<long>>> cand;
  for (auto s : gens) cand.push_back(candidates(s));

  auto propagate = [&](const std::vector<std::vector<long>>& genval) {
    std::vector<std::vector<long>> table(hord);
    std::vector<bool> known(hord, false);
    table[0] = std::vector<long>(r, 0);
    known[0] = true;
    bool grew = true;
    while (grew) {
      grew = false;
      for (size_t k = 0; k < gens.size(); ++k) {
        int s = gens[k];
        for (auto b : h.elems) {
          if (!known[pos[b]]) continue;
          int sb = g.mul(s, b);
          std::vector<long> val = actl(s, table[pos[b]]);
          for (int i = 0; i < r; ++i) val[i] = norm_mod(val[i] + genval[k][i], m);
          if (!known[pos[sb]]) {
            table[pos[sb]] = val;
            known[pos[sb]] = true;
            grew = true;
          } else if (table[pos[sb]] != val) {
            return std::vector<std::vector<long>>{};
          }
        }
      }
    }
    for (auto b : h.elems)
      if (!known[pos[b]]) return std::vector<std::vector<long>>{};
    for (auto a : h.elems)
      for (auto b : h.elems) {
        std::vector<long> rhs = actl(a, table[pos[b]]);
        for (int i = 0; i < r; ++i) rhs[i] = norm_mod(rhs[i] + table[pos[a]][i], m);
        if (table[pos[g.mul(a, b)]] != rhs) return std::vector<std::vector<long>>{};
      }
    return table;
  };

  // reduced coboundaries as a canonical-form span
  std::vector<std::vector<long>> cob_gens;
  for (int j = 0; j < r; ++j) {
    std::vector<long> row(size_t(hord) * r, 0);
    for (auto a : h.elems) {
      const auto& ma = l.action(a);
      for (int i = 0; i < r; ++i)
        row[size_t(pos[a]) * r + i] = norm_mod(ma.at(i, j).get_si() - (i == j ? 1 : 0), m);
    }
    cob_gens.push_back(std::move(row));
  }
  ModSpan cob = ModSpan::build(m, int(hord) * r, cob_gens);

  auto flatten = [&](const std::vector<std::vector<long>>& table) {
    std::vector<long> flat(size_t(hord) * r);
    for (long p2 = 0; p2 < hord; ++p2)
      for (int i = 0; i < r; ++i) flat[size_t(p2) * r + i] = table[p2][i];
    return flat;
  };

  // liftability: an integral lift c has defect f(a,b) = c(ab)-c(a)-a.c(b)
  // divisible by m; the table lifts integrally iff F = f/m can be killed by
  // some mod-m cochain coboundary.
  auto liftable = [&](const std::vector<std::vector<long>>& table) {
    int nvars = int(hord - 1) * r;
    auto var = [&](int p2, int i) { return (p2 - 1) * r + i; };
    std::vector<std::vector<long>> rowsa;
    std::vector<long> rhs;
    for (auto a : h.elems)
      for (auto b : h.elems) {
        int ab = g.mul(a, b);
        std::vector<long> fab(r);
        const auto& ma = l.action(a);
        for (int i = 0; i < r; ++i) {
          long s2 = table[pos[ab]][i] - table[pos[a]][i];
          for (int j = 0; j < r; ++j) s2 -= ma.at(i, j).get_si() * table[pos[b]][j];
          glat::require(s2 % m == 0, "defect must vanish mod m");
          fab[i] = s2 / m;
        }
        for (int i = 0; i < r; ++i) {
          std::vector<long> row(nvars, 0);
          if (pos[b] != 0)
            for (int j = 0; j < r; ++j)
              row[var(pos[b], j)] = norm_mod(row[var(pos[b], j)] + ma.at(i, j).get_si(), m);
          if (pos[ab] != 0) row[var(pos[ab], i)] = norm_mod(row[var(pos[ab], i)] - 1, m);
          if (pos[a] != 0) row[var(pos[a], i)] = norm_mod(row[var(pos[a], i)] + 1, m);
          rowsa.push_back(std::move(row));
          rhs.push_back(norm_mod(-fab[i], m));
        }
      }
    return mod_solvable(m, rowsa, rhs);
  };

  // enumerate all cocycle tables and bucket them modulo coboundaries
  std::map<std::vector<long>, std::vector<std::vector<long>>> buckets;
  std::vector<size_t> idx(gens.size(), 0);
  bool done = false;
  for (auto& c : cand)
    if (c.empty()) done = true;
  while (!done) {
    std::vector<std::vector<long>> genval;
    for (size_t k = 0; k < gens.size(); ++k) genval.push_back(cand[k][idx[k]]);
    auto table = propagate(genval);
    if (!table.empty()) {
      auto sig = cob.canon(flatten(table));
      if (!buckets.count(sig)) buckets[sig] = table;
    }
    int k = int(gens.size()) - 1;
    while (k >= 0) {
      if (++idx[k] < cand[k].size()) break;
      idx[k--] = 0;
    }
    if (k < 0) done = true;
  }

  std::map<std::vector<long>, std::vector<long>> lift_sigs;
  for (auto& [sig, table] : buckets)
    if (liftable(table)) lift_sigs[sig] = flatten(table);
  if (lift_sigs.empty()) return {};

  std::vector<long> orders;
  for (auto& [sig, flat] : lift_sigs) {
    long k = 1;
    std::vector<long> acc(flat.size(), 0);
    for (;; ++k) {
      for (size_t i = 0; i < flat.size(); ++i) acc[i] = norm_mod(acc[i] + flat[i], m);
      if (cob.contains(acc)) break;
      glat::require(k <= 2 * m, "element order runaway in oracle");
    }
    orders.push_back(k);
  }
  return invariant_factors_from_orders(orders);
}

// ---- Shapiro / double coset formula for Tate H^0(H, Z[G/K]) ----
// H^0(H, Z[G/K]) decomposes over the double cosets H g K as the sum of
// H^0(H cap gKg^-1, Z) = Z/|H cap gKg^-1| (one H-orbit per double coset).
inline std::vector<long> shapiro_h0_factors(const ClassTable& t, const Subgroup& h,
                                            const Subgroup& k) {
  const glat::PermGroup& g = t.group();
  std::vector<long> orders;  // one cyclic factor Z/|H cap gKg^-1| per H g K
  std::vector<bool> used(g.order(), false);
  for (int x = 0; x < g.order(); ++x) {
    if (used[x]) continue;
    for (auto a : h.elems)
      for (auto b : k.elems) used[g.mul(g.mul(a, x), b)] = true;
    int cnt = 0;
    for (auto a : h.elems) {
      int conj = g.mul(g.mul(g.inv(x), a), x);  // x^{-1} a x
      if (k.contains(conj)) ++cnt;
    }
    orders.push_back(cnt);
  }
  // merge the cyclic pieces into invariant factors by prime-power sorting
  std::map<long, std::vector<int>> plists;
  for (long o : orders) {
    long rem = o;
    for (long p = 2; p <= rem; ++p) {
      if (rem % p) continue;
      int e = 0;
      while (rem % p == 0) {
        rem /= p;
        ++e;
      }
      plists[p].push_back(e);
    }
  }
  size_t len = 0;
  for (auto& [p, l] : plists) {
    std::sort(l.begin(), l.end(), std::greater<int>());
    len = std::max(len, l.size());
  }
  std::vector<long> factors(len, 1);
  for (auto& [p, l] : plists)
    for (size_t i = 0; i < l.size(); ++i) factors[i] *= pow_long(p, l[i]);
  std::sort(factors.begin(), factors.end());
  while (!factors.empty() && factors.front() == 1) factors.erase(factors.begin());
  return factors;
}

inline std::vector<long> factors_of(const glat::FinAb& g) {
  std::vector<long> out;
  for (const auto& d : g.factors()) out.push_back(d.get_si());
  return out;
}

}  // namespace glat_oracle

#endif
