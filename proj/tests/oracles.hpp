#pragma once

// Brute-force reference computations and random generators for the tests.
// Nothing here calls into the library beyond reading a Complex's vertex sets.

#include "shellax/complex.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using VertexSet = std::vector<int>;

inline std::vector<VertexSet> chamber_sets(const shellax::Complex& cx) {
  std::vector<VertexSet> out;
  for (int c = 0; c < cx.num_chambers(); ++c) out.push_back(cx.chamber_vertices(c));
  return out;
}

inline std::size_t common(const VertexSet& a, const VertexSet& b) {
  std::size_t k = 0;
  for (int v : a) k += std::count(b.begin(), b.end(), v);
  return k;
}

/// Gallery distances by BFS over chambers sharing all but one vertex.
inline std::vector<std::vector<int>> distances(const std::vector<VertexSet>& ch) {
  const int n = static_cast<int>(ch.size());
  std::vector<std::vector<int>> d(n, std::vector<int>(n, -1));
  for (int s = 0; s < n; ++s) {
    std::queue<int> q;
    q.push(s);
    d[s][s] = 0;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v = 0; v < n; ++v)
        if (d[s][v] < 0 && common(ch[u], ch[v]) + 1 == ch[u].size()) {
          d[s][v] = d[s][u] + 1;
          q.push(v);
        }
    }
  }
  return d;
}

/// All faces as sorted vertex sets, empty face included.
inline std::set<VertexSet> faces(const std::vector<VertexSet>& ch) {
  std::set<VertexSet> out;
  for (const auto& c : ch)
    for (unsigned m = 0; m < (1u << c.size()); ++m) {
      VertexSet f;
      for (std::size_t i = 0; i < c.size(); ++i)
        if (m >> i & 1u) f.push_back(c[i]);
      out.insert(f);
    }
  return out;
}

inline bool subset(const VertexSet& a, const VertexSet& b) {
  return std::all_of(a.begin(), a.end(), [&](int v) { return std::find(b.begin(), b.end(), v) != b.end(); });
}

/// Order is a shelling iff for each later chamber the faces shared with earlier
/// chambers form a pure complex of facets of that chamber. Returns, per chamber
/// in order, the vertices missing from the shared facets (the restriction).
inline std::optional<std::vector<VertexSet>> shelling_restrictions(const std::vector<VertexSet>& ch, const std::vector<int>& order) {
  std::vector<VertexSet> restriction(ch.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    const VertexSet& d = ch[order[k]];
    std::set<VertexSet> shared;
    for (std::size_t j = 0; j < k; ++j) {
      VertexSet f;
      for (int v : d)
        if (std::find(ch[order[j]].begin(), ch[order[j]].end(), v) != ch[order[j]].end()) f.push_back(v);
      shared.insert(f);
    }
    // maximal shared faces
    VertexSet missing;
    for (const auto& f : shared) {
      bool maximal = true;
      for (const auto& g : shared)
        if (g.size() > f.size() && subset(f, g)) maximal = false;
      if (!maximal) continue;
      if (f.size() + 1 != d.size()) return std::nullopt;
      for (int v : d)
        if (std::find(f.begin(), f.end(), v) == f.end()) missing.push_back(v);
    }
    std::sort(missing.begin(), missing.end());
    restriction[order[k]] = missing;
  }
  return restriction;
}

/// Nearest chambers of the star of f to c, by brute force.
inline std::vector<int> nearest(const std::vector<VertexSet>& ch, const std::vector<std::vector<int>>& d, const VertexSet& f, int c) {
  int best = -1;
  std::vector<int> out;
  for (int x = 0; x < static_cast<int>(ch.size()); ++x) {
    if (!subset(f, ch[x])) continue;
    if (best < 0 || d[c][x] < best) {
      best = d[c][x];
      out = {x};
    } else if (d[c][x] == best) {
      out.push_back(x);
    }
  }
  return out;
}

/// Sign vectors of all integer points in [-box, box]^dim.
inline std::set<std::vector<int>> grid_sign_vectors(const std::vector<std::vector<long long>>& normals, int dim, int box) {
  std::set<std::vector<int>> out;
  std::vector<long long> x(dim, -box);
  for (;;) {
    std::vector<int> s;
    for (const auto& n : normals) {
      long long v = 0;
      for (int i = 0; i < dim; ++i) v += n[i] * x[i];
      s.push_back(v > 0 ? 1 : (v < 0 ? -1 : 0));
    }
    out.insert(s);
    int i = 0;
    while (i < dim && x[i] == box) x[i++] = -box;
    if (i == dim) break;
    ++x[i];
  }
  return out;
}

/// Free LRB product on words: append the letters of y not already in x.
inline std::vector<int> word_product(std::vector<int> x, const std::vector<int>& y) {
  for (int a : y)
    if (std::find(x.begin(), x.end(), a) == x.end()) x.push_back(a);
  return x;
}

/// Permutations of {0..n-1} with their descent mask and inversion count.
struct PermStat {
  unsigned descents;
  int inversions;
};

inline std::vector<PermStat> permutation_stats(int n) {
  std::vector<int> w(n);
  std::iota(w.begin(), w.end(), 0);
  std::vector<PermStat> out;
  do {
    PermStat s{0, 0};
    for (int i = 0; i + 1 < n; ++i)
      if (w[i] > w[i + 1]) s.descents |= 1u << i;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (w[i] > w[j]) ++s.inversions;
    out.push_back(s);
  } while (std::next_permutation(w.begin(), w.end()));
  return out;
}

inline long long choose(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Random connected pure complexes: start from one chamber and repeatedly glue
/// a new chamber along a facet of an existing one, reusing or creating a vertex.
inline shellax::ComplexInput random_complex(std::mt19937_64& rng, int rank, int chambers, int max_vertices) {
  shellax::ComplexInput in;
  int nv = rank;
  std::set<VertexSet> seen;
  std::vector<VertexSet> ch;
  VertexSet first(rank);
  std::iota(first.begin(), first.end(), 0);
  ch.push_back(first);
  seen.insert(first);
  int attempts = 0;
  while (static_cast<int>(ch.size()) < chambers && attempts++ < 1000) {
    const VertexSet& base = ch[rng() % ch.size()];
    VertexSet facet = base;
    facet.erase(facet.begin() + static_cast<long>(rng() % rank));
    int v = (nv < max_vertices && rng() % 2 == 0) ? nv : static_cast<int>(rng() % std::max(nv, 1));
    if (std::find(facet.begin(), facet.end(), v) != facet.end()) continue;
    VertexSet c = facet;
    c.push_back(v);
    std::sort(c.begin(), c.end());
    if (!seen.insert(c).second) continue;
    if (v == nv) ++nv;
    ch.push_back(c);
  }
  for (int v = 0; v < nv; ++v) in.vertex_names.push_back("v" + std::to_string(v));
  in.chambers = ch;
  return in;
}

}  // namespace oracle
