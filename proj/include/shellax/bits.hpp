#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <optional>
#include <queue>
#include <vector>

namespace shellax {

using Bits = boost::dynamic_bitset<std::uint64_t>;

/// Square relation on {0..n-1}; rows[i] holds every j with i R j.
struct BitMatrix {
  std::vector<Bits> rows;

  BitMatrix() = default;
  explicit BitMatrix(std::size_t n) : rows(n, Bits(n)) {}

  std::size_t size() const { return rows.size(); }
  bool test(std::size_t i, std::size_t j) const { return rows[i].test(j); }
  void set(std::size_t i, std::size_t j) { rows[i].set(j); }

  bool operator==(const BitMatrix& o) const { return rows == o.rows; }
  bool operator!=(const BitMatrix& o) const { return rows != o.rows; }

  BitMatrix transposed() const {
    BitMatrix t(size());
    for (std::size_t i = 0; i < size(); ++i)
      for (auto j = rows[i].find_first(); j != Bits::npos; j = rows[i].find_next(j)) t.set(j, i);
    return t;
  }
};

/// Reflexive-transitive closure (Warshall on bit rows).
inline BitMatrix reflexive_transitive_closure(BitMatrix m) {
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (i != k && m.rows[i].test(k)) m.rows[i] |= m.rows[k];
  return m;
}

/// A pair i != j related both ways, if any.
inline std::optional<std::pair<std::size_t, std::size_t>> antisymmetry_violation(const BitMatrix& closure) {
  for (std::size_t i = 0; i < closure.size(); ++i)
    for (auto j = closure.rows[i].find_next(i); j != Bits::npos; j = closure.rows[i].find_next(j))
      if (closure.test(j, i)) return std::make_pair(i, static_cast<std::size_t>(j));
  return std::nullopt;
}

/// Shortest directed cycle of the (non-reflexive) relation `gen` through some
/// vertex, returned as the vertex sequence; empty if acyclic.
inline std::vector<std::size_t> shortest_cycle(const BitMatrix& gen) {
  const std::size_t n = gen.size();
  std::vector<std::size_t> best;
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<std::size_t> parent(n, n);
    std::vector<int> dist(n, -1);
    std::queue<std::size_t> q;
    dist[s] = 0;
    q.push(s);
    bool found = false;
    std::size_t last = n;
    while (!q.empty() && !found) {
      std::size_t u = q.front();
      q.pop();
      if (!best.empty() && static_cast<std::size_t>(dist[u] + 1) >= best.size()) break;
      for (auto v = gen.rows[u].find_first(); v != Bits::npos; v = gen.rows[u].find_next(v)) {
        if (v == u) continue;
        if (v == s) {
          found = true;
          last = u;
          break;
        }
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          parent[v] = u;
          q.push(v);
        }
      }
    }
    if (!found) continue;
    std::vector<std::size_t> cyc;
    for (std::size_t v = last; v != s; v = parent[v]) cyc.push_back(v);
    cyc.push_back(s);
    std::vector<std::size_t> fwd(cyc.rbegin(), cyc.rend());
    if (best.empty() || fwd.size() < best.size()) best = fwd;
  }
  return best;
}

inline int popcount(unsigned x) { return __builtin_popcount(x); }

}  // namespace shellax
