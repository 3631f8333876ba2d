#pragma once

#include "shellax/bits.hpp"
#include "shellax/error.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <random>
#include <unordered_map>
#include <vector>

namespace shellax {

using BigInt = boost::multiprecision::cpp_int;

/// Calls fn(extension) for linear extensions of the reflexive partial order
/// `le` (rows are up-sets) in lexicographic order of element ids. Stops once
/// `limit` extensions were produced. Returns the number produced.
template <class Fn>
std::size_t for_each_linear_extension(const BitMatrix& le, std::size_t limit, Fn&& fn) {
  const std::size_t n = le.size();
  std::vector<int> pred(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (auto j = le.rows[i].find_first(); j != Bits::npos; j = le.rows[i].find_next(j))
      if (j != i) ++pred[j];
  std::vector<int> ext;
  ext.reserve(n);
  std::vector<char> used(n, 0);
  std::size_t produced = 0;
  auto rec = [&](auto&& self) -> void {
    if (produced >= limit) return;
    if (ext.size() == n) {
      ++produced;
      fn(static_cast<const std::vector<int>&>(ext));
      return;
    }
    for (std::size_t x = 0; x < n && produced < limit; ++x) {
      if (used[x] || pred[x] != 0) continue;
      used[x] = 1;
      ext.push_back(static_cast<int>(x));
      for (auto y = le.rows[x].find_first(); y != Bits::npos; y = le.rows[x].find_next(y))
        if (y != x) --pred[y];
      self(self);
      for (auto y = le.rows[x].find_first(); y != Bits::npos; y = le.rows[x].find_next(y))
        if (y != x) ++pred[y];
      ext.pop_back();
      used[x] = 0;
    }
  };
  rec(rec);
  return produced;
}

/// First linear extension in lexicographic order of ids.
inline std::vector<int> first_linear_extension(const BitMatrix& le) {
  std::vector<int> out;
  for_each_linear_extension(le, 1, [&](const std::vector<int>& e) { out = e; });
  return out;
}

/// Uniform integer in [0, bound) for a positive big integer bound.
inline BigInt random_below(const BigInt& bound, std::mt19937_64& rng) {
  const unsigned bits = boost::multiprecision::msb(bound) + 1;
  for (;;) {
    BigInt r = 0;
    unsigned have = 0;
    while (have < bits) {
      r = (r << 64) | BigInt(rng());
      have += 64;
    }
    r >>= (have - bits);
    if (r < bound) return r;
  }
}

/// Draws linear extensions of a partial order. Uses exact counting over
/// down-sets when the order has at most 64 elements and the down-set lattice
/// stays under `state_limit`; otherwise falls back to the adjacent-transposition
/// Markov chain, which is only approximately uniform.
class LinearExtensionSampler {
 public:
  LinearExtensionSampler(const BitMatrix& le, std::size_t state_limit = 400000) : le_(le), n_(le.size()) {
    down_.assign(n_, 0);
    if (n_ <= 64) {
      for (std::size_t i = 0; i < n_; ++i)
        for (auto j = le.rows[i].find_first(); j != Bits::npos; j = le.rows[i].find_next(j))
          if (j != i) down_[j] |= std::uint64_t{1} << i;
      full_ = n_ == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n_) - 1);
      limit_ = state_limit;
      root_ = index128(0);
      if (root_ >= 0) {
        exact_ = true;
        id_ = {};
      } else {
        clear128();
        if (!overflow_) exact_ = false;
        else exact_ = count(0);
      }
    }
    if (!exact_) {
      memo_.clear();
      state_ = first_linear_extension(le_);
    }
  }

  bool exact() const { return exact_; }

  /// Total number of linear extensions (exact mode only).
  BigInt total() const {
    if (!exact_) return BigInt(-1);
    if (weight_.empty()) return memo_.at(0);
    const unsigned __int128 w = weight_[root_];
    return (BigInt(static_cast<std::uint64_t>(w >> 64)) << 64) | BigInt(static_cast<std::uint64_t>(w));
  }

  std::vector<int> sample(std::mt19937_64& rng) {
    if (exact_) return sample_exact(rng);
    return sample_chain(rng);
  }

 private:
  // Counts extensions of the elements outside `done`; false when over budget.
  bool count(std::uint64_t done) {
    if (memo_.count(done)) return true;
    if (memo_.size() >= limit_) return false;
    if (done == full_) {
      memo_.emplace(done, BigInt(1));
      return true;
    }
    BigInt total = 0;
    for (std::size_t x = 0; x < n_; ++x) {
      std::uint64_t bit = std::uint64_t{1} << x;
      if ((done & bit) || (down_[x] & ~done)) continue;
      if (!count(done | bit)) return false;
      total += memo_.at(done | bit);
    }
    memo_.emplace(done, std::move(total));
    return true;
  }

  // Same draws as random_below when the count fits in 128 bits.
  unsigned __int128 below128(unsigned __int128 bound, std::mt19937_64& rng) const {
    const unsigned bits = bound >> 64 ? 128 - __builtin_clzll(static_cast<std::uint64_t>(bound >> 64))
                                      : 64 - __builtin_clzll(static_cast<std::uint64_t>(bound));
    for (;;) {
      unsigned __int128 r = 0;
      unsigned have = 0;
      while (have < bits) {
        r = (r << 64) | rng();
        have += 64;
      }
      r >>= (have - bits);
      if (r < bound) return r;
    }
  }

  std::vector<int> sample_exact(std::mt19937_64& rng) {
    if (!weight_.empty()) return sample_exact128(rng);
    std::vector<int> out;
    std::uint64_t done = 0;
    while (done != full_) {
      BigInt r = random_below(memo_.at(done), rng);
      for (std::size_t x = 0; x < n_; ++x) {
        std::uint64_t bit = std::uint64_t{1} << x;
        if ((done & bit) || (down_[x] & ~done)) continue;
        const BigInt& w = memo_.at(done | bit);
        if (r < w) {
          out.push_back(static_cast<int>(x));
          done |= bit;
          break;
        }
        r -= w;
      }
    }
    return out;
  }

  // Down-set lattice as flat arrays with 128-bit counts. Returns the state
  // index, or -1 when over budget or on overflow (then overflow_ is set).
  int index128(std::uint64_t done) {
    if (auto it = id_.find(done); it != id_.end()) return it->second;
    if (id_.size() >= limit_) return -1;
    std::vector<std::pair<int, int>> kids;
    unsigned __int128 total = done == full_ ? 1 : 0;
    for (std::size_t x = 0; x < n_; ++x) {
      std::uint64_t bit = std::uint64_t{1} << x;
      if ((done & bit) || (down_[x] & ~done)) continue;
      int next = index128(done | bit);
      if (next < 0) return -1;
      if (__builtin_add_overflow(total, weight_[next], &total)) {
        overflow_ = true;
        return -1;
      }
      kids.emplace_back(static_cast<int>(x), next);
    }
    const int i = static_cast<int>(weight_.size());
    id_.emplace(done, i);
    weight_.push_back(total);
    child_begin_.push_back(static_cast<int>(children_.size()));
    children_.insert(children_.end(), kids.begin(), kids.end());
    child_end_.push_back(static_cast<int>(children_.size()));
    return i;
  }

  void clear128() {
    id_.clear();
    weight_.clear();
    child_begin_.clear();
    child_end_.clear();
    children_.clear();
  }

  std::vector<int> sample_exact128(std::mt19937_64& rng) const {
    std::vector<int> out;
    out.reserve(n_);
    int state = root_;
    while (out.size() < n_) {
      unsigned __int128 r = below128(weight_[state], rng);
      for (int k = child_begin_[state]; k < child_end_[state]; ++k) {
        auto [x, next] = children_[k];
        if (r < weight_[next]) {
          out.push_back(x);
          state = next;
          break;
        }
        r -= weight_[next];
      }
    }
    return out;
  }

  std::vector<int> sample_chain(std::mt19937_64& rng) {
    if (n_ < 2) return state_;
    const std::size_t n = n_;
    std::size_t steps = burned_ ? n * n : 4 * n * n * n;
    burned_ = true;
    std::uniform_int_distribution<std::size_t> pos(0, n - 2);
    std::bernoulli_distribution coin(0.5);
    for (std::size_t s = 0; s < steps; ++s) {
      std::size_t i = pos(rng);
      if (!coin(rng)) continue;
      int a = state_[i], b = state_[i + 1];
      if (!le_.test(a, b)) std::swap(state_[i], state_[i + 1]);
    }
    return state_;
  }

  const BitMatrix& le_;
  std::size_t n_;
  std::vector<std::uint64_t> down_;
  std::uint64_t full_ = 0;
  std::size_t limit_ = 0;
  bool exact_ = false;
  std::unordered_map<std::uint64_t, BigInt> memo_;
  std::vector<unsigned __int128> weight_;
  std::unordered_map<std::uint64_t, int> id_;
  std::vector<int> child_begin_, child_end_;
  std::vector<std::pair<int, int>> children_;
  int root_ = -1;
  bool overflow_ = false;
  std::vector<int> state_;
  bool burned_ = false;
};

}  // namespace shellax
