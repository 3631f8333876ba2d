#pragma once

#include "shellax/complex.hpp"
#include "shellax/report.hpp"
#include "shellax/shelling.hpp"
#include "shellax/structures.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace shellax {

/// Labelled: indexed by type bitmask J (size 2^|I|). Unlabelled: indexed by
/// rank j (size n+1).
struct FlagVector {
  bool labelled = false;
  int n = 0;
  std::vector<long long> v;

  static FlagVector by_type(int labels) { return {true, labels, std::vector<long long>(std::size_t{1} << labels, 0)}; }
  static FlagVector by_rank(int rank) { return {false, rank, std::vector<long long>(rank + 1, 0)}; }

  long long operator[](std::size_t i) const { return v[i]; }
  long long& operator[](std::size_t i) { return v[i]; }
  std::size_t size() const { return v.size(); }
  unsigned all() const { return labelled ? (1u << n) - 1u : static_cast<unsigned>(n); }
  /// Index of the complementary type set (or rank).
  std::size_t complement(std::size_t i) const { return labelled ? (all() & ~static_cast<unsigned>(i)) : n - i; }
  bool operator==(const FlagVector& o) const { return labelled == o.labelled && n == o.n && v == o.v; }
  bool operator!=(const FlagVector& o) const { return !(*this == o); }
};

inline FlagVector h_to_f(const FlagVector& h) {
  FlagVector f = h;
  if (h.labelled) {
    for (unsigned j = 0; j < h.size(); ++j) {
      long long s = 0;
      for (unsigned k = j;; k = (k - 1) & j) {
        s += h[k];
        if (k == 0) break;
      }
      f[j] = s;
    }
  } else {
    for (int j = 0; j <= h.n; ++j) {
      long long s = 0;
      for (int k = 0; k <= j; ++k) s += binomial(h.n - k, h.n - j) * h[k];
      f[j] = s;
    }
  }
  return f;
}

inline FlagVector f_to_h(const FlagVector& f) {
  FlagVector h = f;
  if (f.labelled) {
    for (unsigned j = 0; j < f.size(); ++j) {
      long long s = 0;
      for (unsigned k = j;; k = (k - 1) & j) {
        s += ((popcount(j) - popcount(k)) % 2 ? -1 : 1) * f[k];
        if (k == 0) break;
      }
      h[j] = s;
    }
  } else {
    for (int j = 0; j <= f.n; ++j) {
      long long s = 0;
      for (int k = 0; k <= j; ++k) s += ((j - k) % 2 ? -1 : 1) * binomial(f.n - k, j - k) * f[k];
      h[j] = s;
    }
  }
  return h;
}

/// Sums a labelled vector over |J| = j.
inline FlagVector aggregate(const FlagVector& x) {
  if (!x.labelled) return x;
  FlagVector out = FlagVector::by_rank(x.n);
  for (unsigned j = 0; j < x.size(); ++j) out[popcount(j)] += x[j];
  return out;
}

struct FlagPair {
  FlagVector f;
  FlagVector h;
};

/// Face counts by type (labelled) or by rank (unlabelled) and their h-transform.
inline FlagPair flag_vectors(const Complex& cx, bool labelled) {
  if (labelled && !cx.labelled()) fail(ErrorKind::NeedsLabels, "flag vectors by type need a labelled complex");
  FlagVector f = labelled ? FlagVector::by_type(cx.num_labels()) : FlagVector::by_rank(cx.rank());
  for (FaceId x = 0; x < cx.num_faces(); ++x) ++f[labelled ? cx.type_mask(x) : static_cast<unsigned>(cx.face_rank(x))];
  FlagVector h = f_to_h(f);
  if (h_to_f(h) != f) fail(ErrorKind::LemmaViolation, "f and h vectors do not invert each other");
  return {f, h};
}

inline FlagPair flag_vectors(const Complex& cx) { return flag_vectors(cx, cx.labelled()); }

/// beta_J counted from the restrictions R_C(D) for one base chamber C.
inline FlagVector beta_from_restriction(const Complex& cx, const RestrictionFamily& rf, ChamberId c, bool labelled) {
  if (labelled && !cx.labelled()) fail(ErrorKind::NeedsLabels, "beta by type needs a labelled complex");
  FlagVector b = labelled ? FlagVector::by_type(cx.num_labels()) : FlagVector::by_rank(cx.rank());
  for (ChamberId d = 0; d < cx.num_chambers(); ++d) {
    FaceId f = rf(c, d);
    ++b[labelled ? cx.type_mask(f) : static_cast<unsigned>(cx.face_rank(f))];
  }
  return b;
}

inline std::string flag_index_name(const Complex& cx, const FlagVector& x, std::size_t i) {
  return x.labelled ? cx.label_set_name(static_cast<unsigned>(i)) : std::to_string(i);
}

/// beta from every base chamber agrees with the h-vector.
inline Report beta_report(const Complex& cx, const RestrictionFamily& rf, bool labelled) {
  Report r;
  r.declare("BETA");
  FlagVector h = flag_vectors(cx, labelled).h;
  for (ChamberId c = 0; c < cx.num_chambers(); ++c) {
    FlagVector b = beta_from_restriction(cx, rf, c, labelled);
    for (std::size_t j = 0; j < h.size(); ++j)
      if (b[j] != h[j]) {
        r.fail("BETA", "C=" + cx.chamber_name(c) + " beta[" + flag_index_name(cx, h, j) + "]=" + std::to_string(b[j]) +
                           " h=" + std::to_string(h[j]));
        break;
      }
  }
  return r;
}

/// h_J(D) = #{C : R_C(D) has type J} and the matching f_J(D).
struct LocalFlagTable {
  std::vector<FlagVector> h;
  std::vector<FlagVector> f;
};

inline LocalFlagTable local_flags(const Complex& cx, const RestrictionFamily& rf, bool labelled) {
  if (labelled && !cx.labelled()) fail(ErrorKind::NeedsLabels, "local flags by type need a labelled complex");
  LocalFlagTable t;
  for (ChamberId d = 0; d < cx.num_chambers(); ++d) {
    FlagVector h = labelled ? FlagVector::by_type(cx.num_labels()) : FlagVector::by_rank(cx.rank());
    for (ChamberId c = 0; c < cx.num_chambers(); ++c) {
      FaceId f = rf(c, d);
      ++h[labelled ? cx.type_mask(f) : static_cast<unsigned>(cx.face_rank(f))];
    }
    t.f.push_back(h_to_f(h));
    t.h.push_back(std::move(h));
  }
  return t;
}

/// Row sums, and the averages of local h and f against the global vectors.
inline Report local_flag_report(const Complex& cx, const LocalFlagTable& t, bool labelled) {
  Report r;
  for (const char* id : {"LOCAL.sum", "LOCAL.avg.h", "LOCAL.avg.f"}) r.declare(id);
  FlagPair g = flag_vectors(cx, labelled);
  const long long nc = cx.num_chambers();
  FlagVector sh = g.h, sf = g.f;
  std::fill(sh.v.begin(), sh.v.end(), 0);
  std::fill(sf.v.begin(), sf.v.end(), 0);
  for (ChamberId d = 0; d < cx.num_chambers(); ++d) {
    long long total = 0;
    for (std::size_t j = 0; j < sh.size(); ++j) {
      total += t.h[d][j];
      sh[j] += t.h[d][j];
      sf[j] += t.f[d][j];
    }
    if (total != nc) r.fail("LOCAL.sum", "D=" + cx.chamber_name(d) + " sum=" + std::to_string(total));
  }
  for (std::size_t j = 0; j < sh.size(); ++j) {
    if (sh[j] != nc * g.h[j])
      r.fail("LOCAL.avg.h", "J=" + flag_index_name(cx, g.h, j) + " sum=" + std::to_string(sh[j]) + " |C|h=" + std::to_string(nc * g.h[j]));
    if (sf[j] != nc * g.f[j])
      r.fail("LOCAL.avg.f", "J=" + flag_index_name(cx, g.f, j) + " sum=" + std::to_string(sf[j]) + " |C|f=" + std::to_string(nc * g.f[j]));
  }
  return r;
}

/// One check per pair {J, I \ J}: h_J = h_{I \ J}.
inline Report ds_check(const Complex& cx, const FlagVector& h) {
  Report r;
  for (std::size_t j = 0; j < h.size(); ++j) {
    std::size_t k = h.complement(j);
    if (k < j) continue;
    std::string id = "DS[" + flag_index_name(cx, h, j) + "~" + flag_index_name(cx, h, k) + "]";
    r.expect(id, h[j] == h[k], "h=" + std::to_string(h[j]) + " vs " + std::to_string(h[k]));
  }
  return r;
}

/// h_J(D) = h_{I \ J}(D) for every chamber D.
inline Report local_ds_check(const Complex& cx, const LocalFlagTable& t) {
  Report r;
  r.declare("DS.local");
  for (ChamberId d = 0; d < cx.num_chambers(); ++d)
    for (std::size_t j = 0; j < t.h[d].size(); ++j)
      if (t.h[d][j] != t.h[d][t.h[d].complement(j)]) {
        r.fail("DS.local", "D=" + cx.chamber_name(d) + " J=" + flag_index_name(cx, t.h[d], j));
        break;
      }
  return r;
}

/// Unlabelled local h_j(D) >= binom(n, j) for every chamber D.
inline Report local_bound_check(const Complex& cx, const LocalFlagTable& t) {
  Report r;
  r.declare("LOCAL.bound");
  for (ChamberId d = 0; d < cx.num_chambers(); ++d) {
    const FlagVector& h = t.h[d];
    if (h.labelled) fail(ErrorKind::Precondition, "the local bound takes unlabelled local h-vectors");
    for (std::size_t j = 0; j < h.size(); ++j)
      if (h[j] < binomial(h.n, static_cast<long long>(j))) {
        r.fail("LOCAL.bound", "D=" + cx.chamber_name(d) + " h_" + std::to_string(j) + "=" + std::to_string(h[j]));
        break;
      }
  }
  return r;
}

/// Number of (k-1)-spheres in the wedge decomposition of the (k-1)-skeleton,
/// from beta, checked against the reduced Euler characteristic of the skeleton.
inline long long skeleton_spheres(const Complex& cx, const FlagVector& beta, int k) {
  if (beta.labelled) fail(ErrorKind::Precondition, "skeleton count takes the unlabelled beta vector");
  const int n = cx.rank();
  if (beta.n != n) fail(ErrorKind::RankMismatch, "beta vector rank differs from the complex");
  if (k < 1 || k > n) fail(ErrorKind::Precondition, "skeleton index must satisfy 1 <= k <= rank");
  long long s = 0;
  for (int i = 0; i <= k; ++i) s += (i == k ? 1 : binomial(n - i - 1, k - i)) * beta[i];
  long long chi = reduced_euler(cx, k);
  long long expect = (k % 2 == 1) ? s : -s;
  if (chi != expect)
    fail(ErrorKind::EulerMismatch, "skeleton k=" + std::to_string(k) + ": formula gives " + std::to_string(s) +
                                       " spheres, reduced Euler characteristic " + std::to_string(chi));
  return s;
}

inline void write_flag_vector(std::ostream& out, const Complex& cx, const std::string& name, const FlagVector& x,
                              Format fmt = Format::Text) {
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (fmt == Format::Tsv)
      out << name << '\t' << flag_index_name(cx, x, j) << '\t' << x[j] << '\n';
    else
      out << name << '[' << flag_index_name(cx, x, j) << "] = " << x[j] << '\n';
  }
}

}  // namespace shellax
