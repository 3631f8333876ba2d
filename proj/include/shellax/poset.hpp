#pragma once

#include "shellax/complex.hpp"

#include <string>
#include <vector>

namespace shellax {

/// A finite poset with a bottom element whose maximal elements play the role
/// of chambers. Covers both face posets of complexes and LRB posets.
struct FacePoset {
  std::vector<std::string> names;
  /// up[x] = {y : x <= y}
  std::vector<Bits> up;
  int bottom = 0;
  /// Element id of each chamber.
  std::vector<int> chambers;
  std::vector<std::string> chamber_names;
  /// Chamber index of an element, -1 if not maximal.
  std::vector<int> chamber_of;
  /// Elements covered by each chamber.
  std::vector<std::vector<int>> facets;
  /// Chamber indices above each element.
  std::vector<Bits> residue;

  int size() const { return static_cast<int>(names.size()); }
  int num_chambers() const { return static_cast<int>(chambers.size()); }
  bool leq(int x, int y) const { return up[x].test(y); }
};

inline FacePoset face_poset(const Complex& cx) {
  FacePoset p;
  const int nf = cx.num_faces();
  const int nc = cx.num_chambers();
  p.names.resize(nf);
  for (FaceId f = 0; f < nf; ++f) p.names[f] = cx.face_name(f);
  p.up.assign(nf, Bits(nf));
  const unsigned full = cx.full_mask();
  for (ChamberId c = 0; c < nc; ++c)
    for (unsigned a = 0; a <= full; ++a)
      for (unsigned b = a;; b = (b + 1) | a) {
        p.up[cx.sub(c, a)].set(cx.sub(c, b));
        if (b == full) break;
      }
  p.bottom = Complex::empty_face();
  p.chamber_of.assign(nf, -1);
  for (ChamberId c = 0; c < nc; ++c) {
    p.chambers.push_back(cx.chamber_face(c));
    p.chamber_names.push_back(cx.chamber_name(c));
    p.chamber_of[cx.chamber_face(c)] = c;
    std::vector<int> fs;
    for (int i = 0; i < cx.rank(); ++i) fs.push_back(cx.facet(c, i));
    std::sort(fs.begin(), fs.end());
    p.facets.push_back(fs);
  }
  for (FaceId f = 0; f < nf; ++f) p.residue.push_back(cx.residue_bits(f));
  return p;
}

}  // namespace shellax
