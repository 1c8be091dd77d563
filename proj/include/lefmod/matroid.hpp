#pragma once

#include "lefmod/graded.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace lefmod {

using ElemSet = std::uint32_t;  // bitmask over the ground set

class Matroid {
 public:
  /// Bases as 0-based element lists. Checks equal size and basis exchange.
  static Matroid from_bases(int n, const std::vector<std::vector<int>>& bases);
  static Matroid uniform(int r, int n);
  /// F7 from the seven collinear triples of the Fano plane picture.
  static Matroid fano();

  int size() const { return n_; }
  int rank() const { return r_; }
  const std::vector<ElemSet>& bases() const { return bases_; }
  int rank_of(ElemSet s) const;
  ElemSet closure(ElemSet s) const;

 private:
  int n_ = 0, r_ = 0;
  std::vector<ElemSet> bases_;
};

class FlatsLattice {
 public:
  explicit FlatsLattice(const Matroid& m);

  int rank() const { return static_cast<int>(by_rank_.size()) - 1; }
  const std::vector<ElemSet>& flats(int k) const { return by_rank_[k]; }
  std::vector<std::size_t> counts() const;
  int rank_of(ElemSet f) const { return m_.rank_of(f); }
  ElemSet join(ElemSet f, ElemSet g) const { return m_.closure(f | g); }
  /// (rank, index) of a flat.
  std::pair<int, std::size_t> locate(ElemSet f) const;
  const Matroid& matroid() const { return m_; }

 private:
  Matroid m_;
  std::vector<std::vector<ElemSet>> by_rank_;
};

FlatsLattice flats(const Matroid& m);

/// "y" followed by the 1-based elements of the flat; the empty flat is "1".
std::string flat_label(ElemSet f, int n);

struct MobiusAlgebra {
  AlgebraPtr algebra;
  Vec deg;  // on the top degree: deg(y_E) = 1
};

MobiusAlgebra mobius_algebra(const FlatsLattice& lat);

struct TopHeavyReport {
  bool ok = true;
  std::vector<std::size_t> counts;
  std::string violation;
};

/// |L^k| <= |L^j| for all k <= j <= d - k.
TopHeavyReport top_heavy(const FlatsLattice& lat);

/// Catalog text: blocks "matroid n r count" followed by `count` lines of
/// 1-based basis elements.
std::vector<Matroid> read_matroid_catalog(const std::string& path);
/// One basis per line, whitespace separated 1-based elements; '#' comments.
Matroid parse_bases_text(const std::string& text);

}  // namespace lefmod
