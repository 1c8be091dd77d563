#include "lefmod/matroid.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace lefmod {

Matroid Matroid::from_bases(int n, const std::vector<std::vector<int>>& bases) {
  if (n < 0 || n > 20) throw std::invalid_argument("matroid ground set size out of range");
  if (bases.empty()) throw std::invalid_argument("matroid needs at least one basis");
  Matroid m;
  m.n_ = n;
  std::set<ElemSet> seen;
  for (const auto& b : bases) {
    ElemSet s = 0;
    for (int e : b) {
      if (e < 0 || e >= n) throw std::invalid_argument("basis element out of range");
      if (s & (1u << e)) throw std::invalid_argument("repeated element in a basis");
      s |= 1u << e;
    }
    seen.insert(s);
  }
  m.bases_.assign(seen.begin(), seen.end());
  m.r_ = std::popcount(m.bases_[0]);
  for (ElemSet b : m.bases_)
    if (std::popcount(b) != m.r_) throw std::invalid_argument("bases have different sizes");
  for (ElemSet b1 : m.bases_)
    for (ElemSet b2 : m.bases_)
      for (int x = 0; x < n; ++x) {
        if (!(b1 & (1u << x)) || (b2 & (1u << x))) continue;
        bool ok = false;
        for (int y = 0; y < n && !ok; ++y) {
          if (!(b2 & (1u << y)) || (b1 & (1u << y))) continue;
          ok = seen.count((b1 & ~(1u << x)) | (1u << y)) > 0;
        }
        if (!ok) throw std::invalid_argument("basis exchange fails");
      }
  return m;
}

Matroid Matroid::uniform(int r, int n) {
  std::vector<std::vector<int>> bases;
  for (ElemSet s = 0; s < (1u << n); ++s) {
    if (std::popcount(s) != r) continue;
    std::vector<int> b;
    for (int e = 0; e < n; ++e)
      if (s & (1u << e)) b.push_back(e);
    bases.push_back(b);
  }
  return from_bases(n, bases);
}

Matroid Matroid::fano() {
  // collinear triples read off the picture (1-based)
  const int lines[7][3] = {{3, 4, 5}, {1, 5, 6}, {1, 2, 3}, {3, 6, 7}, {2, 5, 7}, {1, 4, 7}, {2, 4, 6}};
  std::set<ElemSet> col;
  for (auto& l : lines) col.insert((1u << (l[0] - 1)) | (1u << (l[1] - 1)) | (1u << (l[2] - 1)));
  std::vector<std::vector<int>> bases;
  for (ElemSet s = 0; s < (1u << 7); ++s) {
    if (std::popcount(s) != 3 || col.count(s)) continue;
    std::vector<int> b;
    for (int e = 0; e < 7; ++e)
      if (s & (1u << e)) b.push_back(e);
    bases.push_back(b);
  }
  return from_bases(7, bases);
}

int Matroid::rank_of(ElemSet s) const {
  int best = 0;
  for (ElemSet b : bases_) best = std::max(best, std::popcount(b & s));
  return best;
}

ElemSet Matroid::closure(ElemSet s) const {
  int r = rank_of(s);
  ElemSet c = s;
  for (int e = 0; e < n_; ++e)
    if (!(s & (1u << e)) && rank_of(s | (1u << e)) == r) c |= 1u << e;
  return c;
}

namespace {

std::vector<int> elements(ElemSet f, int n) {
  std::vector<int> v;
  for (int e = 0; e < n; ++e)
    if (f & (1u << e)) v.push_back(e);
  return v;
}

}  // namespace

FlatsLattice::FlatsLattice(const Matroid& m) : m_(m) {
  std::set<ElemSet> all;
  for (ElemSet s = 0; s < (1u << m.size()); ++s) all.insert(m.closure(s));
  by_rank_.assign(m.rank() + 1, {});
  for (ElemSet f : all) by_rank_[m.rank_of(f)].push_back(f);
  const int n = m.size();
  for (auto& v : by_rank_)
    std::sort(v.begin(), v.end(), [n](ElemSet a, ElemSet b) { return elements(a, n) < elements(b, n); });
}

std::vector<std::size_t> FlatsLattice::counts() const {
  std::vector<std::size_t> c;
  for (const auto& v : by_rank_) c.push_back(v.size());
  return c;
}

std::pair<int, std::size_t> FlatsLattice::locate(ElemSet f) const {
  int k = rank_of(f);
  auto it = std::find(by_rank_[k].begin(), by_rank_[k].end(), f);
  if (it == by_rank_[k].end()) throw std::invalid_argument("not a flat");
  return {k, static_cast<std::size_t>(it - by_rank_[k].begin())};
}

FlatsLattice flats(const Matroid& m) { return FlatsLattice(m); }

std::string flat_label(ElemSet f, int n) {
  if (f == 0) return "1";
  std::string s = "y";
  for (int e : elements(f, n)) s += std::to_string(e + 1);
  return s;
}

MobiusAlgebra mobius_algebra(const FlatsLattice& lat) {
  AlgebraSpec spec;
  const int d = lat.rank();
  const int n = lat.matroid().size();
  std::vector<ElemSet> all;
  for (int k = 0; k <= d; ++k) {
    spec.dims.push_back(lat.flats(k).size());
    for (ElemSet f : lat.flats(k)) {
      all.push_back(f);
      spec.labels.push_back(flat_label(f, n));
    }
  }
  for (std::size_t p = 0; p < all.size(); ++p)
    for (std::size_t q = 0; q < all.size(); ++q) {
      int rp = lat.rank_of(all[p]), rq = lat.rank_of(all[q]);
      if (rp + rq > d) continue;
      ElemSet j = lat.join(all[p], all[q]);
      Vec v(spec.dims[rp + rq]);
      if (lat.rank_of(j) == rp + rq) v[lat.locate(j).second] = 1;
      spec.products[{p, q}] = v;
    }
  MobiusAlgebra out;
  out.algebra = std::make_shared<GradedAlgebra>(GradedAlgebra::make(spec));
  out.deg = Vec{1};
  return out;
}

TopHeavyReport top_heavy(const FlatsLattice& lat) {
  TopHeavyReport r;
  r.counts = lat.counts();
  const int d = lat.rank();
  for (int k = 0; k <= d; ++k)
    for (int j = k; j <= d - k; ++j)
      if (r.counts[k] > r.counts[j] && r.ok) {
        r.ok = false;
        r.violation = "|L^" + std::to_string(k) + "| = " + std::to_string(r.counts[k]) + " > |L^" + std::to_string(j) +
                      "| = " + std::to_string(r.counts[j]);
      }
  return r;
}

std::vector<Matroid> read_matroid_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open matroid catalog " + path);
  std::vector<Matroid> out;
  std::string word;
  while (in >> word) {
    if (word != "matroid") throw std::runtime_error("catalog: expected 'matroid', got '" + word + "'");
    int n, r, count;
    in >> n >> r >> count;
    std::string line;
    std::getline(in, line);
    std::vector<std::vector<int>> bases;
    for (int b = 0; b < count; ++b) {
      std::getline(in, line);
      std::istringstream ls(line);
      std::vector<int> basis;
      int e;
      while (ls >> e) basis.push_back(e - 1);
      if ((int)basis.size() != r) throw std::runtime_error("catalog: basis of wrong size");
      bases.push_back(basis);
    }
    out.push_back(Matroid::from_bases(n, bases));
  }
  return out;
}

Matroid parse_bases_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<int>> bases;
  int n = 0, declared = -1;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "n") {
      ls >> declared;
      continue;
    }
    std::vector<int> b;
    std::istringstream all(line);
    int e;
    while (all >> e) {
      if (e < 1) throw std::invalid_argument("bases list: elements are 1-based");
      b.push_back(e - 1);
      n = std::max(n, e);
    }
    if (!all.eof()) throw std::invalid_argument("bases list: non-integer token in '" + line + "'");
    bases.push_back(b);
  }
  if (declared >= 0) {
    if (declared < n) throw std::invalid_argument("bases list: element beyond declared ground set");
    n = declared;
  }
  return Matroid::from_bases(n, bases);
}

}  // namespace lefmod
