#include "lefmod/linalg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace lefmod {

Echelon row_reduce(Mat m) {
  Echelon out;
  const std::size_t R = m.rows(), C = m.cols();
  std::size_t r = 0;
  Rat f;
  for (std::size_t c = 0; c < C && r < R; ++c) {
    std::size_t p = r;
    while (p < R && m(p, c) == 0) ++p;
    if (p == R) continue;
    if (p != r)
      for (std::size_t j = c; j < C; ++j) std::swap(m(p, j), m(r, j));
    if (m(r, c) != 1) {
      Rat inv = 1 / m(r, c);
      for (std::size_t j = c; j < C; ++j) m(r, j) *= inv;
    }
    for (std::size_t i = 0; i < R; ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rat t = m(i, c);
      for (std::size_t j = c; j < C; ++j) {
        if (m(r, j) == 0) continue;
        f = t * m(r, j);
        m(i, j) -= f;
      }
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.rref = std::move(m);
  return out;
}

std::size_t rank(const Mat& m) { return row_reduce(m).pivots.size(); }

Rat determinant(Mat m) {
  if (!m.is_square()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = m.rows();
  Rat det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      Rat t = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= t * m(c, j);
    }
  }
  return det;
}

std::optional<Mat> inverse(const Mat& m) {
  if (!m.is_square()) return std::nullopt;
  const std::size_t n = m.rows();
  Echelon e = row_reduce(hcat(m, Mat::identity(n)));
  if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1)) return std::nullopt;
  return e.rref.block(0, n, n, n);
}

std::optional<Mat> solve(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve shape mismatch");
  const std::size_t n = a.cols();
  Echelon e = row_reduce(hcat(a, b));
  Mat x(n, b.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    std::size_t c = e.pivots[r];
    if (c >= n) return std::nullopt;
    for (std::size_t j = 0; j < b.cols(); ++j) x(c, j) = e.rref(r, n + j);
  }
  return x;
}

std::optional<Vec> solve(const Mat& a, const Vec& b) {
  auto x = solve(a, Mat::from_columns(a.rows(), {b}));
  if (!x) return std::nullopt;
  return x->col(0);
}

// Subspace

Subspace Subspace::full(std::size_t n) {
  Subspace s;
  s.n_ = n;
  s.basis_ = Mat::identity(n);
  for (std::size_t i = 0; i < n; ++i) s.pivots_.push_back(i);
  return s;
}

Subspace Subspace::span(std::size_t n, const std::vector<Vec>& vectors) {
  Subspace s(n);
  if (vectors.empty()) return s;
  Echelon e = row_reduce(Mat::from_rows(n, vectors));
  std::size_t r = e.pivots.size();
  s.basis_ = e.rref.block(0, 0, r, n).transpose();
  s.pivots_ = e.pivots;
  return s;
}

Subspace Subspace::columns_of(const Mat& m) {
  Subspace s(m.rows());
  if (m.cols() == 0) return s;
  Echelon e = row_reduce(m.transpose());
  std::size_t r = e.pivots.size();
  s.basis_ = e.rref.block(0, 0, r, m.rows()).transpose();
  s.pivots_ = e.pivots;
  return s;
}

std::vector<Vec> Subspace::vectors() const {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < dim(); ++i) out.push_back(vector(i));
  return out;
}

Vec Subspace::coords(const Vec& v) const {
  if (v.size() != n_) throw std::invalid_argument("coords: ambient mismatch");
  Vec c(dim());
  for (std::size_t i = 0; i < dim(); ++i) c[i] = v[pivots_[i]];
  if (basis_ * c != v) throw std::invalid_argument("coords: vector not in subspace");
  return c;
}

bool Subspace::contains(const Vec& v) const {
  if (v.size() != n_) throw std::invalid_argument("contains: ambient mismatch");
  Vec c(dim());
  for (std::size_t i = 0; i < dim(); ++i) c[i] = v[pivots_[i]];
  return basis_ * c == v;
}

bool Subspace::contains(const Subspace& s) const {
  if (s.n_ != n_) throw std::invalid_argument("contains: ambient mismatch");
  for (std::size_t i = 0; i < s.dim(); ++i)
    if (!contains(s.vector(i))) return false;
  return true;
}

Mat Subspace::equations() const {
  // rows of a basis of the annihilator of the span
  if (dim() == 0) return Mat::identity(n_);
  Subspace k = kernel(basis_.transpose());
  return k.basis().transpose();
}

std::vector<Vec> Subspace::complement_in(const Subspace& sub) const {
  std::vector<Vec> chosen;
  std::vector<Vec> acc = sub.vectors();
  std::size_t have = sub.dim();
  for (std::size_t i = 0; i < dim() && have < dim(); ++i) {
    acc.push_back(vector(i));
    if (rank(Mat::from_rows(n_, acc)) > have) {
      chosen.push_back(vector(i));
      ++have;
    } else {
      acc.pop_back();
    }
  }
  return chosen;
}

Subspace kernel(const Mat& m) {
  const std::size_t n = m.cols();
  Echelon e = row_reduce(m);
  std::vector<bool> is_pivot(n, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vec v(n);
    v[f] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.rref(r, f);
    basis.push_back(std::move(v));
  }
  return Subspace::span(n, basis);
}

Subspace image(const Mat& m) { return Subspace::columns_of(m); }

Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw std::invalid_argument("intersect: ambient mismatch");
  if (a.dim() == 0 || b.dim() == 0) return Subspace(a.ambient());
  return apply(a.basis(), preimage(a.basis(), b));
}

Subspace sum(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw std::invalid_argument("sum: ambient mismatch");
  std::vector<Vec> v = a.vectors();
  for (auto& x : b.vectors()) v.push_back(std::move(x));
  return Subspace::span(a.ambient(), v);
}

Subspace preimage(const Mat& m, const Subspace& s) {
  if (m.rows() != s.ambient()) throw std::invalid_argument("preimage: shape mismatch");
  if (s.dim() == s.ambient()) return Subspace::full(m.cols());
  return kernel(s.equations() * m);
}

Subspace apply(const Mat& m, const Subspace& s) {
  if (m.cols() != s.ambient()) throw std::invalid_argument("apply: shape mismatch");
  if (s.dim() == 0) return Subspace(m.rows());
  return image(m * s.basis());
}

Subspace subspace_op(const Subspace& a, const Subspace& b, SubspaceOp op) {
  return op == SubspaceOp::intersect ? intersect(a, b) : sum(a, b);
}

// Signature: congruence transform T with T^T S T diagonal.

SignatureResult signature_with_witness(const Mat& s0) {
  if (!s0.is_symmetric()) throw std::invalid_argument("signature: matrix not symmetric");
  const std::size_t n = s0.rows();
  Mat s = s0;
  Mat t = Mat::identity(n);
  SignatureResult res;
  auto add_to = [&](std::size_t p, std::size_t q) {  // basis vector p += basis vector q
    for (std::size_t i = 0; i < n; ++i) s(i, p) += s(i, q);
    for (std::size_t j = 0; j < n; ++j) s(p, j) += s(q, j);
    for (std::size_t i = 0; i < n; ++i) t(i, p) += t(i, q);
  };
  auto swap_idx = [&](std::size_t p, std::size_t q) {
    for (std::size_t i = 0; i < n; ++i) std::swap(s(i, p), s(i, q));
    for (std::size_t j = 0; j < n; ++j) std::swap(s(p, j), s(q, j));
    for (std::size_t i = 0; i < n; ++i) std::swap(t(i, p), t(i, q));
  };
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && s(p, p) == 0) ++p;
    if (p == n) {
      // no nonzero diagonal left; look for an off-diagonal entry
      bool found = false;
      for (std::size_t a = k; a < n && !found; ++a)
        for (std::size_t b = a + 1; b < n && !found; ++b)
          if (s(a, b) != 0) {
            add_to(a, b);  // new diagonal s(a,a) = 2 s(a,b) + s(b,b) = 2 s(a,b)
            p = a;
            found = true;
          }
      if (!found) {
        res.inertia.zero += n - k;
        if (!res.nonpositive_witness) res.nonpositive_witness = t.col(k);
        break;
      }
    }
    if (p != k) swap_idx(p, k);
    const Rat piv = s(k, k);
    for (std::size_t j = k + 1; j < n; ++j) {
      if (s(k, j) == 0) continue;
      Rat f = s(k, j) / piv;
      // column/row j -= f * column/row k
      for (std::size_t i = 0; i < n; ++i) s(i, j) -= f * s(i, k);
      for (std::size_t i = 0; i < n; ++i) s(j, i) -= f * s(k, i);
      for (std::size_t i = 0; i < n; ++i) t(i, j) -= f * t(i, k);
    }
    if (piv > 0) {
      ++res.inertia.plus;
    } else {
      ++res.inertia.minus;
      if (!res.nonpositive_witness) res.nonpositive_witness = t.col(k);
    }
  }
  return res;
}

Inertia signature(const Mat& s) { return signature_with_witness(s).inertia; }

// Jordan profile

std::size_t JordanProfile::total_dim() const {
  std::size_t t = 0;
  for (const auto& b : blocks) t += b.m * static_cast<std::size_t>(b.e + 1);
  return t;
}

JordanProfile nilpotent_profile(const std::vector<std::size_t>& dims, const std::vector<Mat>& maps) {
  const int n = static_cast<int>(dims.size());
  if (maps.size() + 1 > dims.size() && !(dims.empty() && maps.empty()))
    throw std::invalid_argument("nilpotent_profile: more maps than degrees");
  for (std::size_t i = 0; i < maps.size(); ++i)
    if (maps[i].cols() != dims[i] || maps[i].rows() != dims[i + 1])
      throw std::invalid_argument("nilpotent_profile: map " + std::to_string(i) + " is not M^i -> M^(i+1)");
  // r[i][t] = rank of l^t : M^i -> M^{i+t}
  std::vector<std::vector<long>> r(n, std::vector<long>(n + 1, 0));
  for (int i = 0; i < n; ++i) {
    Mat comp = Mat::identity(dims[i]);
    r[i][0] = static_cast<long>(dims[i]);
    for (int t = 1; i + t < n; ++t) {
      std::size_t idx = static_cast<std::size_t>(i + t - 1);
      if (idx >= maps.size()) break;
      comp = maps[idx] * comp;
      r[i][t] = static_cast<long>(rank(comp));
    }
  }
  auto R = [&](int i, int t) -> long {
    if (i < 0 || i >= n || t < 0 || i + t >= n) return 0;
    return r[i][t];
  };
  // s(k,t): blocks starting at k of length >= t+1
  auto S = [&](int k, int t) { return R(k, t) - R(k - 1, t + 1); };
  JordanProfile p;
  for (int e = 0; e < n; ++e)
    for (int k = 0; k + e < n; ++k) {
      long m = S(k, e) - S(k, e + 1);
      if (m < 0) throw std::invalid_argument("nilpotent_profile: inconsistent ranks");
      if (m > 0) p.blocks.push_back({e, k, static_cast<std::size_t>(m)});
    }
  std::sort(p.blocks.begin(), p.blocks.end());
  return p;
}

std::string to_string(const JordanProfile& p) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < p.blocks.size(); ++i)
    os << (i ? "," : "") << "(" << p.blocks[i].e << "," << p.blocks[i].k << "," << p.blocks[i].m << ")";
  os << "}";
  return os.str();
}

}  // namespace lefmod
