#include "lefmod/graded.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace lefmod {

namespace {

Mat zero_rows(std::size_t rows, std::size_t cols) { return Mat(rows, cols); }

std::string triple(const GradedAlgebra& A, std::size_t p, std::size_t q, std::size_t r) {
  return "(" + A.label(p) + "," + A.label(q) + "," + A.label(r) + ")";
}

}  // namespace

// ---- GradedAlgebra

GradedAlgebra GradedAlgebra::make(const AlgebraSpec& spec) {
  GradedAlgebra A;
  if (spec.dims.empty() || spec.dims[0] < 1) throw AlgebraError("algebra needs a nonzero degree-0 part");
  A.dims_ = spec.dims;
  std::size_t N = 0;
  for (std::size_t k = 0; k < A.dims_.size(); ++k) {
    A.offsets_.push_back(N);
    for (std::size_t i = 0; i < A.dims_[k]; ++i) A.deg_of_.push_back(static_cast<int>(k));
    N += A.dims_[k];
  }
  if (spec.labels.empty()) {
    for (std::size_t g = 0; g < N; ++g) A.labels_.push_back("e" + std::to_string(g));
  } else {
    if (spec.labels.size() != N) throw AlgebraError("label count does not match dimensions");
    A.labels_ = spec.labels;
  }
  A.unit_ = spec.unit.empty() ? unit_vector(A.dims_[0], 0) : spec.unit;
  if (A.unit_.size() != A.dims_[0]) throw AlgebraError("unit has wrong length");

  A.table_.assign(N, std::vector<Vec>(N));
  for (std::size_t p = 0; p < N; ++p)
    for (std::size_t q = 0; q < N; ++q) {
      int k = A.deg_of_[p] + A.deg_of_[q];
      if (k <= A.top()) A.table_[p][q] = Vec(A.dims_[k]);
    }
  for (const auto& [pq, v] : spec.products) {
    auto [p, q] = pq;
    if (p >= N || q >= N) throw AlgebraError("product index out of range");
    int k = A.deg_of_[p] + A.deg_of_[q];
    if (k > A.top()) {
      if (!is_zero(v)) throw AlgebraError("nonzero product above top degree: " + A.labels_[p] + "*" + A.labels_[q]);
      continue;
    }
    if (v.size() != A.dims_[k])
      throw AlgebraError("product " + A.labels_[p] + "*" + A.labels_[q] + " is not in degree " + std::to_string(k));
    A.table_[p][q] = v;
  }

  // unit
  Elem one{0, A.unit_};
  for (std::size_t p = 0; p < N; ++p) {
    Elem b = A.basis_elem(p);
    if (A.multiply(one, b) != b.v) throw AlgebraError("unit does not act as identity on " + A.labels_[p]);
  }
  for (std::size_t p = 0; p < N; ++p)
    for (std::size_t q = p + 1; q < N; ++q)
      if (A.table_[p][q] != A.table_[q][p])
        throw AlgebraError("not commutative on (" + A.labels_[p] + "," + A.labels_[q] + ")");
  for (std::size_t p = 0; p < N; ++p)
    for (std::size_t q = 0; q < N; ++q) {
      if (A.deg_of_[p] + A.deg_of_[q] > A.top()) continue;
      Elem pq{A.deg_of_[p] + A.deg_of_[q], A.table_[p][q]};
      for (std::size_t r = 0; r < N; ++r) {
        if (pq.deg + A.deg_of_[r] > A.top()) continue;
        Elem qr{A.deg_of_[q] + A.deg_of_[r], A.table_[q][r]};
        if (A.multiply(pq, A.basis_elem(r)) != A.multiply(A.basis_elem(p), qr))
          throw AlgebraError("not associative on " + triple(A, p, q, r));
      }
    }
  return A;
}

std::size_t GradedAlgebra::find_label(const std::string& name) const {
  auto it = std::find(labels_.begin(), labels_.end(), name);
  if (it == labels_.end()) throw std::invalid_argument("unknown basis label '" + name + "'");
  return static_cast<std::size_t>(it - labels_.begin());
}

Elem GradedAlgebra::basis_elem(std::size_t g) const {
  int k = deg_of_[g];
  return {k, unit_vector(dims_[k], g - offsets_[k])};
}

Vec GradedAlgebra::multiply(const Elem& a, const Elem& b) const {
  int k = a.deg + b.deg;
  if (k > top() || k < 0) return {};
  Vec out(dims_[k]);
  for (std::size_t i = 0; i < a.v.size(); ++i) {
    if (a.v[i] == 0) continue;
    for (std::size_t j = 0; j < b.v.size(); ++j) {
      if (b.v[j] == 0) continue;
      const Vec& pr = table_[offsets_[a.deg] + i][offsets_[b.deg] + j];
      Rat f = a.v[i] * b.v[j];
      for (std::size_t t = 0; t < out.size(); ++t)
        if (pr[t] != 0) out[t] += f * pr[t];
    }
  }
  return out;
}

Elem GradedAlgebra::power(const Elem& a, unsigned k) const {
  Elem r{0, unit_};
  for (unsigned i = 0; i < k; ++i) r = times(r, a);
  return r;
}

Mat GradedAlgebra::mult_matrix(const Elem& a, int i) const {
  std::size_t rows = dim(i + a.deg), cols = dim(i);
  Mat m(rows, cols);
  if (rows == 0) return m;
  for (std::size_t c = 0; c < cols; ++c) m.set_col(c, multiply(a, {i, unit_vector(cols, c)}));
  return m;
}

std::string GradedAlgebra::format(const Elem& a) const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < a.v.size(); ++i) {
    const Rat& c = a.v[i];
    if (c == 0) continue;
    if (!first) os << (c < 0 ? "-" : "+");
    else if (c < 0) os << "-";
    first = false;
    Rat m = abs(c);
    if (m != 1) os << to_string(m) << "*";
    os << labels_[offsets_[a.deg] + i];
  }
  if (first) os << "0";
  return os.str();
}

// ---- GradedModule

GradedModule::GradedModule(AlgebraPtr alg, std::vector<std::size_t> dims, std::vector<std::vector<Mat>> act)
    : alg_(std::move(alg)), dims_(std::move(dims)), act_(std::move(act)) {
  // trailing zero components are kept: the top index is part of the data
  if (act_.empty()) {
    act_.assign(alg_->total_dim(), {});
    for (std::size_t g = 0; g < alg_->total_dim(); ++g)
      for (int i = 0; i <= degree(); ++i) {
        // A^0 = Q acts by scalars, everything else by zero
        if (alg_->degree_of(g) == 0 && alg_->dim(0) == 1) act_[g].push_back(Rat(1) / alg_->unit()[0] * Mat::identity(dim(i)));
        else act_[g].push_back(zero_rows(dim(i + alg_->degree_of(g)), dim(i)));
      }
  }
  if (act_.size() != alg_->total_dim()) throw std::invalid_argument("module: one action list per algebra basis element");
  for (std::size_t g = 0; g < act_.size(); ++g) {
    if (act_[g].size() != dims_.size()) throw std::invalid_argument("module: action list length mismatch");
    int s = alg_->degree_of(g);
    for (int i = 0; i <= degree(); ++i)
      if (act_[g][i].rows() != dim(i + s) || act_[g][i].cols() != dim(i))
        throw std::invalid_argument("module: action of " + alg_->label(g) + " on degree " + std::to_string(i) +
                                    " has the wrong shape");
  }
}

std::size_t GradedModule::total_dim() const { return std::accumulate(dims_.begin(), dims_.end(), std::size_t{0}); }

Mat GradedModule::action(const Elem& a, int i) const {
  Mat m(dim(i + a.deg), dim(i));
  if (m.rows() == 0 || m.cols() == 0 || a.deg > alg_->top()) return m;
  for (std::size_t j = 0; j < a.v.size(); ++j) {
    if (a.v[j] == 0) continue;
    m = m + a.v[j] * act_[alg_->global_index(a.deg, j)][i];
  }
  return m;
}

Mat GradedModule::power_action(const Elem& a, unsigned t, int i) const {
  Mat m = Mat::identity(dim(i));
  int cur = i;
  for (unsigned s = 0; s < t; ++s) {
    m = action(a, cur) * m;
    cur += a.deg;
  }
  return m;
}

void GradedModule::validate() const {
  const GradedAlgebra& A = *alg_;
  Elem one{0, A.unit()};
  for (int i = 0; i <= degree(); ++i)
    if (action(one, i) != Mat::identity(dim(i)))
      throw std::invalid_argument("module: unit does not act as identity in degree " + std::to_string(i));
  for (std::size_t p = 0; p < A.total_dim(); ++p)
    for (std::size_t q = 0; q < A.total_dim(); ++q) {
      int sp = A.degree_of(p), sq = A.degree_of(q);
      Elem pq{sp + sq, sp + sq <= A.top() ? A.basis_product(p, q) : Vec{}};
      for (int i = 0; i <= degree(); ++i) {
        if (dim(i) == 0 || dim(i + sp + sq) == 0) continue;
        Mat lhs = act_[p][i + sq] * act_[q][i];
        Mat rhs = pq.v.empty() ? Mat(lhs.rows(), lhs.cols()) : action(pq, i);
        if (lhs != rhs)
          throw std::invalid_argument("module: action is not multiplicative on (" + A.label(p) + "," + A.label(q) +
                                      ") in degree " + std::to_string(i));
      }
    }
}

// ---- forms

void ModuleWithForm::validate() const {
  const int d = degree();
  if (static_cast<int>(Q.blocks.size()) != d + 1) throw std::invalid_argument("form: need one block per degree");
  for (int i = 0; i <= d; ++i) {
    const Mat& b = Q.blocks[i];
    if (b.rows() != M.dim(i) || b.cols() != M.dim(d - i))
      throw std::invalid_argument("form: block " + std::to_string(i) + " has the wrong shape");
  }
  for (int i = 0; i <= d; ++i)
    if (Q.blocks[i] != Q.blocks[d - i].transpose())
      throw std::invalid_argument("form: not symmetric between degrees " + std::to_string(i) + " and " +
                                  std::to_string(d - i));
  const GradedAlgebra& A = *M.algebra();
  for (std::size_t g = 0; g < A.total_dim(); ++g) {
    int s = A.degree_of(g);
    for (int i = 0; i + s <= d; ++i) {
      int j = d - i - s;
      // Q(g x, y) = Q(x, g y) for x in M^i, y in M^j
      Mat lhs = M.basis_action(g, i).transpose() * Q.blocks[i + s];
      Mat rhs = Q.blocks[i] * M.basis_action(g, j);
      if (lhs != rhs)
        throw std::invalid_argument("form: not invariant under " + A.label(g) + " in degree " + std::to_string(i));
    }
  }
}

ModuleWithForm ModuleWithForm::negated() const {
  ModuleWithForm r = *this;
  for (auto& b : r.Q.blocks) b = -b;
  return r;
}

ModuleWithForm regular_module(const AlgebraPtr& A, const Vec& deg_map) {
  const int d = A->top();
  if (deg_map.size() != A->dim(d)) throw std::invalid_argument("deg functional has the wrong length");
  std::vector<std::vector<Mat>> act(A->total_dim());
  for (std::size_t g = 0; g < A->total_dim(); ++g)
    for (int i = 0; i <= d; ++i) act[g].push_back(A->mult_matrix(A->basis_elem(g), i));
  ModuleWithForm MF{GradedModule(A, A->dims(), act), {}};
  for (int i = 0; i <= d; ++i) {
    Mat b(A->dim(i), A->dim(d - i));
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < b.cols(); ++c)
        b(r, c) = dot(deg_map, A->multiply({i, unit_vector(A->dim(i), r)}, {d - i, unit_vector(A->dim(d - i), c)}));
    MF.Q.blocks.push_back(b);
  }
  return MF;
}

AlgebraPtr truncated_polynomial_algebra(int top, const std::string& var) {
  AlgebraSpec s;
  for (int k = 0; k <= top; ++k) {
    s.dims.push_back(1);
    s.labels.push_back(k == 0 ? "1" : (k == 1 ? var : var + "^" + std::to_string(k)));
  }
  for (int p = 0; p <= top; ++p)
    for (int q = 0; p + q <= top; ++q) s.products[{p, q}] = Vec{1};
  return std::make_shared<GradedAlgebra>(GradedAlgebra::make(s));
}

// ---- subalgebras

Elem Subalgebra::include(const Elem& b) const { return {b.deg, basis[b.deg].basis() * b.v}; }

Elem Subalgebra::restrict_elem(const Elem& a) const {
  if (a.deg < 0 || a.deg >= (int)basis.size() || !basis[a.deg].contains(a.v))
    throw std::invalid_argument("element does not lie in the subalgebra");
  return {a.deg, basis[a.deg].coords(a.v)};
}

std::vector<Vec> b1_basis(const Subalgebra& B) {
  if (B.basis.size() < 2) return {};
  return B.basis[1].vectors();
}

Elem cone_center(const Subalgebra& B) {
  Vec s(B.parent->dim(1), 0);
  for (const auto& g : B.cone_gens) s = add(s, g);
  return {1, s};
}

Cone local_cone(const Subalgebra& B) {
  std::vector<Vec> gens;
  for (const auto& g : B.cone_gens) gens.push_back(B.restrict_elem({1, g}).v);
  return Cone(B.dim(1), gens);
}

Subalgebra subalgebra_generated(const AlgebraPtr& A, const std::vector<Vec>& gens1, const std::vector<Vec>& cone_gens) {
  Subalgebra B;
  B.parent = A;
  B.gens1 = gens1;
  B.cone_gens = cone_gens;
  if (cone_gens.empty()) throw std::invalid_argument("subalgebra needs a nonempty cone");
  for (const auto& g : gens1)
    if (g.size() != A->dim(1)) throw std::invalid_argument("subalgebra generator is not in A^1");
  for (const auto& g : cone_gens)
    if (g.size() != A->dim(1)) throw std::invalid_argument("cone generator is not in A^1");
  B.basis.push_back(Subspace::span(A->dim(0), {A->unit()}));
  for (int k = 1; k <= A->top(); ++k) {
    std::vector<Vec> span;
    for (const auto& x : B.basis[k - 1].vectors())
      for (const auto& g : gens1) span.push_back(A->multiply({k - 1, x}, {1, g}));
    B.basis.push_back(Subspace::span(A->dim(k), span));
  }
  while (B.basis.size() > 1 && B.basis.back().dim() == 0) B.basis.pop_back();

  AlgebraSpec s;
  std::vector<std::pair<int, std::size_t>> idx;  // (degree, local) per global index of B
  for (int k = 0; k < (int)B.basis.size(); ++k) {
    s.dims.push_back(B.basis[k].dim());
    for (std::size_t i = 0; i < B.basis[k].dim(); ++i) {
      s.labels.push_back(A->format({k, B.basis[k].vector(i)}));
      idx.push_back({k, i});
    }
  }
  s.unit = B.basis[0].coords(A->unit());
  for (std::size_t p = 0; p < idx.size(); ++p)
    for (std::size_t q = 0; q < idx.size(); ++q) {
      int k = idx[p].first + idx[q].first;
      if (k >= (int)B.basis.size()) continue;
      Vec prod = A->multiply({idx[p].first, B.basis[idx[p].first].vector(idx[p].second)},
                             {idx[q].first, B.basis[idx[q].first].vector(idx[q].second)});
      s.products[{p, q}] = B.basis[k].coords(prod);
    }
  B.algebra = std::make_shared<GradedAlgebra>(GradedAlgebra::make(s));
  return B;
}

GradedModule restrict_to(const GradedModule& M, const Subalgebra& B) {
  const GradedAlgebra& Bal = *B.algebra;
  std::vector<std::vector<Mat>> act(Bal.total_dim());
  for (std::size_t g = 0; g < Bal.total_dim(); ++g) {
    Elem a = B.include(Bal.basis_elem(g));
    for (int i = 0; i <= M.degree(); ++i) act[g].push_back(M.action(a, i));
  }
  return GradedModule(B.algebra, M.dims(), act);
}

ModuleWithForm restrict_to(const ModuleWithForm& MF, const Subalgebra& B) { return {restrict_to(MF.M, B), MF.Q}; }

// ---- cones and samples

Cone::Cone(std::size_t amb, std::vector<Vec> g) : ambient(amb), gens(std::move(g)) {
  if (gens.empty()) throw std::invalid_argument("cone needs at least one generator");
  for (const auto& v : gens) {
    if (v.size() != ambient) throw std::invalid_argument("cone generator has the wrong length");
    if (is_zero(v)) throw std::invalid_argument("cone generator is zero");
  }
}

namespace {

Vec combine(const Cone& c, const std::vector<long>& coef) {
  Vec v(c.ambient);
  for (std::size_t i = 0; i < coef.size(); ++i) v = add(v, scale(Rat(coef[i]), c.gens[i]));
  return v;
}

// compositions of `total` into n positive parts, lexicographically descending
void compositions(std::size_t n, long total, std::vector<long>& cur, std::vector<std::vector<long>>& out) {
  if (cur.size() + 1 == n) {
    if (total >= 1) {
      cur.push_back(total);
      out.push_back(cur);
      cur.pop_back();
    }
    return;
  }
  long rest = static_cast<long>(n - cur.size() - 1);
  for (long a = total - rest; a >= 1; --a) {
    cur.push_back(a);
    compositions(n, total - a, cur, out);
    cur.pop_back();
  }
}

constexpr long kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71};

}  // namespace

std::vector<Vec> sample_points(const Cone& c, SampleStyle style, std::size_t count, const std::vector<Vec>& b1) {
  if (count < 1) throw std::invalid_argument("sample count must be at least 1");
  const std::size_t n = c.gens.size();
  std::vector<Vec> out;
  auto push = [&](const Vec& v) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  };
  switch (style) {
    case SampleStyle::generator_sums: {
      for (long total = static_cast<long>(n); out.size() < count; ++total) {
        std::vector<std::vector<long>> comps;
        std::vector<long> cur;
        compositions(n, total, cur, comps);
        for (auto& co : comps) {
          if (out.size() >= count) break;
          push(combine(c, co));
        }
      }
      break;
    }
    case SampleStyle::lattice: {
      push(combine(c, std::vector<long>(n, 1)));
      for (long step = 1; out.size() < count && step < 1000; ++step) {
        std::vector<long> co(n);
        for (std::size_t i = 0; i < n; ++i) co[i] = 1 + (step * kPrimes[i % 20] + static_cast<long>(i / 20)) % 5;
        push(combine(c, co));
      }
      break;
    }
    case SampleStyle::relative: {
      Vec eta0 = combine(c, std::vector<long>(n, 1));
      push(eta0);
      const long ts[] = {1, -1, 2, -2, 3, -3};
      for (long t : ts)
        for (const auto& b : b1) {
          if (out.size() >= count) break;
          push(add(eta0, scale(Rat(t), b)));
        }
      // fall back to interior points of the cone itself
      if (out.size() < count)
        for (auto& v : sample_points(c, SampleStyle::generator_sums, count + 1))
          if (out.size() < count) push(v);
      break;
    }
  }
  if (out.size() > count) out.resize(count);
  return out;
}

// ---- subquotients

Vec Subquotient::reduce(int i, const Vec& v) const {
  auto c = solve(frame[i], v);
  if (!c) throw std::invalid_argument("vector outside the subquotient's upper space");
  return Vec(c->begin() + static_cast<long>(lower_dim[i]), c->end());
}

Mat Subquotient::reduce(int i, const Mat& vs) const {
  auto c = solve(frame[i], vs);
  if (!c) throw std::invalid_argument("vectors outside the subquotient's upper space");
  return c->block(lower_dim[i], 0, c->rows() - lower_dim[i], c->cols());
}

Subquotient subquotient(const GradedModule& M, const std::vector<Subspace>& upper, const std::vector<Subspace>& lower) {
  const int d = M.degree();
  if ((int)upper.size() != d + 1 || (int)lower.size() != d + 1)
    throw std::invalid_argument("subquotient: one subspace per degree");
  Subquotient sq;
  std::vector<std::size_t> dims;
  for (int i = 0; i <= d; ++i) {
    if (!upper[i].contains(lower[i])) throw std::invalid_argument("subquotient: lower not inside upper");
    auto lifts = upper[i].complement_in(lower[i]);
    Mat L = Mat::from_columns(M.dim(i), lifts);
    sq.lifts.push_back(L);
    sq.frame.push_back(hcat(lower[i].basis(), L));
    sq.lower_dim.push_back(lower[i].dim());
    dims.push_back(lifts.size());
  }
  const GradedAlgebra& A = *M.algebra();
  std::vector<std::vector<Mat>> act(A.total_dim());
  for (std::size_t g = 0; g < A.total_dim(); ++g) {
    int s = A.degree_of(g);
    for (int i = 0; i <= d; ++i) {
      if (i + s > d || dims[i] == 0 || dims[i + s] == 0) {
        act[g].push_back(Mat(i + s <= d ? dims[i + s] : 0, dims[i]));
        continue;
      }
      Mat img = M.basis_action(g, i) * sq.lifts[i];
      for (std::size_t c = 0; c < img.cols(); ++c)
        if (!upper[i + s].contains(img.col(c)))
          throw std::invalid_argument("subquotient: upper space not stable under " + A.label(g));
      act[g].push_back(sq.reduce(i + s, img));
    }
  }
  // lower stability
  for (std::size_t g = 0; g < A.total_dim(); ++g) {
    int s = A.degree_of(g);
    for (int i = 0; i + s <= d; ++i)
      if (!lower[i + s].contains(apply(M.basis_action(g, i), lower[i])))
        throw std::invalid_argument("subquotient: lower space not stable under " + A.label(g));
  }
  sq.module = GradedModule(M.algebra(), dims, act);
  return sq;
}

Subquotient submodule(const GradedModule& M, const std::vector<Subspace>& upper) {
  std::vector<Subspace> lower;
  for (int i = 0; i <= M.degree(); ++i) lower.emplace_back(M.dim(i));
  return subquotient(M, upper, lower);
}

PairingForm pull_back_form(const PairingForm& Q, int d, const std::vector<Mat>& incl) {
  PairingForm out;
  for (int i = 0; i <= d; ++i) out.blocks.push_back(incl[i].transpose() * Q.blocks[i] * incl[d - i]);
  return out;
}

// ---- descent

Descent descend(const ModuleWithForm& MF, const Elem& a) {
  const GradedModule& M = MF.M;
  const int d = M.degree(), k = a.deg;
  const AlgebraPtr& A = M.algebra();
  Descent out;
  out.shift = k;
  std::vector<Subspace> img;  // a M^i inside M^{i+k}
  for (int i = 0; i <= d - k; ++i) img.push_back(image(M.action(a, i)));
  std::size_t total = 0;
  for (auto& s : img) total += s.dim();
  int dd = total == 0 ? -1 : d - k;
  std::vector<std::size_t> dims;
  for (int i = 0; i <= dd; ++i) dims.push_back(img[i].dim());
  for (int i = 0; i <= d; ++i) {
    if (i <= dd) {
      Mat q(img[i].dim(), M.dim(i));
      Mat ax = M.action(a, i);
      for (std::size_t c = 0; c < M.dim(i); ++c) q.set_col(c, img[i].coords(ax.col(c)));
      out.quotient.push_back(q);
    } else {
      out.quotient.push_back(Mat(0, M.dim(i)));
    }
  }
  std::vector<std::vector<Mat>> act(A->total_dim());
  for (std::size_t g = 0; g < A->total_dim(); ++g) {
    int s = A->degree_of(g);
    for (int i = 0; i <= dd; ++i) {
      if (i + s > dd) {
        act[g].push_back(Mat(0, dims[i]));
        continue;
      }
      Mat m(dims[i + s], dims[i]);
      Mat gm = M.basis_action(g, i + k);
      for (std::size_t c = 0; c < dims[i]; ++c) m.set_col(c, img[i + s].coords(gm * img[i].vector(c)));
      act[g].push_back(m);
    }
  }
  out.result.M = GradedModule(A, dims, act);
  for (int i = 0; i <= dd; ++i) {
    // Q_a(u, v) = Q(x, v) with a x = u, v ∈ a M^{dd-i} ⊆ M^{d-i}
    Mat ax = M.action(a, i);
    Mat b(dims[i], dims[dd - i]);
    for (std::size_t r = 0; r < dims[i]; ++r) {
      auto x = solve(ax, img[i].vector(r));
      for (std::size_t c = 0; c < dims[dd - i]; ++c) b(r, c) = MF.Q.pair(i, *x, img[dd - i].vector(c));
    }
    out.result.Q.blocks.push_back(b);
  }
  return out;
}

// ---- shifts and sums

GradedModule shift(const GradedModule& N, int k, int top) {
  if (N.is_zero()) {
    std::vector<std::size_t> dims(top + 1, 0);
    return GradedModule(N.algebra(), dims, {});
  }
  for (int i = 0; i <= N.degree(); ++i)
    if (N.dim(i) != 0 && (i + k < 0 || i + k > top))
      throw std::invalid_argument("shift moves a nonzero component outside degrees 0.." + std::to_string(top));
  const GradedAlgebra& A = *N.algebra();
  std::vector<std::size_t> dims(top + 1);
  for (int i = 0; i <= top; ++i) dims[i] = N.dim(i - k);
  std::vector<std::vector<Mat>> act(A.total_dim());
  for (std::size_t g = 0; g < A.total_dim(); ++g) {
    int s = A.degree_of(g);
    for (int i = 0; i <= top; ++i) {
      int src = i - k;
      std::size_t rows = i + s <= top ? dims[i + s] : 0;
      if (src >= 0 && src <= N.degree() && rows > 0 && dims[i] > 0)
        act[g].push_back(N.basis_action(g, src));
      else
        act[g].push_back(Mat(rows, dims[i]));
    }
  }
  return GradedModule(N.algebra(), dims, act);
}

GradedModule direct_sum(const std::vector<GradedModule>& parts) {
  if (parts.empty()) throw std::invalid_argument("direct_sum of nothing");
  const int top = parts[0].degree();
  const AlgebraPtr& A = parts[0].algebra();
  std::vector<std::size_t> dims(top + 1, 0);
  for (const auto& p : parts) {
    if (p.degree() != top) throw std::invalid_argument("direct_sum: top degrees differ");
    for (int i = 0; i <= top; ++i) dims[i] += p.dim(i);
  }
  std::vector<std::vector<Mat>> act(A->total_dim());
  for (std::size_t g = 0; g < A->total_dim(); ++g)
    for (int i = 0; i <= top; ++i) {
      Mat m(0, 0);
      for (const auto& p : parts) m = direct_sum(m, p.basis_action(g, i));
      act[g].push_back(m);
    }
  return GradedModule(A, dims, act);
}

ModuleWithForm shift_sum(const std::vector<std::pair<ModuleWithForm, int>>& parts) {
  if (parts.empty()) throw std::invalid_argument("shift_sum of nothing");
  const int D = parts[0].first.degree() + 2 * parts[0].second;
  std::vector<GradedModule> mods;
  for (const auto& [N, k] : parts) {
    if (N.degree() + 2 * k != D) throw std::invalid_argument("shift_sum: summands have different Lefschetz degrees");
    if (k < 0 && !N.M.is_zero()) throw std::invalid_argument("shift_sum: negative-degree result");
    mods.push_back(shift(N.M, k, D));
  }
  ModuleWithForm out{direct_sum(mods), {}};
  for (int i = 0; i <= D; ++i) {
    Mat b(0, 0);
    for (const auto& [N, k] : parts) {
      int src = i - k;
      std::size_t r = N.M.dim(src), c = N.M.dim(D - i - k);
      Mat blk = (src >= 0 && src <= N.degree()) ? N.Q.blocks[src] : Mat(r, c);
      if (blk.rows() != r || blk.cols() != c) blk = Mat(r, c);
      if (k % 2 != 0) blk = -blk;
      b = direct_sum(b, blk);
    }
    out.Q.blocks.push_back(b);
  }
  return out;
}

GradedModule shift_sum(const std::vector<GradedModule>& modules, const std::vector<int>& shifts) {
  if (modules.size() != shifts.size() || modules.empty()) throw std::invalid_argument("shift_sum: need one shift per module");
  int top = -1;
  for (std::size_t m = 0; m < modules.size(); ++m) {
    for (int i = 0; i <= modules[m].degree(); ++i)
      if (modules[m].dim(i) != 0) {
        if (i + shifts[m] < 0) throw std::invalid_argument("shift_sum: negative-degree result");
        top = std::max(top, i + shifts[m]);
      }
  }
  std::vector<GradedModule> parts;
  for (std::size_t m = 0; m < modules.size(); ++m) parts.push_back(shift(modules[m], shifts[m], top));
  return direct_sum(parts);
}

std::string dims_string(const std::vector<std::size_t>& dims) {
  std::string s = "(";
  for (std::size_t i = 0; i < dims.size(); ++i) s += (i ? "," : "") + std::to_string(dims[i]);
  return s + ")";
}

}  // namespace lefmod
