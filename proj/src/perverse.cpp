#include "lefmod/perverse.hpp"

#include <sstream>

namespace lefmod {

Subspace PerverseFiltration::at(int j, int i) const {
  std::size_t n = i < 0 || i > d ? 0 : ambient[i];
  if (j < 0 || i < 0 || i > d) return Subspace(n);
  if (j > 2 * d) return Subspace::full(n);
  return P[j][i];
}

std::size_t PerverseFiltration::level_dim(int j) const {
  std::size_t s = 0;
  for (int i = 0; i <= d; ++i) s += at(j, i).dim();
  return s;
}

std::vector<std::size_t> PerverseFiltration::level_dims() const {
  std::vector<std::size_t> out;
  for (int j = 0; j <= 2 * d; ++j) out.push_back(level_dim(j));
  return out;
}

bool PerverseFiltration::trivial() const {
  std::size_t total = 0;
  for (auto n : ambient) total += n;
  return level_dim(d - 1) == 0 && level_dim(d) == total;
}

std::vector<Mat> ell_maps(const GradedModule& M, const Elem& ell) {
  std::vector<Mat> out;
  for (int i = 0; i < M.degree(); ++i) out.push_back(M.action(ell, i));
  return out;
}

PerverseFiltration perverse_filtration(const GradedModule& M, const Elem& ell) {
  if (ell.deg != 1) throw std::invalid_argument("perverse filtration needs a degree-one element");
  PerverseFiltration F;
  F.d = M.degree();
  F.ell = ell;
  F.ambient = M.dims();
  const int d = F.d;
  for (int j = 0; j <= 2 * d; ++j) {
    std::vector<Subspace> row;
    for (int k = 0; k <= d; ++k) {
      Subspace acc(M.dim(k));
      for (int c = 0; c <= k; ++c) {
        int p = j + 1 - k - c;
        if (p <= 0) continue;
        Subspace im = image(M.power_action(ell, k - c, c));
        Subspace ann = k + p > d ? Subspace::full(M.dim(k)) : kernel(M.power_action(ell, p, k));
        acc = sum(acc, intersect(im, ann));
      }
      row.push_back(acc);
    }
    F.P.push_back(row);
  }
  return F;
}

std::vector<std::vector<std::size_t>> profile_filtration_dims(const JordanProfile& p, int d) {
  std::vector<std::vector<std::size_t>> out(d < 0 ? 0 : 2 * d + 1, std::vector<std::size_t>(d + 1, 0));
  for (int j = 0; j <= 2 * d; ++j)
    for (auto& b : p.blocks)
      if (2 * b.k + b.e <= j)
        for (int i = b.k; i <= b.k + b.e && i <= d; ++i) out[j][i] += b.m;
  return out;
}

IndependenceReport check_ell_independence(const GradedModule& M, const std::vector<Vec>& samples) {
  if (samples.size() < 2) throw std::invalid_argument("independence check needs at least two samples");
  IndependenceReport r;
  auto first = perverse_filtration(M, {1, samples[0]});
  for (std::size_t s = 1; s < samples.size(); ++s)
    if (!(perverse_filtration(M, {1, samples[s]}) == first)) {
      r.equal = false;
      r.differing.push_back(s);
    }
  return r;
}

GradedModule truncate(const GradedModule& M, int top) {
  if (top >= M.degree()) return M;
  for (int i = top + 1; i <= M.degree(); ++i)
    if (M.dim(i) != 0) throw std::invalid_argument("truncate drops a nonzero component");
  std::vector<std::size_t> dims(M.dims().begin(), M.dims().begin() + (top + 1));
  const GradedAlgebra& A = *M.algebra();
  std::vector<std::vector<Mat>> act(A.total_dim());
  for (std::size_t g = 0; g < A.total_dim(); ++g)
    for (int i = 0; i <= top; ++i) {
      int s = A.degree_of(g);
      if (i + s > top) act[g].push_back(Mat(0, dims[i]));
      else act[g].push_back(M.basis_action(g, i));
    }
  return GradedModule(M.algebra(), dims, act);
}

// ---- Gr

std::size_t BigradedModule::dim(int i, int j) const {
  if (j < 0 || j > 2 * d() || i < 0 || i > d()) return 0;
  return rows[j].module.dim(i);
}

std::vector<std::size_t> BigradedModule::row_dims(int j) const {
  std::vector<std::size_t> out;
  for (int i = 0; i <= d(); ++i) out.push_back(dim(i, j));
  return out;
}

std::size_t BigradedModule::total_dim() const {
  std::size_t s = 0;
  for (int j = 0; j <= 2 * d(); ++j)
    for (int i = 0; i <= d(); ++i) s += dim(i, j);
  return s;
}

Mat BigradedModule::reduce(int i, int j, const Mat& vs) const { return rows[j].reduce(i, vs); }

Mat BigradedModule::star(const Elem& a, int i, int j) const {
  int ti = i + a.deg, tj = j + 2 * a.deg;
  std::size_t tdim = dim(ti, tj);
  if (tdim == 0 || dim(i, j) == 0) return Mat(tdim, dim(i, j));
  Mat img = MF.M.action(a, i) * lift(i, j);
  return reduce(ti, tj, img);
}

Mat BigradedModule::induced(const Elem& a, int i, int j) const {
  int ti = i + a.deg;
  std::size_t tdim = dim(ti, j);
  if (tdim == 0 || dim(i, j) == 0) return Mat(tdim, dim(i, j));
  return reduce(ti, j, MF.M.action(a, i) * lift(i, j));
}

Mat BigradedModule::qbar(int i, int j) const {
  int ci = d() - i, cj = 2 * d() - j;
  if (dim(i, j) == 0 || dim(ci, cj) == 0) return Mat(dim(i, j), dim(ci, cj));
  return lift(i, j).transpose() * MF.Q.blocks[i] * lift(ci, cj);
}

BigradedModule build_gr(const ModuleWithForm& MF, const Subalgebra& B, const PerverseFiltration& P) {
  BigradedModule G{MF, B, P, {}, {}};
  const int d = P.d;
  const GradedModule& M = MF.M;
  const GradedAlgebra& A = *M.algebra();
  auto note = [&](const std::string& s) { G.checks.notes.push_back(s); };

  for (int j = 0; j <= 2 * d; ++j)
    for (int i = 0; i <= d; ++i) {
      Subspace Pj = P.at(j, i);
      for (int s = 1; s <= d - i; ++s) {
        for (std::size_t r = 0; r < B.dim(s); ++r) {
          Elem b = B.include({s, unit_vector(B.dim(s), r)});
          if (!P.at(j, i + s).contains(apply(M.action(b, i), Pj))) {
            if (G.checks.b_stable) note("B does not preserve P_" + std::to_string(j) + " in degree " + std::to_string(i));
            G.checks.b_stable = false;
          }
        }
        for (std::size_t g = A.offset(s); g < A.offset(s) + A.dim(s); ++g)
          if (!P.at(j + 2 * s, i + s).contains(apply(M.basis_action(g, i), Pj))) {
            if (G.checks.star_shift)
              note(A.label(g) + " maps P_" + std::to_string(j) + " outside P_" + std::to_string(j + 2 * s));
            G.checks.star_shift = false;
          }
      }
      Subspace Po = P.at(2 * d - j - 1, d - i);
      if (!(Pj.basis().transpose() * MF.Q.blocks[i] * Po.basis()).is_zero()) {
        if (G.checks.orthogonal) note("P_" + std::to_string(j) + " not orthogonal in degree " + std::to_string(i));
        G.checks.orthogonal = false;
      }
    }
  if (!G.checks.b_stable) return G;  // rows would not be B-modules

  GradedModule MB = restrict_to(M, B);
  for (int j = 0; j <= 2 * d; ++j) {
    std::vector<Subspace> up, lo;
    for (int i = 0; i <= d; ++i) {
      up.push_back(P.at(j, i));
      lo.push_back(P.at(j - 1, i));
    }
    G.rows.push_back(subquotient(MB, up, lo));
  }
  for (int j = 0; j <= 2 * d; ++j)
    for (int i = 0; i <= d; ++i) {
      if (G.dim(i, j) != G.dim(d - i, 2 * d - j)) {
        if (G.checks.dims_symmetric) note("dim Gr^{" + std::to_string(i) + "," + std::to_string(j) + "} asymmetric");
        G.checks.dims_symmetric = false;
      }
      if (G.dim(i, j) == 0) continue;
      Mat q = G.qbar(i, j);
      if (q.rows() != q.cols() || rank(q) != q.rows()) {
        if (G.checks.nondegenerate)
          note("induced form degenerate on Gr^{" + std::to_string(i) + "," + std::to_string(j) + "}");
        G.checks.nondegenerate = false;
      }
    }
  return G;
}

BigradedModule build_gr(const ModuleWithForm& MF, const Subalgebra& B, const Elem& ell) {
  return build_gr(MF, B, perverse_filtration(MF.M, ell));
}

OneDimLayer one_dim_layer(const ModuleWithForm& MF, const Elem& ell) {
  const GradedModule& M = MF.M;
  const int d = M.degree();
  std::vector<Subspace> up, lo;
  for (int i = 0; i <= d; ++i) {
    Subspace ann = i == d ? Subspace::full(M.dim(i)) : kernel(M.action(ell, i));
    Subspace im = i == 0 ? Subspace(M.dim(0)) : image(M.action(ell, i - 1));
    up.push_back(ann);
    lo.push_back(intersect(im, ann));
  }
  OneDimLayer out{{}, subquotient(M, up, lo), false};
  out.N.M = out.sq.module;
  out.N.Q = pull_back_form(MF.Q, d, out.sq.lifts);
  bool nd = true;
  for (int i = 0; i <= d; ++i) {
    const Mat& b = out.N.Q.blocks[i];
    if (b.rows() != b.cols() || rank(b) != b.rows()) nd = false;
  }
  out.form_nondegenerate = nd;
  return out;
}

namespace {

std::string bideg(int i, int j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

// Grf : Gr^{i,j} -> Gr'^{i,j+dj} of a degree-preserving map f with f(P_j) ⊆ P'_{j+dj}
Mat gr_map(const BigradedModule& G, const BigradedModule& H, const Mat& f, int i, int j, int dj) {
  std::size_t r = H.dim(i, j + dj), c = G.dim(i, j);
  if (r == 0 || c == 0) return Mat(r, c);
  return H.reduce(i, j + dj, f * G.lift(i, j));
}

}  // namespace

DescentMapReport gr_descent_maps(const ModuleWithForm& MF, const Subalgebra& B, const Elem& ell, const Elem& eta) {
  DescentMapReport rep;
  const int d = MF.degree();
  BigradedModule G = build_gr(MF, B, ell);
  if (!G.checks.b_stable) {
    rep.violations.push_back("filtration not B-stable");
    rep.psi_filtration = rep.phi_filtration = false;
    return rep;
  }
  auto fail = [&](bool& flag, const std::string& what) {
    flag = false;
    rep.violations.push_back(what);
  };

  // ψ : M -> M_l, identified with l M
  Descent Dl = descend(MF, ell);
  PerverseFiltration Pl = perverse_filtration(Dl.result.M, ell);
  const int dl = Dl.result.degree();
  for (int j = 0; j <= 2 * d; ++j)
    for (int i = 0; i <= dl; ++i)
      if (!(apply(Dl.quotient[i], G.P.at(j, i)) == Pl.at(j - 1, i)))
        fail(rep.psi_filtration, "psi(P_j) != P_{l,j-1} at " + bideg(i, j));
  if (rep.psi_filtration && dl >= 0) {
    BigradedModule Gl = build_gr(Dl.result, B, Pl);
    for (int j = 0; j <= 2 * d; ++j)
      for (int i = 0; i <= dl; ++i) {
        Mat g = gr_map(G, Gl, Dl.quotient[i], i, j, -1);
        if (2 * i < j && (g.rows() != g.cols() || rank(g) != g.rows()))
          fail(rep.psi_iso, "Gr psi not an isomorphism at " + bideg(i, j));
        int yi = d - i - 1, yj = 2 * d - j;
        if (yi < 0 || G.dim(yi, yj) == 0 || G.dim(i, j) == 0) continue;
        Mat gy = gr_map(G, Gl, Dl.quotient[yi], yi, yj, -1);
        Mat lhs = g.transpose() * Gl.qbar(i, j - 1) * gy;
        // l acts inside the row, being an element of B
        Mat rhs = G.qbar(i, j) * G.induced(ell, yi, yj);
        if (!(lhs == rhs)) fail(rep.psi_form, "psi form identity fails at " + bideg(i, j));
      }
  }

  // φ : M -> M_η
  Descent De = descend(MF, eta);
  PerverseFiltration Pe = perverse_filtration(De.result.M, ell);
  const int de = De.result.degree();
  for (int j = 0; j <= 2 * d; ++j)
    for (int i = 0; i <= de; ++i)
      if (!Pe.at(j, i).contains(apply(De.quotient[i], G.P.at(j, i))))
        fail(rep.phi_filtration, "phi(P_j) not inside P_{eta,j} at " + bideg(i, j));
  if (rep.phi_filtration && de >= 0) {
    BigradedModule Ge = build_gr(De.result, B, Pe);
    for (int j = 0; j <= 2 * d; ++j)
      for (int i = 0; i <= de; ++i) {
        Mat g = gr_map(G, Ge, De.quotient[i], i, j, 0);
        if (j < d && rank(g) != g.cols()) fail(rep.phi_injective, "Gr phi not injective at " + bideg(i, j));
        int yi = d - i - 1, yj = 2 * d - j - 2;
        if (yi < 0 || yj < 0 || G.dim(yi, yj) == 0 || G.dim(i, j) == 0) continue;
        Mat gy = gr_map(G, Ge, De.quotient[yi], yi, yj, 0);
        Mat lhs = g.transpose() * Ge.qbar(i, j) * gy;
        Mat rhs = G.qbar(i, j) * G.star(eta, yi, yj);
        if (!(lhs == rhs)) fail(rep.phi_form, "phi form identity fails at " + bideg(i, j));
      }
  }
  return rep;
}

}  // namespace lefmod
