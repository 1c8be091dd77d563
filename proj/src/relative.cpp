#include "lefmod/relative.hpp"

#include <stdexcept>

namespace lefmod {

namespace {

Elem pow_elem(const BigradedModule& G, const Elem& a, int k) {
  return G.MF.M.algebra()->power(a, static_cast<unsigned>(k));
}

bool invertible(const Mat& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

std::string bideg(int i, int j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

}  // namespace

RelativeHLReport check_relative_hl(const BigradedModule& G, const Elem& eta) {
  RelativeHLReport r;
  const int d = G.d();
  for (int j = 0; j <= d; ++j) {
    Elem e = pow_elem(G, eta, d - j);
    for (int i = 0; i <= d; ++i) {
      Mat m = G.star(e, i, j);
      if (m.rows() == 0 && m.cols() == 0) continue;
      if (invertible(m)) continue;
      r.ok = false;
      Subspace k = kernel(m);
      if (k.dim() > 0) r.failures.push_back({i, j, k.vector(0), false});
      else r.failures.push_back({i, j, kernel(m.transpose()).vector(0), true});
    }
  }
  return r;
}

Subspace PrimitiveDecomposition::piece(const BigradedModule& G, int i, int j) const {
  for (auto& p : pieces)
    if (p.i == i && p.j == j) return p.space;
  return Subspace(G.dim(i, j));
}

PrimitiveDecomposition primitive_decomposition(const BigradedModule& G, const Elem& eta) {
  PrimitiveDecomposition out;
  out.eta = eta;
  out.ell = G.P.ell;
  const int d = G.d();
  std::map<std::pair<int, int>, std::vector<Vec>> translates;
  for (int j = 0; j <= d; ++j)
    for (int i = 0; 2 * i <= j; ++i) {
      if (G.dim(i, j) == 0) continue;
      Subspace k1 = kernel(G.star(pow_elem(G, eta, d - j + 1), i, j));
      Subspace k2 = kernel(G.induced(pow_elem(G, out.ell, j - 2 * i + 1), i, j));
      Subspace pr = intersect(k1, k2);
      if (pr.dim() == 0) continue;
      out.pieces.push_back({i, j, pr});
      for (int s = 0; s <= d - j; ++s)
        for (int t = 0; t <= j - 2 * i; ++t) {
          Mat img = G.star(pow_elem(G, eta, s), i + t, j) * G.induced(pow_elem(G, out.ell, t), i, j) * pr.basis();
          auto& bucket = translates[{i + s + t, j + 2 * s}];
          for (std::size_t c = 0; c < img.cols(); ++c) bucket.push_back(img.col(c));
          out.translate_total += img.cols();
        }
    }
  out.complete = out.translate_total == G.total_dim();
  if (!out.complete)
    out.diagnostic = "translates have total dimension " + std::to_string(out.translate_total) + ", Gr has " +
                     std::to_string(G.total_dim());
  for (int j = 0; j <= 2 * d && out.complete; ++j)
    for (int i = 0; i <= d; ++i) {
      auto it = translates.find({i, j});
      std::size_t n = it == translates.end() ? 0 : it->second.size();
      if (n != G.dim(i, j) || (n > 0 && Subspace::span(G.dim(i, j), it->second).dim() != n)) {
        out.complete = false;
        out.diagnostic = "sum of translates is not direct at " + bideg(i, j);
        break;
      }
    }
  return out;
}

Mat relative_hr_gram(const BigradedModule& G, const Elem& eta, const PrimPiece& p) {
  const int d = G.d(), i = p.i, j = p.j;
  Mat X = p.space.basis();
  Mat y = G.star(pow_elem(G, eta, d - j), j - i, j) * G.induced(pow_elem(G, G.P.ell, j - 2 * i), i, j) * X;
  Mat g = X.transpose() * G.qbar(i, j) * y;
  return i % 2 == 0 ? g : Rat(-1) * g;
}

RelativeHRReport check_relative_hr(const BigradedModule& G, const PrimitiveDecomposition& prim) {
  RelativeHRReport r;
  for (auto& p : prim.pieces) {
    auto sw = signature_with_witness(relative_hr_gram(G, prim.eta, p));
    RelativeHRReport::Piece piece{p.i, p.j, sw.inertia, std::nullopt};
    if (sw.inertia.plus != p.space.dim()) {
      r.ok = false;
      if (sw.nonpositive_witness) piece.witness = p.space.basis() * *sw.nonpositive_witness;
    }
    r.pieces.push_back(piece);
  }
  return r;
}

KernelModules kernel_modules(const BigradedModule& G, const Elem& eta) {
  KernelModules out;
  const int d = G.d();
  for (int j = 0; j <= d; ++j) {
    std::vector<Subspace> ks;
    for (int i = 0; i <= d; ++i) ks.push_back(kernel(G.star(pow_elem(G, eta, d - j + 1), i, j)));
    Subquotient sq = submodule(G.rows[j].module, ks);
    ModuleWithForm K;
    K.M = truncate(sq.module, j);
    Elem e = pow_elem(G, eta, d - j);
    for (int i = 0; i <= j; ++i)
      K.Q.blocks.push_back(sq.lifts[i].transpose() * G.qbar(i, j) * G.star(e, j - i, j) * sq.lifts[j - i]);
    out.over_B.push_back(K);
  }
  const AlgebraPtr& A = G.MF.M.algebra();
  for (int k = 0; k <= d; ++k) {
    const int top = d - k;
    std::vector<Subspace> ks;
    std::vector<std::size_t> dims;
    for (int i = 0; i <= top; ++i) {
      ks.push_back(kernel(G.induced(pow_elem(G, G.P.ell, k + 1), i, 2 * i + k)));
      dims.push_back(ks.back().dim());
    }
    std::vector<std::vector<Mat>> act(A->total_dim());
    for (std::size_t g = 0; g < A->total_dim(); ++g) {
      int s = A->degree_of(g);
      for (int i = 0; i <= top; ++i) {
        if (i + s > top) {
          act[g].push_back(Mat(0, dims[i]));
          continue;
        }
        Mat img = G.star(A->basis_elem(g), i, 2 * i + k) * ks[i].basis();
        Mat m(dims[i + s], dims[i]);
        for (std::size_t c = 0; c < img.cols(); ++c) m.set_col(c, ks[i + s].coords(img.col(c)));
        act[g].push_back(m);
      }
    }
    ModuleWithForm K;
    K.M = GradedModule(A, dims, act);
    Elem lk = pow_elem(G, G.P.ell, k);
    for (int i = 0; i <= top; ++i) {
      int o = top - i;
      K.Q.blocks.push_back(ks[i].basis().transpose() * G.qbar(i, 2 * i + k) * G.induced(lk, o, 2 * o + k) *
                           ks[o].basis());
    }
    out.over_A.push_back(K);
  }
  return out;
}

SignatureIdentity signature_identity(const BigradedModule& G, const PrimitiveDecomposition& prim) {
  SignatureIdentity r;
  const int d = G.d();
  if (d < 0 || d % 2 != 0) return r;
  r.applicable = true;
  const int h = d / 2;
  std::vector<std::size_t> off;
  std::size_t n = 0;
  for (int j = 0; j <= 2 * d; ++j) {
    off.push_back(n);
    n += G.dim(h, j);
  }
  Mat S(n, n);
  for (int j = 0; j <= 2 * d; ++j) {
    Mat q = G.qbar(h, j);
    for (std::size_t a = 0; a < q.rows(); ++a)
      for (std::size_t b = 0; b < q.cols(); ++b) S(off[j] + a, off[2 * d - j] + b) = q(a, b);
  }
  r.a = signature(S).signature();
  for (int i = 0; i <= h; ++i) {
    long diff = (long)G.MF.M.dim(i) - (long)G.MF.M.dim(i - 1);
    r.b += i % 2 == 0 ? diff : -diff;
  }
  for (auto& p : prim.pieces)
    if (p.j % 2 == 0) r.c += p.i % 2 == 0 ? (long)p.space.dim() : -(long)p.space.dim();
  return r;
}

std::vector<std::size_t> FilteredSubalgebra::dims() const {
  std::vector<std::size_t> out;
  for (auto& b : basis) out.push_back(b.dim());
  return out;
}

FilteredSubalgebra compute_R(const GradedModule& M, const PerverseFiltration& P) {
  const GradedAlgebra& A = *M.algebra();
  const int d = P.d;
  FilteredSubalgebra R;
  for (int s = 0; s <= A.top(); ++s) {
    const std::size_t n = A.dim(s);
    std::vector<Vec> rows;
    for (int j = 0; j <= 2 * d; ++j)
      for (int i = 0; i + s <= d; ++i) {
        Subspace src = P.at(j, i);
        if (src.dim() == 0) continue;
        Mat eq = P.at(j, i + s).equations();
        if (eq.rows() == 0) continue;
        for (std::size_t x = 0; x < src.dim(); ++x) {
          Mat cols(eq.rows(), n);
          for (std::size_t g = 0; g < n; ++g)
            cols.set_col(g, eq * (M.basis_action(A.global_index(s, g), i) * src.vector(x)));
          for (std::size_t r = 0; r < cols.rows(); ++r) rows.push_back(cols.row(r));
        }
      }
    R.basis.push_back(rows.empty() ? Subspace::full(n) : kernel(Mat::from_rows(n, rows)));
  }
  for (int s = 0; s <= A.top(); ++s)
    for (int t = s; s + t <= A.top(); ++t)
      for (auto& a : R.basis[s].vectors())
        for (auto& b : R.basis[t].vectors())
          if (!R.basis[s + t].contains(A.multiply({s, a}, {t, b}))) R.closed = false;
  return R;
}

namespace {

struct Chunk {
  int j;
  Mat basis;  // columns in M^i
  Mat to_gr;  // chunk coordinates -> Gr^{i,j}
};

}  // namespace

SplittingMap deligne_splitting(const BigradedModule& G, const Elem& eta, const FilteredSubalgebra& R) {
  SplittingMap out;
  const int d = G.d();
  if (d < 0) return out;
  const GradedModule& M = G.MF.M;
  std::vector<Subspace> C;
  for (int i = 0; i <= d; ++i) C.push_back(Subspace::full(M.dim(i)));
  std::vector<std::vector<Chunk>> chunks(d + 1);

  auto split_basis = [&](int i) {
    Mat S(M.dim(i), 0);
    for (auto& c : chunks[i]) S = hcat(S, c.basis);
    return S;
  };
  // coordinates in C[i] of the C-component of v along the split part
  auto proj_coords = [&](int i, const Vec& v) {
    Mat S = split_basis(i);
    auto c = solve(hcat(S, C[i].basis()), v);
    if (!c) throw std::logic_error("splitting lost a direct-sum decomposition");
    return Vec(c->begin() + static_cast<long>(S.cols()), c->end());
  };

  for (int t = 0; t < d; ++t) {
    const int k = d - t, top = 2 * d - t;
    Elem ek = pow_elem(G, eta, k);
    std::vector<Mat> Bt(d + 1), Binv(d + 1), Einv(d + 1), Pi(d + 1);
    for (int i = 0; i <= d; ++i) {
      Subspace bottom = intersect(G.P.at(t, i), C[i]);
      Bt[i] = bottom.basis();
      Mat bc = G.reduce(i, t, Bt[i]);
      auto bi = inverse(bc);
      if (!bi) throw std::logic_error("bottom part does not match Gr at " + bideg(i, t));
      Binv[i] = *bi;
      if (G.dim(i, t) == 0) continue;
      auto ei = inverse(G.star(ek, i, t));
      if (!ei) throw std::runtime_error("relative HL violated: eta^" + std::to_string(k) + " * not invertible on Gr" +
                                        bideg(i, t));
      Einv[i] = *ei;
    }
    // π_t on C[i], as a matrix from C[i]-coordinates to M^i
    for (int i = 0; i <= d; ++i) {
      Pi[i] = Mat(M.dim(i), C[i].dim());
      if (G.dim(i, t) == 0) continue;
      Mat act = M.action(ek, i);
      for (std::size_t c = 0; c < C[i].dim(); ++c) {
        Vec w = C[i + k].basis() * proj_coords(i + k, act * C[i].vector(c));
        Mat gm = G.reduce(i + k, top, Mat::from_columns(M.dim(i + k), {w}));
        Vec h = Einv[i] * gm.col(0);
        Pi[i].set_col(c, Bt[i] * (Binv[i] * h));
      }
    }
    std::vector<Chunk> tops(d + 1);
    for (int ip = 0; ip <= d; ++ip) {
      std::size_t n = G.dim(ip, top);
      tops[ip] = {top, Mat(M.dim(ip), n), Mat::identity(n)};
      if (n == 0) continue;
      int i = ip - k;
      if (i < 0) throw std::logic_error("Gr" + bideg(ip, top) + " has no relative Lefschetz partner");
      for (std::size_t u = 0; u < n; ++u) {
        Vec x = Bt[i] * (Binv[i] * (Einv[i] * unit_vector(n, u)));
        Vec yc = proj_coords(ip, M.action(ek, i) * x);
        Vec y = C[ip].basis() * yc;
        tops[ip].basis.set_col(u, add(y, scale(Rat(-1), Pi[ip] * yc)));
      }
    }
    for (int i = 0; i <= d; ++i) {
      Subspace ker_pi = Subspace::columns_of(C[i].basis() * kernel(Pi[i]).basis());
      Subspace next = intersect(G.P.at(top - 1, i), ker_pi);
      chunks[i].push_back({t, Bt[i], G.reduce(i, t, Bt[i])});
      chunks[i].push_back(tops[i]);
      C[i] = next;
    }
  }
  for (int i = 0; i <= d; ++i) chunks[i].push_back({d, C[i].basis(), G.reduce(i, d, C[i].basis())});

  out.row_offset.assign(d + 1, std::vector<std::size_t>(2 * d + 2, 0));
  for (int i = 0; i <= d; ++i) {
    std::size_t o = 0;
    for (int j = 0; j <= 2 * d; ++j) {
      out.row_offset[i][j] = o;
      o += G.dim(i, j);
    }
    out.row_offset[i][2 * d + 1] = o;
    Mat F = split_basis(i);
    Mat Gt(o, F.cols());
    std::size_t col = 0;
    for (auto& c : chunks[i]) {
      for (std::size_t a = 0; a < c.to_gr.rows(); ++a)
        for (std::size_t b = 0; b < c.to_gr.cols(); ++b) Gt(out.row_offset[i][c.j] + a, col + b) = c.to_gr(a, b);
      col += c.basis.cols();
    }
    auto Finv = inverse(F);
    if (!Finv || o != M.dim(i)) {
      out.invertible = false;
      out.notes.push_back("splitting frame singular in degree " + std::to_string(i));
      out.phi.push_back(Mat(o, M.dim(i)));
      continue;
    }
    Mat phi = Gt * *Finv;
    if (rank(phi) != M.dim(i)) {
      out.invertible = false;
      out.notes.push_back("splitting map singular in degree " + std::to_string(i));
    }
    out.phi.push_back(phi);
  }
  if (!out.invertible) return out;

  for (int j = 0; j <= 2 * d; ++j)
    for (int i = 0; i <= d; ++i) {
      std::vector<Vec> target;
      for (std::size_t r = 0; r < out.row_offset[i][j + 1]; ++r) target.push_back(unit_vector(M.dim(i), r));
      if (!(apply(out.phi[i], G.P.at(j, i)) == Subspace::span(M.dim(i), target))) {
        out.filtration_exact = false;
        out.notes.push_back("P_" + std::to_string(j) + " not mapped onto Gr^{.,<=" + std::to_string(j) + "} in degree " +
                            std::to_string(i));
      }
    }
  for (int s = 0; s < (int)R.basis.size(); ++s)
    for (auto& rv : R.basis[s].vectors()) {
      Elem r{s, rv};
      for (int i = 0; i + s <= d; ++i) {
        Mat rg(M.dim(i + s), M.dim(i));
        for (int j = 0; j <= 2 * d; ++j) {
          Mat b = G.induced(r, i, j);
          for (std::size_t x = 0; x < b.rows(); ++x)
            for (std::size_t y = 0; y < b.cols(); ++y) rg(out.row_offset[i + s][j] + x, out.row_offset[i][j] + y) = b(x, y);
        }
        if (!(out.phi[i + s] * M.action(r, i) == rg * out.phi[i])) {
          out.equivariant = false;
          out.notes.push_back("splitting does not commute with " + G.MF.M.algebra()->format(r));
        }
      }
    }
  return out;
}

}  // namespace lefmod
