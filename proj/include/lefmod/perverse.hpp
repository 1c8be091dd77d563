#pragma once

#include "lefmod/kahler.hpp"

#include <string>
#include <vector>

namespace lefmod {

struct PerverseFiltration {
  int d = -1;
  Elem ell;
  std::vector<std::vector<Subspace>> P;  // P[j][i] = P_j ∩ M^i, 0 <= j <= 2d
  std::vector<std::size_t> ambient;      // dim M^i

  /// Clamped: zero below 0, everything above 2d.
  Subspace at(int j, int i) const;
  std::size_t level_dim(int j) const;
  std::vector<std::size_t> level_dims() const;
  /// P_{d-1} = 0 and P_d = M
  bool trivial() const;
  bool operator==(const PerverseFiltration& o) const { return d == o.d && P == o.P; }
};

/// P_j ∩ M^k = Σ_{c=0..k} l^{k-c} M^c ∩ ann(l^{j+1-k-c}) ∩ M^k; terms whose
/// exponent is not positive vanish.
PerverseFiltration perverse_filtration(const GradedModule& M, const Elem& ell);

/// Same filtration read off the Jordan profile: a block of length e+1 starting
/// in degree c sits in P_j exactly when 2c + e <= j. Returns level dimensions
/// per (j, i).
std::vector<std::vector<std::size_t>> profile_filtration_dims(const JordanProfile& p, int d);

/// l maps of M as the list M^i -> M^{i+1}.
std::vector<Mat> ell_maps(const GradedModule& M, const Elem& ell);

struct IndependenceReport {
  bool equal = true;
  std::vector<std::size_t> differing;  // sample indices whose filtration differs from the first
};

/// Throws when fewer than two samples are given.
IndependenceReport check_ell_independence(const GradedModule& M, const std::vector<Vec>& samples);

struct GrChecks {
  bool b_stable = true;        // b P_j ⊆ P_j
  bool star_shift = true;      // A^s P_j ⊆ P_{j+2s}
  bool orthogonal = true;      // Q(P_j ∩ M^i, P_{2d-j-1} ∩ M^{d-i}) = 0
  bool dims_symmetric = true;  // dim Gr^{i,j} = dim Gr^{d-i,2d-j}
  bool nondegenerate = true;   // every Q̄ block invertible
  std::vector<std::string> notes;
  bool ok() const { return b_stable && star_shift && orthogonal && dims_symmetric && nondegenerate; }
};

/// Gr = ⊕ P_j / P_{j-1} on lift bases. Rows are B-modules; A acts by the
/// degree-doubling star action; Q̄ pairs Gr^{i,j} with Gr^{d-i,2d-j}.
struct BigradedModule {
  ModuleWithForm MF;  // over A
  Subalgebra B;
  PerverseFiltration P;
  std::vector<Subquotient> rows;  // j = 0..2d, B-modules
  GrChecks checks;

  int d() const { return P.d; }
  std::size_t dim(int i, int j) const;
  std::vector<std::size_t> row_dims(int j) const;
  std::size_t total_dim() const;
  const Mat& lift(int i, int j) const { return rows[j].lifts[i]; }
  /// Coordinates in Gr^{i,j} of vectors (columns) lying in P_j ∩ M^i.
  Mat reduce(int i, int j, const Mat& vs) const;
  /// a * : Gr^{i,j} -> Gr^{i+s, j+2s} for a ∈ A^s.
  Mat star(const Elem& a, int i, int j) const;
  /// Action Gr^{i,j} -> Gr^{i+s,j} of an element of A preserving the filtration.
  Mat induced(const Elem& a, int i, int j) const;
  /// Q̄ block Gr^{i,j} x Gr^{d-i,2d-j}.
  Mat qbar(int i, int j) const;
};

BigradedModule build_gr(const ModuleWithForm& MF, const Subalgebra& B, const PerverseFiltration& P);
BigradedModule build_gr(const ModuleWithForm& MF, const Subalgebra& B, const Elem& ell);

/// N = ann(l) / (l M ∩ ann(l)) with the restricted form.
struct OneDimLayer {
  ModuleWithForm N;
  Subquotient sq;
  bool form_nondegenerate = false;
};
OneDimLayer one_dim_layer(const ModuleWithForm& MF, const Elem& ell);

struct DescentMapReport {
  bool psi_filtration = true;  // ψ(P_j) = P_{l, j-1}
  bool psi_iso = true;         // Gr ψ iso on Gr^{i,j} for i < j/2
  bool psi_form = true;        // Q̄_l(Grψ x, Grψ y) = Q̄(x, l y)
  bool phi_filtration = true;  // φ(P_j) ⊆ P_{η, j}
  bool phi_injective = true;   // Gr φ injective for j < d
  bool phi_form = true;        // Q̄_η(Grφ x, Grφ y) = Q̄(x, η * y)
  std::vector<std::string> violations;  // with bidegree
  bool ok() const { return psi_filtration && psi_iso && psi_form && phi_filtration && phi_injective && phi_form; }
};

/// ell from the cone of B, eta from the cone of A, both as elements of A^1.
DescentMapReport gr_descent_maps(const ModuleWithForm& MF, const Subalgebra& B, const Elem& ell, const Elem& eta);

/// Drops degrees above `top`; they must be zero.
GradedModule truncate(const GradedModule& M, int top);

}  // namespace lefmod
