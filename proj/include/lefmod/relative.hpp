#pragma once

#include "lefmod/perverse.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lefmod {

struct RelativeHLReport {
  bool ok = true;
  struct Failure {
    int i, j;
    Vec witness;  // kernel (or cokernel) vector in Gr
    bool cokernel;
  };
  std::vector<Failure> failures;
};

/// η^{d-j} * : Gr^{.,j} -> Gr^{.+d-j, 2d-j} bijective for every j <= d.
RelativeHLReport check_relative_hl(const BigradedModule& G, const Elem& eta);

struct PrimPiece {
  int i = 0, j = 0;
  Subspace space;  // inside Gr^{i,j}
};

struct PrimitiveDecomposition {
  Elem eta, ell;
  std::vector<PrimPiece> pieces;  // nonzero pieces only, ordered by (j, i)
  std::size_t translate_total = 0;
  bool complete = false;
  std::string diagnostic;
  /// Zero subspace when the piece vanishes.
  Subspace piece(const BigradedModule& G, int i, int j) const;
};

/// Prim^{i,j} = ker η^{d-j+1}* ∩ ker l^{j-2i+1} in Gr^{i,j}, for j <= d and
/// 2i <= j; checks Gr = ⊕ η^s * l^t Prim^{i,j}.
PrimitiveDecomposition primitive_decomposition(const BigradedModule& G, const Elem& eta);

struct RelativeHRReport {
  bool ok = true;
  struct Piece {
    int i, j;
    Inertia inertia;
    std::optional<Vec> witness;  // in Gr^{i,j}
  };
  std::vector<Piece> pieces;
};

/// (-1)^i Q̄(x, η^{d-j} * l^{j-2i} y) positive definite on each Prim^{i,j}.
RelativeHRReport check_relative_hr(const BigradedModule& G, const PrimitiveDecomposition& prim);
Mat relative_hr_gram(const BigradedModule& G, const Elem& eta, const PrimPiece& p);

struct KernelModules {
  /// ker η^{d-j+1}* on Gr^{.,j}, a B-module of degree j; indexed by j = 0..d.
  std::vector<ModuleWithForm> over_B;
  /// ker l^{k+1} on Gr^{.,2.+k}, an A-module of degree d-k; indexed by k = 0..d.
  std::vector<ModuleWithForm> over_A;
};

KernelModules kernel_modules(const BigradedModule& G, const Elem& eta);

struct SignatureIdentity {
  bool applicable = false;  // d even
  long a = 0, b = 0, c = 0;
  bool ok() const { return !applicable || (a == b && b == c); }
};

SignatureIdentity signature_identity(const BigradedModule& G, const PrimitiveDecomposition& prim);

/// Elements of A preserving every P_j, per degree.
struct FilteredSubalgebra {
  std::vector<Subspace> basis;  // inside A^s
  bool closed = true;           // under multiplication
  std::size_t dim(int s) const { return s < 0 || s >= (int)basis.size() ? 0 : basis[s].dim(); }
  std::vector<std::size_t> dims() const;
};

FilteredSubalgebra compute_R(const GradedModule& M, const PerverseFiltration& P);

struct SplittingMap {
  /// Per degree i, M^i -> ⊕_j Gr^{i,j}, rows ordered by j then Gr coordinates.
  std::vector<Mat> phi;
  std::vector<std::vector<std::size_t>> row_offset;  // [i][j] offset of Gr^{i,j}
  bool invertible = true;
  bool filtration_exact = true;
  bool equivariant = true;
  std::vector<std::string> notes;
  bool ok() const { return invertible && filtration_exact && equivariant; }
};

/// Splits off Gr^{.,0}, Gr^{.,2d}, Gr^{.,1}, Gr^{.,2d-1}, ... and leaves Gr^{.,d}
/// last, using η^{d-t} and the inverse of η^{d-t}*. Throws when relative HL fails.
SplittingMap deligne_splitting(const BigradedModule& G, const Elem& eta, const FilteredSubalgebra& R);

}  // namespace lefmod
