#pragma once

#include "lefmod/linalg.hpp"

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lefmod {

struct AlgebraError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Raw description of a graded algebra. Basis elements are numbered globally,
/// degree by degree. products[{p, q}] is the product of basis elements p and q
/// in local coordinates of the target degree; absent pairs multiply to zero.
struct AlgebraSpec {
  std::vector<std::size_t> dims;
  std::vector<std::string> labels;
  std::map<std::pair<std::size_t, std::size_t>, Vec> products;
  Vec unit;  // coordinates in A^0; defaults to the first basis vector
};

/// Homogeneous element: degree plus coordinates in that degree.
struct Elem {
  int deg = 0;
  Vec v;
};

class GradedAlgebra {
 public:
  /// Validates unit, degree additivity, commutativity and associativity.
  static GradedAlgebra make(const AlgebraSpec& spec);

  int top() const { return static_cast<int>(dims_.size()) - 1; }
  std::size_t dim(int k) const { return k < 0 || k > top() ? 0 : dims_[k]; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t total_dim() const { return labels_.size(); }
  std::size_t offset(int k) const { return offsets_[k]; }
  int degree_of(std::size_t g) const { return deg_of_[g]; }
  std::size_t local_index(std::size_t g) const { return g - offsets_[deg_of_[g]]; }
  std::size_t global_index(int k, std::size_t i) const { return offsets_[k] + i; }
  const std::string& label(std::size_t g) const { return labels_[g]; }
  const std::vector<std::string>& labels() const { return labels_; }
  /// Global index of a label, or throws.
  std::size_t find_label(const std::string& name) const;
  const Vec& unit() const { return unit_; }
  Elem basis_elem(std::size_t g) const;

  /// Product of basis elements; empty vector when the degree overflows.
  const Vec& basis_product(std::size_t p, std::size_t q) const { return table_[p][q]; }
  Vec multiply(const Elem& a, const Elem& b) const;
  Elem times(const Elem& a, const Elem& b) const { return {a.deg + b.deg, multiply(a, b)}; }
  Elem power(const Elem& a, unsigned k) const;
  /// Matrix of x -> a x from A^i to A^{i + a.deg}.
  Mat mult_matrix(const Elem& a, int i) const;

  std::string format(const Elem& a) const;

 private:
  std::vector<std::size_t> dims_, offsets_;
  std::vector<int> deg_of_;
  std::vector<std::string> labels_;
  std::vector<std::vector<Vec>> table_;
  Vec unit_;
};

using AlgebraPtr = std::shared_ptr<const GradedAlgebra>;

/// Graded module M^0..M^d. act[g][i] is the matrix of basis element g from
/// M^i to M^{i+deg g}; it has zero rows once the target degree passes d.
/// An empty act list lets positive degrees act by zero.
class GradedModule {
 public:
  GradedModule() = default;
  GradedModule(AlgebraPtr alg, std::vector<std::size_t> dims, std::vector<std::vector<Mat>> act);
  static GradedModule zero(AlgebraPtr alg) { return GradedModule(std::move(alg), {}, {}); }

  const AlgebraPtr& algebra() const { return alg_; }
  /// Top index; -1 for the zero module.
  int degree() const { return static_cast<int>(dims_.size()) - 1; }
  std::size_t dim(int i) const { return i < 0 || i > degree() ? 0 : dims_[i]; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t total_dim() const;
  bool is_zero() const { return total_dim() == 0; }

  const Mat& basis_action(std::size_t g, int i) const { return act_[g][i]; }
  /// dim(i + a.deg) x dim(i), zero when out of range.
  Mat action(const Elem& a, int i) const;
  /// a^t applied to M^i.
  Mat power_action(const Elem& a, unsigned t, int i) const;

  /// Checks that the unit acts as identity and the action is multiplicative.
  void validate() const;

 private:
  AlgebraPtr alg_;
  std::vector<std::size_t> dims_;
  std::vector<std::vector<Mat>> act_;
};

/// Blocks Q^(i) : M^i x M^{d-i} -> Q as dim M^i x dim M^{d-i} matrices.
struct PairingForm {
  std::vector<Mat> blocks;
  Rat pair(int i, const Vec& x, const Vec& y) const { return bilinear(x, blocks[i], y); }
};

struct ModuleWithForm {
  GradedModule M;
  PairingForm Q;
  int degree() const { return M.degree(); }
  /// Symmetry and invariance under every algebra basis element.
  void validate() const;
  ModuleWithForm negated() const;
};

ModuleWithForm regular_module(const AlgebraPtr& A, const Vec& deg_map);

/// ℚ[x]/(x^{top+1}) with basis 1, x, ..., x^top.
AlgebraPtr truncated_polynomial_algebra(int top, const std::string& var = "l");

/// Degree-one generated subalgebra B of A with fixed cone generators for its cone.
struct Subalgebra {
  AlgebraPtr parent;
  std::vector<Vec> gens1;
  std::vector<Subspace> basis;  // per degree, inside A^k
  std::vector<Vec> cone_gens;
  AlgebraPtr algebra;           // B on its own canonical basis

  std::size_t dim(int k) const { return k < 0 || k >= (int)basis.size() ? 0 : basis[k].dim(); }
  /// Element of B (local coordinates) as an element of A.
  Elem include(const Elem& b) const;
  /// Element of A lying in B as local coordinates of B.
  Elem restrict_elem(const Elem& a) const;
};

Subalgebra subalgebra_generated(const AlgebraPtr& A, const std::vector<Vec>& gens1, const std::vector<Vec>& cone_gens);

/// B¹ basis as vectors of A¹.
std::vector<Vec> b1_basis(const Subalgebra& B);
/// Sum of the cone generators of B, an element of A¹.
Elem cone_center(const Subalgebra& B);

/// Restriction of scalars along B ⊆ A.
GradedModule restrict_to(const GradedModule& M, const Subalgebra& B);
ModuleWithForm restrict_to(const ModuleWithForm& MF, const Subalgebra& B);

struct Cone {
  std::size_t ambient = 0;
  std::vector<Vec> gens;
  Cone() = default;
  Cone(std::size_t ambient, std::vector<Vec> gens);
};

/// Cone of B in B's own degree-one coordinates.
Cone local_cone(const Subalgebra& B);

enum class SampleStyle { generator_sums, lattice, relative };

/// Deterministic sample points of an open cone. relative needs the B¹ basis.
std::vector<Vec> sample_points(const Cone& c, SampleStyle style, std::size_t count,
                               const std::vector<Vec>& b1_basis = {});

/// Module given by per-degree subspaces upper ⊇ lower stable under the action,
/// presented on lift bases of upper/lower.
struct Subquotient {
  GradedModule module;
  std::vector<Mat> lifts;        // columns: chosen lifts in M^i
  std::vector<Mat> frame;        // [lower basis | lifts]
  std::vector<std::size_t> lower_dim;
  /// Coordinates of v ∈ upper^i modulo lower^i.
  Vec reduce(int i, const Vec& v) const;
  Mat reduce(int i, const Mat& vs) const;
};

Subquotient subquotient(const GradedModule& M, const std::vector<Subspace>& upper, const std::vector<Subspace>& lower);
Subquotient submodule(const GradedModule& M, const std::vector<Subspace>& upper);

/// Form restricted along per-degree inclusion matrices.
PairingForm pull_back_form(const PairingForm& Q, int d, const std::vector<Mat>& incl);

struct Descent {
  ModuleWithForm result;
  std::vector<Mat> quotient;  // M^i -> M_a^i
  int shift = 0;              // degree of a
};

/// M_a = M / ann_M(a) with Q_a(φx, φy) = Q(x, a y). M_a^i is identified with
/// a·M^i ⊆ M^{i+k} in its canonical basis.
Descent descend(const ModuleWithForm& MF, const Elem& a);

/// N[-k]: moves N^i to degree i+k inside a module of top index `top`.
GradedModule shift(const GradedModule& N, int k, int top);
GradedModule direct_sum(const std::vector<GradedModule>& parts);
/// Lefschetz-style sum: each N[-k] carries (-1)^k Q_N, and all d_N + 2k agree.
ModuleWithForm shift_sum(const std::vector<std::pair<ModuleWithForm, int>>& parts);
/// Plain sum of shifted modules over a common top index.
GradedModule shift_sum(const std::vector<GradedModule>& modules, const std::vector<int>& shifts);

std::string dims_string(const std::vector<std::size_t>& dims);

}  // namespace lefmod
