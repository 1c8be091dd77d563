#pragma once

#include "lefmod/matrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lefmod {

struct Echelon {
  Mat rref;                          // reduced row echelon form
  std::vector<std::size_t> pivots;   // pivot column of each nonzero row
};

Echelon row_reduce(Mat m);
std::size_t rank(const Mat& m);
Rat determinant(Mat m);
std::optional<Mat> inverse(const Mat& m);
/// Some x with a x = b, or nullopt.
std::optional<Vec> solve(const Mat& a, const Vec& b);
/// Some X with a X = b, or nullopt.
std::optional<Mat> solve(const Mat& a, const Mat& b);

/// A linear subspace of Q^n kept in canonical form: the basis vectors are the
/// rows of the reduced row echelon form of any spanning set, so two equal
/// subspaces have identical bases.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient) : n_(ambient), basis_(ambient, 0) {}
  static Subspace full(std::size_t n);
  static Subspace span(std::size_t n, const std::vector<Vec>& vectors);
  /// Column span.
  static Subspace columns_of(const Mat& m);

  std::size_t ambient() const { return n_; }
  std::size_t dim() const { return basis_.cols(); }
  /// n x dim, columns are the canonical basis vectors.
  const Mat& basis() const { return basis_; }
  Vec vector(std::size_t i) const { return basis_.col(i); }
  std::vector<Vec> vectors() const;
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool contains(const Vec& v) const;
  bool contains(const Subspace& s) const;
  bool operator==(const Subspace& o) const { return n_ == o.n_ && basis_ == o.basis_; }

  /// Coordinates of v in the canonical basis; v must lie in the subspace.
  Vec coords(const Vec& v) const;
  /// Rows cut out the subspace: W x = 0 iff x lies here.
  Mat equations() const;
  /// Vectors from this subspace's canonical basis that extend a basis of
  /// `sub` (assumed contained) greedily to a basis of the whole.
  std::vector<Vec> complement_in(const Subspace& sub) const;

 private:
  std::size_t n_ = 0;
  Mat basis_;
  std::vector<std::size_t> pivots_;
};

Subspace kernel(const Mat& m);
Subspace image(const Mat& m);
Subspace intersect(const Subspace& a, const Subspace& b);
Subspace sum(const Subspace& a, const Subspace& b);
/// {v : m v in s}
Subspace preimage(const Mat& m, const Subspace& s);
/// m applied to s
Subspace apply(const Mat& m, const Subspace& s);

enum class SubspaceOp { intersect, sum };
Subspace subspace_op(const Subspace& a, const Subspace& b, SubspaceOp op);

struct Inertia {
  std::size_t plus = 0, minus = 0, zero = 0;
  bool operator==(const Inertia&) const = default;
  long signature() const { return static_cast<long>(plus) - static_cast<long>(minus); }
};

struct SignatureResult {
  Inertia inertia;
  /// Nonzero v with v^T s v <= 0 when s is not positive definite.
  std::optional<Vec> nonpositive_witness;
};

/// Exact inertia by symmetric elimination. Throws on non-symmetric input.
SignatureResult signature_with_witness(const Mat& s);
Inertia signature(const Mat& s);

/// One Jordan block of a degree-one nilpotent: C_e shifted to start in
/// degree k, repeated m times.
struct JordanBlock {
  int e = 0;
  int k = 0;
  std::size_t m = 0;
  bool operator==(const JordanBlock&) const = default;
  auto operator<=>(const JordanBlock&) const = default;
};

struct JordanProfile {
  std::vector<JordanBlock> blocks;  // sorted by (e, k)
  std::size_t total_dim() const;
  bool operator==(const JordanProfile&) const = default;
};

/// maps[i] : M^i -> M^{i+1}, dims.size() == maps.size() + 1. Missing trailing
/// maps are treated as zero.
JordanProfile nilpotent_profile(const std::vector<std::size_t>& dims, const std::vector<Mat>& maps);

std::string to_string(const JordanProfile& p);

}  // namespace lefmod
