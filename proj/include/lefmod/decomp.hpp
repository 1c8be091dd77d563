#pragma once

#include "lefmod/perverse.hpp"
#include "lefmod/poly.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lefmod {

/// Grading-preserving maps, one matrix per degree.
using GradedMap = std::vector<Mat>;

/// Commutant of the action: grading-preserving maps commuting with every
/// positive-degree basis element.
struct EndAlgebra {
  std::vector<std::size_t> dims;
  std::vector<GradedMap> basis;
  /// mult[a][b] = coordinates of basis[a] ∘ basis[b]
  std::vector<std::vector<Vec>> mult;
  /// Kernel of the trace form tr(xy) on M, in basis coordinates.
  Subspace radical;

  std::size_t dim() const { return basis.size(); }
  GradedMap element(const Vec& c) const;
  /// ⊕ over degrees
  Mat block(const Vec& c) const;
  Vec coords(const GradedMap& f) const;
  Vec product(const Vec& x, const Vec& y) const;
  Vec one() const;
};

EndAlgebra end_algebra(const GradedModule& N);

enum class DivisionType { R, C, H, Other };

struct DivisionTag {
  DivisionType type = DivisionType::R;
  std::size_t dim = 1;
  std::string data;  // minimal polynomial or quaternion parameters
  std::string text() const;
};

/// E modulo its radical for an indecomposable module. Throws on a zero divisor.
DivisionTag classify_division(const EndAlgebra& E);

struct Piece {
  std::vector<Mat> incl;    // per degree of M, columns spanning the summand
  GradedModule module;      // on the incl basis
  int shift = 0;            // lowest nonzero degree
  GradedModule normalized;  // moved down to start in degree 0
  int d_alpha = 0;          // top degree of the normalized module
  std::size_t cls = 0;
  std::vector<std::size_t> dims_in_M() const;
};

struct InducedForm {
  std::size_t solution_dim = 0;
  std::optional<PairingForm> Q;  // normalized, when the solution space is a line
  bool nondegenerate = false;
};

/// B-invariant symmetric forms pairing degrees i and d-i only.
InducedForm induced_form(const GradedModule& N);

/// ε with ε Q passing HR at every sample; samples live in the degree-one
/// coordinates of the module's algebra.
std::optional<int> hr_sign(const GradedModule& N, const PairingForm& Q, const std::vector<Vec>& samples);

struct SummandClass {
  GradedModule N;  // normalized representative
  int d_alpha = 0;
  std::vector<std::size_t> dims;
  DivisionTag division;
  InducedForm form;
  std::optional<int> epsilon;
  std::map<int, std::size_t> multiplicity;  // k -> m(α,k)
  bool middle_socle_free = true;            // vacuous unless d_alpha is even
};

struct DecompositionReport {
  std::vector<Piece> pieces;
  std::vector<SummandClass> classes;
  std::uint64_t seed = 0;
  /// Sorted (normalized dims, k, m) triples; seed-independent.
  std::vector<std::tuple<std::vector<std::size_t>, int, std::size_t>> canonical() const;
  /// Number of distinct (class, shift) pairs.
  std::size_t type_count() const;
};

/// Krull-Schmidt decomposition of M over its own algebra. `samples` feed the
/// ε computation and may be empty.
DecompositionReport decompose(const GradedModule& M, std::uint64_t seed, const std::vector<Vec>& samples = {});

/// Hom(N, L[-k]): maps N^i -> L^{i-k} commuting with the action.
std::vector<GradedMap> hom_space(const GradedModule& N, const GradedModule& L, int k);
bool isomorphic(const GradedModule& N, const GradedModule& L);

struct HomEntry {
  std::size_t alpha, beta;
  int k;
  std::size_t dim;
  std::optional<std::size_t> predicted;
  bool ok() const { return !predicted || *predicted == dim; }
};

/// All Hom(N_α, N_β[-k]) for |k| <= top degree, with the predicted value:
/// 0 when d(α) <= d(β)+2k and (α,k) != (β,0), dim 𝔻_α when α = β and k = 0.
std::vector<HomEntry> hom_vanishing(const DecompositionReport& r, int d);

struct VEntry {
  std::size_t alpha;
  int k;
  std::size_t dim_q = 0;
  std::size_t dim_d = 0;  // over 𝔻_α
  bool matches_multiplicity = true;
};

struct VTable {
  std::vector<VEntry> entries;
  /// per class, k = 0..d-d(α)
  std::vector<std::vector<std::size_t>> sequences;
  std::vector<bool> symmetric, unimodal;
  /// η^{d-d(α)-2k} * : V^k -> V^{d-d(α)-k} bijective for every listed k
  std::vector<bool> raising_iso;
};

/// V_α^k = Hom_B(N_α[-k], Gr^{.,d(α)+2k}).
VTable multiplicity_spaces(const DecompositionReport& r, const BigradedModule& G, const Elem& eta);

bool symmetric_sequence(const std::vector<std::size_t>& s);
bool unimodal_sequence(const std::vector<std::size_t>& s);

/// Hilbert symbol (a,b)_p for nonzero integers; p = 0 means the real place.
int hilbert_symbol(const Int& a, const Int& b, const Int& p);
/// (a,b)_Q is a division algebra.
bool quaternion_division(const Rat& a, const Rat& b);

}  // namespace lefmod
