#pragma once

#include "lefmod/matrix.hpp"

#include <string>
#include <utility>
#include <vector>

namespace lefmod {

/// Univariate polynomial over Q, coefficients from the constant term up.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rat> coeffs);
  static Poly constant(const Rat& c) { return Poly({c}); }
  static Poly x() { return Poly({0, 1}); }
  /// x - r
  static Poly linear(const Rat& r) { return Poly({-r, 1}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rat>& coeffs() const { return c_; }
  Rat coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rat(0); }
  Rat lead() const { return c_.empty() ? Rat(0) : c_.back(); }
  Poly monic() const;
  Poly derivative() const;

  Rat eval(const Rat& t) const;
  Mat eval(const Mat& m) const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const Rat& s) const;
  bool operator==(const Poly& o) const = default;
  /// Ordered by degree, then coefficients from the top down.
  bool operator<(const Poly& o) const;

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rat> c_;
};

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
/// Monic gcd (zero if both are zero).
Poly gcd(const Poly& a, const Poly& b);
Poly lcm(const Poly& a, const Poly& b);
Poly pow(const Poly& p, unsigned k);

struct PolyFactor {
  Poly factor;  // monic, irreducible over Q
  unsigned multiplicity = 1;
  bool operator==(const PolyFactor&) const = default;
};

/// Yun's algorithm: f = lc * prod g_i^i with the g_i squarefree and coprime.
/// Entry i-1 holds g_i (possibly constant 1).
std::vector<Poly> squarefree_parts(const Poly& f);

/// Complete factorization over Q into monic irreducibles, sorted.
/// Squarefree parts are split with a large-prime Zassenhaus search.
std::vector<PolyFactor> factor(const Poly& f);
bool is_irreducible(const Poly& f);

/// Minimal polynomial via Krylov sequences of the standard basis vectors.
Poly min_poly(const Mat& m);

}  // namespace lefmod
