#pragma once

#include "lefmod/kahler.hpp"

#include <vector>

namespace lefmod {

/// Term of a homogeneous form: exponent vector and coefficient.
struct Term {
  std::vector<int> exp;
  Rat coef;
};

struct CogeneratedAlgebra {
  int n = 0, d = 0;
  std::vector<Term> f;
  AlgebraPtr algebra;
  Vec deg;  // on A^d
  /// Chosen basis monomials of each A^k.
  std::vector<std::vector<std::vector<int>>> basis_monomials;
  /// Image of x_i in A^1 (empty when d = 0).
  std::vector<Vec> variable_images;

  std::vector<std::size_t> hilbert() const { return algebra->dims(); }
  /// Class of x^a in A^{|a|}.
  Vec monomial_class(const std::vector<int>& a) const;
  Vec variable(int i) const { return variable_images.at(i); }
  ModuleWithForm module() const { return regular_module(algebra, deg); }
  /// Positive span of the images of the variables (zero images dropped).
  Cone positive_orthant() const;
};

/// Quotient of Q[x_1..x_n] by the annihilator of f, with deg(x^a) equal to
/// the coefficient of w^a divided by the multinomial d!/(a_1!...a_n!).
CogeneratedAlgebra cogenerate(const std::vector<Term>& f, int n, int d);

KahlerCertificate lorentz_check(const CogeneratedAlgebra& A, std::size_t samples);

/// Multinomial d!/(a_1!...a_n!)
Int multinomial(const std::vector<int>& a);
/// Exponent vectors of total degree k, x_1-heavy first.
std::vector<std::vector<int>> monomials(int n, int k);
std::string monomial_label(const std::vector<int>& a);

}  // namespace lefmod
