#include "lefmod/apolar.hpp"

#include <map>
#include <stdexcept>

namespace lefmod {

Int multinomial(const std::vector<int>& a) {
  int d = 0;
  for (int x : a) d += x;
  Int r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(d));
  for (int x : a) {
    Int f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(x));
    r /= f;
  }
  return r;
}

std::vector<std::vector<int>> monomials(int n, int k) {
  std::vector<std::vector<int>> out;
  if (n == 0) {
    if (k == 0) out.push_back({});
    return out;
  }
  for (int a = k; a >= 0; --a)
    for (auto rest : monomials(n - 1, k - a)) {
      rest.insert(rest.begin(), a);
      out.push_back(rest);
    }
  return out;
}

std::string monomial_label(const std::vector<int>& a) {
  std::string s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += "x" + std::to_string(i + 1);
    if (a[i] > 1) s += "^" + std::to_string(a[i]);
  }
  return s.empty() ? "1" : s;
}

namespace {

std::vector<int> plus(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

}  // namespace

CogeneratedAlgebra cogenerate(const std::vector<Term>& f, int n, int d) {
  if (n < 1 || d < 0) throw std::invalid_argument("cogenerate: need n >= 1 and d >= 0");
  std::map<std::vector<int>, Rat> coef;
  for (const auto& t : f) {
    if ((int)t.exp.size() != n) throw std::invalid_argument("cogenerate: exponent vector has the wrong length");
    int s = 0;
    for (int e : t.exp) {
      if (e < 0) throw std::invalid_argument("cogenerate: negative exponent");
      s += e;
    }
    if (s != d) throw std::invalid_argument("cogenerate: form is not homogeneous of degree " + std::to_string(d));
    coef[t.exp] += t.coef;
  }
  bool nonzero = false;
  for (auto& [e, c] : coef) nonzero = nonzero || c != 0;
  if (!nonzero) throw std::invalid_argument("cogenerate: f = 0");

  CogeneratedAlgebra C;
  C.n = n;
  C.d = d;
  C.f = f;
  auto degval = [&](const std::vector<int>& a) -> Rat {
    auto it = coef.find(a);
    if (it == coef.end()) return 0;
    return it->second / Rat(multinomial(a));
  };
  // catalecticant rows: row of x^a against all monomials of complementary degree
  std::vector<std::vector<std::vector<int>>> mons;
  for (int k = 0; k <= d; ++k) mons.push_back(monomials(n, k));
  std::vector<Mat> basis_rows(d + 1);
  AlgebraSpec spec;
  for (int k = 0; k <= d; ++k) {
    const auto& comp = mons[d - k];
    std::vector<Vec> chosen;
    for (const auto& a : mons[k]) {
      Vec row(comp.size());
      for (std::size_t j = 0; j < comp.size(); ++j) row[j] = degval(plus(a, comp[j]));
      chosen.push_back(row);
      if (rank(Mat::from_rows(comp.size(), chosen)) < chosen.size()) {
        chosen.pop_back();
      } else {
        if ((int)C.basis_monomials.size() <= k) C.basis_monomials.resize(k + 1);
        C.basis_monomials[k].push_back(a);
      }
    }
    if ((int)C.basis_monomials.size() <= k) C.basis_monomials.resize(k + 1);
    basis_rows[k] = Mat::from_rows(comp.size(), chosen).transpose();  // columns are basis rows
    spec.dims.push_back(C.basis_monomials[k].size());
    for (const auto& a : C.basis_monomials[k]) spec.labels.push_back(monomial_label(a));
  }
  auto reduce = [&](const std::vector<int>& a) -> Vec {
    int k = 0;
    for (int x : a) k += x;
    const auto& comp = mons[d - k];
    Vec row(comp.size());
    for (std::size_t j = 0; j < comp.size(); ++j) row[j] = degval(plus(a, comp[j]));
    auto c = solve(basis_rows[k], row);
    return *c;
  };
  std::vector<std::pair<int, std::vector<int>>> all;
  for (int k = 0; k <= d; ++k)
    for (const auto& a : C.basis_monomials[k]) all.push_back({k, a});
  for (std::size_t p = 0; p < all.size(); ++p)
    for (std::size_t q = 0; q < all.size(); ++q) {
      if (all[p].first + all[q].first > d) continue;
      spec.products[{p, q}] = reduce(plus(all[p].second, all[q].second));
    }
  C.algebra = std::make_shared<GradedAlgebra>(GradedAlgebra::make(spec));
  C.deg = Vec{degval(C.basis_monomials[d][0])};
  if (d >= 1)
    for (int i = 0; i < n; ++i) {
      std::vector<int> e(n, 0);
      e[i] = 1;
      C.variable_images.push_back(reduce(e));
    }
  return C;
}

Vec CogeneratedAlgebra::monomial_class(const std::vector<int>& a) const {
  Elem r{0, algebra->unit()};
  for (int i = 0; i < n; ++i)
    for (int t = 0; t < a[i]; ++t) r = algebra->times(r, {1, variable_images.at(i)});
  return r.v;
}

Cone CogeneratedAlgebra::positive_orthant() const {
  std::vector<Vec> gens;
  for (const auto& v : variable_images)
    if (!is_zero(v)) gens.push_back(v);
  return Cone(algebra->dim(1), gens);
}

KahlerCertificate lorentz_check(const CogeneratedAlgebra& A, std::size_t samples) {
  return check_kahler_package(A.module(), A.positive_orthant(), samples, "cogenerated");
}

}  // namespace lefmod
