#include "lefmod/poly.hpp"

#include "lefmod/linalg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace lefmod {

Poly::Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  Rat l = lead();
  std::vector<Rat> c = c_;
  for (auto& x : c) x /= l;
  return Poly(c);
}

Poly Poly::derivative() const {
  std::vector<Rat> c;
  for (std::size_t i = 1; i < c_.size(); ++i) c.push_back(c_[i] * static_cast<long>(i));
  return Poly(c);
}

Rat Poly::eval(const Rat& t) const {
  Rat r = 0;
  for (std::size_t i = c_.size(); i-- > 0;) r = r * t + c_[i];
  return r;
}

Mat Poly::eval(const Mat& m) const {
  if (!m.is_square()) throw std::invalid_argument("Poly::eval on non-square matrix");
  Mat r = Mat::zero(m.rows(), m.cols());
  for (std::size_t i = c_.size(); i-- > 0;) r = r * m + c_[i] * Mat::identity(m.rows());
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<Rat> c(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeff(i) + o.coeff(i);
  return Poly(c);
}

Poly Poly::operator-(const Poly& o) const {
  std::vector<Rat> c(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeff(i) - o.coeff(i);
  return Poly(c);
}

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly();
  std::vector<Rat> c(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
  return Poly(c);
}

Poly Poly::operator*(const Rat& s) const {
  std::vector<Rat> c = c_;
  for (auto& x : c) x *= s;
  return Poly(c);
}

bool Poly::operator<(const Poly& o) const {
  if (degree() != o.degree()) return degree() < o.degree();
  for (std::size_t i = c_.size(); i-- > 0;)
    if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
  return false;
}

std::string Poly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    const Rat& a = c_[i];
    if (a == 0) continue;
    Rat mag = abs(a);
    if (first) {
      if (a < 0) os << "-";
    } else {
      os << (a < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << lefmod::to_string(mag);
      continue;
    }
    if (mag != 1) os << lefmod::to_string(mag) << "*";
    os << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rat> r = a.coeffs();
  int db = b.degree();
  if (a.degree() < db) return {Poly(), a};
  std::vector<Rat> q(a.degree() - db + 1);
  Rat lb = b.lead();
  for (int i = a.degree(); i >= db; --i) {
    if (r[i] == 0) continue;
    Rat f = r[i] / lb;
    q[i - db] = f;
    for (int j = 0; j <= db; ++j) r[i - db + j] -= f * b.coeff(j);
  }
  return {Poly(q), Poly(r)};
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

Poly lcm(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  return divmod(a * b, gcd(a, b)).first.monic();
}

Poly pow(const Poly& p, unsigned k) {
  Poly r = Poly::constant(1);
  for (unsigned i = 0; i < k; ++i) r = r * p;
  return r;
}

std::vector<Poly> squarefree_parts(const Poly& f) {
  std::vector<Poly> out;
  if (f.degree() < 1) return out;
  Poly fp = f.derivative();
  Poly a = gcd(f, fp);
  Poly b = divmod(f, a).first;
  Poly c = divmod(fp, a).first;
  Poly d = c - b.derivative();
  while (b.degree() > 0) {
    Poly g = gcd(b, d);
    out.push_back(g);
    b = divmod(b, g).first;
    c = divmod(d, g).first;
    d = c - b.derivative();
  }
  return out;
}

namespace {

// Polynomials over Z/p, coefficients in [0, p), constant term first.
using ZP = std::vector<Int>;

struct ModP {
  Int p;

  void trim(ZP& a) const {
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  Int red(const Int& x) const {
    Int r;
    mpz_mod(r.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
    return r;
  }
  Int inv(const Int& x) const {
    Int r;
    if (mpz_invert(r.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()) == 0) throw std::domain_error("not invertible mod p");
    return r;
  }
  int deg(const ZP& a) const { return static_cast<int>(a.size()) - 1; }

  ZP sub(const ZP& a, const ZP& b) const {
    ZP r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < r.size(); ++i)
      r[i] = red((i < a.size() ? a[i] : Int(0)) - (i < b.size() ? b[i] : Int(0)));
    trim(r);
    return r;
  }
  ZP mul(const ZP& a, const ZP& b) const {
    if (a.empty() || b.empty()) return {};
    ZP r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    for (auto& x : r) x = red(x);
    trim(r);
    return r;
  }
  std::pair<ZP, ZP> divmod(const ZP& a, const ZP& b) const {
    ZP r = a;
    int db = deg(b);
    if (deg(a) < db) return {{}, r};
    ZP q(deg(a) - db + 1);
    Int il = inv(b.back());
    for (int i = deg(a); i >= db; --i) {
      if (r[i] == 0) continue;
      Int f = red(r[i] * il);
      q[i - db] = f;
      for (int j = 0; j <= db; ++j) r[i - db + j] = red(r[i - db + j] - f * b[j]);
    }
    trim(r);
    trim(q);
    return {q, r};
  }
  ZP mod(const ZP& a, const ZP& b) const { return divmod(a, b).second; }
  ZP monic(const ZP& a) const {
    if (a.empty()) return a;
    Int il = inv(a.back());
    ZP r = a;
    for (auto& x : r) x = red(x * il);
    return r;
  }
  ZP gcd(ZP a, ZP b) const {
    while (!b.empty()) {
      ZP r = mod(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return monic(a);
  }
  ZP powmod(ZP base, Int e, const ZP& m) const {
    ZP r = {Int(1)};
    base = mod(base, m);
    while (e > 0) {
      if (mpz_odd_p(e.get_mpz_t())) r = mod(mul(r, base), m);
      base = mod(mul(base, base), m);
      e >>= 1;
    }
    return r;
  }
};

// Distinct-degree factorization of a monic squarefree polynomial.
std::vector<std::pair<ZP, int>> distinct_degree(const ModP& F, ZP f) {
  std::vector<std::pair<ZP, int>> out;
  ZP x = {Int(0), Int(1)};
  ZP h = x;
  int i = 1;
  while (F.deg(f) >= 2 * i) {
    h = F.powmod(h, F.p, f);
    ZP g = F.gcd(f, F.sub(h, x));
    if (F.deg(g) > 0) {
      out.push_back({g, i});
      f = F.divmod(f, g).first;
      h = F.mod(h, f);
    }
    ++i;
  }
  if (F.deg(f) > 0) out.push_back({F.monic(f), F.deg(f)});
  return out;
}

void equal_degree(const ModP& F, const ZP& g, int d, gmp_randclass& rng, std::vector<ZP>& out) {
  if (F.deg(g) == d) {
    out.push_back(g);
    return;
  }
  Int pd;
  mpz_pow_ui(pd.get_mpz_t(), F.p.get_mpz_t(), static_cast<unsigned long>(d));
  Int e = (pd - 1) / 2;
  for (;;) {
    ZP a(F.deg(g));
    for (auto& c : a) c = rng.get_z_range(F.p);
    F.trim(a);
    if (F.deg(a) < 1) continue;
    ZP b = F.sub(F.powmod(a, e, g), ZP{Int(1)});
    ZP c = F.gcd(g, b);
    if (F.deg(c) > 0 && F.deg(c) < F.deg(g)) {
      equal_degree(F, c, d, rng, out);
      equal_degree(F, F.divmod(g, c).first, d, rng, out);
      return;
    }
  }
}

using ZPoly = std::vector<Int>;  // integer polynomial, constant term first

Int content(const ZPoly& f) {
  Int g = 0;
  for (const auto& c : f) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

ZPoly primitive_integer(const Poly& f) {
  Int l = 1;
  for (const auto& c : f.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  ZPoly z;
  for (const auto& c : f.coeffs()) z.push_back(Int(c * l));
  Int g = content(z);
  if (f.lead() < 0) g = -g;
  for (auto& c : z) c /= g;
  return z;
}

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

ZPoly symmetric_lift(const ModP& F, const ZP& a) {
  Int half = F.p / 2;
  ZPoly r;
  for (const auto& c : a) r.push_back(c > half ? c - F.p : c);
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

Poly to_poly(const ZPoly& z) {
  std::vector<Rat> c;
  for (const auto& x : z) c.emplace_back(x);
  return Poly(c).monic();
}

// Irreducible factors of a squarefree polynomial over Q, each monic.
std::vector<Poly> factor_squarefree(const Poly& f) {
  if (f.degree() <= 1) return {f.monic()};
  ZPoly z = primitive_integer(f);
  const int n = static_cast<int>(z.size()) - 1;
  Int norm = 0;
  for (const auto& c : z) norm += abs(c);
  Int lc = z.back();
  Int bound = 2 * abs(lc) * (norm + 1);
  bound <<= static_cast<unsigned>(n);
  ModP F;
  mpz_nextprime(F.p.get_mpz_t(), bound.get_mpz_t());
  ZP fp;
  for (;;) {
    fp.clear();
    for (const auto& c : z) fp.push_back(F.red(c));
    F.trim(fp);
    if (F.red(lc) != 0) {
      ZP d;
      for (std::size_t i = 1; i < fp.size(); ++i) d.push_back(F.red(fp[i] * static_cast<long>(i)));
      F.trim(d);
      if (F.deg(F.gcd(fp, d)) == 0) break;
    }
    mpz_nextprime(F.p.get_mpz_t(), F.p.get_mpz_t());
  }
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(20241014UL);
  std::vector<ZP> mod_factors;
  for (auto& [g, d] : distinct_degree(F, F.monic(fp))) equal_degree(F, g, d, rng, mod_factors);

  // Recombine subsets of modular factors, smallest first.
  std::vector<Poly> out;
  ZPoly rest = z;
  std::vector<ZP> u = mod_factors;
  std::size_t s = 1;
  while (2 * s <= u.size()) {
    bool found = false;
    std::vector<bool> pick(u.size(), false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(s), true);
    do {
      Int lr = rest.back();
      ZP g = {F.red(lr)}, h = {F.red(lr)};
      for (std::size_t i = 0; i < u.size(); ++i) (pick[i] ? g : h) = F.mul(pick[i] ? g : h, u[i]);
      ZPoly G = symmetric_lift(F, g), H = symmetric_lift(F, h);
      ZPoly lrest = rest;
      for (auto& c : lrest) c *= lr;
      if (zmul(G, H) == lrest) {
        Int cg = content(G);
        for (auto& c : G) c /= cg;
        Int ch = content(H);
        for (auto& c : H) c /= ch;
        if (H.back() < 0)
          for (auto& c : H) c = -c;
        out.push_back(to_poly(G));
        rest = H;
        std::vector<ZP> keep;
        for (std::size_t i = 0; i < u.size(); ++i)
          if (!pick[i]) keep.push_back(u[i]);
        u = keep;
        found = true;
        break;
      }
    } while (std::prev_permutation(pick.begin(), pick.end()));
    if (!found) ++s;
  }
  out.push_back(to_poly(rest));
  return out;
}

}  // namespace

std::vector<PolyFactor> factor(const Poly& f) {
  std::vector<PolyFactor> out;
  auto parts = squarefree_parts(f);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].degree() < 1) continue;
    for (auto& g : factor_squarefree(parts[i])) out.push_back({g, static_cast<unsigned>(i + 1)});
  }
  std::sort(out.begin(), out.end(), [](const PolyFactor& a, const PolyFactor& b) {
    if (a.factor == b.factor) return a.multiplicity < b.multiplicity;
    return a.factor < b.factor;
  });
  return out;
}

bool is_irreducible(const Poly& f) {
  if (f.degree() < 1) return false;
  auto fs = factor(f);
  return fs.size() == 1 && fs[0].multiplicity == 1;
}

Poly min_poly(const Mat& m) {
  if (!m.is_square()) throw std::invalid_argument("min_poly of non-square matrix");
  const std::size_t n = m.rows();
  Poly result = Poly::constant(1);
  Subspace covered(n);
  for (std::size_t i = 0; i < n; ++i) {
    Vec e = unit_vector(n, i);
    if (covered.contains(e)) continue;  // its local polynomial already divides the result
    std::vector<Vec> krylov = {e};
    for (;;) {
      Vec next = m * krylov.back();
      Mat k = Mat::from_columns(n, krylov);
      auto c = solve(k, next);
      if (c) {
        std::vector<Rat> coeffs(krylov.size() + 1);
        for (std::size_t j = 0; j < krylov.size(); ++j) coeffs[j] = -(*c)[j];
        coeffs[krylov.size()] = 1;
        result = lcm(result, Poly(coeffs));
        break;
      }
      krylov.push_back(std::move(next));
    }
    // vectors in a Krylov space of m are killed by result already
    covered = sum(covered, Subspace::span(n, krylov));
  }
  return result;
}

}  // namespace lefmod
