#include "lefmod/decomp.hpp"

#include "lefmod/kahler.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

namespace lefmod {

namespace {

Vec flatten(const GradedMap& f) {
  Vec v;
  for (const auto& m : f)
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) v.push_back(m(r, c));
  return v;
}

// Kernel basis of the stacked equations, unknowns laid out as blocks[i] (rows x cols).
struct BlockLayout {
  std::vector<std::size_t> rows, cols, off;
  std::size_t total = 0;
  void add(std::size_t r, std::size_t c) {
    rows.push_back(r);
    cols.push_back(c);
    off.push_back(total);
    total += r * c;
  }
  std::size_t at(std::size_t b, std::size_t r, std::size_t c) const { return off[b] + r * cols[b] + c; }
  GradedMap unpack(const Vec& v) const {
    GradedMap out;
    for (std::size_t b = 0; b < rows.size(); ++b) {
      Mat m(rows[b], cols[b]);
      for (std::size_t r = 0; r < rows[b]; ++r)
        for (std::size_t c = 0; c < cols[b]; ++c) m(r, c) = v[at(b, r, c)];
      out.push_back(m);
    }
    return out;
  }
};

std::vector<Vec> solve_homogeneous(std::size_t n, const std::vector<Vec>& eqs) {
  if (n == 0) return {};
  if (eqs.empty()) return Subspace::full(n).vectors();
  return kernel(Mat::from_rows(n, eqs)).vectors();
}

bool invertible(const Mat& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

}  // namespace

// ---- commutant

GradedMap EndAlgebra::element(const Vec& c) const {
  GradedMap out;
  for (auto n : dims) out.push_back(Mat(n, n));
  for (std::size_t a = 0; a < basis.size(); ++a) {
    if (c[a] == 0) continue;
    for (std::size_t i = 0; i < dims.size(); ++i) out[i] = out[i] + c[a] * basis[a][i];
  }
  return out;
}

Mat EndAlgebra::block(const Vec& c) const {
  Mat out(0, 0);
  for (auto& m : element(c)) out = direct_sum(out, m);
  return out;
}

Vec EndAlgebra::coords(const GradedMap& f) const {
  Mat cols(0, basis.size());
  std::vector<Vec> cs;
  for (auto& b : basis) cs.push_back(flatten(b));
  Vec target = flatten(f);
  auto x = solve(Mat::from_columns(target.size(), cs), target);
  if (!x) throw std::invalid_argument("map does not commute with the action");
  return *x;
}

Vec EndAlgebra::product(const Vec& x, const Vec& y) const {
  Vec out(dim(), 0);
  for (std::size_t a = 0; a < dim(); ++a) {
    if (x[a] == 0) continue;
    for (std::size_t b = 0; b < dim(); ++b) {
      if (y[b] == 0) continue;
      out = add(out, scale(x[a] * y[b], mult[a][b]));
    }
  }
  return out;
}

Vec EndAlgebra::one() const {
  GradedMap id;
  for (auto n : dims) id.push_back(Mat::identity(n));
  return coords(id);
}

EndAlgebra end_algebra(const GradedModule& N) {
  const GradedAlgebra& A = *N.algebra();
  const int d = N.degree();
  EndAlgebra E;
  E.dims = N.dims();
  BlockLayout L;
  for (int i = 0; i <= d; ++i) L.add(N.dim(i), N.dim(i));
  std::vector<Vec> eqs;
  for (std::size_t g = 0; g < A.total_dim(); ++g) {
    int s = A.degree_of(g);
    if (s == 0) continue;
    for (int i = 0; i + s <= d; ++i) {
      std::size_t ni = N.dim(i), nt = N.dim(i + s);
      if (ni == 0 || nt == 0) continue;
      const Mat& a = N.basis_action(g, i);
      // X_{i+s} a - a X_i = 0
      for (std::size_t r = 0; r < nt; ++r)
        for (std::size_t c = 0; c < ni; ++c) {
          Vec e(L.total, 0);
          for (std::size_t t = 0; t < nt; ++t)
            if (a(t, c) != 0) e[L.at(i + s, r, t)] += a(t, c);
          for (std::size_t t = 0; t < ni; ++t)
            if (a(r, t) != 0) e[L.at(i, t, c)] -= a(r, t);
          if (!is_zero(e)) eqs.push_back(e);
        }
    }
  }
  for (auto& v : solve_homogeneous(L.total, eqs)) E.basis.push_back(L.unpack(v));
  const std::size_t n = E.basis.size();
  E.mult.assign(n, std::vector<Vec>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      GradedMap p;
      for (int i = 0; i <= d; ++i) p.push_back(E.basis[a][i] * E.basis[b][i]);
      E.mult[a][b] = E.coords(p);
    }
  Mat T(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Rat t = 0;
      for (int i = 0; i <= d; ++i) t += (E.basis[a][i] * E.basis[b][i]).trace();
      T(a, b) = t;
    }
  E.radical = n == 0 ? Subspace(0) : kernel(T);
  return E;
}

// ---- semisimple quotient

namespace {

struct Quotient {
  const EndAlgebra* E;
  std::vector<Vec> reps;  // in E coordinates
  Mat frame;              // [radical | reps]
  std::size_t rad = 0;

  explicit Quotient(const EndAlgebra& e) : E(&e) {
    reps = Subspace::full(e.dim()).complement_in(e.radical);
    rad = e.radical.dim();
    frame = hcat(e.radical.basis(), Mat::from_columns(e.dim(), reps));
  }
  std::size_t dim() const { return reps.size(); }
  Vec lift(const Vec& s) const {
    Vec out(E->dim(), 0);
    for (std::size_t a = 0; a < reps.size(); ++a) out = add(out, scale(s[a], reps[a]));
    return out;
  }
  Vec reduce(const Vec& e) const {
    auto c = solve(frame, e);
    return Vec(c->begin() + static_cast<long>(rad), c->end());
  }
  Vec mul(const Vec& x, const Vec& y) const { return reduce(E->product(lift(x), lift(y))); }
  Vec one() const { return reduce(E->one()); }
  // left multiplication by x on S
  Mat left(const Vec& x) const {
    std::vector<Vec> cols;
    for (std::size_t b = 0; b < dim(); ++b) cols.push_back(mul(x, unit_vector(dim(), b)));
    return Mat::from_columns(dim(), cols);
  }
  Subspace center() const {
    const std::size_t m = dim();
    std::vector<Vec> eqs;
    for (std::size_t b = 0; b < m; ++b) {
      std::vector<Vec> cols;
      for (std::size_t a = 0; a < m; ++a) {
        Vec ab = mul(unit_vector(m, a), unit_vector(m, b)), ba = mul(unit_vector(m, b), unit_vector(m, a));
        cols.push_back(add(ab, scale(Rat(-1), ba)));
      }
      Mat c = Mat::from_columns(m, cols);
      for (std::size_t r = 0; r < m; ++r) eqs.push_back(c.row(r));
    }
    return Subspace::span(m, solve_homogeneous(m, eqs));
  }
};

Vec combo(const std::vector<Vec>& vs, const std::vector<long>& coef, std::size_t n) {
  Vec out(n, 0);
  for (std::size_t i = 0; i < vs.size() && i < coef.size(); ++i) out = add(out, scale(Rat(coef[i]), vs[i]));
  return out;
}

// primitive-element style coefficients 1, 2, 3, ... shifted by t
std::vector<long> sweep(std::size_t n, long t) {
  std::vector<long> c;
  for (std::size_t i = 0; i < n; ++i) c.push_back(1 + (long)((i + 1) * (t + 1) % 7) + (long)i * t);
  return c;
}

struct QuaternionData {
  Rat a, b;
  Vec u, v;  // in S
};

// S central simple of dimension 4 over Q: u^2 = a, v^2 = b, uv = -vu.
// Returns nullopt when an element with reducible minimal polynomial turns up.
std::optional<QuaternionData> quaternion_basis(const Quotient& S, const std::vector<Vec>& noncentral) {
  const std::size_t m = S.dim();
  Vec one = S.one();
  for (auto& x : noncentral) {
    Poly f = min_poly(S.left(x));
    if (f.degree() != 2) continue;
    if (!is_irreducible(f)) return std::nullopt;
    Rat p = f.coeff(1) / f.coeff(2), q = f.coeff(0) / f.coeff(2);
    Vec u = add(x, scale(p / 2, one));
    Rat a = p * p / 4 - q;
    for (std::size_t y = 0; y < m; ++y) {
      Vec ey = unit_vector(m, y);
      Vec uyu = S.mul(S.mul(u, ey), u);
      Vec v = add(ey, scale(Rat(-1) / a, uyu));
      if (is_zero(v)) continue;
      Vec v2 = S.mul(v, v);
      // v^2 is a scalar multiple of 1
      std::size_t lead = 0;
      while (one[lead] == 0) ++lead;
      Rat b = v2[lead] / one[lead];
      if (!(v2 == scale(b, one))) continue;
      return QuaternionData{a, b, u, v};
    }
  }
  return std::nullopt;
}

}  // namespace

// ---- Hilbert symbols

namespace {

int legendre(const Int& a, const Int& p) {
  Int r = a % p;
  if (r < 0) r += p;
  return mpz_legendre(r.get_mpz_t(), p.get_mpz_t());
}

unsigned long valuation(Int& x, const Int& p) {
  unsigned long v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

void prime_divisors(Int n, std::set<Int>& out) {
  if (n < 0) n = -n;
  for (Int p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      out.insert(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) out.insert(n);
}

Int squarefree_part(Int n) {
  Int out = n < 0 ? -1 : 1;
  if (n < 0) n = -n;
  for (Int p = 2; p * p <= n; ++p) {
    unsigned long e = valuation(n, p);
    if (e % 2 == 1) out *= p;
  }
  return out * n;
}

Int integral_part(const Rat& r) {
  // r * den^2 has the same square class as r
  Int num = r.get_num(), den = r.get_den();
  return num * den;
}

}  // namespace

int hilbert_symbol(const Int& a0, const Int& b0, const Int& p) {
  if (a0 == 0 || b0 == 0) throw std::invalid_argument("hilbert symbol of zero");
  if (p == 0) return a0 < 0 && b0 < 0 ? -1 : 1;
  Int u = a0, v = b0;
  unsigned long al = valuation(u, p), be = valuation(v, p);
  if (p == 2) {
    auto eps = [](const Int& x) -> int {
      Int t = (x - 1) / 2;
      return mpz_odd_p(t.get_mpz_t()) ? 1 : 0;
    };
    auto omega = [](const Int& x) -> int {
      Int t = (x * x - 1) / 8;
      return mpz_odd_p(t.get_mpz_t()) ? 1 : 0;
    };
    int e = eps(u) * eps(v) + (int)(al % 2) * omega(v) + (int)(be % 2) * omega(u);
    return e % 2 == 0 ? 1 : -1;
  }
  int s = 1;
  Int half = (p - 1) / 2;
  if ((al * be) % 2 == 1 && mpz_odd_p(half.get_mpz_t())) s = -s;
  if (be % 2 == 1) s *= legendre(u, p);
  if (al % 2 == 1) s *= legendre(v, p);
  return s;
}

bool quaternion_division(const Rat& a, const Rat& b) {
  Int A = integral_part(a), B = integral_part(b);
  if (hilbert_symbol(A, B, 0) == -1) return true;
  std::set<Int> primes = {2};
  prime_divisors(A, primes);
  prime_divisors(B, primes);
  for (auto& p : primes)
    if (hilbert_symbol(A, B, p) == -1) return true;
  return false;
}

// ---- classification

std::string DivisionTag::text() const {
  switch (type) {
    case DivisionType::R: return "R";
    case DivisionType::C: return "C";
    case DivisionType::H: return "H";
    case DivisionType::Other: return "other(" + std::to_string(dim) + (data.empty() ? "" : ", " + data) + ")";
  }
  return "?";
}

DivisionTag classify_division(const EndAlgebra& E) {
  Quotient S(E);
  const std::size_t m = S.dim();
  DivisionTag tag;
  tag.dim = m;
  if (m == 0) throw std::invalid_argument("endomorphism algebra of the zero module");
  if (m == 1) return tag;
  Subspace Z = S.center();
  if (Z.dim() == m) {
    for (long t = 0; t < 20; ++t) {
      Vec z = combo(Z.vectors(), sweep(m, t), m);
      Poly f = min_poly(S.left(z));
      if (!is_irreducible(f)) throw std::runtime_error("zero divisor in the endomorphism algebra: not indecomposable");
      if (f.degree() != (int)m) continue;
      tag.type = DivisionType::Other;
      tag.data = f.to_string("x");
      if (m == 2) {
        // z + p/2 squares to r; rescaling leaves the squarefree part of r
        Rat p = f.coeff(1) / f.coeff(2), q = f.coeff(0) / f.coeff(2);
        Rat r = p * p / 4 - q;
        Int n = squarefree_part(r.get_num() * r.get_den());
        tag.data = Poly({Rat(-n), 0, 1}).to_string("x");
        if (r < 0) tag.type = DivisionType::C;
      }
      return tag;
    }
    tag.type = DivisionType::Other;
    tag.data = "commutative";
    return tag;
  }
  if (Z.dim() == 1 && m == 4) {
    std::vector<Vec> noncentral;
    for (std::size_t a = 0; a < m; ++a)
      if (!Z.contains(unit_vector(m, a))) noncentral.push_back(unit_vector(m, a));
    for (long t = 0; t < 4; ++t) noncentral.push_back(combo(Subspace::full(m).vectors(), sweep(m, t), m));
    auto q = quaternion_basis(S, noncentral);
    if (!q || !quaternion_division(q->a, q->b))
      throw std::runtime_error("zero divisor in the endomorphism algebra: not indecomposable");
    tag.data = "(" + to_string(q->a) + "," + to_string(q->b) + ")";
    tag.type = q->a < 0 && q->b < 0 ? DivisionType::H : DivisionType::Other;
    return tag;
  }
  tag.type = DivisionType::Other;
  tag.data = "center dim " + std::to_string(Z.dim());
  return tag;
}

// ---- splitting

namespace {

using Parts = std::vector<std::vector<Subspace>>;  // per part, per degree

std::optional<Parts> split_by(const GradedModule& N, const EndAlgebra& E, const Vec& x) {
  if (is_zero(x)) return std::nullopt;
  Mat X = E.block(x);
  auto fac = factor(min_poly(X));
  if (fac.size() < 2) return std::nullopt;
  GradedMap xi = E.element(x);
  Parts parts;
  for (auto& pf : fac) {
    Poly q = pow(pf.factor, pf.multiplicity);
    std::vector<Subspace> part;
    for (int i = 0; i <= N.degree(); ++i) part.push_back(kernel(q.eval(xi[i])));
    parts.push_back(part);
  }
  return parts;
}

bool nilpotent(const EndAlgebra& E, const Vec& x) {
  Poly f = min_poly(E.block(x));
  return f.degree() >= 1 && f.coeff(0) == 0 && f == pow(Poly::x(), (unsigned)f.degree());
}

// x outside the radical but nilpotent: the left ideal E x is not nil and
// contains no unit, so a generic member splits
std::optional<Parts> split_left_ideal(const GradedModule& N, const EndAlgebra& E, const Vec& x, std::mt19937_64& rng) {
  std::vector<Vec> ideal;
  for (std::size_t b = 0; b < E.dim(); ++b) ideal.push_back(E.product(unit_vector(E.dim(), b), x));
  std::uniform_int_distribution<long> coef(-3, 3);
  for (int t = 0; t < 12; ++t) {
    std::vector<long> c;
    for (std::size_t i = 0; i < ideal.size(); ++i) c.push_back(coef(rng));
    if (auto p = split_by(N, E, combo(ideal, c, E.dim()))) return p;
  }
  for (auto& y : ideal)
    if (auto p = split_by(N, E, y)) return p;
  return std::nullopt;
}

std::optional<Parts> try_element(const GradedModule& N, const EndAlgebra& E, const Vec& x, std::mt19937_64& rng) {
  if (auto p = split_by(N, E, x)) return p;
  if (!E.radical.contains(x) && nilpotent(E, x)) return split_left_ideal(N, E, x, rng);
  return std::nullopt;
}

std::optional<Parts> find_split(const GradedModule& N, const EndAlgebra& E, std::mt19937_64& rng) {
  const std::size_t n = E.dim();
  if (n <= 1) return std::nullopt;
  std::uniform_int_distribution<long> coef(-3, 3);
  for (int t = 0; t < 8; ++t) {
    std::vector<long> c;
    for (std::size_t i = 0; i < n; ++i) c.push_back(coef(rng));
    if (auto p = try_element(N, E, combo(Subspace::full(n).vectors(), c, n), rng)) return p;
  }
  for (std::size_t a = 0; a < n; ++a)
    if (auto p = try_element(N, E, unit_vector(n, a), rng)) return p;

  // certify locality: E / rad must be a division algebra
  Quotient S(E);
  const std::size_t m = S.dim();
  if (m <= 1) return std::nullopt;
  Subspace Z = S.center();
  for (long t = 0; t < 12; ++t) {
    Vec z = combo(Z.vectors(), sweep(Z.dim(), t), m);
    if (auto p = try_element(N, E, S.lift(z), rng)) return p;
  }
  if (Z.dim() == m) return std::nullopt;  // commutative with no splitting element: a field
  if (Z.dim() == 1 && m == 4) {
    std::vector<Vec> noncentral;
    for (std::size_t a = 0; a < m; ++a)
      if (!Z.contains(unit_vector(m, a))) noncentral.push_back(unit_vector(m, a));
    auto q = quaternion_basis(S, noncentral);
    if (q && quaternion_division(q->a, q->b)) return std::nullopt;
    if (q) {
      // split quaternion algebra: z^2 = a x^2 + b y^2 gives the zero divisor z + x u + y v
      for (long xs = -40; xs <= 40; ++xs)
        for (long ys = -40; ys <= 40; ++ys) {
          Rat z2 = q->a * xs * xs + q->b * ys * ys;
          if (z2 < 0 || (xs == 0 && ys == 0)) continue;
          mpz_class num = z2.get_num(), den = z2.get_den();
          if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) continue;
          Rat z(sqrt(num), sqrt(den));
          z.canonicalize();
          Vec w = add(add(scale(z, S.one()), scale(Rat(xs), q->u)), scale(Rat(ys), q->v));
          if (auto p = try_element(N, E, S.lift(w), rng)) return p;
        }
    }
  }
  for (int t = 0; t < 40; ++t) {
    std::vector<long> c;
    for (std::size_t i = 0; i < m; ++i) c.push_back(coef(rng));
    if (auto p = try_element(N, E, S.lift(combo(Subspace::full(m).vectors(), c, m)), rng)) return p;
  }
  throw std::runtime_error("could not decide whether the endomorphism algebra is local");
}

void split_recursive(const GradedModule& N, const std::vector<Mat>& incl, std::mt19937_64& rng, std::vector<Piece>& out) {
  if (N.is_zero()) return;
  EndAlgebra E = end_algebra(N);
  auto parts = find_split(N, E, rng);
  if (!parts) {
    Piece p;
    p.incl = incl;
    p.module = N;
    out.push_back(p);
    return;
  }
  for (auto& part : *parts) {
    Subquotient sq = submodule(N, part);
    std::vector<Mat> sub;
    for (int i = 0; i <= N.degree(); ++i) sub.push_back(incl[i] * sq.lifts[i]);
    split_recursive(sq.module, sub, rng, out);
  }
}

void normalize(Piece& p) {
  const GradedModule& N = p.module;
  int lo = -1, hi = -1;
  for (int i = 0; i <= N.degree(); ++i)
    if (N.dim(i) != 0) {
      if (lo < 0) lo = i;
      hi = i;
    }
  p.shift = lo;
  p.d_alpha = hi - lo;
  p.normalized = shift(N, -lo, hi - lo);
}

bool middle_socle_free(const GradedModule& N) {
  const int d = N.degree();
  if (d <= 0 || d % 2 != 0) return true;
  const int h = d / 2;
  const GradedAlgebra& A = *N.algebra();
  Mat stacked(0, N.dim(h));
  for (std::size_t g = 0; g < A.total_dim(); ++g) {
    int s = A.degree_of(g);
    if (s > 0 && h + s <= d) stacked = vcat(stacked, N.basis_action(g, h));
  }
  return kernel(stacked).dim() == 0;
}

}  // namespace

std::vector<std::size_t> Piece::dims_in_M() const {
  std::vector<std::size_t> out;
  for (auto& m : incl) out.push_back(m.cols());
  return out;
}

// ---- forms

InducedForm induced_form(const GradedModule& N) {
  const int d = N.degree();
  const GradedAlgebra& A = *N.algebra();
  InducedForm out;
  BlockLayout L;
  for (int i = 0; i <= d; ++i) L.add(N.dim(i), N.dim(d - i));
  std::vector<Vec> eqs;
  for (int i = 0; i <= d; ++i)
    for (std::size_t r = 0; r < N.dim(i); ++r)
      for (std::size_t c = 0; c < N.dim(d - i); ++c) {
        // X_i = X_{d-i}^T
        Vec e(L.total, 0);
        e[L.at(i, r, c)] += 1;
        e[L.at(d - i, c, r)] -= 1;
        if (!is_zero(e)) eqs.push_back(e);
      }
  for (std::size_t g = 0; g < A.total_dim(); ++g) {
    int s = A.degree_of(g);
    if (s == 0) continue;
    for (int i = 0; i + s <= d; ++i) {
      int o = d - i - s;
      std::size_t ni = N.dim(i), no = N.dim(o);
      if (ni == 0 || no == 0) continue;
      const Mat& a = N.basis_action(g, i);   // N^i -> N^{i+s}
      const Mat& b = N.basis_action(g, o);   // N^o -> N^{d-i}
      // a^T X_{i+s} = X_i b as ni x no matrices
      for (std::size_t r = 0; r < ni; ++r)
        for (std::size_t c = 0; c < no; ++c) {
          Vec e(L.total, 0);
          for (std::size_t t = 0; t < N.dim(i + s); ++t)
            if (a(t, r) != 0) e[L.at(i + s, t, c)] += a(t, r);
          for (std::size_t t = 0; t < N.dim(d - i); ++t)
            if (b(t, c) != 0) e[L.at(i, r, t)] -= b(t, c);
          if (!is_zero(e)) eqs.push_back(e);
        }
    }
  }
  auto sols = solve_homogeneous(L.total, eqs);
  out.solution_dim = sols.size();
  if (sols.size() != 1) return out;
  Vec v = sols[0];
  for (auto& x : v)
    if (x != 0) {
      v = scale(Rat(1) / x, v);
      break;
    }
  PairingForm Q;
  Q.blocks = L.unpack(v);
  out.nondegenerate = true;
  for (auto& b : Q.blocks)
    if (!invertible(b)) out.nondegenerate = false;
  out.Q = Q;
  return out;
}

std::optional<int> hr_sign(const GradedModule& N, const PairingForm& Q, const std::vector<Vec>& samples) {
  ModuleWithForm plus{N, Q};
  ModuleWithForm minus = plus.negated();
  bool p = true, m = true;
  for (auto& s : samples) {
    Elem l{1, s};
    p = p && check_hr(plus, l).ok;
    m = m && check_hr(minus, l).ok;
  }
  if (p && !m) return 1;
  if (m && !p) return -1;
  return std::nullopt;
}

// ---- Hom spaces

std::vector<GradedMap> hom_space(const GradedModule& N, const GradedModule& L, int k) {
  const GradedAlgebra& A = *N.algebra();
  const int dN = N.degree();
  BlockLayout lay;
  for (int i = 0; i <= dN; ++i) lay.add(L.dim(i - k), N.dim(i));
  std::vector<Vec> eqs;
  for (std::size_t g = 0; g < A.total_dim(); ++g) {
    int s = A.degree_of(g);
    if (s == 0) continue;
    for (int i = 0; i <= dN; ++i) {
      int t = i + s - k;  // target degree in L
      std::size_t ni = N.dim(i), nt = L.dim(t);
      if (ni == 0 || nt == 0) continue;
      // f_{i+s} a_N = a_L f_i   (N^i -> L^t)
      bool left = i + s <= dN && N.dim(i + s) > 0;
      bool right = L.dim(i - k) > 0;
      for (std::size_t r = 0; r < nt; ++r)
        for (std::size_t c = 0; c < ni; ++c) {
          Vec e(lay.total, 0);
          if (left) {
            const Mat& a = N.basis_action(g, i);
            for (std::size_t u = 0; u < N.dim(i + s); ++u)
              if (a(u, c) != 0) e[lay.at(i + s, r, u)] += a(u, c);
          }
          if (right) {
            const Mat& b = L.basis_action(g, i - k);
            for (std::size_t u = 0; u < L.dim(i - k); ++u)
              if (b(r, u) != 0) e[lay.at(i, u, c)] -= b(r, u);
          }
          if (!is_zero(e)) eqs.push_back(e);
        }
    }
  }
  std::vector<GradedMap> out;
  for (auto& v : solve_homogeneous(lay.total, eqs)) out.push_back(lay.unpack(v));
  return out;
}

bool isomorphic(const GradedModule& N, const GradedModule& L) {
  if (N.degree() != L.degree() || N.dims() != L.dims()) return false;
  // for indecomposables the non-isomorphisms form a proper subspace, so some basis element is invertible
  for (auto& f : hom_space(N, L, 0)) {
    bool inv = true;
    for (auto& m : f) inv = inv && invertible(m);
    if (inv) return true;
  }
  return false;
}

// ---- decomposition

std::vector<std::tuple<std::vector<std::size_t>, int, std::size_t>> DecompositionReport::canonical() const {
  std::vector<std::tuple<std::vector<std::size_t>, int, std::size_t>> out;
  for (auto& c : classes)
    for (auto& [k, m] : c.multiplicity) out.push_back({c.dims, k, m});
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t DecompositionReport::type_count() const {
  std::size_t n = 0;
  for (auto& c : classes) n += c.multiplicity.size();
  return n;
}

DecompositionReport decompose(const GradedModule& M, std::uint64_t seed, const std::vector<Vec>& samples) {
  DecompositionReport r;
  r.seed = seed;
  std::mt19937_64 rng(seed);
  std::vector<Mat> id;
  for (int i = 0; i <= M.degree(); ++i) id.push_back(Mat::identity(M.dim(i)));
  split_recursive(M, id, rng, r.pieces);
  for (auto& p : r.pieces) {
    normalize(p);
    std::size_t c = 0;
    for (; c < r.classes.size(); ++c)
      if (isomorphic(r.classes[c].N, p.normalized)) break;
    if (c == r.classes.size()) {
      SummandClass sc;
      sc.N = p.normalized;
      sc.d_alpha = p.d_alpha;
      sc.dims = p.normalized.dims();
      r.classes.push_back(sc);
    }
    p.cls = c;
    ++r.classes[c].multiplicity[p.shift];
  }
  for (auto& c : r.classes) {
    c.division = classify_division(end_algebra(c.N));
    c.form = induced_form(c.N);
    if (c.form.Q && !samples.empty()) c.epsilon = hr_sign(c.N, *c.form.Q, samples);
    c.middle_socle_free = middle_socle_free(c.N);
  }
  return r;
}

std::vector<HomEntry> hom_vanishing(const DecompositionReport& r, int d) {
  std::vector<HomEntry> out;
  for (std::size_t a = 0; a < r.classes.size(); ++a)
    for (std::size_t b = 0; b < r.classes.size(); ++b)
      for (int k = -d; k <= d; ++k) {
        HomEntry e{a, b, k, hom_space(r.classes[a].N, r.classes[b].N, k).size(), std::nullopt};
        if (a == b && k == 0) e.predicted = r.classes[a].division.dim;
        else if (r.classes[a].d_alpha <= r.classes[b].d_alpha + 2 * k) e.predicted = 0;
        out.push_back(e);
      }
  return out;
}

bool symmetric_sequence(const std::vector<std::size_t>& s) {
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] != s[s.size() - 1 - i]) return false;
  return true;
}

bool unimodal_sequence(const std::vector<std::size_t>& s) {
  std::size_t i = 0;
  while (i + 1 < s.size() && s[i] <= s[i + 1]) ++i;
  while (i + 1 < s.size() && s[i] >= s[i + 1]) ++i;
  return i + 1 >= s.size();
}

VTable multiplicity_spaces(const DecompositionReport& r, const BigradedModule& G, const Elem& eta) {
  VTable t;
  const int d = G.d();
  const GradedAlgebra& A = *G.MF.M.algebra();
  for (std::size_t a = 0; a < r.classes.size(); ++a) {
    const SummandClass& c = r.classes[a];
    std::vector<std::size_t> seq;
    std::map<int, std::vector<GradedMap>> V;
    for (int k = 0; k <= d - c.d_alpha; ++k) {
      int j = c.d_alpha + 2 * k;
      V[k] = hom_space(c.N, G.rows[j].module, -k);
      VEntry e{a, k, V[k].size(), V[k].size() / c.division.dim, true};
      auto it = c.multiplicity.find(k);
      std::size_t m = it == c.multiplicity.end() ? 0 : it->second;
      e.matches_multiplicity = e.dim_d == m && e.dim_q % c.division.dim == 0;
      t.entries.push_back(e);
      seq.push_back(m);
    }
    t.sequences.push_back(seq);
    t.symmetric.push_back(symmetric_sequence(seq));
    t.unimodal.push_back(unimodal_sequence(seq));
    bool iso = true;
    for (int k = 0; 2 * k <= d - c.d_alpha; ++k) {
      int kp = d - c.d_alpha - k, p = d - c.d_alpha - 2 * k, j = c.d_alpha + 2 * k;
      if (V[k].size() != V[kp].size()) {
        iso = false;
        continue;
      }
      if (V[k].empty()) continue;
      Elem ep = A.power(eta, (unsigned)p);
      std::vector<Vec> target, image;
      for (auto& f : V[kp]) target.push_back(flatten(f));
      for (auto& f : V[k]) {
        GradedMap g;
        for (int i = 0; i <= c.d_alpha; ++i) g.push_back(G.star(ep, i + k, j) * f[i]);
        image.push_back(flatten(g));
      }
      std::size_t len = target[0].size();
      auto coords = solve(Mat::from_columns(len, target), Mat::from_columns(len, image));
      if (!coords || !invertible(*coords)) iso = false;
    }
    t.raising_iso.push_back(iso);
  }
  return t;
}

}  // namespace lefmod
