#include "lefmod/fixtures.hpp"

#include <cctype>
#include <stdexcept>

namespace lefmod {

Fixture matroid_fixture(const std::string& name, const Matroid& m) {
  MobiusAlgebra mob = mobius_algebra(flats(m));
  Fixture fx{name, regular_module(mob.algebra, mob.deg), {}};
  std::vector<Vec> gens;
  for (std::size_t i = 0; i < mob.algebra->dim(1); ++i) gens.push_back(unit_vector(mob.algebra->dim(1), i));
  fx.cone = Cone(mob.algebra->dim(1), gens);
  return fx;
}

Fixture apolar_fixture(const std::string& name, const std::vector<Term>& f, int n, int d) {
  CogeneratedAlgebra C = cogenerate(f, n, d);
  return {name, C.module(), C.positive_orthant()};
}

namespace {

// Degree-one algebra A^0 = Q, A^1 = span of the given matrices, all products of
// degree-one elements zero; M^0 = M^1 = Q^n with Q(e_i, e_j^*) = δ_ij and A^1
// acting M^0 -> M^1 by the matrices.
Fixture matrix_fixture(const std::string& name, const std::vector<std::string>& labels, const std::vector<Mat>& mats,
                       const std::vector<Vec>& cone) {
  const std::size_t n = mats.front().rows();
  AlgebraSpec spec;
  spec.dims = {1, mats.size()};
  spec.labels.push_back("1");
  for (const auto& l : labels) spec.labels.push_back(l);
  for (std::size_t g = 0; g <= mats.size(); ++g) spec.products[{0, g}] = spec.products[{g, 0}] = unit_vector(g == 0 ? 1 : mats.size(), g == 0 ? 0 : g - 1);
  auto A = std::make_shared<GradedAlgebra>(GradedAlgebra::make(spec));
  std::vector<std::vector<Mat>> act;
  act.push_back({Mat::identity(n), Mat::identity(n)});
  for (const auto& m : mats) act.push_back({m, Mat(0, n)});
  Fixture fx{name, {GradedModule(A, {n, n}, act), {{Mat::identity(n), Mat::identity(n)}}}, Cone(mats.size(), cone)};
  return fx;
}

// place a 2x2 block scaled by s at block position (r, c)
void put(Mat& m, std::size_t r, std::size_t c, const Mat& blk, const Rat& s = 1) {
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) m(2 * r + i, 2 * c + j) += s * blk(i, j);
}

const Mat kY{{0, 1}, {-1, 0}};
const Mat kYt{{0, -1}, {1, 0}};
const Mat kXa{{1, 0}, {0, 0}};
const Mat kXb{{0, 0}, {0, 1}};
const Mat kXc{{0, 1}, {1, 0}};

Fixture endC() {
  // [[X, dY], [dY^t, X]]
  std::vector<Mat> ms;
  for (const Mat* x : {&kXa, &kXb, &kXc}) {
    Mat m(4, 4);
    put(m, 0, 0, *x);
    put(m, 1, 1, *x);
    ms.push_back(m);
  }
  Mat md(4, 4);
  put(md, 0, 1, kY);
  put(md, 1, 0, kYt);
  ms.push_back(md);
  std::vector<Vec> cone = {{2, 2, 1, 0}, {2, 2, -1, 0}, {2, 2, 0, 1}, {2, 2, 0, -1}};
  return matrix_fixture("endC", {"a", "b", "c", "d"}, ms, cone);
}

Fixture endH() {
  // rows: [X eY dY fY; eY^t X fY dY^t; dY^t fY^t X eY; fY^t dY eY^t X]
  std::vector<Mat> ms;
  for (const Mat* x : {&kXa, &kXb, &kXc}) {
    Mat m(8, 8);
    for (std::size_t i = 0; i < 4; ++i) put(m, i, i, *x);
    ms.push_back(m);
  }
  Mat md(8, 8), me(8, 8), mf(8, 8);
  put(me, 0, 1, kY), put(md, 0, 2, kY), put(mf, 0, 3, kY);
  put(me, 1, 0, kYt), put(mf, 1, 2, kY), put(md, 1, 3, kYt);
  put(md, 2, 0, kYt), put(mf, 2, 1, kYt), put(me, 2, 3, kY);
  put(mf, 3, 0, kYt), put(md, 3, 1, kY), put(me, 3, 2, kYt);
  ms.push_back(md);
  ms.push_back(me);
  ms.push_back(mf);
  std::vector<Vec> cone;
  for (std::size_t t = 2; t < 6; ++t)
    for (int s : {1, -1}) {
      Vec v{2, 2, 0, 0, 0, 0};
      v[t] = s;
      cone.push_back(v);
    }
  return matrix_fixture("endH", {"a", "b", "c", "d", "e", "f"}, ms, cone);
}

Fixture sqrt2() {
  // [[a, b], [b, a + 2b]]
  std::vector<Mat> ms = {Mat::identity(2), Mat{{0, 1}, {1, 2}}};
  return matrix_fixture("sqrt2", {"a", "b"}, ms, {{1, 0}, {3, 1}, {3, -1}});
}

}  // namespace

std::vector<Term> lorentz_cubic() {
  return {{{3, 0, 0}, 14}, {{2, 1, 0}, 6}, {{2, 0, 1}, 24}, {{1, 1, 1}, 12}, {{1, 0, 2}, 6}, {{0, 1, 2}, 3}};
}

const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names = {"fano", "u23", "endC", "endH", "sqrt2", "lorentz3", "indefinite2"};
  return names;
}

Fixture make_fixture(const std::string& name) {
  if (name == "fano") return matroid_fixture(name, Matroid::fano());
  if (name == "u23") return matroid_fixture(name, Matroid::uniform(2, 3));
  if (name == "endC") return endC();
  if (name == "endH") return endH();
  if (name == "sqrt2") return sqrt2();
  if (name == "lorentz3") return apolar_fixture(name, lorentz_cubic(), 3, 3);
  if (name == "indefinite2") return apolar_fixture(name, {{{2, 0}, 1}, {{0, 2}, -1}}, 2, 2);
  throw std::invalid_argument("unknown fixture '" + name + "'");
}

Subalgebra subalgebra_from_gens(const AlgebraPtr& A, const std::vector<Vec>& gens1) {
  return subalgebra_generated(A, gens1, gens1);
}

Subalgebra full_subalgebra(const Fixture& fx) {
  const AlgebraPtr& A = fx.MF.M.algebra();
  std::vector<Vec> gens;
  for (std::size_t i = 0; i < A->dim(1); ++i) gens.push_back(unit_vector(A->dim(1), i));
  return subalgebra_generated(A, gens, fx.cone.gens);
}

Vec parse_degree_one(const GradedAlgebra& A, const std::string& text) {
  Vec v(A.dim(1));
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("bad element '" + text + "' at offset " + std::to_string(i) + ": " + why);
  };
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  if (i == text.size()) fail("empty");
  while (i < text.size()) {
    int sgn = 1;
    if (text[i] == '+' || text[i] == '-') {
      sgn = text[i] == '-' ? -1 : 1;
      ++i;
      skip();
    }
    Rat c = 1;
    std::size_t j = i;
    while (j < text.size() && (std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '/')) ++j;
    if (j > i) {
      std::size_t k = j;
      while (k < text.size() && std::isspace(static_cast<unsigned char>(text[k]))) ++k;
      if (k < text.size() && text[k] == '*') {
        c = parse_rat(text.substr(i, j - i));
        i = k + 1;
        skip();
      }
    }
    std::size_t s = i;
    while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
      ++i;
    if (i == s) fail("expected a basis label");
    std::string label = text.substr(s, i - s);
    std::size_t g;
    try {
      g = A.find_label(label);
    } catch (const std::invalid_argument&) {
      fail("unknown label '" + label + "'");
    }
    if (A.degree_of(g) != 1) fail("'" + label + "' is not of degree one");
    v[A.local_index(g)] += sgn * c;
    skip();
    if (i < text.size() && text[i] != '+' && text[i] != '-') fail("expected + or -");
  }
  return v;
}

std::vector<Vec> parse_degree_one_list(const GradedAlgebra& A, const std::string& text) {
  std::vector<Vec> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string part = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    out.push_back(parse_degree_one(A, part));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<Vec> fano_gens_lattice(const GradedAlgebra& A) { return parse_degree_one_list(A, "y1,y3,y5,y7"); }
std::vector<Vec> fano_gens_sym(const GradedAlgebra& A) { return parse_degree_one_list(A, "y1,y3+y5,y2+y4+y6+y7"); }

}  // namespace lefmod
