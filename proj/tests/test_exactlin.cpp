#include "doctest.h"

#include "lefmod/linalg.hpp"
#include "lefmod/poly.hpp"

#include <random>

using namespace lefmod;

namespace {

Mat random_mat(std::mt19937& g, std::size_t r, std::size_t c, int lo = -3, int hi = 3) {
  std::uniform_int_distribution<int> d(lo, hi);
  Mat m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = frac(d(g), 1 + (d(g) & 1));
  return m;
}

}  // namespace

TEST_CASE("rationals parse and print canonically") {
  CHECK(to_string(parse_rat("6/4")) == "3/2");
  CHECK(to_string(parse_rat(" -4/2 ")) == "-2");
  CHECK_THROWS(parse_rat("1/0"));
  CHECK_THROWS(parse_rat("x"));
  CHECK(to_string(parse_rat("+0/7")) == "0");
}

TEST_CASE("kernel examples") {
  CHECK(kernel(Mat::identity(2)).dim() == 0);
  CHECK(kernel(Mat::zero(3, 3)) == Subspace::full(3));
  Subspace k = kernel(Mat{{1, 1}, {1, 1}});
  REQUIRE(k.dim() == 1);
  CHECK(k.vector(0) == Vec{1, -1});
}

TEST_CASE("subspace operations") {
  Subspace e1 = Subspace::span(2, {{1, 0}});
  Subspace e2 = Subspace::span(2, {{0, 1}});
  Subspace d = Subspace::span(2, {{1, 1}});
  CHECK(intersect(e1, e1) == e1);
  CHECK(sum(e1, e2) == Subspace::full(2));
  CHECK(intersect(d, e1).dim() == 0);
  CHECK(subspace_op(d, e2, SubspaceOp::sum) == Subspace::full(2));
  CHECK(Subspace::full(2).contains(d));
  CHECK_FALSE(e1.contains(d));
  CHECK_THROWS(intersect(e1, Subspace::full(3)));
  // canonical form does not depend on the spanning set
  CHECK(Subspace::span(3, {{1, 2, 3}, {0, 1, 1}}) == Subspace::span(3, {{2, 5, 7}, {1, 1, 2}}));
}

TEST_CASE("signature examples") {
  CHECK(signature(Mat::identity(3)) == Inertia{3, 0, 0});
  CHECK(signature(Mat::diagonal({1, -1, 0})) == Inertia{1, 1, 1});
  Mat j{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
  CHECK(signature(j) == Inertia{1, 2, 0});
  CHECK(signature(Mat{{0, 1}, {1, 0}}) == Inertia{1, 1, 0});
  CHECK_THROWS(signature(Mat{{0, 1}, {0, 0}}));
  auto w = signature_with_witness(j);
  REQUIRE(w.nonpositive_witness);
  CHECK(bilinear(*w.nonpositive_witness, j, *w.nonpositive_witness) <= 0);
  CHECK_FALSE(is_zero(*w.nonpositive_witness));
}

TEST_CASE("minimal polynomials") {
  CHECK(min_poly(Mat::identity(3)) == Poly::linear(1));
  // J = [[0, I2], [-I2, 0]]
  Mat J(4, 4);
  J(0, 2) = J(1, 3) = 1;
  J(2, 0) = J(3, 1) = -1;
  CHECK(min_poly(J) == Poly({1, 0, 1}));
  Mat D{{-1, 1}, {1, 1}};
  CHECK(min_poly(D) == Poly({-2, 0, 1}));
  CHECK(min_poly(Mat::zero(2, 2)) == Poly::x());
  Mat N{{0, 1}, {0, 0}};
  CHECK(min_poly(N) == Poly({0, 0, 1}));
}

TEST_CASE("polynomial factorization over Q") {
  CHECK(is_irreducible(Poly({1, 0, 1})));
  CHECK(is_irreducible(Poly({-2, 0, 1})));
  CHECK_FALSE(is_irreducible(Poly({-1, 0, 1})));
  // (x^2+1)^2 (x-3)(2x+1)
  Poly f = pow(Poly({1, 0, 1}), 2) * Poly::linear(3) * Poly({1, 2});
  auto fs = factor(f);
  REQUIRE(fs.size() == 3);
  CHECK(fs[0].factor == Poly::linear(3));
  CHECK(fs[1].factor == Poly::linear(frac(-1, 2)));
  CHECK(fs[2].factor == Poly({1, 0, 1}));
  CHECK(fs[2].multiplicity == 2);
  // x^4 + 1 is irreducible over Q but splits modulo every prime
  CHECK(is_irreducible(Poly({1, 0, 0, 0, 1})));
  // (x^2 - 2)(x^2 - 3)(x^3 - x - 1)
  Poly g = Poly({-2, 0, 1}) * Poly({-3, 0, 1}) * Poly({-1, -1, 0, 1});
  auto gs = factor(g);
  CHECK(gs.size() == 3);
  Poly back = Poly::constant(1);
  for (auto& x : gs) back = back * pow(x.factor, x.multiplicity);
  CHECK(back == g);
}

TEST_CASE("nilpotent profiles") {
  CHECK(nilpotent_profile({1, 1}, {Mat::zero(1, 1)}).blocks == std::vector<JordanBlock>{{0, 0, 1}, {0, 1, 1}});
  CHECK(nilpotent_profile({1, 1}, {Mat::identity(1)}).blocks == std::vector<JordanBlock>{{1, 0, 1}});
  CHECK_THROWS(nilpotent_profile({1, 2}, {Mat::identity(1)}));
}

TEST_CASE("property: rank-nullity on random matrices") {
  std::mt19937 g(7);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = 1 + g() % 12, c = 1 + g() % 12;
    Mat m = random_mat(g, r, c);
    if (trial % 3 == 0 && r > 1)  // force dependent rows
      for (std::size_t j = 0; j < c; ++j) m(r - 1, j) = m(0, j) * 2;
    Subspace k = kernel(m);
    CHECK(k.dim() + rank(m) == c);
    CHECK((m * k.basis()).is_zero());
    CHECK(image(m).dim() == rank(m));
  }
}

TEST_CASE("property: signature is congruence invariant") {
  std::mt19937 g(11);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 1 + g() % 8;
    Mat a = random_mat(g, n, n);
    Mat s = a + a.transpose();
    if (trial % 4 == 0) s = s * Mat::diagonal(Vec(n, 0));  // zero form
    Mat p = random_mat(g, n, n);
    if (!inverse(p)) continue;
    CHECK(signature(p.transpose() * s * p) == signature(s));
    Inertia in = signature(s);
    CHECK(in.zero == n - rank(s));
  }
}

TEST_CASE("property: profile matches iterated kernels") {
  std::mt19937 g(3);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t deg = 1 + g() % 4;
    std::vector<std::size_t> dims;
    for (std::size_t i = 0; i <= deg; ++i) dims.push_back(g() % 4);
    std::vector<Mat> maps;
    for (std::size_t i = 0; i < deg; ++i) maps.push_back(random_mat(g, dims[i + 1], dims[i], -1, 1));
    auto p = nilpotent_profile(dims, maps);
    std::size_t total = 0;
    for (auto d : dims) total += d;
    CHECK(p.total_dim() == total);
    // each degree is covered by the right number of blocks
    for (std::size_t i = 0; i <= deg; ++i) {
      std::size_t cover = 0;
      for (auto& b : p.blocks)
        if (b.k <= int(i) && int(i) <= b.k + b.e) cover += b.m;
      CHECK(cover == dims[i]);
    }
    // dim ker l^t = sum over blocks of min(t, e+1) m
    std::size_t N = total;
    Mat L(N, N);
    std::size_t off = 0;
    for (std::size_t i = 0; i < deg; ++i) {
      for (std::size_t a = 0; a < dims[i + 1]; ++a)
        for (std::size_t b = 0; b < dims[i]; ++b) L(off + dims[i] + a, off + b) = maps[i](a, b);
      off += dims[i];
    }
    Mat Lt = Mat::identity(N);
    for (int t = 1; t <= int(deg) + 1; ++t) {
      Lt = Lt * L;
      std::size_t expect = 0;
      for (auto& b : p.blocks) expect += std::min(t, b.e + 1) * b.m;
      CHECK(kernel(Lt).dim() == expect);
    }
  }
}
