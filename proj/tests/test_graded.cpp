#include "doctest.h"
#include "support.hpp"

#include "lefmod/matroid.hpp"

using namespace lefmod;
using namespace lefmod::testing;

namespace {

AlgebraSpec broken_associativity() {
  // y1 y2 = z, z y3 = w, y2 y3 = 0
  AlgebraSpec s;
  s.dims = {1, 3, 1, 1};
  s.labels = {"1", "y1", "y2", "y3", "z", "w"};
  for (std::size_t g = 0; g < 6; ++g) {
    int deg = g == 0 ? 0 : g < 4 ? 1 : g == 4 ? 2 : 3;
    std::size_t local = g == 0 ? 0 : g < 4 ? g - 1 : 0;
    Vec v(s.dims[deg], 0);
    v[local] = 1;
    s.products[{0, g}] = v;
    s.products[{g, 0}] = v;
  }
  s.products[{1, 2}] = s.products[{2, 1}] = Vec{1};
  s.products[{4, 3}] = s.products[{3, 4}] = Vec{1};
  return s;
}

}  // namespace

TEST_CASE("truncated polynomial algebra") {
  auto A = truncated_polynomial_algebra(1, "x");
  CHECK(A->dims() == std::vector<std::size_t>{1, 1});
  Elem x = A->basis_elem(1);
  CHECK(A->multiply(x, x).empty());
  CHECK(A->format(x) == "x");
}

TEST_CASE("U23 Mobius algebra table") {
  auto mob = mobius_algebra(flats(Matroid::uniform(2, 3)));
  const GradedAlgebra& A = *mob.algebra;
  CHECK(A.dims() == std::vector<std::size_t>{1, 3, 1});
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      Vec p = A.multiply(A.basis_elem(1 + i), A.basis_elem(1 + j));
      CHECK(p == Vec{i == j ? 0 : 1});
    }
}

TEST_CASE("non-associative table names the triple") {
  try {
    GradedAlgebra::make(broken_associativity());
    FAIL("expected rejection");
  } catch (const AlgebraError& e) {
    std::string msg = e.what();
    CHECK(msg.find("associativ") != std::string::npos);
    CHECK(msg.find("y1") != std::string::npos);
    CHECK(msg.find("y3") != std::string::npos);
  }
}

TEST_CASE("non-commutative table rejected") {
  AlgebraSpec s = broken_associativity();
  s.products[{2, 1}] = Vec{2};
  CHECK_THROWS_AS(GradedAlgebra::make(s), AlgebraError);
}

TEST_CASE("regular modules") {
  auto Q0 = truncated_polynomial_algebra(0, "1");
  auto r0 = regular_module(Q0, Vec{1});
  CHECK(r0.Q.blocks.size() == 1);
  CHECK(r0.Q.blocks[0] == Mat{{1}});

  auto A = truncated_polynomial_algebra(1, "x");
  auto r = regular_module(A, Vec{1});
  r.validate();
  CHECK(r.Q.blocks[0] == Mat{{1}});
  CHECK(r.Q.blocks[1] == Mat{{1}});

  auto fano = make_fixture("fano");
  CHECK(fano.MF.M.total_dim() == 16);
  std::vector<std::pair<std::size_t, std::size_t>> sizes;
  for (auto& b : fano.MF.Q.blocks) sizes.push_back({b.rows(), b.cols()});
  CHECK(sizes == std::vector<std::pair<std::size_t, std::size_t>>{{1, 1}, {7, 7}, {7, 7}, {1, 1}});
}

TEST_CASE("subalgebras of the Fano Mobius algebra") {
  CHECK(fano_lattice().B.dim(1) == 4);
  CHECK(fano_sym().B.dim(1) == 3);
  auto f = make_fixture("fano");
  auto all = full_subalgebra(f);
  CHECK(all.dim(1) == 7);
  CHECK(all.dim(2) == 7);
  CHECK_THROWS(subalgebra_generated(f.MF.M.algebra(), {Vec{1, 2}}, {}));
  CHECK_THROWS(subalgebra_from_gens(f.MF.M.algebra(), {}));
}

TEST_CASE("sample enumeration order") {
  Vec g1{1, 0}, g2{0, 1};
  CHECK(sample_points(Cone(2, {g1}), SampleStyle::generator_sums, 1) == std::vector<Vec>{g1});
  auto s = sample_points(Cone(2, {g1, g2}), SampleStyle::generator_sums, 3);
  CHECK(s == std::vector<Vec>{Vec{1, 1}, Vec{2, 1}, Vec{1, 2}});
  CHECK_THROWS(sample_points(Cone(2, {g1}), SampleStyle::generator_sums, 0));
  CHECK_THROWS(Cone(2, {}));
  CHECK_THROWS(Cone(2, {Vec{0, 0}}));

  auto st = fano_lattice();
  Vec y1 = st.y("y1");
  auto rel = sample_points(st.fx.cone, SampleStyle::relative, 8, {y1});
  Vec target = st.y("y1+y2+y3+y4+y5+y6+y7-2*y1");
  CHECK(rel.front() == st.y("y1+y2+y3+y4+y5+y6+y7"));
  CHECK(std::find(rel.begin(), rel.end(), target) != rel.end());
  // samples are deterministic
  CHECK(rel == sample_points(st.fx.cone, SampleStyle::relative, 8, {y1}));
}

TEST_CASE("descent examples") {
  auto A = truncated_polynomial_algebra(1, "x");
  auto r = regular_module(A, Vec{1});
  auto unit = descend(r, {0, Vec{1}});
  CHECK(unit.result.M.dims() == r.M.dims());
  CHECK(unit.result.Q.blocks[0] == r.Q.blocks[0]);
  CHECK(unit.result.Q.blocks[1] == r.Q.blocks[1]);

  auto dx = descend(r, A->basis_elem(1));
  CHECK(dx.result.degree() == 0);
  CHECK(dx.result.M.dims() == std::vector<std::size_t>{1});
  CHECK(dx.result.Q.blocks[0] == Mat{{1}});

  auto u = make_fixture("u23");
  auto dl = descend(u.MF, {1, Vec{1, 1, 1}});
  CHECK(dl.result.degree() == 1);
  CHECK(dl.result.M.dims() == std::vector<std::size_t>{1, 1});
  dl.result.validate();

  auto zero = descend(u.MF, {1, Vec{0, 0, 0}});
  CHECK(zero.result.degree() == -1);
  CHECK(zero.result.M.is_zero());
}

TEST_CASE("shifts and sums") {
  auto Q0 = truncated_polynomial_algebra(1, "l");
  GradedModule N(Q0, {1}, {});
  CHECK(shift(N, 0, 0).dims() == N.dims());
  GradedModule N1 = shift(N, 1, 1);
  CHECK(N1.dims() == std::vector<std::size_t>{0, 1});
  GradedModule S = direct_sum({shift(N, 0, 1), N1});
  auto prof = nilpotent_profile(S.dims(), {S.action(Q0->basis_elem(1), 0)});
  CHECK(prof.blocks == std::vector<JordanBlock>{{0, 0, 1}, {0, 1, 1}});
  CHECK_THROWS(shift(N, -1, 1));

  ModuleWithForm one{N, {{Mat{{1}}}}};
  auto sum = shift_sum({{one, 1}});
  CHECK(sum.degree() == 2);
  CHECK(sum.Q.blocks[1] == Mat{{-1}});
}

TEST_CASE("zero module has degree -1") {
  auto A = truncated_polynomial_algebra(1);
  auto z = GradedModule::zero(A);
  CHECK(z.degree() == -1);
  CHECK(z.is_zero());
}

TEST_CASE("every fixture validates") {
  for (auto& n : fixture_names()) {
    CAPTURE(n);
    auto f = make_fixture(n);
    CHECK_NOTHROW(f.MF.M.validate());
    CHECK_NOTHROW(f.MF.validate());
  }
}

TEST_CASE("double descent matches descent by the square") {
  // M_l / ann(l) against M / ann(l^2), compared through the quotient maps
  for (auto& st : lefschetz_setups()) {
    CAPTURE(st.fx.name);
    const ModuleWithForm& MF = st.fx.MF;
    Elem l = st.ell();
    Descent once = descend(MF, l);
    Descent twice = descend(once.result, l);
    Descent square = descend(MF, st.A().power(l, 2));
    CHECK(twice.result.M.dims() == square.result.M.dims());
    const int dd = square.result.degree();
    for (int i = 0; i <= dd; ++i) {
      Mat q2 = twice.quotient[i] * once.quotient[i];
      Mat q = square.quotient[i];
      CHECK(kernel(q2) == kernel(q));
      Mat q2o = twice.quotient[dd - i] * once.quotient[dd - i];
      Mat lhs = q2.transpose() * twice.result.Q.blocks[i] * q2o;
      Mat rhs = q.transpose() * square.result.Q.blocks[i] * square.quotient[dd - i];
      CHECK(lhs == rhs);
    }
  }
}
