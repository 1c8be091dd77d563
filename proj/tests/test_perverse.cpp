#include "doctest.h"
#include "random_module.hpp"
#include "support.hpp"

using namespace lefmod;
using namespace lefmod::testing;

TEST_CASE("zero action on dims (1,1)") {
  auto A = truncated_polynomial_algebra(1);
  GradedModule M(A, {1, 1}, {});
  auto P = perverse_filtration(M, {1, Vec{1}});
  CHECK(P.at(0, 0).dim() == 1);
  CHECK(P.at(1, 1).dim() == 0);
  CHECK(P.at(2, 1).dim() == 1);
  CHECK(P.at(-1, 0).dim() == 0);
  CHECK(P.at(5, 1).dim() == 1);
}

TEST_CASE("Fano filtrations") {
  auto s4 = fano_lattice();
  auto P = perverse_filtration(s4.fx.MF.M, s4.ell());
  CHECK(P.level_dim(2) == 1);
  CHECK(P.level_dim(3) == 15);
  CHECK(P.level_dim(4) == 16);
  CHECK_FALSE(P.trivial());

  auto s5 = fano_sym();
  auto P5 = perverse_filtration(s5.fx.MF.M, s5.ell());
  CHECK(P5.level_dim(2) == 0);
  CHECK(P5.level_dim(3) == 16);
  CHECK(P5.trivial());
}

TEST_CASE("independence of l") {
  auto s4 = fano_lattice();
  auto M = s4.fx.MF.M;
  CHECK_THROWS(check_ell_independence(M, {s4.ell().v}));
  auto samples = sample_points(Cone(7, s4.B.cone_gens), SampleStyle::generator_sums, 4);
  auto r = check_ell_independence(M, samples);
  CHECK(r.equal);
  // y1 alone sits outside the cone of B; the outcome is informative only
  auto off = check_ell_independence(M, {s4.ell().v, s4.y("y1")});
  CHECK(off.differing.size() <= 1);
  for (auto& st : lefschetz_setups()) {
    CAPTURE(st.fx.name);
    CHECK(check_ell_independence(st.fx.MF.M, sample_points(Cone(st.A().dim(1), st.B.cone_gens),
                                                              SampleStyle::generator_sums, 3))
              .equal);
  }
}

TEST_CASE("Gr over the lattice subalgebra of F7") {
  auto s4 = fano_lattice();
  auto G = build_gr(s4.fx.MF, s4.B, s4.ell());
  CHECK(G.checks.ok());
  CHECK(G.dim(1, 2) == 1);
  CHECK(G.row_dims(3) == std::vector<std::size_t>{1, 6, 6, 1});
  CHECK(G.dim(2, 4) == 1);
  CHECK(G.total_dim() == 16);
}

TEST_CASE("trivial filtration gives Gr = M") {
  auto s5 = fano_sym();
  auto G = build_gr(s5.fx.MF, s5.B, s5.ell());
  REQUIRE(G.checks.ok());
  CHECK(G.row_dims(3) == s5.fx.MF.M.dims());
  for (int i = 0; i <= 3; ++i) CHECK(G.qbar(i, 3) == s5.fx.MF.Q.blocks[i]);
}

TEST_CASE("one-dimensional layer") {
  auto s4 = fano_lattice();
  auto N = one_dim_layer(s4.fx.MF, s4.ell());
  CHECK(N.N.M.dims() == std::vector<std::size_t>{0, 1, 1, 0});
  CHECK(N.form_nondegenerate);

  auto f = make_fixture("fano");
  auto hl = one_dim_layer(f.MF, {1, Vec(7, 1)});
  CHECK(hl.N.M.total_dim() == 0);

  auto z = one_dim_layer(f.MF, {1, Vec(7, 0)});
  CHECK(z.N.M.dims() == f.MF.M.dims());
  CHECK(z.form_nondegenerate);
}

TEST_CASE("descent functoriality") {
  auto s4 = fano_lattice();
  auto r = gr_descent_maps(s4.fx.MF, s4.B, s4.ell(), s4.eta());
  CHECK_MESSAGE(r.ok(), (r.violations.empty() ? "" : r.violations[0]));

  auto u = u23_y1();
  CHECK(gr_descent_maps(u.fx.MF, u.B, u.ell(), u.eta()).ok());

  auto A = truncated_polynomial_algebra(1);
  ModuleWithForm pt{GradedModule(A, {1}, {}), {{Mat{{1}}}}};
  auto B = subalgebra_generated(A, {Vec{1}}, {Vec{1}});
  CHECK(gr_descent_maps(pt, B, {1, Vec{1}}, {1, Vec{1}}).ok());

  for (auto& st : lefschetz_setups()) {
    CAPTURE(st.fx.name);
    for (auto& eta : sample_points(st.fx.cone, SampleStyle::generator_sums, 2)) {
      auto rep = gr_descent_maps(st.fx.MF, st.B, st.ell(), {1, eta});
      CHECK_MESSAGE(rep.ok(), (rep.violations.empty() ? "" : rep.violations[0]));
    }
  }
}

TEST_CASE("Gr invariants on the fixtures") {
  for (auto& st : lefschetz_setups()) {
    CAPTURE(st.fx.name);
    auto G = build_gr(st.fx.MF, st.B, st.ell());
    CHECK(G.checks.b_stable);
    CHECK(G.checks.star_shift);
    CHECK(G.checks.orthogonal);
    CHECK(G.checks.dims_symmetric);
    CHECK(G.checks.nondegenerate);
    const int d = G.d();
    for (int j = 0; j <= 2 * d; ++j)
      for (int i = 0; i <= d; ++i) {
        CHECK(G.dim(i, j) == G.P.at(j, i).dim() - G.P.at(j - 1, i).dim());
        // nested
        CHECK(G.P.at(j, i).contains(G.P.at(j - 1, i)));
        // lifts from non-complementary rows pair to zero
        for (int jp = 0; jp <= 2 * d; ++jp) {
          if (jp + j >= 2 * d || G.dim(i, j) == 0 || G.dim(d - i, jp) == 0) continue;
          CHECK((G.lift(i, j).transpose() * st.fx.MF.Q.blocks[i] * G.lift(d - i, jp)).is_zero());
        }
      }
    CHECK(G.P.level_dim(2 * d) == st.fx.MF.M.total_dim());
  }
}

TEST_CASE("annihilator formula matches Jordan placement on fixtures") {
  for (auto& st : lefschetz_setups()) {
    CAPTURE(st.fx.name);
    const GradedModule& M = st.fx.MF.M;
    for (auto& p : sample_points(st.fx.cone, SampleStyle::generator_sums, 3)) {
      Elem l{1, p};
      auto P = perverse_filtration(M, l);
      auto expect = profile_filtration_dims(nilpotent_profile(M.dims(), ell_maps(M, l)), M.degree());
      for (int j = 0; j <= 2 * M.degree(); ++j)
        for (int i = 0; i <= M.degree(); ++i) CHECK(P.at(j, i).dim() == expect[j][i]);
    }
  }
}

TEST_CASE("annihilator formula matches Jordan placement on 200 random modules") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    CAPTURE(trial);
    auto R = random_module(rng);
    REQUIRE_NOTHROW(R.M.validate());
    Elem l{1, Vec{1}};
    auto prof = nilpotent_profile(R.M.dims(), ell_maps(R.M, l));
    CHECK(prof.blocks == R.blocks);
    auto P = perverse_filtration(R.M, l);
    const int d = R.M.degree();
    for (int j = 0; j <= 2 * d; ++j)
      for (int i = 0; i <= d; ++i) CHECK(P.at(j, i) == R.expected[j][i]);
  }
}
