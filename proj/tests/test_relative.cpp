#include "doctest.h"
#include "support.hpp"

using namespace lefmod;
using namespace lefmod::testing;

namespace {

ModuleWithForm point_module() {
  auto A = truncated_polynomial_algebra(1);
  return {GradedModule(A, {1}, {}), {{Mat{{1}}}}};
}

Subalgebra point_B() { return subalgebra_generated(truncated_polynomial_algebra(1), {Vec{1}}, {Vec{1}}); }

std::vector<Vec> local_samples(const Subalgebra& B, std::size_t n) {
  return sample_points(local_cone(B), SampleStyle::generator_sums, n);
}

std::vector<Vec> relative_samples(const Setup& st, std::size_t n) {
  return sample_points(st.fx.cone, SampleStyle::relative, n, b1_basis(st.B));
}

}  // namespace

TEST_CASE("relative HL over the lattice subalgebra") {
  auto s4 = fano_lattice();
  auto G = build_gr(s4.fx.MF, s4.B, s4.ell());
  CHECK(check_relative_hl(G, s4.eta()).ok);
  Mat m = G.star(s4.eta(), 1, 2);
  CHECK(m.rows() == 1);
  CHECK(m.cols() == 1);
  CHECK(m(0, 0) != 0);
  // j = d is the identity
  Elem one{0, Vec{1}};
  for (int i = 0; i <= 3; ++i) CHECK(G.star(one, i, 3) == Mat::identity(G.dim(i, 3)));

  Elem rel{1, s4.y("y1+y2+y3+y4+y5+y6+y7-2*y1")};
  auto r = check_relative_hl(G, rel);
  CHECK(r.ok);
  CHECK(G.star(rel, 1, 2)(0, 0) != 0);
  for (auto& p : relative_samples(s4, 8)) CHECK(check_relative_hl(G, {1, p}).ok);
}

TEST_CASE("primitive decomposition") {
  auto pt = build_gr(point_module(), point_B(), {1, Vec{1}});
  auto p0 = primitive_decomposition(pt, {1, Vec{1}});
  REQUIRE(p0.pieces.size() == 1);
  CHECK(p0.pieces[0].i == 0);
  CHECK(p0.pieces[0].j == 0);
  CHECK(p0.complete);

  auto s4 = fano_lattice();
  auto G = build_gr(s4.fx.MF, s4.B, s4.ell());
  auto pd = primitive_decomposition(G, s4.eta());
  CHECK(pd.complete);
  CHECK(pd.translate_total == 16);
  std::vector<std::tuple<int, int, std::size_t>> got;
  for (auto& p : pd.pieces) got.push_back({p.i, p.j, p.space.dim()});
  CHECK(got == std::vector<std::tuple<int, int, std::size_t>>{{1, 2, 1}, {0, 3, 1}, {1, 3, 5}});

  auto u = u23_y1();
  auto Gu = build_gr(u.fx.MF, u.B, u.ell());
  auto pu = primitive_decomposition(Gu, u.eta());
  CHECK(pu.complete);
  CHECK(pu.translate_total == 5);
}

TEST_CASE("relative HR") {
  auto pt = build_gr(point_module(), point_B(), {1, Vec{1}});
  CHECK(check_relative_hr(pt, primitive_decomposition(pt, {1, Vec{1}})).ok);

  auto s4 = fano_lattice();
  auto G = build_gr(s4.fx.MF, s4.B, s4.ell());
  auto hr = check_relative_hr(G, primitive_decomposition(G, s4.eta()));
  CHECK(hr.ok);
  for (auto& p : hr.pieces) CHECK(p.inertia.minus == 0);
}

TEST_CASE("negating Q breaks relative HR on every piece") {
  // every piece is checked against its own (-1)^i, so a global sign flip turns each definite form negative
  for (auto& st : {fano_lattice(), u23_y1()}) {
    CAPTURE(st.fx.name);
    auto G = build_gr(st.fx.MF.negated(), st.B, st.ell());
    auto hr = check_relative_hr(G, primitive_decomposition(G, st.eta()));
    CHECK_FALSE(hr.ok);
    for (auto& p : hr.pieces) {
      CHECK(p.inertia.plus == 0);
      CHECK(p.witness);
    }
  }
}

TEST_CASE("kernel modules") {
  auto s4 = fano_lattice();
  auto G = build_gr(s4.fx.MF, s4.B, s4.ell());
  auto km = kernel_modules(G, s4.eta());
  REQUIRE(km.over_B.size() == 4);
  CHECK(km.over_B[3].M.dims() == std::vector<std::size_t>{1, 6, 6, 1});
  CHECK(km.over_B[3].M.dims() == G.row_dims(3));
  auto cert = check_kahler_package(km.over_B[3], local_samples(s4.B, 5), "K3");
  CHECK(cert.ok());
  auto row0 = check_kahler_package(km.over_A[0], relative_samples(s4, 5), "row0");
  CHECK(km.over_A[0].M.dims() == std::vector<std::size_t>{0, 1, 1, 0});
  CHECK(row0.ok());
}

TEST_CASE("signature identity") {
  auto pt = build_gr(point_module(), point_B(), {1, Vec{1}});
  auto s0 = signature_identity(pt, primitive_decomposition(pt, {1, Vec{1}}));
  CHECK(s0.applicable);
  CHECK(s0.a == 1);
  CHECK(s0.b == 1);
  CHECK(s0.c == 1);

  auto u = u23_y1();
  auto G = build_gr(u.fx.MF, u.B, u.ell());
  auto s = signature_identity(G, primitive_decomposition(G, u.eta()));
  CHECK(s.applicable);
  CHECK(s.a == -1);
  CHECK(s.b == -1);
  CHECK(s.c == -1);

  auto s4 = fano_lattice();
  auto G4 = build_gr(s4.fx.MF, s4.B, s4.ell());
  CHECK_FALSE(signature_identity(G4, primitive_decomposition(G4, s4.eta())).applicable);
}

TEST_CASE("the subalgebra R") {
  auto s5 = fano_sym();
  auto R5 = compute_R(s5.fx.MF.M, perverse_filtration(s5.fx.MF.M, s5.ell()));
  CHECK(R5.dims() == s5.fx.MF.M.dims());

  auto s4 = fano_lattice();
  auto P = perverse_filtration(s4.fx.MF.M, s4.ell());
  auto R = compute_R(s4.fx.MF.M, P);
  CHECK(R.closed);
  CHECK(R.dim(1) >= 4);
  for (auto& b : b1_basis(s4.B)) CHECK(R.basis[1].contains(b));
  CHECK(R.dim(3) == 1);
}

TEST_CASE("Deligne splitting") {
  auto s5 = fano_sym();
  auto P5 = perverse_filtration(s5.fx.MF.M, s5.ell());
  auto G5 = build_gr(s5.fx.MF, s5.B, P5);
  auto sp5 = deligne_splitting(G5, s5.eta(), compute_R(s5.fx.MF.M, P5));
  CHECK(sp5.ok());
  for (int i = 0; i <= 3; ++i) CHECK(sp5.phi[i] == Mat::identity(s5.fx.MF.M.dim(i)));

  auto s4 = fano_lattice();
  auto P = perverse_filtration(s4.fx.MF.M, s4.ell());
  auto G = build_gr(s4.fx.MF, s4.B, P);
  auto sp = deligne_splitting(G, s4.eta(), compute_R(s4.fx.MF.M, P));
  CHECK(sp.invertible);
  CHECK(sp.filtration_exact);
  CHECK(sp.equivariant);

  auto A = truncated_polynomial_algebra(1);
  ModuleWithForm zero{GradedModule::zero(A), {}};
  auto Gz = build_gr(zero, point_B(), {1, Vec{1}});
  auto spz = deligne_splitting(Gz, {1, Vec{1}}, compute_R(zero.M, Gz.P));
  CHECK(spz.phi.empty());
  CHECK(spz.ok());
}

TEST_CASE("relative package on every fixture") {
  for (auto& st : lefschetz_setups()) {
    CAPTURE(st.fx.name);
    auto P = perverse_filtration(st.fx.MF.M, st.ell());
    auto G = build_gr(st.fx.MF, st.B, P);
    auto R = compute_R(st.fx.MF.M, P);
    CHECK(R.closed);
    for (auto& e : relative_samples(st, 3)) {
      Elem eta{1, e};
      REQUIRE(check_relative_hl(G, eta).ok);
      auto pd = primitive_decomposition(G, eta);
      CHECK_MESSAGE(pd.complete, pd.diagnostic);
      auto hr = check_relative_hr(G, pd);
      CHECK(hr.ok);
      CHECK(signature_identity(G, pd).ok());
      auto sp = deligne_splitting(G, eta, R);
      CHECK_MESSAGE(sp.ok(), (sp.notes.empty() ? "" : sp.notes[0]));
      if (!hr.ok) continue;
      // consequences of relative HR: both families of kernel modules are Lefschetz
      auto km = kernel_modules(G, eta);
      for (auto& K : km.over_B)
        if (!K.M.is_zero()) CHECK(check_kahler_package(K, local_samples(st.B, 3)).ok());
      for (auto& K : km.over_A)
        if (!K.M.is_zero()) CHECK(check_kahler_package(K, relative_samples(st, 3)).ok());
    }
  }
}
