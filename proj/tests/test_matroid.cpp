#include "doctest.h"
#include "support.hpp"

#include "lefmod/matroid.hpp"

using namespace lefmod;
using namespace lefmod::testing;

namespace {

std::vector<Matroid> catalog() { return read_matroid_catalog(std::string(LEFMOD_TEST_DATA) + "/matroids_le6.txt"); }

}  // namespace

TEST_CASE("flat counts") {
  CHECK(flats(Matroid::uniform(2, 3)).counts() == std::vector<std::size_t>{1, 3, 1});
  CHECK(flats(Matroid::fano()).counts() == std::vector<std::size_t>{1, 7, 7, 1});
  CHECK(flats(Matroid::uniform(1, 1)).counts() == std::vector<std::size_t>{1, 1});
}

TEST_CASE("basis exchange is enforced") {
  CHECK_THROWS(Matroid::from_bases(4, {{0, 1}, {2, 3}}));
  CHECK_THROWS(Matroid::from_bases(3, {{0, 1}, {2}}));
  CHECK_NOTHROW(Matroid::from_bases(3, {{0, 1}, {0, 2}, {1, 2}}));
}

TEST_CASE("Mobius algebra products") {
  auto u11 = mobius_algebra(flats(Matroid::uniform(1, 1)));
  CHECK(u11.algebra->dims() == std::vector<std::size_t>{1, 1});
  CHECK(u11.algebra->label(1) == "y1");

  auto fano = flats(Matroid::fano());
  auto mob = mobius_algebra(fano);
  const GradedAlgebra& A = *mob.algebra;
  // two points span the line through them
  Vec y1 = parse_degree_one(A, "y1"), y2 = parse_degree_one(A, "y2");
  Vec p = A.multiply({1, y1}, {1, y2});
  std::size_t line = A.find_label("y123");
  CHECK(p == unit_vector(A.dim(2), A.local_index(line)));
  CHECK(is_zero(A.multiply({1, y1}, {1, y1})));
  // a point on a line: the product vanishes since ranks do not add
  CHECK(is_zero(A.multiply({1, y1}, A.basis_elem(line))));
  // a point off a line gives the top flat
  CHECK(A.multiply({1, parse_degree_one(A, "y4")}, A.basis_elem(line)) == Vec{1});
  CHECK(A.label(A.offset(3)) == "y1234567");
  CHECK(mob.deg == Vec{1});
  for (auto& ln : {"y345", "y156", "y123", "y367", "y257", "y147", "y246"}) CHECK_NOTHROW(A.find_label(ln));
}

TEST_CASE("top-heavy") {
  CHECK(top_heavy(flats(Matroid::uniform(2, 3))).ok);
  auto f = top_heavy(flats(Matroid::fano()));
  CHECK(f.ok);
  CHECK(f.counts == std::vector<std::size_t>{1, 7, 7, 1});
}

TEST_CASE("catalog of matroids on at most six elements") {
  auto cat = catalog();
  std::vector<std::size_t> per_n(7, 0);
  for (auto& m : cat) ++per_n[m.size()];
  CHECK(per_n == std::vector<std::size_t>{1, 2, 4, 8, 17, 38, 98});
  for (auto& m : cat) {
    auto lat = flats(m);
    auto th = top_heavy(lat);
    CHECK_MESSAGE(th.ok, th.violation);
    auto mob = mobius_algebra(lat);  // validated on construction
    CHECK(mob.algebra->dims() == lat.counts());
  }
}

TEST_CASE("Mobius algebra of F7 is Lefschetz") {
  auto f = make_fixture("fano");
  CHECK(f.MF.M.dims() == flats(Matroid::fano()).counts());
  CHECK(check_kahler_package(f.MF, f.cone, 5, "fano").ok());
}

TEST_CASE("bases text") {
  auto m = parse_bases_text("# U_{2,3}\n1 2\n1 3\n2 3\n");
  CHECK(m.size() == 3);
  CHECK(m.rank() == 2);
  CHECK(flats(m).counts() == std::vector<std::size_t>{1, 3, 1});
  auto loops = parse_bases_text("n 4\n1 2\n");
  CHECK(loops.size() == 4);
  CHECK_THROWS(parse_bases_text("1 2\n3\n"));
}
