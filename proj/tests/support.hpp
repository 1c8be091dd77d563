#pragma once

#include "lefmod/fixtures.hpp"
#include "lefmod/relative.hpp"

#include <string>
#include <vector>

namespace lefmod::testing {

struct Setup {
  Fixture fx;
  Subalgebra B;
  const GradedAlgebra& A() const { return *fx.MF.M.algebra(); }
  Elem ell() const { return cone_center(B); }
  Elem eta() const { return {1, Vec(A().dim(1), 1)}; }
  Vec y(const std::string& text) const { return parse_degree_one(A(), text); }
};

inline Setup fano_lattice() {
  Fixture fx = make_fixture("fano");
  Subalgebra B = subalgebra_from_gens(fx.MF.M.algebra(), fano_gens_lattice(*fx.MF.M.algebra()));
  return {fx, B};
}

inline Setup fano_sym() {
  Fixture fx = make_fixture("fano");
  Subalgebra B = subalgebra_from_gens(fx.MF.M.algebra(), fano_gens_sym(*fx.MF.M.algebra()));
  return {fx, B};
}

inline Setup u23_y1() {
  Fixture fx = make_fixture("u23");
  Subalgebra B = subalgebra_from_gens(fx.MF.M.algebra(), {parse_degree_one(*fx.MF.M.algebra(), "y1")});
  return {fx, B};
}

inline Setup full(const std::string& name) {
  Fixture fx = make_fixture(name);
  Subalgebra B = full_subalgebra(fx);
  return {fx, B};
}

/// Every Lefschetz setup used by the property tests.
inline std::vector<Setup> lefschetz_setups() {
  std::vector<Setup> out = {fano_lattice(), fano_sym(), u23_y1()};
  for (auto n : {"fano", "u23", "endC", "endH", "sqrt2", "lorentz3"}) out.push_back(full(n));
  return out;
}

}  // namespace lefmod::testing
