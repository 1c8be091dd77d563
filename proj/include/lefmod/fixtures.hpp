#pragma once

#include "lefmod/apolar.hpp"
#include "lefmod/matroid.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lefmod {

struct Fixture {
  std::string name;
  ModuleWithForm MF;  // over A
  Cone cone;          // generators of the cone of A
};

/// fano, u23, endC, endH, sqrt2, lorentz3, indefinite2
Fixture make_fixture(const std::string& name);
const std::vector<std::string>& fixture_names();

/// Regular module of the Mobius algebra, deg pairing, cone spanned by the atoms.
Fixture matroid_fixture(const std::string& name, const Matroid& m);
/// Regular module of the algebra cogenerated by f, cone the positive orthant.
Fixture apolar_fixture(const std::string& name, const std::vector<Term>& f, int n, int d);

/// B generated by the given degree-one elements, with those elements as cone generators.
Subalgebra subalgebra_from_gens(const AlgebraPtr& A, const std::vector<Vec>& gens1);
/// B generated by all of A^1 with the cone of A.
Subalgebra full_subalgebra(const Fixture& fx);

/// Parses "y1,y3+y5,2*y1-y3" into degree-one vectors of A.
std::vector<Vec> parse_degree_one_list(const GradedAlgebra& A, const std::string& text);
Vec parse_degree_one(const GradedAlgebra& A, const std::string& text);

// Fano setups used throughout the tests.
std::vector<Vec> fano_gens_lattice(const GradedAlgebra& A);  // y1, y3, y5, y7
std::vector<Vec> fano_gens_sym(const GradedAlgebra& A);      // y1, y3+y5, y2+y4+y6+y7

/// Lorentzian cubic with Hilbert function (1,3,3,1).
std::vector<Term> lorentz_cubic();

}  // namespace lefmod
