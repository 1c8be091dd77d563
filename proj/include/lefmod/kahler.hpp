#pragma once

#include "lefmod/graded.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lefmod {

struct DegreeCheck {
  int k = 0;
  bool ok = true;
  std::optional<Vec> witness;  // lies in M^k (cokernel witnesses lie in M^{d-k})
  std::string note;
  std::size_t primitive_dim = 0;  // HR only
  Inertia inertia;                // HR only
};

struct HrCheck {
  bool precondition_ok = true;  // HL held at this point
  bool ok = false;
  std::vector<DegreeCheck> degrees;
};

struct PointCheck {
  Vec ell;
  bool hl_ok = false;
  std::vector<DegreeCheck> hl;
  HrCheck hr;
  bool ok() const { return hl_ok && hr.precondition_ok && hr.ok; }
};

inline constexpr const char* kSamplingCaveat = "sampled, not cone-exhaustive";

struct KahlerCertificate {
  std::string module_id;
  bool pd_ok = false;
  std::vector<DegreeCheck> pd;
  std::vector<PointCheck> points;
  std::string caveat = kSamplingCaveat;
  bool ok() const;
  /// First failing entry as text, empty when everything passed.
  std::string first_failure() const;
};

/// Each block Q^(i) has full rank; witness x in M^i with Q(x, -) = 0.
std::vector<DegreeCheck> check_pd(const ModuleWithForm& MF);
/// For k <= d/2, l^{d-2k} : M^k -> M^{d-k} is bijective.
std::vector<DegreeCheck> check_hl(const GradedModule& M, const Elem& ell);
/// (-1)^k Q(x, l^{d-2k} y) positive definite on ker l^{d-2k+1} ∩ M^k.
/// Refuses (precondition_ok = false) when HL fails at l.
HrCheck check_hr(const ModuleWithForm& MF, const Elem& ell);

/// Gram matrix of (-1)^k Q(x, l^{d-2k} y) on the canonical basis of primitives.
Mat hr_gram(const ModuleWithForm& MF, const Elem& ell, int k, Subspace* primitives = nullptr);

KahlerCertificate check_kahler_package(const ModuleWithForm& MF, const std::vector<Vec>& points,
                                       const std::string& module_id = "");
KahlerCertificate check_kahler_package(const ModuleWithForm& MF, const Cone& cone, std::size_t samples,
                                       const std::string& module_id = "",
                                       SampleStyle style = SampleStyle::generator_sums);

}  // namespace lefmod
