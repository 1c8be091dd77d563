#include "lefmod/kahler.hpp"

namespace lefmod {

bool KahlerCertificate::ok() const {
  if (!pd_ok) return false;
  for (const auto& p : points)
    if (!p.ok()) return false;
  return true;
}

std::string KahlerCertificate::first_failure() const {
  for (const auto& c : pd)
    if (!c.ok) return "PD fails in degree " + std::to_string(c.k);
  for (std::size_t s = 0; s < points.size(); ++s) {
    const auto& p = points[s];
    for (const auto& c : p.hl)
      if (!c.ok) return "HL fails at sample " + std::to_string(s) + " in degree " + std::to_string(c.k);
    for (const auto& c : p.hr.degrees)
      if (!c.ok) return "HR fails at sample " + std::to_string(s) + " in degree " + std::to_string(c.k);
  }
  return {};
}

std::vector<DegreeCheck> check_pd(const ModuleWithForm& MF) {
  std::vector<DegreeCheck> out;
  const int d = MF.degree();
  for (int i = 0; i <= d; ++i) {
    const Mat& b = MF.Q.blocks[i];
    DegreeCheck c;
    c.k = i;
    std::size_t r = rank(b);
    c.ok = r == b.rows() && r == b.cols();
    if (!c.ok) {
      Subspace k = kernel(b.transpose());
      if (k.dim() > 0) {
        c.witness = k.vector(0);
        c.note = "rank defect " + std::to_string(b.rows() - r) + " in degree " + std::to_string(i);
      } else {
        c.note = "dim M^" + std::to_string(i) + " < dim M^" + std::to_string(d - i);
      }
    }
    out.push_back(c);
  }
  return out;
}

std::vector<DegreeCheck> check_hl(const GradedModule& M, const Elem& ell) {
  std::vector<DegreeCheck> out;
  const int d = M.degree();
  for (int k = 0; 2 * k <= d; ++k) {
    Mat L = M.power_action(ell, d - 2 * k, k);
    DegreeCheck c;
    c.k = k;
    std::size_t r = rank(L);
    c.ok = r == M.dim(k) && r == M.dim(d - k);
    if (!c.ok) {
      Subspace ker = kernel(L);
      if (ker.dim() > 0) {
        c.witness = ker.vector(0);
        c.note = "kernel";
      } else {
        auto extra = Subspace::full(M.dim(d - k)).complement_in(image(L));
        c.witness = extra.front();
        c.note = "cokernel";
      }
    }
    out.push_back(c);
  }
  return out;
}

Mat hr_gram(const ModuleWithForm& MF, const Elem& ell, int k, Subspace* primitives) {
  const GradedModule& M = MF.M;
  const int d = M.degree();
  Subspace P = kernel(M.power_action(ell, d - 2 * k + 1, k));
  Mat L = M.power_action(ell, d - 2 * k, k);
  Mat g = P.basis().transpose() * MF.Q.blocks[k] * L * P.basis();
  if (k % 2 != 0) g = -g;
  if (primitives) *primitives = P;
  return g;
}

HrCheck check_hr(const ModuleWithForm& MF, const Elem& ell) {
  HrCheck out;
  for (const auto& c : check_hl(MF.M, ell))
    if (!c.ok) {
      out.precondition_ok = false;
      out.ok = false;
      return out;
    }
  out.ok = true;
  const int d = MF.degree();
  for (int k = 0; 2 * k <= d; ++k) {
    Subspace P;
    Mat g = hr_gram(MF, ell, k, &P);
    auto sig = signature_with_witness(g);
    DegreeCheck c;
    c.k = k;
    c.primitive_dim = P.dim();
    c.inertia = sig.inertia;
    c.ok = sig.inertia.plus == P.dim();
    if (!c.ok) {
      c.witness = P.basis() * *sig.nonpositive_witness;
      c.note = "form not positive definite on primitives";
      out.ok = false;
    }
    out.degrees.push_back(c);
  }
  return out;
}

KahlerCertificate check_kahler_package(const ModuleWithForm& MF, const std::vector<Vec>& points,
                                       const std::string& module_id) {
  KahlerCertificate cert;
  cert.module_id = module_id;
  cert.pd = check_pd(MF);
  cert.pd_ok = true;
  for (const auto& c : cert.pd) cert.pd_ok = cert.pd_ok && c.ok;
  for (const auto& v : points) {
    PointCheck p;
    p.ell = v;
    Elem ell{1, v};
    p.hl = check_hl(MF.M, ell);
    p.hl_ok = true;
    for (const auto& c : p.hl) p.hl_ok = p.hl_ok && c.ok;
    p.hr = check_hr(MF, ell);
    cert.points.push_back(std::move(p));
  }
  return cert;
}

KahlerCertificate check_kahler_package(const ModuleWithForm& MF, const Cone& cone, std::size_t samples,
                                       const std::string& module_id, SampleStyle style) {
  return check_kahler_package(MF, sample_points(cone, style, samples), module_id);
}

}  // namespace lefmod
