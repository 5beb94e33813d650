#include "mhd25/state.hpp"

#include <cmath>

#include "mhd25/errors.hpp"
#include "mhd25/spectral_ops.hpp"

namespace mhd25 {

void PhysicalParams::validate() const {
  if (!(mu > 0.0)) throw ConfigError("params: mu must be > 0");
  if (!(nu() > 0.0)) throw ConfigError("params: lambda + 2*mu must be > 0");
  if (!(A > 0.0)) throw ConfigError("params: A must be > 0");
  if (!(gamma >= 1.0)) throw ConfigError("params: gamma must be >= 1");
}

ScalarField compute_phi(const ScalarField& a, const ScalarField& b,
                        const PhysicalParams& params) {
  const auto& va = a.samples();
  const auto& vb = b.samples();
  std::vector<double> out(va.size());
  const double off = params.A + 0.5;
  if (params.gamma == 2.0) {
    for (std::size_t i = 0; i < va.size(); ++i) {
      double ra = 1.0 + va[i], rb = 1.0 + vb[i];
      out[i] = params.A * ra * ra + 0.5 * rb * rb - off;
    }
  } else {
    for (std::size_t i = 0; i < va.size(); ++i) {
      double ra = 1.0 + va[i], rb = 1.0 + vb[i];
      out[i] = params.A * std::pow(ra, params.gamma) + 0.5 * rb * rb - off;
    }
  }
  return ScalarField::from_samples(a.grid_ptr(), std::move(out));
}

ScalarField compute_d(const VectorField& u) {
  // div u is mean-free by construction, so Lambda^{-1} is well defined
  return fractional_laplacian(divergence(u), -1.0);
}

VectorField compute_effective_velocity(const VectorField& u,
                                       const ScalarField& phi) {
  auto parts = helmholtz_project(u);
  ScalarField phi0 = phi;
  phi0.coeffs_mut()[0] = 0.0;  // Delta^{-1} sees only the mean-free part
  VectorField corr = gradient(inverse_laplacian(phi0));
  VectorField G = std::move(parts.potential);
  G.axpy(-0.5, corr);
  return G;
}

ScalarField compute_delta(const ScalarField& phi, const ScalarField& a,
                          const PhysicalParams& params) {
  ScalarField delta = phi;
  delta.axpy(-params.kappa(), a);
  return delta;
}

ScalarField rational_a(const ScalarField& phi, const ScalarField& delta,
                       const PhysicalParams& params) {
  ScalarField a = phi;
  a -= delta;
  a *= 1.0 / params.kappa();
  return a;
}

ScalarField rational_ia(const ScalarField& a, double c0) {
  const auto& va = a.samples();
  std::vector<double> out(va.size());
  for (std::size_t i = 0; i < va.size(); ++i) {
    double rho = 1.0 + va[i];
    if (!(rho >= c0))
      throw ValidityError("rational_ia: density fell below threshold", 0.0);
    out[i] = va[i] / rho;
  }
  return ScalarField::from_samples(a.grid_ptr(), std::move(out));
}

StateHealth probe_state(const PerturbationState& s) {
  StateHealth h{1.0, 0.0, true};
  const auto& va = s.a.samples();
  double mn = va.empty() ? 0.0 : va[0];
  double mx = 0.0;
  for (double x : va) {
    mn = std::min(mn, x);
    mx = std::max(mx, std::abs(x));
    if (!std::isfinite(x)) h.finite = false;
  }
  h.min_rho = 1.0 + mn;
  h.max_abs_a = mx;
  for (const auto* f : {&s.u.x, &s.u.y, &s.b})
    for (double x : f->samples())
      if (!std::isfinite(x)) {
        h.finite = false;
        break;
      }
  return h;
}

void validate_state(const PerturbationState& s, double c0) {
  StateHealth h = probe_state(s);
  if (!h.finite)
    throw ValidityError("state contains non-finite samples", s.t);
  if (h.min_rho < c0)
    throw ValidityError("density margin violated: min(1+a) = " +
                            std::to_string(h.min_rho) + " < " +
                            std::to_string(c0),
                        s.t);
}

}  // namespace mhd25
