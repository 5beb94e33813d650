#include "mhd25/rhs.hpp"

#include <cmath>
#include <vector>

#include "mhd25/errors.hpp"
#include "mhd25/spectral_ops.hpp"

namespace mhd25 {

namespace {

// Pressure head A gamma (1+a)^{gamma-1}, with the common gamma = 2 case kept
// free of pow() calls.
inline double pressure_head(double a, const PhysicalParams& p) {
  if (p.gamma == 2.0) return p.A * 2.0 * (1.0 + a);
  return p.A * p.gamma * std::pow(1.0 + a, p.gamma - 1.0);
}

Tendency assemble(const PerturbationState& s, const PhysicalParams& params,
                  bool with_viscous) {
  const auto& grid = s.grid_ptr();
  const std::size_t nr = grid->real_size();

  const VectorField grad_a = gradient(s.a);
  const VectorField grad_b = gradient(s.b);
  const ScalarField div_u = divergence(s.u);
  const VectorField grad_u1 = gradient(s.u.x);
  const VectorField grad_u2 = gradient(s.u.y);

  // Viscous operator L = mu Lap u + (lambda+mu) grad div u, needed in
  // physical space for M regardless of how the linear part is stepped.
  VectorField visc = laplacian(s.u);
  visc *= params.mu;
  VectorField grad_div = gradient(div_u);
  visc.axpy(params.lambda + params.mu, grad_div);

  const double* a = s.a.samples().data();
  const double* b = s.b.samples().data();
  const double* u1 = s.u.x.samples().data();
  const double* u2 = s.u.y.samples().data();
  const double* ax1 = grad_a.x.samples().data();
  const double* ax2 = grad_a.y.samples().data();
  const double* bx1 = grad_b.x.samples().data();
  const double* bx2 = grad_b.y.samples().data();
  const double* du = div_u.samples().data();
  const double* u11 = grad_u1.x.samples().data();
  const double* u12 = grad_u1.y.samples().data();
  const double* u21 = grad_u2.x.samples().data();
  const double* u22 = grad_u2.y.samples().data();
  const double* L1 = visc.x.samples().data();
  const double* L2 = visc.y.samples().data();

  std::vector<double> da_nl(nr), db_nl(nr), dut1(nr), dut2(nr);
  for (std::size_t i = 0; i < nr; ++i) {
    const double rho = 1.0 + a[i];
    if (!(rho > 0.0))
      throw ValidityError("density reached zero during tendency assembly", s.t);
    da_nl[i] = -(u1[i] * ax1[i] + u2[i] * ax2[i] + a[i] * du[i]);
    db_nl[i] = -(u1[i] * bx1[i] + u2[i] * bx2[i] + b[i] * du[i]);
    const double pres1 = pressure_head(a[i], params) * ax1[i] + (1.0 + b[i]) * bx1[i];
    const double pres2 = pressure_head(a[i], params) * ax2[i] + (1.0 + b[i]) * bx2[i];
    const double ia = a[i] / rho;
    dut1[i] = -(u1[i] * u11[i] + u2[i] * u12[i]) - pres1 + ia * (pres1 - L1[i]);
    dut2[i] = -(u1[i] * u21[i] + u2[i] * u22[i]) - pres2 + ia * (pres2 - L2[i]);
  }

  Tendency out{ScalarField::from_samples(grid, std::move(da_nl)),
               VectorField(ScalarField::from_samples(grid, std::move(dut1)),
                           ScalarField::from_samples(grid, std::move(dut2))),
               ScalarField::from_samples(grid, std::move(db_nl))};
  out.da = dealias(out.da);
  out.du = dealias(out.du);
  out.db = dealias(out.db);

  // Linear transport part, added spectrally so the zero mode of the mass and
  // induction tendencies is exactly the conservation-form value 0.
  out.da.axpy(-1.0, div_u);
  out.db.axpy(-1.0, div_u);
  out.da.coeffs_mut()[0] = 0.0;
  out.db.coeffs_mut()[0] = 0.0;
  if (with_viscous) out.du += visc;
  return out;
}

}  // namespace

Tendency rhs_full(const PerturbationState& s, const PhysicalParams& params) {
  return assemble(s, params, true);
}

Tendency rhs_explicit(const PerturbationState& s, const PhysicalParams& params) {
  return assemble(s, params, false);
}

VectorField forcing_F(const ScalarField& a, const VectorField& u,
                      const ScalarField& phi, const PhysicalParams& params) {
  const auto& grid = a.grid_ptr();
  const std::size_t nr = grid->real_size();

  const VectorField grad_phi = gradient(phi);
  VectorField visc = laplacian(u);
  visc *= params.mu;
  VectorField grad_div = gradient(divergence(u));
  visc.axpy(params.lambda + params.mu, grad_div);

  const double* av = a.samples().data();
  const double* p1 = grad_phi.x.samples().data();
  const double* p2 = grad_phi.y.samples().data();
  const double* L1 = visc.x.samples().data();
  const double* L2 = visc.y.samples().data();

  std::vector<double> f1(nr), f2(nr);
  for (std::size_t i = 0; i < nr; ++i) {
    const double ia = av[i] / (1.0 + av[i]);
    f1[i] = ia * (p1[i] - L1[i]);
    f2[i] = ia * (p2[i] - L2[i]);
  }
  VectorField out(ScalarField::from_samples(grid, std::move(f1)),
                  ScalarField::from_samples(grid, std::move(f2)));
  return dealias(out);
}

ForcingPair forcing_f1_f2(const PerturbationState& s,
                          const PhysicalParams& params) {
  const auto& grid = s.grid_ptr();
  const std::size_t nr = grid->real_size();

  const ScalarField phi = compute_phi(s.a, s.b, params);
  const VectorField grad_phi = gradient(phi);
  const ScalarField div_u = divergence(s.u);
  const VectorField grad_u1 = gradient(s.u.x);
  const VectorField grad_u2 = gradient(s.u.y);
  const VectorField F = forcing_F(s.a, s.u, phi, params);

  const double* ph = phi.samples().data();
  const double* p1 = grad_phi.x.samples().data();
  const double* p2 = grad_phi.y.samples().data();
  const double* u1 = s.u.x.samples().data();
  const double* u2 = s.u.y.samples().data();
  const double* du = div_u.samples().data();
  const double* u11 = grad_u1.x.samples().data();
  const double* u12 = grad_u1.y.samples().data();
  const double* u21 = grad_u2.x.samples().data();
  const double* u22 = grad_u2.y.samples().data();
  const double* F1 = F.x.samples().data();
  const double* F2 = F.y.samples().data();

  std::vector<double> f1(nr), w1(nr), w2(nr);
  for (std::size_t i = 0; i < nr; ++i) {
    f1[i] = -(u1[i] * p1[i] + u2[i] * p2[i]) - 2.0 * ph[i] * du[i];
    w1[i] = -(u1[i] * u11[i] + u2[i] * u12[i]) + F1[i];
    w2[i] = -(u1[i] * u21[i] + u2[i] * u22[i]) + F2[i];
  }
  ScalarField f1_field = dealias(ScalarField::from_samples(grid, std::move(f1)));
  VectorField w = dealias(VectorField(ScalarField::from_samples(grid, std::move(w1)),
                                      ScalarField::from_samples(grid, std::move(w2))));
  ScalarField f2_field = fractional_laplacian(divergence(w), -1.0);
  return ForcingPair{std::move(f1_field), std::move(f2_field)};
}

Tendency linearize_rhs(const PerturbationState& s, const PhysicalParams& params) {
  const ScalarField div_u = divergence(s.u);

  ScalarField da = div_u;
  da *= -1.0;
  ScalarField db = da;

  // grad(A gamma a + b)
  ScalarField head = s.a;
  head *= params.A * params.gamma;
  head += s.b;
  VectorField du = gradient(head);
  du *= -1.0;

  VectorField visc = laplacian(s.u);
  visc *= params.mu;
  VectorField grad_div = gradient(div_u);
  visc.axpy(params.lambda + params.mu, grad_div);
  du += visc;

  return Tendency{std::move(da), std::move(du), std::move(db)};
}

}  // namespace mhd25
