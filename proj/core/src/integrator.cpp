#include "mhd25/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "mhd25/errors.hpp"
#include "mhd25/rhs.hpp"

namespace mhd25 {

void StepControl::validate() const {
  if (!(cfl_advective > 0.0) || cfl_advective > 1.0)
    throw ConfigError("cfl_advective must lie in (0, 1]");
  if (!(dt_max > 0.0)) throw ConfigError("dt_max must be positive");
  if (!(c0 > 0.0) || c0 >= 1.0) throw ConfigError("c0 must lie in (0, 1)");
}

double compute_dt(const PerturbationState& s, const PhysicalParams& params,
                  const StepControl& ctl) {
  const auto& a = s.a.samples();
  const auto& b = s.b.samples();
  double c2max = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double rho = 1.0 + a[i];
    const double m = 1.0 + b[i];
    double head = (params.gamma == 2.0) ? params.A * 2.0 * rho
                                        : params.A * params.gamma *
                                              std::pow(rho, params.gamma - 1.0);
    c2max = std::max(c2max, head + m * m / rho);
  }
  const double speed = s.u.max_abs() + std::sqrt(c2max);
  return std::min(ctl.dt_max, ctl.cfl_advective * s.grid().dx() / speed);
}

namespace {

// E(s)u per mode: heat factor on the part orthogonal to the effective
// wavevector, heat plus (lambda+mu)|xi_e|^2 on the parallel part. Matches
// the Nyquist-line convention of the first-derivative multipliers so that
// the semigroup is the exact flow of the discrete viscous operator.
void apply_semigroup(VectorField& u, const PhysicalParams& params, double s) {
  const auto& grid = u.grid();
  const int n = grid.n;
  const int nkx = grid.nkx();
  const double lm = params.lambda + params.mu;
  auto* c1 = u.x.coeffs_mut().data();
  auto* c2 = u.y.coeffs_mut().data();
  for (int iy = 0; iy < n; ++iy) {
    const double x2f = grid.xi2(iy);
    const double x2e = (iy == n / 2) ? 0.0 : x2f;
    for (int ix = 0; ix < nkx; ++ix) {
      const double x1f = grid.xi1(ix);
      const double x1e = (ix == n / 2) ? 0.0 : x1f;
      const std::size_t k = grid.idx(iy, ix);
      const double rf2 = x1f * x1f + x2f * x2f;
      const double re2 = x1e * x1e + x2e * x2e;
      const double heat = std::exp(-params.mu * rf2 * s);
      if (re2 == 0.0) {
        c1[k] *= heat;
        c2[k] *= heat;
        continue;
      }
      const double par = std::exp(-(params.mu * rf2 + lm * re2) * s);
      const std::complex<double> proj =
          (x1e * c1[k] + x2e * c2[k]) / re2;  // (xi_e . u)/|xi_e|^2
      c1[k] = (c1[k] - x1e * proj) * heat + x1e * proj * par;
      c2[k] = (c2[k] - x2e * proj) * heat + x2e * proj * par;
    }
  }
}

// SSP-RK3 tableau with non-decreasing abscissae (0, 2/3, 2/3). The classic
// (0, 1, 1/2) Shu-Osher form would need E(-dt/2) to pull stage data back in
// time; on strongly damped modes that factor is exponentially large and
// wrecks accuracy (and, through the undamped a/b coupling, stability) once
// nu*|xi|^2*dt exceeds a few units. With forward-only propagation every
// semigroup application stays contractive. Order conditions at c=(0,2/3,2/3):
// b=(1/4, 3/16, 9/16), a21=2/3, a32=4/9, hence the Shu-Osher weights below.
PerturbationState step_ssprk3(const PerturbationState& s, double dt,
                              const PhysicalParams& params,
                              std::vector<PerturbationState>* stages) {
  const Tendency n0 = rhs_explicit(s, params);

  // stage 1 at t + 2dt/3: u1 = E(2dt/3)(u0 + 2dt/3 N0)
  PerturbationState s1 = s;
  s1.t = s.t + 2.0 / 3.0 * dt;
  s1.a.axpy(2.0 / 3.0 * dt, n0.da);
  s1.b.axpy(2.0 / 3.0 * dt, n0.db);
  s1.u.axpy(2.0 / 3.0 * dt, n0.du);
  apply_semigroup(s1.u, params, 2.0 / 3.0 * dt);

  const Tendency n1 = rhs_explicit(s1, params);

  // stage 2, also at t + 2dt/3:
  //   u2 = 2/3 E(2dt/3) u0 + 1/3 u1 + 4dt/9 N1
  PerturbationState s2 = s;
  s2.t = s.t + 2.0 / 3.0 * dt;
  s2.a *= 2.0 / 3.0;
  s2.a.axpy(1.0 / 3.0, s1.a);
  s2.a.axpy(4.0 / 9.0 * dt, n1.da);
  s2.b *= 2.0 / 3.0;
  s2.b.axpy(1.0 / 3.0, s1.b);
  s2.b.axpy(4.0 / 9.0 * dt, n1.db);
  apply_semigroup(s2.u, params, 2.0 / 3.0 * dt);
  s2.u *= 2.0 / 3.0;
  s2.u.axpy(1.0 / 3.0, s1.u);
  s2.u.axpy(4.0 / 9.0 * dt, n1.du);

  const Tendency n2 = rhs_explicit(s2, params);

  // final: u = E(dt/3)(37/64 E(2dt/3) u0 + 5dt/32 E(2dt/3) N0
  //                    + 27/64 u2 + 9dt/16 N2),
  //        a = 37/64 a0 + 5dt/32 N0 + 27/64 a2 + 9dt/16 N2
  PerturbationState out = s;
  out.t = s.t + dt;
  out.a *= 37.0 / 64.0;
  out.a.axpy(5.0 / 32.0 * dt, n0.da);
  out.a.axpy(27.0 / 64.0, s2.a);
  out.a.axpy(9.0 / 16.0 * dt, n2.da);
  out.b *= 37.0 / 64.0;
  out.b.axpy(5.0 / 32.0 * dt, n0.db);
  out.b.axpy(27.0 / 64.0, s2.b);
  out.b.axpy(9.0 / 16.0 * dt, n2.db);
  out.u *= 37.0 / 64.0;
  out.u.axpy(5.0 / 32.0 * dt, n0.du);
  apply_semigroup(out.u, params, 2.0 / 3.0 * dt);
  out.u.axpy(27.0 / 64.0, s2.u);
  out.u.axpy(9.0 / 16.0 * dt, n2.du);
  apply_semigroup(out.u, params, dt / 3.0);

  if (stages) {
    stages->clear();
    stages->push_back(std::move(s1));
    stages->push_back(std::move(s2));
  }
  return out;
}

PerturbationState step_rk2(const PerturbationState& s, double dt,
                           const PhysicalParams& params,
                           std::vector<PerturbationState>* stages) {
  const Tendency n0 = rhs_explicit(s, params);

  PerturbationState s1 = s;
  s1.t = s.t + dt;
  s1.a.axpy(dt, n0.da);
  s1.b.axpy(dt, n0.db);
  s1.u.axpy(dt, n0.du);
  apply_semigroup(s1.u, params, dt);

  const Tendency n1 = rhs_explicit(s1, params);

  // Heun: u = E(dt)(u0 + dt/2 N0) + dt/2 N1
  PerturbationState out = s;
  out.t = s.t + dt;
  out.a.axpy(0.5 * dt, n0.da);
  out.a.axpy(0.5 * dt, n1.da);
  out.b.axpy(0.5 * dt, n0.db);
  out.b.axpy(0.5 * dt, n1.db);
  out.u.axpy(0.5 * dt, n0.du);
  apply_semigroup(out.u, params, dt);
  out.u.axpy(0.5 * dt, n1.du);

  if (stages) {
    stages->clear();
    stages->push_back(std::move(s1));
  }
  return out;
}

}  // namespace

PerturbationState step(const PerturbationState& s, double dt,
                       const PhysicalParams& params, const StepControl& ctl,
                       std::vector<PerturbationState>* stages) {
  if (!(dt > 0.0)) throw ConfigError("step requires dt > 0");
  const double advisory = compute_dt(s, params, ctl);
  if (dt > advisory * (1.0 + 1e-9))
    std::fprintf(stderr,
                 "warning: dt = %.6g exceeds advisory %.6g at t = %.6g\n", dt,
                 advisory, s.t);
  PerturbationState out = (ctl.scheme == Scheme::if_ssprk3)
                              ? step_ssprk3(s, dt, params, stages)
                              : step_rk2(s, dt, params, stages);
  validate_state(out, ctl.c0);
  return out;
}

PerturbationState integrate(PerturbationState s, const PhysicalParams& params,
                            const StepControl& ctl, int observer_stride,
                            const Observer& observer) {
  ctl.validate();
  params.validate();
  if (observer_stride < 1) throw ConfigError("observer_stride must be >= 1");
  if (ctl.t_end < s.t)
    throw ConfigError("t_end precedes the state's current time");

  if (observer) observer(s, 0);
  const double tol = 1e-12 * std::max(1.0, std::abs(ctl.t_end));
  std::size_t k = 0;
  while (s.t < ctl.t_end - tol) {
    double dt = std::min(compute_dt(s, params, ctl), ctl.t_end - s.t);
    const bool landing = (s.t + dt >= ctl.t_end - tol);
    if (landing) dt = ctl.t_end - s.t;
    s = step(s, dt, params, ctl);
    ++k;
    if (landing) s.t = ctl.t_end;
    if (observer && (landing || k % std::size_t(observer_stride) == 0))
      observer(s, k);
  }
  return s;
}

}  // namespace mhd25
