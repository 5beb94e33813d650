#pragma once

#include "mhd25/field.hpp"

namespace mhd25 {

// Material constants. Defaults give pressure P(rho) = rho^2 and total sound
// speed sqrt(3) at the background (rho, u, m) = (1, 0, 1).
struct PhysicalParams {
  double mu = 1.0;      // shear viscosity
  double lambda = 0.0;  // second viscosity
  double A = 1.0;       // pressure amplitude, P(rho) = A rho^gamma
  double gamma = 2.0;   // adiabatic exponent

  double nu() const { return lambda + 2.0 * mu; }  // potential-part viscosity
  // combined pressure + magnetic stiffness of the linearization: the force
  // is -grad(A*gamma*a + b), and the good unknown relaxes at rate kappa/2
  double kappa() const { return A * gamma + 1.0; }

  void validate() const;  // mu > 0, nu > 0, A > 0, gamma >= 1
};

// Perturbation around (rho, u, m) = (1, 0, 1): a = rho - 1, velocity u,
// b = m - 1. Means of a and b are conserved by the dynamics and live in the
// (0,0) coefficients.
struct PerturbationState {
  ScalarField a;
  VectorField u;
  ScalarField b;
  double t = 0.0;

  explicit PerturbationState(std::shared_ptr<const SpectralGrid> grid)
      : a(grid), u(grid), b(grid) {}
  PerturbationState(ScalarField a_, VectorField u_, ScalarField b_, double t_)
      : a(std::move(a_)), u(std::move(u_)), b(std::move(b_)), t(t_) {}

  const SpectralGrid& grid() const { return a.grid(); }
  const std::shared_ptr<const SpectralGrid>& grid_ptr() const {
    return a.grid_ptr();
  }
};

// Good unknown phi = A(1+a)^gamma + (1+b)^2/2 - (A + 1/2); vanishes at the
// background and linearizes to A*gamma*a + b.
ScalarField compute_phi(const ScalarField& a, const ScalarField& b,
                        const PhysicalParams& params);

// Compressible scalar d = Lambda^{-1} div u, so that Qu = -Lambda^{-1} grad d.
ScalarField compute_d(const VectorField& u);

// Effective velocity G = Qu - (1/2) Delta^{-1} grad phi. Only the mean-free
// part of phi enters (Delta^{-1} ignores the zero mode by convention).
VectorField compute_effective_velocity(const VectorField& u,
                                       const ScalarField& phi);

// Transport unknown delta = phi - kappa * a (kappa = A*gamma + 1, i.e.
// phi - 3a at the defaults); its linearization vanishes identically.
ScalarField compute_delta(const ScalarField& phi, const ScalarField& a,
                          const PhysicalParams& params);

// Recover a = (phi - delta) / kappa.
ScalarField rational_a(const ScalarField& phi, const ScalarField& delta,
                       const PhysicalParams& params);

// I(a) = a / (1+a), the rational prefactor of the quasilinear remainders.
// Requires 1 + a bounded away from vacuum.
ScalarField rational_ia(const ScalarField& a, double c0 = 0.5);

struct StateHealth {
  double min_rho;   // min over the lattice of 1 + a
  double max_abs_a;
  bool finite;
};

StateHealth probe_state(const PerturbationState& s);

// Throws ValidityError when 1 + a dips below c0 or any sample is not finite.
void validate_state(const PerturbationState& s, double c0 = 0.5);

}  // namespace mhd25
