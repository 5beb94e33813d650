#pragma once

#include "mhd25/state.hpp"

namespace mhd25 {

struct Tendency {
  ScalarField da;
  VectorField du;
  ScalarField db;
};

// Full right-hand side of the perturbation system
//   da = -div u - (u . grad a + a div u)
//   du = -u . grad u + mu Lap u + (lambda+mu) grad div u
//        - A gamma (1+a)^{gamma-1} grad a - (1+b) grad b + M
//   db = -div u - (u . grad b + b div u)
// with M = I(a) * (pressure/magnetic gradients - viscous terms). Nonlinear
// products are formed pointwise and dealiased once per assembled component;
// the zero modes of da and db are pinned to the conservation-form value 0.
// The state must be dealiased going in.
Tendency rhs_full(const PerturbationState& s, const PhysicalParams& params);

// Same, with the linear viscous terms left out (they are integrated exactly
// by the stepper through the viscous semigroup).
Tendency rhs_explicit(const PerturbationState& s, const PhysicalParams& params);

// Quasilinear remainder F = I(a) grad phi - I(a) (mu Lap u + (lambda+mu)
// grad div u) of the good-unknown momentum equation.
VectorField forcing_F(const ScalarField& a, const VectorField& u,
                      const ScalarField& phi, const PhysicalParams& params);

struct ForcingPair {
  ScalarField f1, f2;
};

// Low-frequency source terms: f1 = -u . grad phi - 2 phi div u and
// f2 = Lambda^{-1} div(-(u . grad u) + F). f2 is mean-free by construction;
// f1's zero mode is whatever the products produce and is retained.
ForcingPair forcing_f1_f2(const PerturbationState& s,
                          const PhysicalParams& params);

// Exact linearization about the background, evaluated spectrally:
// da = -div u, du = mu Lap u + (lambda+mu) grad div u - grad(A gamma a + b),
// db = -div u.
Tendency linearize_rhs(const PerturbationState& s, const PhysicalParams& params);

}  // namespace mhd25
