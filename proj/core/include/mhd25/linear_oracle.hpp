#pragma once

#include <array>
#include <complex>
#include <utility>

#include "mhd25/state.hpp"

namespace mhd25 {

using Matrix2 = std::array<std::array<double, 2>, 2>;
using Matrix3 = std::array<std::array<double, 3>, 3>;

// Symbol of the linearized (phi, d) pair at radius r:
//   phi' = -kappa r d,  d' = r phi - nu r^2 d,
// kappa = A gamma + 1, nu = lambda + 2 mu.
Matrix2 mode_matrix2(double r, const PhysicalParams& params);

// Symbol of the linearized potential triple (a, d, b) at radius r:
//   a' = -r d,  d' = A gamma r a + r b - nu r^2 d,  b' = -r d.
// Has the conserved combination a - b (left kernel) and the stationary
// direction (1, 0, -A gamma) (right kernel); the two nonzero eigenvalues
// coincide with the acoustic pair below.
Matrix3 mode_matrix3(double r, const PhysicalParams& params);

// Roots of lambda^2 + nu r^2 lambda + kappa r^2 = 0. The slow root (larger
// real part, or positive imaginary part in the conjugate regime) comes first.
std::pair<std::complex<double>, std::complex<double>> acoustic_eigenvalues(
    double r, const PhysicalParams& params);

// exp(t * m), computed with a scaled-and-squared Pade approximant.
Matrix3 matrix_exponential3(const Matrix3& m, double t);

// Advances the state by `duration` under the exact flow of the discrete
// linearized system: solenoidal velocity decays by the mu-heat semigroup,
// the potential triple by exp(t * mode_matrix3) per mode. Derivative
// couplings follow the same Nyquist-line convention as the spectral
// operators, so this is the exact solution of what the nonlinear code
// integrates when the quadratic terms are dropped.
PerturbationState evolve_linear_exact(const PerturbationState& s,
                                      const PhysicalParams& params,
                                      double duration);

// Advances every component by the scalar heat semigroup exp(mu t Lap).
// Reference dynamics for decay-rate fitting.
PerturbationState evolve_heat(const PerturbationState& s,
                              const PhysicalParams& params, double duration);

}  // namespace mhd25
