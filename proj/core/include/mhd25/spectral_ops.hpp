#pragma once

#include "mhd25/field.hpp"

namespace mhd25 {

// Exact spectral derivatives. The unpaired Nyquist line is annihilated by
// first-derivative multipliers (the symmetric choice for real data), which
// keeps gradient/divergence exactly skew-adjoint on the lattice. States kept
// under the 2/3 dealias mask never populate that line anyway.
VectorField gradient(const ScalarField& f);
ScalarField divergence(const VectorField& v);
ScalarField laplacian(const ScalarField& f);
VectorField laplacian(const VectorField& v);

// |xi|^s multiplier; the zero mode is annihilated for every s.
// For s < 0 the input must be mean-free (|f_hat(0)| <= 1e-10 * rms scale).
ScalarField fractional_laplacian(const ScalarField& f, double s);

// -|xi|^{-2} multiplier; requires a mean-free input like above, and the
// output is mean-free.
ScalarField inverse_laplacian(const ScalarField& f);

struct HelmholtzParts {
  VectorField solenoidal;  // P v, divergence-free
  VectorField potential;   // Q v, curl-free
};

// L2-orthogonal projection v = Pv + Qv; the zero mode is assigned to the
// solenoidal part.
HelmholtzParts helmholtz_project(const VectorField& v);

// Zero every coefficient outside the 2/3-rule mask. Idempotent.
ScalarField dealias(const ScalarField& f);
VectorField dealias(const VectorField& v);

}  // namespace mhd25
