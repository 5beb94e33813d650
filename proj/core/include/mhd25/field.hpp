#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "mhd25/grid.hpp"

namespace mhd25 {

// Real scalar field on a SpectralGrid holding physical samples and/or
// Fourier coefficients. Whichever view is missing is produced on demand and
// cached; mutating accessors invalidate the other view. Instances are value
// types meant to be owned by one thread at a time (the cached views make a
// single instance unsafe to share concurrently), while the grid and its
// transform plans are immutable and freely shared.
class ScalarField {
 public:
  explicit ScalarField(std::shared_ptr<const SpectralGrid> grid);

  static ScalarField from_samples(std::shared_ptr<const SpectralGrid> grid,
                                  std::vector<double> samples);
  static ScalarField from_coeffs(std::shared_ptr<const SpectralGrid> grid,
                                 std::vector<std::complex<double>> coeffs);

  const SpectralGrid& grid() const { return *grid_; }
  const std::shared_ptr<const SpectralGrid>& grid_ptr() const { return grid_; }

  const std::vector<double>& samples() const;
  const std::vector<std::complex<double>>& coeffs() const;
  std::vector<double>& samples_mut();
  std::vector<std::complex<double>>& coeffs_mut();

  // box L2 norm: sqrt(integral of f^2) by lattice quadrature, equal to
  // L * (l2 norm of coefficients) by the Parseval identity
  double l2_norm() const;
  double mean() const;     // the (0,0) coefficient
  double max_abs() const;  // sup norm over samples

  ScalarField& operator+=(const ScalarField& other);
  ScalarField& operator-=(const ScalarField& other);
  ScalarField& operator*=(double c);
  // this += c * other, in spectral space
  ScalarField& axpy(double c, const ScalarField& other);

 private:
  std::shared_ptr<const SpectralGrid> grid_;
  mutable std::vector<double> vals_;
  mutable std::vector<std::complex<double>> cfs_;
  mutable bool has_vals_ = false;
  mutable bool has_cfs_ = false;
};

struct VectorField {
  ScalarField x, y;

  explicit VectorField(std::shared_ptr<const SpectralGrid> grid)
      : x(grid), y(grid) {}
  VectorField(ScalarField x_, ScalarField y_)
      : x(std::move(x_)), y(std::move(y_)) {}

  const SpectralGrid& grid() const { return x.grid(); }
  const std::shared_ptr<const SpectralGrid>& grid_ptr() const {
    return x.grid_ptr();
  }

  double l2_norm() const;  // sqrt(||x||^2 + ||y||^2)
  double max_abs() const;  // sup of the pointwise euclidean magnitude

  VectorField& operator+=(const VectorField& o);
  VectorField& operator-=(const VectorField& o);
  VectorField& operator*=(double c);
  VectorField& axpy(double c, const VectorField& o);
};

// L2 inner product (integral of f*g) via coefficients
double inner_product(const ScalarField& f, const ScalarField& g);

}  // namespace mhd25
