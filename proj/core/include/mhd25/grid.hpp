#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

namespace mhd25 {

// Uniform n x n periodic grid on [0,L)^2 backed by FFTW real transforms.
//
// Spectral storage uses the half-plane real-to-complex layout: n rows of
// wrapped integer frequencies ky in [-n/2, n/2) by n/2+1 columns kx in
// [0, n/2]. The forward transform divides by n^2, so coefficients are the
// Fourier series coefficients of the trigonometric interpolant and the
// (0,0) entry is the mean of the samples.
//
// Plans are created once at construction (FFTW_ESTIMATE, so planning is
// deterministic) and are only read afterwards; executing transforms through
// the new-array interface is safe from multiple threads concurrently.
class SpectralGrid {
 public:
  SpectralGrid(int n, double box_length);
  ~SpectralGrid();
  SpectralGrid(const SpectralGrid&) = delete;
  SpectralGrid& operator=(const SpectralGrid&) = delete;

  int n;
  double box_length;

  int nkx() const { return n / 2 + 1; }
  std::size_t real_size() const { return std::size_t(n) * n; }
  std::size_t spec_size() const { return std::size_t(n) * nkx(); }
  double dx() const { return box_length / n; }
  double dxi() const;                  // 2*pi/L, smallest nonzero |xi|
  double nyquist() const;              // pi*n/L
  double dealias_cutoff() const;       // (2/3) * nyquist

  // integer frequency of spectral row iy, in [-n/2, n/2)
  int ky_of_row(int iy) const { return iy <= n / 2 - 1 ? iy : iy - n; }

  // wavenumber components and radius at spectral index (iy, ix)
  double xi1(int ix) const { return dxi() * ix; }
  double xi2(int iy) const { return dxi() * ky_of_row(iy); }
  double xi_abs2(int iy, int ix) const {
    double x1 = xi1(ix), x2 = xi2(iy);
    return x1 * x1 + x2 * x2;
  }

  // 2/3-rule survivor mask, true iff |xi_i| < (2/3)*nyquist for both
  // components; symmetric under xi -> -xi by construction
  bool dealias_pass(int iy, int ix) const { return mask_[idx(iy, ix)]; }

  // multiplicity of a stored half-plane coefficient in full-lattice sums
  // (interior kx columns represent a conjugate pair)
  double parseval_weight(int ix) const {
    return (ix == 0 || ix == n / 2) ? 1.0 : 2.0;
  }

  std::size_t idx(int iy, int ix) const {
    return std::size_t(iy) * nkx() + ix;
  }

  // forward: samples -> coefficients (normalized by 1/n^2); input untouched
  void forward(const double* in, std::complex<double>* out) const;
  // inverse: coefficients -> samples; input untouched
  void inverse(const std::complex<double>* in, double* out) const;

 private:
  struct Plans;
  std::unique_ptr<Plans> plans_;
  std::vector<unsigned char> mask_;
};

// Validates n (power of two, >= 8) and box_length (> 0, finite).
std::shared_ptr<const SpectralGrid> make_grid(int n, double box_length);

}  // namespace mhd25
