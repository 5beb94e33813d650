#include "mhd25/spectral_ops.hpp"

#include <cmath>

#include "mhd25/errors.hpp"

namespace mhd25 {

namespace {

// rms coefficient scale used by mean-free preconditions
double coeff_scale(const ScalarField& f) {
  const auto& c = f.coeffs();
  const auto& g = f.grid();
  double sum = 0.0;
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.nkx(); ++ix)
      sum += g.parseval_weight(ix) * std::norm(c[g.idx(iy, ix)]);
  return std::sqrt(sum);
}

void require_mean_free(const ScalarField& f, const char* who) {
  double m = std::abs(f.coeffs()[0]);
  if (m > 1e-10 * coeff_scale(f))
    throw ConfigError(std::string(who) +
                      ": input must be mean-free (zero mode " +
                      std::to_string(m) + ")");
}

// first-derivative multiplier component, zero on the unpaired Nyquist line
double dxi1(const SpectralGrid& g, int ix) {
  return ix == g.n / 2 ? 0.0 : g.xi1(ix);
}
double dxi2(const SpectralGrid& g, int iy) {
  return iy == g.n / 2 ? 0.0 : g.xi2(iy);
}

}  // namespace

VectorField gradient(const ScalarField& f) {
  const auto& g = f.grid();
  const auto& c = f.coeffs();
  std::vector<std::complex<double>> gx(g.spec_size()), gy(g.spec_size());
  for (int iy = 0; iy < g.n; ++iy) {
    double x2 = dxi2(g, iy);
    for (int ix = 0; ix < g.nkx(); ++ix) {
      auto i = g.idx(iy, ix);
      std::complex<double> iz(-c[i].imag(), c[i].real());  // i * c
      gx[i] = dxi1(g, ix) * iz;
      gy[i] = x2 * iz;
    }
  }
  return VectorField(ScalarField::from_coeffs(f.grid_ptr(), std::move(gx)),
                     ScalarField::from_coeffs(f.grid_ptr(), std::move(gy)));
}

ScalarField divergence(const VectorField& v) {
  const auto& g = v.grid();
  const auto& cx = v.x.coeffs();
  const auto& cy = v.y.coeffs();
  std::vector<std::complex<double>> out(g.spec_size());
  for (int iy = 0; iy < g.n; ++iy) {
    double x2 = dxi2(g, iy);
    for (int ix = 0; ix < g.nkx(); ++ix) {
      auto i = g.idx(iy, ix);
      std::complex<double> s = dxi1(g, ix) * cx[i] + x2 * cy[i];
      out[i] = std::complex<double>(-s.imag(), s.real());  // i * s
    }
  }
  return ScalarField::from_coeffs(v.grid_ptr(), std::move(out));
}

ScalarField laplacian(const ScalarField& f) {
  const auto& g = f.grid();
  const auto& c = f.coeffs();
  std::vector<std::complex<double>> out(g.spec_size());
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.nkx(); ++ix) {
      auto i = g.idx(iy, ix);
      out[i] = -g.xi_abs2(iy, ix) * c[i];
    }
  return ScalarField::from_coeffs(f.grid_ptr(), std::move(out));
}

VectorField laplacian(const VectorField& v) {
  return VectorField(laplacian(v.x), laplacian(v.y));
}

ScalarField fractional_laplacian(const ScalarField& f, double s) {
  if (s < 0.0) require_mean_free(f, "fractional_laplacian");
  const auto& g = f.grid();
  const auto& c = f.coeffs();
  std::vector<std::complex<double>> out(g.spec_size());
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.nkx(); ++ix) {
      auto i = g.idx(iy, ix);
      double r2 = g.xi_abs2(iy, ix);
      out[i] = r2 == 0.0 ? 0.0 : std::pow(r2, 0.5 * s) * c[i];
    }
  return ScalarField::from_coeffs(f.grid_ptr(), std::move(out));
}

ScalarField inverse_laplacian(const ScalarField& f) {
  require_mean_free(f, "inverse_laplacian");
  const auto& g = f.grid();
  const auto& c = f.coeffs();
  std::vector<std::complex<double>> out(g.spec_size());
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.nkx(); ++ix) {
      auto i = g.idx(iy, ix);
      double r2 = g.xi_abs2(iy, ix);
      out[i] = r2 == 0.0 ? 0.0 : -c[i] / r2;
    }
  return ScalarField::from_coeffs(f.grid_ptr(), std::move(out));
}

HelmholtzParts helmholtz_project(const VectorField& v) {
  const auto& g = v.grid();
  const auto& cx = v.x.coeffs();
  const auto& cy = v.y.coeffs();
  std::vector<std::complex<double>> px(g.spec_size()), py(g.spec_size()),
      qx(g.spec_size()), qy(g.spec_size());
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.nkx(); ++ix) {
      auto i = g.idx(iy, ix);
      double x1 = g.xi1(ix), x2 = g.xi2(iy);
      double r2 = x1 * x1 + x2 * x2;
      if (r2 == 0.0) {
        px[i] = cx[i];
        py[i] = cy[i];
        qx[i] = qy[i] = 0.0;
        continue;
      }
      // the unpaired Nyquist line carries no consistent sign for the odd
      // cross product xi1*xi2; use the symmetric (zero) choice there
      double c12 = (ix == g.n / 2 || iy == g.n / 2) ? 0.0 : x1 * x2;
      std::complex<double> q1 = (x1 * x1 * cx[i] + c12 * cy[i]) / r2;
      std::complex<double> q2 = (c12 * cx[i] + x2 * x2 * cy[i]) / r2;
      qx[i] = q1;
      qy[i] = q2;
      px[i] = cx[i] - q1;
      py[i] = cy[i] - q2;
    }
  auto gp = v.grid_ptr();
  return HelmholtzParts{
      VectorField(ScalarField::from_coeffs(gp, std::move(px)),
                  ScalarField::from_coeffs(gp, std::move(py))),
      VectorField(ScalarField::from_coeffs(gp, std::move(qx)),
                  ScalarField::from_coeffs(gp, std::move(qy)))};
}

ScalarField dealias(const ScalarField& f) {
  const auto& g = f.grid();
  std::vector<std::complex<double>> out = f.coeffs();
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.nkx(); ++ix)
      if (!g.dealias_pass(iy, ix)) out[g.idx(iy, ix)] = 0.0;
  return ScalarField::from_coeffs(f.grid_ptr(), std::move(out));
}

VectorField dealias(const VectorField& v) {
  return VectorField(dealias(v.x), dealias(v.y));
}

}  // namespace mhd25
