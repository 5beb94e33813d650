#include "mhd25/linear_oracle.hpp"

#include <cmath>
#include <map>

#include <Eigen/Core>
#include <unsupported/Eigen/MatrixFunctions>

#include "mhd25/grid.hpp"

namespace mhd25 {

Matrix2 mode_matrix2(double r, const PhysicalParams& params) {
  const double nu = params.nu();
  const double kappa = params.kappa();
  return Matrix2{{{0.0, -kappa * r}, {r, -nu * r * r}}};
}

Matrix3 mode_matrix3(double r, const PhysicalParams& params) {
  const double nu = params.nu();
  const double ag = params.A * params.gamma;
  return Matrix3{{{0.0, -r, 0.0}, {ag * r, -nu * r * r, r}, {0.0, -r, 0.0}}};
}

std::pair<std::complex<double>, std::complex<double>> acoustic_eigenvalues(
    double r, const PhysicalParams& params) {
  const double nu = params.nu();
  const double kappa = params.kappa();
  const double s = nu * r * r;        // -(sum of roots)
  const double p = kappa * r * r;     // product of roots
  const double disc = s * s - 4.0 * p;
  if (disc >= 0.0) {
    // Real pair. The fast root is cancellation-free; recover the slow one
    // from the product so it stays accurate deep in the parabolic regime.
    const double fast = 0.5 * (-s - std::sqrt(disc));
    const double slow = (fast != 0.0) ? p / fast : 0.0;
    return {std::complex<double>(slow, 0.0), std::complex<double>(fast, 0.0)};
  }
  const double im = 0.5 * std::sqrt(-disc);
  return {std::complex<double>(-0.5 * s, im), std::complex<double>(-0.5 * s, -im)};
}

namespace {

Eigen::Matrix3d to_eigen(const Matrix3& m) {
  Eigen::Matrix3d e;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) e(i, j) = m[i][j];
  return e;
}

}  // namespace

Matrix3 matrix_exponential3(const Matrix3& m, double t) {
  const Eigen::Matrix3d e = (t * to_eigen(m)).exp();
  Matrix3 out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i][j] = e(i, j);
  return out;
}

PerturbationState evolve_linear_exact(const PerturbationState& s,
                                      const PhysicalParams& params,
                                      double duration) {
  const auto& grid = s.grid_ptr();
  const int n = grid->n;
  const int nkx = grid->nkx();
  const double mu = params.mu;
  const double lm = params.lambda + params.mu;
  const double ag = params.A * params.gamma;

  PerturbationState out = s;
  out.t = s.t + duration;
  auto* ca = out.a.coeffs_mut().data();
  auto* cu1 = out.u.x.coeffs_mut().data();
  auto* cu2 = out.u.y.coeffs_mut().data();
  auto* cb = out.b.coeffs_mut().data();

  // Exponentials are shared across modes with the same (effective, full)
  // radius pair; cache them.
  std::map<std::pair<double, double>, Eigen::Matrix3d> cache;

  for (int iy = 0; iy < n; ++iy) {
    const double x2f = grid->xi2(iy);
    const double x2e = (iy == n / 2) ? 0.0 : x2f;
    for (int ix = 0; ix < nkx; ++ix) {
      const double x1f = grid->xi1(ix);
      const double x1e = (ix == n / 2) ? 0.0 : x1f;
      const std::size_t k = grid->idx(iy, ix);
      const double rf2 = x1f * x1f + x2f * x2f;
      const double re2 = x1e * x1e + x2e * x2e;
      const double heat = std::exp(-mu * rf2 * duration);

      if (re2 == 0.0) {
        // No derivative coupling survives here (zero mode or pure Nyquist
        // line): a and b are frozen, u sees only the Laplacian.
        cu1[k] *= heat;
        cu2[k] *= heat;
        continue;
      }

      const double re = std::sqrt(re2);
      const std::complex<double> iunit(0.0, 1.0);
      const std::complex<double> proj = x1e * cu1[k] + x2e * cu2[k];  // xi_e . u
      const std::complex<double> d = iunit * proj / re;
      const std::complex<double> perp1 = cu1[k] - x1e * proj / re2;
      const std::complex<double> perp2 = cu2[k] - x2e * proj / re2;

      auto it = cache.find({re2, rf2});
      if (it == cache.end()) {
        Eigen::Matrix3d m;
        m << 0.0, -re, 0.0,
             ag * re, -(mu * rf2 + lm * re2), re,
             0.0, -re, 0.0;
        it = cache.emplace(std::make_pair(re2, rf2),
                           (duration * m).exp()).first;
      }
      const Eigen::Matrix3d& E = it->second;

      const std::complex<double> v0 = ca[k];
      const std::complex<double> v1 = d;
      const std::complex<double> v2 = cb[k];
      const std::complex<double> na = E(0, 0) * v0 + E(0, 1) * v1 + E(0, 2) * v2;
      const std::complex<double> nd = E(1, 0) * v0 + E(1, 1) * v1 + E(1, 2) * v2;
      const std::complex<double> nb = E(2, 0) * v0 + E(2, 1) * v1 + E(2, 2) * v2;

      ca[k] = na;
      cb[k] = nb;
      // u = heat-decayed solenoidal part plus -i xi_e / |xi_e| * d
      cu1[k] = perp1 * heat - iunit * (x1e / re) * nd;
      cu2[k] = perp2 * heat - iunit * (x2e / re) * nd;
    }
  }
  return out;
}

PerturbationState evolve_heat(const PerturbationState& s,
                              const PhysicalParams& params, double duration) {
  const auto& grid = s.grid_ptr();
  const int n = grid->n;
  const int nkx = grid->nkx();

  PerturbationState out = s;
  out.t = s.t + duration;
  auto* ca = out.a.coeffs_mut().data();
  auto* cu1 = out.u.x.coeffs_mut().data();
  auto* cu2 = out.u.y.coeffs_mut().data();
  auto* cb = out.b.coeffs_mut().data();
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < nkx; ++ix) {
      const std::size_t k = grid->idx(iy, ix);
      const double f = std::exp(-params.mu * grid->xi_abs2(iy, ix) * duration);
      ca[k] *= f;
      cu1[k] *= f;
      cu2[k] *= f;
      cb[k] *= f;
    }
  }
  return out;
}

}  // namespace mhd25
