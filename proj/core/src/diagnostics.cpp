#include "mhd25/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "mhd25/errors.hpp"
#include "mhd25/spectral_ops.hpp"

namespace mhd25 {

namespace {

double lk_from_terms(const LittlewoodPaley::LkTerms& t) {
  return 3.0 * t.phi2 + 9.0 * t.d2 - t.cross + (2.0 / 3.0) * t.lphi2;
}

}  // namespace

double energy_functional_Lk(const LittlewoodPaley& lp, const ScalarField& phi,
                            const ScalarField& d, int j) {
  if (j > lp.j0())
    throw ConfigError("energy_functional_Lk is defined on low blocks j <= j0");
  const auto terms = lp.lk_terms(phi, d);
  if (j < lp.j_min()) return 0.0;  // annulus below the resolved lattice
  return lk_from_terms(terms[std::size_t(j - lp.j_min())]);
}

ConservationTotals conservation_report(const PerturbationState& s) {
  const double area = s.grid().box_length * s.grid().box_length;
  const StateHealth h = probe_state(s);
  return ConservationTotals{s.a.mean() * area, s.b.mean() * area, h.min_rho};
}

std::map<std::string, double> negative_index_panel(const PerturbationState& s,
                                                   const ScalarField& phi,
                                                   const LittlewoodPaley& lp,
                                                   double sigma) {
  std::map<std::string, double> out;
  out["a"] = lp.negative_index_seminorm(s.a, sigma);
  out["b"] = lp.negative_index_seminorm(s.b, sigma);
  out["phi"] = lp.negative_index_seminorm(phi, sigma);
  out["u"] = lp.negative_index_seminorm(s.u, sigma);
  return out;
}

DiagnosticsRecord build_record(const PerturbationState& s,
                               const PhysicalParams& params,
                               const LittlewoodPaley& lp, double sigma) {
  const ScalarField phi = compute_phi(s.a, s.b, params);
  const ScalarField d = compute_d(s.u);
  const HelmholtzParts parts = helmholtz_project(s.u);

  const BesovSpec b0{0.0, 2.0, 1.0};
  const BesovSpec b1{1.0, 2.0, 1.0};
  const BesovSpec b2{2.0, 2.0, 1.0};

  DiagnosticsRecord rec;
  rec.t = s.t;
  rec.l2_phi = phi.l2_norm();
  rec.l2_u = s.u.l2_norm();
  rec.l2_a = s.a.l2_norm();
  rec.l2_b = s.b.l2_norm();

  auto& p = rec.besov_panel;
  p[kPanelLowPhiUB0] =
      lp.besov_norm(phi, b0, Part::low) + lp.besov_norm(s.u, b0, Part::low);
  p[kPanelHighPhiB1] = lp.besov_norm(phi, b1, Part::high);
  p[kPanelHighUB0] = lp.besov_norm(s.u, b0, Part::high);
  p[kPanelLowPhiUB2] =
      lp.besov_norm(phi, b2, Part::low) + lp.besov_norm(s.u, b2, Part::low);
  p[kPanelHighUB2] = lp.besov_norm(s.u, b2, Part::high);

  p[kPanelXSupLowAQubB0] = lp.besov_norm(s.a, b0, Part::low) +
                           lp.besov_norm(parts.potential, b0, Part::low) +
                           lp.besov_norm(s.b, b0, Part::low);
  p[kPanelXSupHighAbB1] =
      lp.besov_norm(s.a, b1, Part::high) + lp.besov_norm(s.b, b1, Part::high);
  p[kPanelXSupPuQuhB0] = lp.besov_norm(parts.solenoidal, b0, Part::full) +
                         lp.besov_norm(parts.potential, b0, Part::high);
  p[kPanelXIntLowPhiQuB2] = lp.besov_norm(phi, b2, Part::low) +
                            lp.besov_norm(parts.potential, b2, Part::low);
  p[kPanelXIntHighPhiB1] = lp.besov_norm(phi, b1, Part::high);
  p[kPanelXIntPuQuhB2] = lp.besov_norm(parts.solenoidal, b2, Part::full) +
                         lp.besov_norm(parts.potential, b2, Part::high);

  // ||Lambda^{-1/2}(phi, u)||_{L2}, zero modes dropped by convention
  {
    auto drop_mean = [](ScalarField f) {
      f.coeffs_mut()[0] = 0.0;
      return f;
    };
    const double nphi =
        fractional_laplacian(drop_mean(phi), -0.5).l2_norm();
    const double nu1 =
        fractional_laplacian(drop_mean(s.u.x), -0.5).l2_norm();
    const double nu2 =
        fractional_laplacian(drop_mean(s.u.y), -0.5).l2_norm();
    p[kPanelLamM12PhiU] = nphi + std::hypot(nu1, nu2);
  }

  const auto terms = lp.lk_terms(phi, d);
  rec.lk_table.reserve(terms.size());
  for (std::size_t i = 0; i < terms.size(); ++i)
    rec.lk_table.emplace_back(lp.j_min() + int(i), lk_from_terms(terms[i]));

  const auto neg = negative_index_panel(s, phi, lp, sigma);
  rec.neg_idx_a = neg.at("a");
  rec.neg_idx_b = neg.at("b");
  rec.neg_idx_phi = neg.at("phi");
  rec.neg_idx_u = neg.at("u");

  const ConservationTotals totals = conservation_report(s);
  rec.total_a = totals.total_a;
  rec.total_b = totals.total_b;
  rec.min_rho = totals.min_rho;

  rec.lyapunov = lyapunov_functional(rec);
  return rec;
}

double lyapunov_functional(const DiagnosticsRecord& rec) {
  return rec.besov_panel.at(kPanelLowPhiUB0) +
         rec.besov_panel.at(kPanelHighPhiB1) +
         rec.besov_panel.at(kPanelHighUB0);
}

double solution_norm_X(const std::vector<DiagnosticsRecord>& history) {
  if (history.empty()) return 0.0;
  double sup1 = 0.0, sup2 = 0.0, sup3 = 0.0, integral = 0.0;
  for (std::size_t i = 0; i < history.size(); ++i) {
    const auto& p = history[i].besov_panel;
    sup1 = std::max(sup1, p.at(kPanelXSupLowAQubB0));
    sup2 = std::max(sup2, p.at(kPanelXSupHighAbB1));
    sup3 = std::max(sup3, p.at(kPanelXSupPuQuhB0));
    if (i > 0) {
      const auto& q = history[i - 1].besov_panel;
      const double dt = history[i].t - history[i - 1].t;
      const double now = p.at(kPanelXIntLowPhiQuB2) +
                         p.at(kPanelXIntHighPhiB1) + p.at(kPanelXIntPuQuhB2);
      const double prev = q.at(kPanelXIntLowPhiQuB2) +
                          q.at(kPanelXIntHighPhiB1) + q.at(kPanelXIntPuQuhB2);
      integral += 0.5 * dt * (now + prev);
    }
  }
  return sup1 + sup2 + sup3 + integral;
}

DecayFit fit_decay_exponent(const std::vector<std::pair<double, double>>& series,
                            double t_min, double t_max,
                            const std::string& quantity) {
  if (!(t_max > t_min) || t_min < 0.0)
    throw ConfigError("decay fit window must satisfy t_max > t_min >= 0");
  std::vector<double> xs, ys;
  for (const auto& [t, v] : series) {
    if (t < t_min || t > t_max) continue;
    if (!(v > 0.0) || !std::isfinite(v))
      throw ConfigError(
          "decay fit window contains non-positive values (noise floor)");
    xs.push_back(std::log1p(t));
    ys.push_back(std::log(v));
  }
  if (xs.size() < 20)
    throw ConfigError("decay fit needs at least 20 samples in the window");

  const double n = double(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx, dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw ConfigError("decay fit window has no time spread");

  DecayFit fit;
  fit.quantity = quantity;
  fit.t_min = t_min;
  fit.t_max = t_max;
  fit.n_samples = int(xs.size());
  fit.exponent = sxy / sxx;
  // a series that is constant to rounding accuracy fits itself perfectly;
  // without the guard the 0/0-shaped ratio turns summation dust into a
  // meaningless r^2
  const double flat_floor = n * 1e-26 * (1.0 + my * my);
  fit.r_squared = (syy > flat_floor) ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

}  // namespace mhd25
