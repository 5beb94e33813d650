#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "doctest.h"
#include "mhd25/diagnostics.hpp"
#include "mhd25/errors.hpp"
#include "mhd25/littlewood_paley.hpp"
#include "test_helpers.hpp"

using namespace mhd25;
using namespace testutil;

TEST_CASE("low-frequency energy blocks are pinned on single modes") {
  // L = 32 pi puts the (1,0) mode at |xi| = 1/16, block j = -5
  auto grid = make_grid(64, 32.0 * kPi);
  const double dxi = grid->dxi();
  CHECK(dxi == doctest::Approx(1.0 / 16.0).epsilon(1e-14));
  const LittlewoodPaley lp(grid, build_cutoffs(), -3);
  REQUIRE(lp.j_min() <= -5);

  const ScalarField f = sample_field(
      grid, [dxi](double x, double) { return std::sin(dxi * x); });
  const ScalarField zero(grid);
  const double l2 = 32.0 * kPi / std::sqrt(2.0);
  const double r = dxi;

  // phi-only block: 3 ||phi_j||^2 + (2/3) ||Lambda phi_j||^2
  const double w1 = ref_phi(std::ldexp(r, 5));  // weight in block -5
  const double expect_m5 =
      3.0 * w1 * w1 * l2 * l2 + (2.0 / 3.0) * r * r * w1 * w1 * l2 * l2;
  CHECK(energy_functional_Lk(lp, f, zero, -5) ==
        doctest::Approx(expect_m5).epsilon(1e-11));

  // d-only block: 9 ||d_j||^2
  const double expect_d = 9.0 * w1 * w1 * l2 * l2;
  CHECK(energy_functional_Lk(lp, zero, f, -5) ==
        doctest::Approx(expect_d).epsilon(1e-11));

  // blocks above the threshold are rejected, empty blocks vanish
  CHECK_THROWS_AS((void)energy_functional_Lk(lp, f, zero, -2), ConfigError);
  CHECK(energy_functional_Lk(lp, f, zero, lp.j_min()) >= 0.0);
}

TEST_CASE("the energy functional is positive definite") {
  auto grid = make_grid(32, 16.0 * kPi);
  const LittlewoodPaley lp(grid, build_cutoffs(), 0);
  for (unsigned long long seed = 1; seed <= 20; ++seed) {
    const PerturbationState s =
        random_state(32, 16.0 * kPi, 1e-2, 1.0, seed);
    const ScalarField phi = s.a;  // any mean-free pair will do
    const ScalarField d = s.b;
    for (int j = lp.j_min(); j <= lp.j0(); ++j) {
      const double lk = energy_functional_Lk(lp, phi, d, j);
      CHECK(lk >= 0.0);
      const auto terms = lp.lk_terms(phi, d)[j - lp.j_min()];
      if (terms.phi2 + terms.d2 > 0.0) CHECK(lk > 0.0);
    }
  }
}

TEST_CASE("the energy functional is equivalent to the block L2 pair") {
  auto grid = make_grid(64, 64.0);
  const LittlewoodPaley lp(grid, build_cutoffs(), 0);
  const PerturbationState s = random_state(64, 64.0, 1e-3, 0.3, 13);
  const ScalarField phi = s.a;
  const ScalarField d = s.b;
  const auto terms = lp.lk_terms(phi, d);
  for (int j = lp.j_min(); j <= lp.j0(); ++j) {
    if (std::ldexp(1.0, j) > 0.25) continue;
    const auto& tk = terms[j - lp.j_min()];
    const double base = tk.phi2 + tk.d2;
    if (base <= 0.0) continue;
    const double lk = energy_functional_Lk(lp, phi, d, j);
    const double ratio = lk / base;
    CHECK(ratio > 1.5);
    CHECK(ratio < 10.0);
  }
}

TEST_CASE("conservation report returns box integrals and density floor") {
  auto grid = make_grid(32, 2.0 * kPi);
  PerturbationState s(grid);
  s.a = sample_field(grid, [](double x, double) { return 0.01 + 0.1 * std::sin(x); });
  s.b = sample_field(grid, [](double, double y) { return -0.02 + 0.05 * std::cos(y); });
  const auto rep = conservation_report(s);
  const double vol = 2.0 * kPi * 2.0 * kPi;
  CHECK(rep.total_a == doctest::Approx(0.01 * vol).epsilon(1e-12));
  CHECK(rep.total_b == doctest::Approx(-0.02 * vol).epsilon(1e-12));
  CHECK(rep.min_rho == doctest::Approx(1.0 + 0.01 - 0.1).epsilon(1e-9));
}

TEST_CASE("decay fitter recovers synthetic exponents exactly") {
  std::vector<std::pair<double, double>> series;
  for (double t = 0.0; t <= 40.0; t += 0.5)
    series.emplace_back(t, 2.0 * std::pow(1.0 + t, -0.5));
  const DecayFit fit = fit_decay_exponent(series, 1.0, 40.0, "synthetic");
  CHECK(fit.exponent == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.quantity == "synthetic");
  CHECK(fit.n_samples == 79);

  std::vector<std::pair<double, double>> flat;
  for (double t = 0.0; t <= 40.0; t += 0.5) flat.emplace_back(t, 3.25);
  const DecayFit fit0 = fit_decay_exponent(flat, 1.0, 40.0, "flat");
  CHECK(std::fabs(fit0.exponent) < 1e-12);
  CHECK(fit0.r_squared == 1.0);

  CHECK_THROWS_AS(
      (void)fit_decay_exponent(series, 39.0, 40.0, "narrow"),  // < 20 samples
      ConfigError);
  CHECK_THROWS_AS((void)fit_decay_exponent(series, 40.0, 1.0, "inverted"),
                  ConfigError);
  std::vector<std::pair<double, double>> negative = series;
  negative[30].second = 0.0;
  CHECK_THROWS_AS((void)fit_decay_exponent(negative, 1.0, 40.0, "nonpositive"),
                  ConfigError);
}

// Exact per-mode heat flow du/dt = Lap u on the L=256 lattice, seeded with
// flat low-frequency power (|u_hat|^2 constant on |xi| <= 1, the sigma = 1
// profile). The L2 norm then decays like (1+t)^{-1/2} on [10, 200]; the
// fitter must recover that without any time stepping involved.
TEST_CASE("decay fitter matches the exact lattice heat flow") {
  const double L = 256.0;
  const double dxi = 2.0 * kPi / L;
  const int kmax = int(1.0 / dxi);  // |xi| <= 1
  std::vector<double> r2s;
  for (int kx = -kmax; kx <= kmax; ++kx)
    for (int ky = -kmax; ky <= kmax; ++ky) {
      if (kx == 0 && ky == 0) continue;
      const double r2 = dxi * dxi * double(kx * kx + ky * ky);
      if (r2 <= 1.0) r2s.push_back(r2);
    }
  std::vector<std::pair<double, double>> series;
  for (double t = 0.0; t <= 200.0; t += 1.0) {
    double sum = 0.0;
    for (double r2 : r2s) sum += std::exp(-2.0 * r2 * t);
    series.emplace_back(t, std::sqrt(sum));
  }
  const DecayFit fit = fit_decay_exponent(series, 10.0, 200.0, "heat");
  CHECK(fit.exponent == doctest::Approx(-0.5).epsilon(0.2));  // +-0.1 absolute
  CHECK(std::fabs(fit.exponent + 0.5) <= 0.1);
  CHECK(fit.r_squared >= 0.95);
}

TEST_CASE("solution norm accumulates running maxima plus time integrals") {
  DiagnosticsRecord r0{};
  r0.t = 0.0;
  r0.besov_panel[kPanelXSupLowAQubB0] = 5.0;
  r0.besov_panel[kPanelXSupHighAbB1] = 1.0;
  r0.besov_panel[kPanelXSupPuQuhB0] = 2.0;
  r0.besov_panel[kPanelXIntLowPhiQuB2] = 0.5;
  r0.besov_panel[kPanelXIntHighPhiB1] = 0.25;
  r0.besov_panel[kPanelXIntPuQuhB2] = 0.25;

  DiagnosticsRecord r1 = r0;
  r1.t = 2.0;
  r1.besov_panel[kPanelXSupLowAQubB0] = 3.0;  // decays: sup must stay at 5

  std::vector<DiagnosticsRecord> hist{r0};
  const double x0 = solution_norm_X(hist);
  CHECK(x0 == doctest::Approx(8.0).epsilon(1e-12));  // 5 + 1 + 2, no integral yet

  hist.push_back(r1);
  // sup part unchanged at 8; trapezoid of the constant integrand 1.0 over [0,2]
  const double x1 = solution_norm_X(hist);
  CHECK(x1 == doctest::Approx(8.0 + 2.0).epsilon(1e-12));
  CHECK(x1 >= x0);
}

TEST_CASE("records expose the full panel and the Lyapunov sum") {
  auto grid = make_grid(32, 2.0 * kPi);
  const PerturbationState s = random_state(32, 2.0 * kPi, 1e-3, 4.0, 16);
  const LittlewoodPaley lp(grid, build_cutoffs(), 0);
  const DiagnosticsRecord rec = build_record(s, PhysicalParams{}, lp, 1.0);

  for (const char* key :
       {kPanelLowPhiUB0, kPanelHighPhiB1, kPanelHighUB0, kPanelLowPhiUB2,
        kPanelHighUB2, kPanelXSupLowAQubB0, kPanelXSupHighAbB1,
        kPanelXSupPuQuhB0, kPanelXIntLowPhiQuB2, kPanelXIntHighPhiB1,
        kPanelXIntPuQuhB2, kPanelLamM12PhiU})
    CHECK(rec.besov_panel.count(key) == 1);

  CHECK(rec.lyapunov ==
        doctest::Approx(rec.besov_panel.at(kPanelLowPhiUB0) +
                        rec.besov_panel.at(kPanelHighPhiB1) +
                        rec.besov_panel.at(kPanelHighUB0))
            .epsilon(1e-12));
  CHECK(rec.neg_idx_a > 0.0);
  CHECK(rec.min_rho > 0.0);
  CHECK(rec.lk_table.size() == std::size_t(lp.j0() - lp.j_min() + 1));
}
