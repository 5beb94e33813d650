#include <cmath>

#include "doctest.h"
#include "mhd25/errors.hpp"
#include "mhd25/integrator.hpp"
#include "mhd25/linear_oracle.hpp"
#include "test_helpers.hpp"

using namespace mhd25;
using namespace testutil;

TEST_CASE("advective time step is pinned at the background state") {
  auto grid = make_grid(64, 2.0 * kPi);
  const PerturbationState s(grid);
  const PhysicalParams params;
  StepControl ctl;
  ctl.t_end = 1.0;

  // cfl * dx / c_fast with c_fast = sqrt(A gamma + 1) = sqrt(3)
  CHECK(compute_dt(s, params, ctl) ==
        doctest::Approx(0.022672492052928).epsilon(1e-12));

  PerturbationState moving(grid);
  moving.u.x.coeffs_mut()[0] = 1.0;  // uniform unit velocity
  const double expect = 0.4 * (2.0 * kPi / 64) / (std::sqrt(3.0) + 1.0);
  CHECK(compute_dt(moving, params, ctl) == doctest::Approx(expect).epsilon(1e-12));

  ctl.dt_max = 1e-3;
  CHECK(compute_dt(s, params, ctl) == 1e-3);
}

TEST_CASE("bad step control is rejected") {
  const PerturbationState s = random_state(32, 2.0 * kPi, 1e-3, 4.0, 2);
  const PhysicalParams params;
  StepControl ctl;
  ctl.t_end = 0.1;
  CHECK_THROWS_AS((void)step(s, 0.0, params, ctl), ConfigError);
  CHECK_THROWS_AS((void)step(s, -0.1, params, ctl), ConfigError);

  StepControl bad_cfl;
  bad_cfl.t_end = 0.1;
  bad_cfl.cfl_advective = 0.0;
  CHECK_THROWS_AS((void)integrate(s, params, bad_cfl, 1, {}), ConfigError);

  StepControl backwards;
  backwards.t_end = -1.0;
  CHECK_THROWS_AS((void)integrate(s, params, backwards, 1, {}), ConfigError);
}

TEST_CASE("one step reproduces viscous decay exactly on a solenoidal mode") {
  auto grid = make_grid(32, 2.0 * kPi);
  PerturbationState s(grid);
  s.u.x = sample_field(grid, [](double, double y) { return std::sin(3 * y); });
  const PhysicalParams params;
  StepControl ctl;
  ctl.t_end = 1.0;
  const PerturbationState out = step(s, 0.1, params, ctl);
  ScalarField want = s.u.x;
  want *= std::exp(-params.mu * 9.0 * 0.1);
  CHECK(rel_l2(out.u.x, want) < 1e-13);
  CHECK(out.a.l2_norm() < 1e-16);
  CHECK(out.t == doctest::Approx(0.1));
}

TEST_CASE("the stepper self-converges at third order") {
  const PerturbationState init = random_state(32, 2.0 * kPi, 1e-2, 4.0, 29);
  const PhysicalParams params;
  auto run = [&](double dt_max) {
    StepControl ctl;
    ctl.t_end = 0.25;
    ctl.dt_max = dt_max;
    return integrate(init, params, ctl, 1 << 30, {});
  };
  const PerturbationState s1 = run(0.025);
  const PerturbationState s2 = run(0.0125);
  const PerturbationState s3 = run(0.00625);
  auto dist = [](const PerturbationState& x, const PerturbationState& y) {
    ScalarField da = x.a;
    da -= y.a;
    VectorField du = x.u;
    du -= y.u;
    ScalarField db = x.b;
    db -= y.b;
    return std::sqrt(da.l2_norm() * da.l2_norm() +
                     du.l2_norm() * du.l2_norm() +
                     db.l2_norm() * db.l2_norm());
  };
  const double e1 = dist(s1, s2);
  const double e2 = dist(s2, s3);
  REQUIRE(e2 > 1e-15);
  CHECK(std::log2(e1 / e2) > 2.7);
  CHECK(std::log2(e1 / e2) < 3.5);
}

TEST_CASE("integration lands on the end time and honors the stride") {
  const PerturbationState init = random_state(32, 2.0 * kPi, 1e-3, 4.0, 6);
  const PhysicalParams params;
  StepControl ctl;
  ctl.t_end = 0.3;
  ctl.dt_max = 0.04;

  std::vector<double> times;
  std::vector<std::size_t> ks;
  const PerturbationState out = integrate(
      init, params, ctl, 3, [&](const PerturbationState& s, std::size_t k) {
        times.push_back(s.t);
        ks.push_back(k);
      });
  CHECK(out.t == 0.3);  // exact landing, not within-epsilon
  REQUIRE(!times.empty());
  CHECK(times.front() == 0.0);
  CHECK(times.back() == 0.3);
  CHECK(ks.front() == 0);
  for (std::size_t i = 0; i + 1 < ks.size(); ++i) {
    CHECK(ks[i + 1] > ks[i]);
    if (i + 2 < ks.size()) CHECK(ks[i + 1] - ks[i] == 3);
  }
  for (std::size_t i = 0; i + 1 < times.size(); ++i)
    CHECK(times[i + 1] > times[i]);
}

TEST_CASE("a fixed setup reproduces bit-identical trajectories") {
  const PerturbationState init = random_state(32, 2.0 * kPi, 1e-2, 4.0, 99);
  const PhysicalParams params;
  StepControl ctl;
  ctl.t_end = 0.2;
  const PerturbationState r1 = integrate(init, params, ctl, 1 << 30, {});
  const PerturbationState r2 = integrate(init, params, ctl, 1 << 30, {});
  CHECK(r1.a.coeffs() == r2.a.coeffs());
  CHECK(r1.u.x.coeffs() == r2.u.x.coeffs());
  CHECK(r1.u.y.coeffs() == r2.u.y.coeffs());
  CHECK(r1.b.coeffs() == r2.b.coeffs());
}

TEST_CASE("stage states are exported for passive co-evolution") {
  const PerturbationState init = random_state(32, 2.0 * kPi, 1e-3, 4.0, 8);
  const PhysicalParams params;
  StepControl ctl;
  ctl.t_end = 1.0;
  std::vector<PerturbationState> stages;
  const PerturbationState out = step(init, 0.01, params, ctl, &stages);
  REQUIRE(stages.size() == 2);
  CHECK(stages[0].t == doctest::Approx(0.01 * 2.0 / 3.0).epsilon(1e-14));
  CHECK(stages[1].t == doctest::Approx(0.01 * 2.0 / 3.0).epsilon(1e-14));
  CHECK(out.t == doctest::Approx(0.01).epsilon(1e-14));
}

TEST_CASE("a step into vacuum trips the validity gate") {
  auto grid = make_grid(32, 2.0 * kPi);
  PerturbationState s(grid);
  s.a.coeffs_mut()[0] = -0.45;
  s.u.x = sample_field(grid, [](double x, double) { return 20.0 * std::sin(x); });
  const PhysicalParams params;
  StepControl ctl;
  ctl.t_end = 1.0;
  CHECK_THROWS_AS((void)step(s, 0.05, params, ctl), ValidityError);
}

TEST_CASE("both schemes integrate the linear system accurately") {
  const PerturbationState init = random_state(32, 2.0 * kPi, 1e-8, 4.0, 55);
  const PhysicalParams params;
  const PerturbationState exact = evolve_linear_exact(init, params, 0.5);

  for (const Scheme scheme : {Scheme::if_ssprk3, Scheme::if_rk2}) {
    StepControl ctl;
    ctl.t_end = 0.5;
    ctl.dt_max = 0.005;
    ctl.scheme = scheme;
    const PerturbationState got = integrate(init, params, ctl, 1 << 30, {});
    const double tol = scheme == Scheme::if_ssprk3 ? 2e-4 : 5e-3;
    CHECK(rel_l2(got.a, exact.a) < tol);
    CHECK(rel_l2(got.u, exact.u) < tol);
    CHECK(rel_l2(got.b, exact.b) < tol);
  }
}
