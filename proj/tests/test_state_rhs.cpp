#include <cmath>

#include "doctest.h"
#include "mhd25/errors.hpp"
#include "mhd25/rhs.hpp"
#include "mhd25/spectral_ops.hpp"
#include "test_helpers.hpp"

using namespace mhd25;
using namespace testutil;

namespace {

ScalarField pointwise(const ScalarField& a, const ScalarField& b,
                      double (*op)(double, double)) {
  const auto& av = a.samples();
  const auto& bv = b.samples();
  std::vector<double> out(av.size());
  for (std::size_t i = 0; i < av.size(); ++i) out[i] = op(av[i], bv[i]);
  return ScalarField::from_samples(a.grid_ptr(), std::move(out));
}

}  // namespace

TEST_CASE("good unknown and rational identities hold pointwise") {
  auto grid = make_grid(64, 2.0 * kPi);
  const PhysicalParams params;
  const ScalarField a = sample_field(grid, [](double x, double y) {
    return 0.25 * std::sin(x) * std::cos(2 * y) + 0.05 * std::cos(3 * x);
  });
  const ScalarField b = sample_field(grid, [](double x, double y) {
    return 0.3 * std::cos(2 * x) * std::sin(y) - 0.1 * std::sin(x + y);
  });

  const ScalarField phi = compute_phi(a, b, params);
  const ScalarField want = pointwise(a, b, [](double av, double bv) {
    return av * av + 2.0 * av + 0.5 * bv * bv + bv;
  });
  CHECK(rel_l2(phi, want) < 1e-13);

  const ScalarField ia = rational_ia(a);
  const auto& av = a.samples();
  const auto& iv = ia.samples();
  double worst = 0.0;
  for (std::size_t i = 0; i < av.size(); ++i)
    worst = std::max(worst, std::fabs((1.0 + av[i]) * iv[i] - av[i]));
  CHECK(worst < 1e-14);

  const ScalarField delta = compute_delta(phi, a, params);
  const ScalarField back = rational_a(phi, delta, params);
  double worst_a = 0.0;
  const auto& bv = back.samples();
  for (std::size_t i = 0; i < av.size(); ++i)
    worst_a = std::max(worst_a, std::fabs(bv[i] - av[i]));
  CHECK(worst_a < 1e-14);
}

TEST_CASE("compressible scalar and effective velocity compose correctly") {
  auto grid = make_grid(64, 2.0 * kPi);
  const ScalarField u1 =
      sample_field(grid, [](double x, double) { return std::sin(2 * x); });
  const VectorField u{u1, ScalarField(grid)};

  // d = Lambda^{-1} div u = cos(2x) for u = (sin(2x), 0)
  const ScalarField d = compute_d(u);
  const ScalarField want =
      sample_field(grid, [](double x, double) { return std::cos(2 * x); });
  CHECK(rel_l2(d, want) < 1e-12);

  // G = Qu - (1/2) Delta^{-1} grad phi, rebuilt from public pieces
  const PerturbationState s = random_state(64, 2.0 * kPi, 1e-2, 6.0, 31);
  const PhysicalParams params;
  const ScalarField phi = compute_phi(s.a, s.b, params);
  const VectorField g = compute_effective_velocity(s.u, phi);
  ScalarField mf = phi;
  mf.coeffs_mut()[0] = 0.0;
  VectorField corr = gradient(inverse_laplacian(mf));
  corr *= -0.5;
  VectorField want_g = helmholtz_project(s.u).potential;
  want_g += corr;
  CHECK(rel_l2(g, want_g) < 1e-12);
}

TEST_CASE("vacuum-adjacent states are rejected") {
  auto grid = make_grid(32, 2.0 * kPi);
  PerturbationState s(grid);
  s.a.coeffs_mut()[0] = -0.6;
  CHECK(probe_state(s).min_rho == doctest::Approx(0.4).epsilon(1e-12));
  CHECK_THROWS_AS(validate_state(s), ValidityError);
  CHECK_THROWS_AS((void)rational_ia(s.a), ValidityError);
}

TEST_CASE("tendencies vanish at a shifted equilibrium") {
  auto grid = make_grid(32, 2.0 * kPi);
  PerturbationState s(grid);
  s.a.coeffs_mut()[0] = 0.2;
  s.b.coeffs_mut()[0] = -0.1;
  const Tendency t = rhs_full(s, PhysicalParams{});
  CHECK(t.da.max_abs() < 1e-14);
  CHECK(t.du.max_abs() < 1e-14);
  CHECK(t.db.max_abs() < 1e-14);
}

TEST_CASE("tendency zero modes are pinned to conservation form") {
  const PerturbationState s = random_state(32, 2.0 * kPi, 5e-2, 6.0, 4);
  const Tendency t = rhs_full(s, PhysicalParams{});
  CHECK(t.da.coeffs()[0] == std::complex<double>(0.0, 0.0));
  CHECK(t.db.coeffs()[0] == std::complex<double>(0.0, 0.0));
}

TEST_CASE("full and explicit tendencies differ by the viscous operator") {
  const PerturbationState s = random_state(32, 2.0 * kPi, 5e-2, 6.0, 14);
  const PhysicalParams params;
  const Tendency full = rhs_full(s, params);
  const Tendency expl = rhs_explicit(s, params);

  VectorField diff = full.du;
  diff -= expl.du;
  VectorField visc = laplacian(s.u);
  visc *= params.mu;
  VectorField gdiv = gradient(divergence(s.u));
  gdiv *= params.lambda + params.mu;
  visc += gdiv;
  CHECK(rel_l2(diff, visc) < 1e-12);

  CHECK(rel_l2(full.da, expl.da) < 1e-14);
  CHECK(rel_l2(full.db, expl.db) < 1e-14);
}

TEST_CASE("the nonlinear residual scales quadratically") {
  PerturbationState s = random_state(32, 2.0 * kPi, 2e-2, 4.0, 17);
  const PhysicalParams params;
  auto residual = [&](const PerturbationState& st) {
    Tendency full = rhs_full(st, params);
    const Tendency lin = linearize_rhs(st, params);
    full.da -= lin.da;
    full.du -= lin.du;
    full.db -= lin.db;
    return std::sqrt(full.da.l2_norm() * full.da.l2_norm() +
                     full.du.l2_norm() * full.du.l2_norm() +
                     full.db.l2_norm() * full.db.l2_norm());
  };
  const double r1 = residual(s);
  s.a *= 0.5;
  s.u *= 0.5;
  s.b *= 0.5;
  const double r2 = residual(s);
  CHECK(std::log2(r1 / r2) == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("quasilinear forcing terms match their public recomposition") {
  const PerturbationState s = random_state(32, 2.0 * kPi, 5e-2, 4.0, 23);
  const PhysicalParams params;
  const ScalarField phi = compute_phi(s.a, s.b, params);

  // F = I(a) (grad phi - mu Lap u - (lambda+mu) grad div u)
  const VectorField F = forcing_F(s.a, s.u, phi, params);
  VectorField inner = laplacian(s.u);
  inner *= -params.mu;
  VectorField gdiv = gradient(divergence(s.u));
  gdiv *= -(params.lambda + params.mu);
  inner += gdiv;
  inner += gradient(phi);
  const ScalarField ia = rational_ia(s.a);
  const auto& iv = ia.samples();
  auto scale_by_ia = [&](const ScalarField& f) {
    const auto& fv = f.samples();
    std::vector<double> out(fv.size());
    for (std::size_t i = 0; i < fv.size(); ++i) out[i] = iv[i] * fv[i];
    return ScalarField::from_samples(f.grid_ptr(), std::move(out));
  };
  VectorField want{scale_by_ia(inner.x), scale_by_ia(inner.y)};
  want = dealias(want);
  CHECK(rel_l2(F, want) < 1e-12);

  // f1 = -u . grad phi - 2 phi div u;   f2 = Lambda^{-1} div(-(u.grad)u + F)
  const ForcingPair pair = forcing_f1_f2(s, params);
  const VectorField gp = gradient(phi);
  const ScalarField divu = divergence(s.u);
  const auto& u1 = s.u.x.samples();
  const auto& u2 = s.u.y.samples();
  const auto& p1 = gp.x.samples();
  const auto& p2 = gp.y.samples();
  const auto& pv = phi.samples();
  const auto& dv = divu.samples();
  std::vector<double> f1v(u1.size());
  for (std::size_t i = 0; i < u1.size(); ++i)
    f1v[i] = -(u1[i] * p1[i] + u2[i] * p2[i]) - 2.0 * pv[i] * dv[i];
  const ScalarField f1 =
      dealias(ScalarField::from_samples(s.grid_ptr(), std::move(f1v)));
  CHECK(rel_l2(pair.f1, f1) < 1e-12);

  const VectorField gu1 = gradient(s.u.x);
  const VectorField gu2 = gradient(s.u.y);
  const auto& a11 = gu1.x.samples();
  const auto& a12 = gu1.y.samples();
  const auto& a21 = gu2.x.samples();
  const auto& a22 = gu2.y.samples();
  std::vector<double> w1(u1.size()), w2(u1.size());
  for (std::size_t i = 0; i < u1.size(); ++i) {
    w1[i] = -(u1[i] * a11[i] + u2[i] * a12[i]);
    w2[i] = -(u1[i] * a21[i] + u2[i] * a22[i]);
  }
  VectorField w{ScalarField::from_samples(s.grid_ptr(), std::move(w1)),
                ScalarField::from_samples(s.grid_ptr(), std::move(w2))};
  w = dealias(w);
  w += F;
  const ScalarField f2 = compute_d(w);
  CHECK(rel_l2(pair.f2, f2) < 1e-12);
}
