#include <cmath>
#include <complex>

#include "doctest.h"
#include "mhd25/errors.hpp"
#include "mhd25/littlewood_paley.hpp"
#include "test_helpers.hpp"

using namespace mhd25;
using namespace testutil;

TEST_CASE("cutoff profile values are pinned") {
  const CutoffPair pair = build_cutoffs();
  CHECK(pair.chi(0.0) == 1.0);
  CHECK(pair.chi(0.75) == 1.0);
  CHECK(pair.chi(4.0 / 3.0) == 0.0);
  CHECK(pair.chi(1.0) == doctest::Approx(0.641834045088731).epsilon(1e-12));
  CHECK(pair.phi(1.0) == doctest::Approx(0.358165954911269).epsilon(1e-12));
  CHECK(pair.phi(2.0) == doctest::Approx(0.641834045088731).epsilon(1e-12));

  // phi = chi(r/2) - chi(r), supported on (3/4, 8/3)
  CHECK(pair.phi(0.7) == 0.0);
  CHECK(pair.phi(2.7) == 0.0);
  for (double r = 0.8; r < 2.6; r += 0.1)
    CHECK(pair.phi(r) == doctest::Approx(pair.chi(r / 2) - pair.chi(r)));

  double prev = 1.0;
  for (double r = 0.7; r < 1.4; r += 0.01) {
    CHECK(pair.chi(r) <= prev + 1e-15);
    prev = pair.chi(r);
  }
}

TEST_CASE("partition of unity holds and a corrupted profile is caught") {
  const auto good = check_partition_of_unity(build_cutoffs());
  CHECK(good.ok);
  CHECK(good.worst_deviation <= 1e-10);

  CutoffPair bad = build_cutoffs();
  auto base = bad.phi;
  bad.phi = [base](double r) {
    return base(r) * (1.0 - 1e-4 * std::exp(-100.0 * (r - 1.0) * (r - 1.0)));
  };
  const auto report = check_partition_of_unity(bad);
  CHECK(!report.ok);
  CHECK(report.worst_deviation > 1e-7);

  // the reported radius really does violate the partition: recompute the
  // telescoped sum there (the defect repeats once per octave, so the worst
  // radius can land in any dyadic copy of the dip)
  CHECK(report.worst_radius > 0.0);
  const int jc = int(std::lround(std::log2(report.worst_radius)));
  double sum = 0.0;
  for (int j = jc - 4; j <= jc + 4; ++j)
    sum += bad.phi(std::ldexp(report.worst_radius, -j));
  CHECK(std::fabs(sum - 1.0) ==
        doctest::Approx(report.worst_deviation).epsilon(1e-9));
}

TEST_CASE("blocks live on their annuli and tile the identity") {
  auto grid = make_grid(64, 2.0 * kPi);
  const PerturbationState s = random_state(64, 2.0 * kPi, 1e-2, 8.0, 3);
  const LittlewoodPaley lp(grid, build_cutoffs(), 0);
  CHECK(lp.j_min() == -1);

  ScalarField sum(grid);
  for (int j = lp.j_min(); j <= lp.j_max(); ++j) {
    const ScalarField bj = lp.block(s.a, j);
    sum += bj;
    const auto& c = bj.coeffs();
    const double lo = 0.75 * std::ldexp(1.0, j) * (1.0 - 1e-12);
    const double hi = (8.0 / 3.0) * std::ldexp(1.0, j) * (1.0 + 1e-12);
    for (int iy = 0; iy < grid->n; ++iy)
      for (int ix = 0; ix < grid->nkx(); ++ix) {
        if (std::abs(c[grid->idx(iy, ix)]) == 0.0) continue;
        const double r = std::sqrt(grid->xi_abs2(iy, ix));
        CHECK(r >= lo);
        CHECK(r <= hi);
      }
  }
  // the tiling reproduces the mean-free part
  ScalarField centered = s.a;
  centered.coeffs_mut()[0] = 0.0;
  CHECK(rel_l2(sum, centered) < 1e-12);

  // blocks two or more octaves apart are orthogonal
  const ScalarField b0 = lp.block(s.a, 0);
  for (int j = 2; j <= lp.j_max(); ++j)
    CHECK(std::fabs(inner_product(b0, lp.block(s.a, j))) <
          1e-13 * s.a.l2_norm() * s.a.l2_norm());
}

TEST_CASE("single-mode Besov norms are pinned") {
  auto grid = make_grid(64, 2.0 * kPi);
  const ScalarField f =
      sample_field(grid, [](double x, double) { return std::sin(x); });
  const LittlewoodPaley lp(grid, build_cutoffs(), 0);

  // |xi| = 1 meets blocks -1 and 0 with weights phi(2), phi(1)
  const double l2 = 2.0 * kPi / std::sqrt(2.0);
  const auto prof = lp.block_l2(f, Part::full);
  REQUIRE(int(prof.size()) == lp.j_max() - lp.j_min() + 1);
  CHECK(prof[0] == doctest::Approx(ref_phi(2.0) * l2).epsilon(1e-12));
  CHECK(prof[1] == doctest::Approx(ref_phi(1.0) * l2).epsilon(1e-12));
  // transform roundoff leaves only dust in the remaining blocks
  for (std::size_t k = 2; k < prof.size(); ++k) CHECK(prof[k] < 1e-13 * l2);

  CHECK(lp.besov_norm(f, BesovSpec{0.0, 2.0, 1.0}, Part::full) ==
        doctest::Approx(4.442882938158366).epsilon(1e-12));
  CHECK(lp.besov_norm(f, BesovSpec{1.0, 2.0, 1.0}, Part::full) ==
        doctest::Approx(3.017086174131421).epsilon(1e-12));
  CHECK(lp.negative_index_seminorm(f, 1.0) ==
        doctest::Approx(5.703187056107780).epsilon(1e-12));

  // a vector field carrying the same scalar in one slot matches
  VectorField v{f, ScalarField(grid)};
  CHECK(lp.besov_norm(v, BesovSpec{0.0, 2.0, 1.0}, Part::full) ==
        doctest::Approx(4.442882938158366).epsilon(1e-12));
}

TEST_CASE("low and high parts agree with the telescoped cutoffs") {
  auto grid = make_grid(64, 2.0 * kPi);
  const PerturbationState s = random_state(64, 2.0 * kPi, 1e-2, 8.0, 8);
  const int j0 = 1;
  const LittlewoodPaley lp(grid, build_cutoffs(), j0);
  const auto parts = lp.low_high_split(s.a);
  const auto& c = s.a.coeffs();
  const auto& lo = parts.low.coeffs();
  const auto& hi = parts.high.coeffs();
  for (int iy = 0; iy < grid->n; ++iy)
    for (int ix = 0; ix < grid->nkx(); ++ix) {
      const auto i = grid->idx(iy, ix);
      const double r = std::sqrt(grid->xi_abs2(iy, ix));
      if (r == 0.0 || std::abs(c[i]) == 0.0) continue;
      const double wl = ref_chi(std::ldexp(r, -(j0 + 1)));
      const double wh = 1.0 - ref_chi(std::ldexp(r, -(j0 - 1)));
      CHECK(std::abs(lo[i] - wl * c[i]) <= 1e-14 * std::abs(c[i]));
      CHECK(std::abs(hi[i] - wh * c[i]) <= 1e-14 * std::abs(c[i]));
      CHECK(wl + wh >= 1.0 - 1e-12);  // the two-block overlap covers everything
    }
}

TEST_CASE("Besov norms are translation invariant") {
  auto grid = make_grid(32, 2.0 * kPi);
  const PerturbationState s = random_state(32, 2.0 * kPi, 1e-2, 6.0, 12);
  const int n = grid->n;
  const auto& v = s.a.samples();
  std::vector<double> rolled(v.size());
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix)
      rolled[std::size_t(iy) * n + ix] =
          v[std::size_t((iy + 3) % n) * n + (ix + 5) % n];
  const ScalarField g = ScalarField::from_samples(grid, std::move(rolled));

  const LittlewoodPaley lp(grid, build_cutoffs(), 0);
  for (const Part part : {Part::full, Part::low, Part::high}) {
    const double a = lp.besov_norm(s.a, BesovSpec{0.0, 2.0, 1.0}, part);
    const double b = lp.besov_norm(g, BesovSpec{0.0, 2.0, 1.0}, part);
    CHECK(std::fabs(a - b) <= 1e-10 * a);
  }
  CHECK(std::fabs(lp.negative_index_seminorm(s.a, 1.0) -
                  lp.negative_index_seminorm(g, 1.0)) <=
        1e-10 * lp.negative_index_seminorm(s.a, 1.0));
}

TEST_CASE("a threshold outside the resolved range is rejected") {
  auto grid = make_grid(32, 2.0 * kPi);
  CHECK_THROWS_AS(LittlewoodPaley(grid, build_cutoffs(), 40), ConfigError);
  CHECK_THROWS_AS(LittlewoodPaley(grid, build_cutoffs(), -40), ConfigError);
}
