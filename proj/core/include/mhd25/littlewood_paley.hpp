#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "mhd25/field.hpp"

namespace mhd25 {

// Radial dyadic cutoff profiles. chi is smooth, non-increasing, identically
// 1 on [0, 3/4] and 0 on [4/3, inf); phi(r) = chi(r/2) - chi(r) is supported
// in [3/4, 8/3] and the family phi(2^-j r) telescopes to 1 for r > 0.
// Profiles are plain callables so tests can inject corrupted ones.
struct CutoffPair {
  std::function<double(double)> chi;
  std::function<double(double)> phi;
};

CutoffPair build_cutoffs();

struct PartitionReport {
  bool ok;
  double worst_radius;
  double worst_deviation;
};

// Scans log-spaced radii and sums the dyadic family over |j| <= 60.
PartitionReport check_partition_of_unity(const CutoffPair& pair,
                                         double rmin = 1e-6,
                                         double rmax = 1e6,
                                         int samples = 4096,
                                         double tol = 1e-10);

struct BesovSpec {
  double s = 0.0;  // regularity index
  double p = 2.0;  // Lebesgue exponent (infinity() for sup)
  double r = 1.0;  // summation exponent over blocks (infinity() for sup)
  static constexpr double infinity() {
    return std::numeric_limits<double>::infinity();
  }
};

enum class Part { full, low, high };

// Dyadic analysis bound to one grid: block operators, low/high splitting at
// threshold j0 (low = sum of blocks j <= j0, high = sum of blocks j >= j0-1,
// a deliberate two-block overlap), Besov norms and the low-frequency
// negative-index seminorm. The homogeneous decomposition ignores the zero
// mode: blocks, low and high parts are all mean-free.
//
// Per-point block weights are tabulated at construction; at most two blocks
// are active at any lattice point.
class LittlewoodPaley {
 public:
  LittlewoodPaley(std::shared_ptr<const SpectralGrid> grid, CutoffPair pair,
                  int j0);

  const SpectralGrid& grid() const { return *grid_; }
  const CutoffPair& cutoffs() const { return pair_; }
  int j0() const { return j0_; }
  // smallest/largest j whose annulus meets the nonzero resolved lattice
  int j_min() const { return j_min_; }
  int j_max() const { return j_max_; }
  int n_blocks() const { return j_max_ - j_min_ + 1; }

  ScalarField block(const ScalarField& f, int j) const;

  struct SplitFields {
    ScalarField low, high;
  };
  SplitFields low_high_split(const ScalarField& f) const;

  // ||Delta_j f||_{L2} for j = j_min()..j_max(), one pass over the spectrum
  std::vector<double> block_l2(const ScalarField& f,
                               Part part = Part::full) const;
  std::vector<double> block_l2(const VectorField& v,
                               Part part = Part::full) const;

  double besov_norm(const ScalarField& f, const BesovSpec& spec,
                    Part part = Part::full) const;
  double besov_norm(const VectorField& v, const BesovSpec& spec,
                    Part part = Part::full) const;

  // sup_{j <= j0} 2^{-j sigma} ||Delta_j f||_{L2}, requires 0 < sigma <= 1
  double negative_index_seminorm(const ScalarField& f, double sigma) const;
  double negative_index_seminorm(const VectorField& v, double sigma) const;

  // per-block ingredients of the low-frequency energy functional, for
  // j = j_min()..j0: squared L2 norms of the blocks of phi and d, the inner
  // product <d_j, Lambda phi_j>, and ||Lambda phi_j||^2
  struct LkTerms {
    double phi2, d2, cross, lphi2;
  };
  std::vector<LkTerms> lk_terms(const ScalarField& phi,
                                const ScalarField& d) const;

 private:
  std::shared_ptr<const SpectralGrid> grid_;
  CutoffPair pair_;
  int j0_, j_min_, j_max_;
  // per spectral point: up to two active blocks and the low/high multipliers
  std::vector<int> bj_;        // first active j, or INT_MIN
  std::vector<double> bw1_, bw2_;  // weights for blocks bj_ and bj_+1
  std::vector<double> lowm_, highm_;

  std::vector<double> block_l2_weighted(const ScalarField& f,
                                        const std::vector<double>* extra) const;
  double assemble(const std::vector<double>& prof, const BesovSpec& spec) const;
};

}  // namespace mhd25
