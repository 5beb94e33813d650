#include "mhd25/littlewood_paley.hpp"

#include <algorithm>
#include <climits>
#include <cmath>

#include "mhd25/errors.hpp"

namespace mhd25 {

namespace {

// smooth monotone glue on [0,1]: 0 at 0, 1 at 1
double glue(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  double a = std::exp(-1.0 / x);
  double b = std::exp(-1.0 / (1.0 - x));
  return a / (a + b);
}

constexpr double kChiOne = 0.75;       // chi == 1 inside this radius
constexpr double kChiZero = 4.0 / 3.0; // chi == 0 outside this radius

double chi_profile(double r) {
  if (r <= kChiOne) return 1.0;
  if (r >= kChiZero) return 0.0;
  return glue((kChiZero - r) / (kChiZero - kChiOne));
}

}  // namespace

CutoffPair build_cutoffs() {
  CutoffPair pair;
  pair.chi = chi_profile;
  pair.phi = [](double r) { return chi_profile(0.5 * r) - chi_profile(r); };
  return pair;
}

PartitionReport check_partition_of_unity(const CutoffPair& pair, double rmin,
                                         double rmax, int samples,
                                         double tol) {
  PartitionReport rep{true, 0.0, 0.0};
  double lr0 = std::log(rmin), lr1 = std::log(rmax);
  for (int i = 0; i < samples; ++i) {
    double r = std::exp(lr0 + (lr1 - lr0) * i / double(samples - 1));
    // only j with 2^j near r contribute; +-4 octaves is generous
    int jc = int(std::lround(std::log2(r)));
    double sum = 0.0;
    for (int j = jc - 4; j <= jc + 4; ++j)
      sum += pair.phi(std::ldexp(r, -j));
    double dev = std::abs(sum - 1.0);
    if (dev > rep.worst_deviation) {
      rep.worst_deviation = dev;
      rep.worst_radius = r;
    }
  }
  rep.ok = rep.worst_deviation <= tol;
  return rep;
}

LittlewoodPaley::LittlewoodPaley(std::shared_ptr<const SpectralGrid> grid,
                                 CutoffPair pair, int j0)
    : grid_(std::move(grid)), pair_(std::move(pair)), j0_(j0) {
  const auto& g = *grid_;
  double xi_min = g.dxi();
  double xi_max = 0.0;
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.nkx(); ++ix)
      if (g.dealias_pass(iy, ix))
        xi_max = std::max(xi_max, std::sqrt(g.xi_abs2(iy, ix)));

  const double log2_lo = std::log2(3.0 / 4.0);
  const double log2_hi = std::log2(8.0 / 3.0);
  j_min_ = int(std::ceil(std::log2(xi_min) - log2_hi - 1e-12));
  j_max_ = int(std::floor(std::log2(xi_max) - log2_lo + 1e-12));
  if (j0_ < j_min_ || j0_ > j_max_)
    throw ConfigError("low/high threshold j0 outside resolved block range [" +
                      std::to_string(j_min_) + ", " + std::to_string(j_max_) +
                      "]");

  auto sz = g.spec_size();
  bj_.assign(sz, INT_MIN);
  bw1_.assign(sz, 0.0);
  bw2_.assign(sz, 0.0);
  lowm_.assign(sz, 0.0);
  highm_.assign(sz, 0.0);
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.nkx(); ++ix) {
      auto i = g.idx(iy, ix);
      double r = std::sqrt(g.xi_abs2(iy, ix));
      if (r == 0.0) continue;  // homogeneous analysis drops the mean
      double lr = std::log2(r);
      int jlo = int(std::ceil(lr - log2_hi - 1e-12));
      bj_[i] = jlo;
      bw1_[i] = pair_.phi(std::ldexp(r, -jlo));
      bw2_[i] = pair_.phi(std::ldexp(r, -(jlo + 1)));
      lowm_[i] = pair_.chi(std::ldexp(r, -(j0_ + 1)));
      highm_[i] = 1.0 - pair_.chi(std::ldexp(r, -(j0_ - 1)));
    }
}

ScalarField LittlewoodPaley::block(const ScalarField& f, int j) const {
  std::vector<std::complex<double>> out = f.coeffs();
  for (std::size_t i = 0; i < out.size(); ++i) {
    double w = 0.0;
    if (bj_[i] == j)
      w = bw1_[i];
    else if (bj_[i] + 1 == j && bj_[i] != INT_MIN)
      w = bw2_[i];
    out[i] *= w;
  }
  return ScalarField::from_coeffs(f.grid_ptr(), std::move(out));
}

LittlewoodPaley::SplitFields LittlewoodPaley::low_high_split(
    const ScalarField& f) const {
  const auto& c = f.coeffs();
  std::vector<std::complex<double>> lo(c.size()), hi(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    lo[i] = lowm_[i] * c[i];
    hi[i] = highm_[i] * c[i];
  }
  return SplitFields{ScalarField::from_coeffs(f.grid_ptr(), std::move(lo)),
                     ScalarField::from_coeffs(f.grid_ptr(), std::move(hi))};
}

std::vector<double> LittlewoodPaley::block_l2_weighted(
    const ScalarField& f, const std::vector<double>* extra) const {
  const auto& g = *grid_;
  const auto& c = f.coeffs();
  std::vector<double> acc(n_blocks(), 0.0);
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.nkx(); ++ix) {
      auto i = g.idx(iy, ix);
      if (bj_[i] == INT_MIN) continue;
      double p2 = g.parseval_weight(ix) * std::norm(c[i]);
      if (p2 == 0.0) continue;
      if (extra) {
        double m = (*extra)[i];
        p2 *= m * m;
      }
      int k = bj_[i] - j_min_;
      if (k >= 0 && k < n_blocks()) acc[k] += bw1_[i] * bw1_[i] * p2;
      ++k;
      if (k >= 0 && k < n_blocks()) acc[k] += bw2_[i] * bw2_[i] * p2;
    }
  for (double& v : acc) v = grid_->box_length * std::sqrt(v);
  return acc;
}

std::vector<double> LittlewoodPaley::block_l2(const ScalarField& f,
                                              Part part) const {
  switch (part) {
    case Part::full:
      return block_l2_weighted(f, nullptr);
    case Part::low:
      return block_l2_weighted(f, &lowm_);
    case Part::high:
      return block_l2_weighted(f, &highm_);
  }
  return {};
}

std::vector<double> LittlewoodPaley::block_l2(const VectorField& v,
                                              Part part) const {
  auto px = block_l2(v.x, part);
  auto py = block_l2(v.y, part);
  for (std::size_t k = 0; k < px.size(); ++k)
    px[k] = std::hypot(px[k], py[k]);
  return px;
}

double LittlewoodPaley::assemble(const std::vector<double>& prof,
                                 const BesovSpec& spec) const {
  bool sup = std::isinf(spec.r);
  double acc = 0.0;
  for (int k = 0; k < n_blocks(); ++k) {
    double b = prof[k];
    if (b == 0.0) continue;
    double term = std::exp2(double(j_min_ + k) * spec.s) * b;
    if (sup)
      acc = std::max(acc, term);
    else if (spec.r == 1.0)
      acc += term;
    else
      acc += std::pow(term, spec.r);
  }
  if (!sup && spec.r != 1.0) acc = std::pow(acc, 1.0 / spec.r);
  return acc;
}

namespace {

double lattice_lp_norm(const ScalarField& f, double p) {
  const auto& g = f.grid();
  const auto& v = f.samples();
  if (std::isinf(p)) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }
  double cell = g.dx() * g.dx();
  double acc = 0.0;
  for (double x : v) acc += std::pow(std::abs(x), p);
  return std::pow(cell * acc, 1.0 / p);
}

}  // namespace

double LittlewoodPaley::besov_norm(const ScalarField& f, const BesovSpec& spec,
                                   Part part) const {
  if (!(spec.p >= 1.0)) throw ConfigError("besov_norm: p must be >= 1");
  if (!(spec.r >= 1.0)) throw ConfigError("besov_norm: r must be >= 1");
  if (spec.p == 2.0) return assemble(block_l2(f, part), spec);
  // general p goes through per-block inverse transforms
  const ScalarField* src = &f;
  ScalarField tmp(f.grid_ptr());
  if (part != Part::full) {
    auto split = low_high_split(f);
    tmp = part == Part::low ? std::move(split.low) : std::move(split.high);
    src = &tmp;
  }
  std::vector<double> prof(n_blocks());
  for (int j = j_min_; j <= j_max_; ++j)
    prof[j - j_min_] = lattice_lp_norm(block(*src, j), spec.p);
  return assemble(prof, spec);
}

double LittlewoodPaley::besov_norm(const VectorField& v, const BesovSpec& spec,
                                   Part part) const {
  if (spec.p == 2.0) return assemble(block_l2(v, part), spec);
  double nx = besov_norm(v.x, spec, part);
  double ny = besov_norm(v.y, spec, part);
  return std::hypot(nx, ny);
}

double LittlewoodPaley::negative_index_seminorm(const ScalarField& f,
                                                double sigma) const {
  if (!(sigma > 0.0 && sigma <= 1.0))
    throw ConfigError("negative_index_seminorm: sigma must be in (0, 1]");
  auto prof = block_l2(f, Part::full);
  double acc = 0.0;
  for (int j = j_min_; j <= std::min(j0_, j_max_); ++j)
    acc = std::max(acc, std::exp2(-double(j) * sigma) * prof[j - j_min_]);
  return acc;
}

double LittlewoodPaley::negative_index_seminorm(const VectorField& v,
                                                double sigma) const {
  if (!(sigma > 0.0 && sigma <= 1.0))
    throw ConfigError("negative_index_seminorm: sigma must be in (0, 1]");
  auto prof = block_l2(v, Part::full);
  double acc = 0.0;
  for (int j = j_min_; j <= std::min(j0_, j_max_); ++j)
    acc = std::max(acc, std::exp2(-double(j) * sigma) * prof[j - j_min_]);
  return acc;
}

std::vector<LittlewoodPaley::LkTerms> LittlewoodPaley::lk_terms(
    const ScalarField& phi, const ScalarField& d) const {
  const auto& g = *grid_;
  const auto& cp = phi.coeffs();
  const auto& cd = d.coeffs();
  int nlow = j0_ - j_min_ + 1;
  std::vector<LkTerms> out(nlow, LkTerms{0, 0, 0, 0});
  double L2 = g.box_length * g.box_length;
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.nkx(); ++ix) {
      auto i = g.idx(iy, ix);
      if (bj_[i] == INT_MIN) continue;
      double pw = g.parseval_weight(ix);
      double r = std::sqrt(g.xi_abs2(iy, ix));
      double p2 = std::norm(cp[i]), d2 = std::norm(cd[i]);
      double cr = (cd[i] * std::conj(cp[i])).real();
      for (int t = 0; t < 2; ++t) {
        int k = bj_[i] + t - j_min_;
        if (k < 0 || k >= nlow) continue;
        double w2 = t == 0 ? bw1_[i] * bw1_[i] : bw2_[i] * bw2_[i];
        if (w2 == 0.0) continue;
        double c = pw * w2 * L2;
        out[k].phi2 += c * p2;
        out[k].d2 += c * d2;
        out[k].cross += c * r * cr;
        out[k].lphi2 += c * r * r * p2;
      }
    }
  return out;
}

}  // namespace mhd25
