#include "mhd25/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mhd25 {

namespace {

// fields are compatible when their grids have the same layout; they need
// not share the same SpectralGrid instance
bool same_layout(const SpectralGrid& a, const SpectralGrid& b) {
  return a.n == b.n && a.box_length == b.box_length;
}

}  // namespace

ScalarField::ScalarField(std::shared_ptr<const SpectralGrid> grid)
    : grid_(std::move(grid)),
      cfs_(grid_->spec_size(), std::complex<double>(0.0, 0.0)),
      has_cfs_(true) {}

ScalarField ScalarField::from_samples(
    std::shared_ptr<const SpectralGrid> grid, std::vector<double> samples) {
  if (samples.size() != grid->real_size())
    throw std::invalid_argument("sample array size does not match grid");
  ScalarField f(grid);
  f.vals_ = std::move(samples);
  f.has_vals_ = true;
  f.has_cfs_ = false;
  f.cfs_.clear();
  return f;
}

ScalarField ScalarField::from_coeffs(
    std::shared_ptr<const SpectralGrid> grid,
    std::vector<std::complex<double>> coeffs) {
  if (coeffs.size() != grid->spec_size())
    throw std::invalid_argument("coefficient array size does not match grid");
  ScalarField f(grid);
  f.cfs_ = std::move(coeffs);
  f.has_cfs_ = true;
  return f;
}

const std::vector<double>& ScalarField::samples() const {
  if (!has_vals_) {
    vals_.resize(grid_->real_size());
    grid_->inverse(cfs_.data(), vals_.data());
    has_vals_ = true;
  }
  return vals_;
}

const std::vector<std::complex<double>>& ScalarField::coeffs() const {
  if (!has_cfs_) {
    cfs_.resize(grid_->spec_size());
    grid_->forward(vals_.data(), cfs_.data());
    has_cfs_ = true;
  }
  return cfs_;
}

std::vector<double>& ScalarField::samples_mut() {
  samples();
  has_cfs_ = false;
  cfs_.clear();
  return vals_;
}

std::vector<std::complex<double>>& ScalarField::coeffs_mut() {
  coeffs();
  has_vals_ = false;
  vals_.clear();
  return cfs_;
}

double ScalarField::l2_norm() const {
  const auto& c = coeffs();
  const auto& g = *grid_;
  double sum = 0.0;
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.nkx(); ++ix)
      sum += g.parseval_weight(ix) * std::norm(c[g.idx(iy, ix)]);
  return g.box_length * std::sqrt(sum);
}

double ScalarField::mean() const { return coeffs()[0].real(); }

double ScalarField::max_abs() const {
  const auto& v = samples();
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
  return axpy(1.0, o);
}
ScalarField& ScalarField::operator-=(const ScalarField& o) {
  return axpy(-1.0, o);
}

ScalarField& ScalarField::operator*=(double c) {
  auto& cf = coeffs_mut();
  for (auto& z : cf) z *= c;
  return *this;
}

ScalarField& ScalarField::axpy(double c, const ScalarField& o) {
  if (!same_layout(*grid_, *o.grid_))
    throw std::invalid_argument("field grids differ");
  const auto& oc = o.coeffs();
  auto& cf = coeffs_mut();
  for (std::size_t i = 0; i < cf.size(); ++i) cf[i] += c * oc[i];
  return *this;
}

double VectorField::l2_norm() const {
  double nx = x.l2_norm(), ny = y.l2_norm();
  return std::sqrt(nx * nx + ny * ny);
}

double VectorField::max_abs() const {
  const auto& vx = x.samples();
  const auto& vy = y.samples();
  double m = 0.0;
  for (std::size_t i = 0; i < vx.size(); ++i)
    m = std::max(m, std::hypot(vx[i], vy[i]));
  return m;
}

VectorField& VectorField::operator+=(const VectorField& o) {
  x += o.x;
  y += o.y;
  return *this;
}
VectorField& VectorField::operator-=(const VectorField& o) {
  x -= o.x;
  y -= o.y;
  return *this;
}
VectorField& VectorField::operator*=(double c) {
  x *= c;
  y *= c;
  return *this;
}
VectorField& VectorField::axpy(double c, const VectorField& o) {
  x.axpy(c, o.x);
  y.axpy(c, o.y);
  return *this;
}

double inner_product(const ScalarField& f, const ScalarField& g) {
  if (!same_layout(f.grid(), g.grid()))
    throw std::invalid_argument("field grids differ");
  const auto& a = f.coeffs();
  const auto& b = g.coeffs();
  const auto& gr = f.grid();
  double sum = 0.0;
  for (int iy = 0; iy < gr.n; ++iy)
    for (int ix = 0; ix < gr.nkx(); ++ix) {
      auto i = gr.idx(iy, ix);
      sum += gr.parseval_weight(ix) * (a[i] * std::conj(b[i])).real();
    }
  return gr.box_length * gr.box_length * sum;
}

}  // namespace mhd25
