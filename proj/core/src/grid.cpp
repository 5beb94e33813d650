#include "mhd25/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstdlib>
#include <mutex>
#include <thread>

#include "mhd25/errors.hpp"

namespace mhd25 {

namespace {

// FFTW's planner is not thread-safe; plan creation and destruction are
// serialized through this mutex. Execution via the new-array interface
// needs no lock.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

int resolve_thread_count() {
  if (const char* env = std::getenv("MHD25_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? int(hc) : 1;
}

void init_fftw_threads_once() {
#ifdef MHD25_HAVE_FFTW_THREADS
  static std::once_flag flag;
  std::call_once(flag, [] {
    fftw_init_threads();
    fftw_plan_with_nthreads(resolve_thread_count());
  });
#endif
}

}  // namespace

struct SpectralGrid::Plans {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  ~Plans() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (fwd) fftw_destroy_plan(fwd);
    if (bwd) fftw_destroy_plan(bwd);
  }
};

SpectralGrid::SpectralGrid(int n_, double box_length_)
    : n(n_), box_length(box_length_), plans_(std::make_unique<Plans>()) {
  init_fftw_threads_once();

  // FFTW_UNALIGNED lets the plans run on plain std::vector storage.
  std::vector<double> rbuf(real_size());
  std::vector<std::complex<double>> cbuf(spec_size());
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plans_->fwd = fftw_plan_dft_r2c_2d(
        n, n, rbuf.data(), reinterpret_cast<fftw_complex*>(cbuf.data()),
        FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_->bwd = fftw_plan_dft_c2r_2d(
        n, n, reinterpret_cast<fftw_complex*>(cbuf.data()), rbuf.data(),
        FFTW_ESTIMATE | FFTW_UNALIGNED);
  }
  if (!plans_->fwd || !plans_->bwd)
    throw std::runtime_error("FFTW planning failed");

  mask_.resize(spec_size());
  double cutoff = dealias_cutoff();
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < nkx(); ++ix)
      mask_[idx(iy, ix)] =
          (std::abs(xi1(ix)) < cutoff && std::abs(xi2(iy)) < cutoff) ? 1 : 0;
}

SpectralGrid::~SpectralGrid() = default;

double SpectralGrid::dxi() const { return 2.0 * M_PI / box_length; }
double SpectralGrid::nyquist() const { return M_PI * n / box_length; }
double SpectralGrid::dealias_cutoff() const { return (2.0 / 3.0) * nyquist(); }

void SpectralGrid::forward(const double* in, std::complex<double>* out) const {
  // r2c preserves its input for rank >= 1 out-of-place transforms, but the
  // API wants a non-const pointer
  fftw_execute_dft_r2c(plans_->fwd, const_cast<double*>(in),
                       reinterpret_cast<fftw_complex*>(out));
  double scale = 1.0 / real_size();
  for (std::size_t i = 0; i < spec_size(); ++i) out[i] *= scale;
}

void SpectralGrid::inverse(const std::complex<double>* in, double* out) const {
  // multidimensional c2r destroys its input, so transform a scratch copy
  std::vector<std::complex<double>> tmp(in, in + spec_size());
  fftw_execute_dft_c2r(plans_->bwd,
                       reinterpret_cast<fftw_complex*>(tmp.data()), out);
}

std::shared_ptr<const SpectralGrid> make_grid(int n, double box_length) {
  if (n < 8 || (n & (n - 1)) != 0)
    throw ConfigError("grid size must be a power of two >= 8, got " +
                      std::to_string(n));
  if (!(box_length > 0.0) || !std::isfinite(box_length))
    throw ConfigError("box length must be positive and finite");
  return std::make_shared<const SpectralGrid>(n, box_length);
}

}  // namespace mhd25
