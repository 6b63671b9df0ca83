#include "nematic/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <utility>

namespace nematic {

namespace {

// FFTW's planner is not thread safe; execution with the new-array API is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

struct SpectralGrid::Plans {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
};

SpectralGrid::SpectralGrid(const GridSpec& grid) : grid_(grid), plans_(std::make_unique<Plans>()) {
  const int n = grid.n();
  const int nh = n / 2 + 1;
  const std::size_t ns = static_cast<std::size_t>(n) * n * nh;
  {
    std::lock_guard lock(planner_mutex());
    RealBuffer r(grid.size());
    ComplexBuffer c(ns);
    auto* cp = reinterpret_cast<fftw_complex*>(c.data());
    // FFTW takes dimensions slowest-first; the real array is x-fastest.
    plans_->r2c = fftw_plan_dft_r2c_3d(n, n, n, r.data(), cp, FFTW_ESTIMATE);
    plans_->c2r = fftw_plan_dft_c2r_3d(n, n, n, cp, r.data(), FFTW_ESTIMATE);
  }
  k2_.resize(ns);
  multiplicity_.resize(ns);
  const double dk = 2.0 * std::numbers::pi / grid.box_len();
  auto wave = [n, dk](int i) { return dk * (i < n / 2 ? i : i - n); };
  std::size_t idx = 0;
  for (int kz = 0; kz < n; ++kz) {
    for (int ky = 0; ky < n; ++ky) {
      for (int kx = 0; kx < nh; ++kx, ++idx) {
        const double wx = kx == n / 2 ? -dk * n / 2 : dk * kx;
        const double wy = wave(ky), wz = wave(kz);
        k2_[idx] = wx * wx + wy * wy + wz * wz;
        multiplicity_[idx] = (kx == 0 || kx == n / 2) ? 1.0 : 2.0;
      }
    }
  }
}

SpectralGrid::~SpectralGrid() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plans_->r2c);
  fftw_destroy_plan(plans_->c2r);
}

std::shared_ptr<const SpectralGrid> SpectralGrid::shared(const GridSpec& grid) {
  static std::mutex m;
  static std::map<std::pair<int, double>, std::shared_ptr<const SpectralGrid>> cache;
  std::lock_guard lock(m);
  auto key = std::make_pair(grid.n(), grid.box_len());
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto sg = std::make_shared<const SpectralGrid>(grid);
  cache.emplace(key, sg);
  return sg;
}

void SpectralGrid::forward(std::span<const double> in, std::span<Complex> out) const {
  // r2c does not write to its input.
  fftw_execute_dft_r2c(plans_->r2c, const_cast<double*>(in.data()),
                       reinterpret_cast<fftw_complex*>(out.data()));
}

void SpectralGrid::inverse(std::span<const Complex> in, std::span<double> out) const {
  ComplexBuffer scratch(in.begin(), in.end());
  fftw_execute_dft_c2r(plans_->c2r, reinterpret_cast<fftw_complex*>(scratch.data()), out.data());
  const double scale = 1.0 / static_cast<double>(grid_.size());
  for (double& v : out) v *= scale;
}

void set_fft_threads(int threads) {
  std::lock_guard lock(planner_mutex());
  static bool initialised = false;
  if (!initialised) {
    fftw_init_threads();
    initialised = true;
  }
  fftw_plan_with_nthreads(threads < 1 ? 1 : threads);
}

double parseval_dirichlet(const SpectralGrid& sg, std::span<const Complex> spectrum) {
  // sum_x |grad f|^2 h^3 = (h^3 / n^3) sum_k |k|^2 |f_k|^2
  const auto k2 = sg.k2();
  const auto mult = sg.multiplicity();
  double acc = 0.0;
  for (std::size_t i = 0; i < spectrum.size(); ++i) acc += mult[i] * k2[i] * std::norm(spectrum[i]);
  return acc * sg.grid().cell_volume() / static_cast<double>(sg.grid().size());
}

}  // namespace nematic
