#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "nematic/field.hpp"

namespace nematic {

using Complex = std::complex<double>;
using ComplexBuffer = std::vector<Complex, AlignedAllocator<Complex>>;

/// Real-to-complex FFT pair on a GridSpec, with the periodic wave numbers.
///
/// The half spectrum has n * n * (n/2 + 1) entries, kx fastest-varying in
/// storage order (FFTW's r2c layout for an x-fastest real array). The
/// Nyquist wave number is taken as -pi/h on every axis. Instances are
/// immutable and safe to share between threads.
class SpectralGrid {
 public:
  explicit SpectralGrid(const GridSpec& grid);
  ~SpectralGrid();
  SpectralGrid(const SpectralGrid&) = delete;
  SpectralGrid& operator=(const SpectralGrid&) = delete;

  /// Process-wide cached instance for `grid`.
  static std::shared_ptr<const SpectralGrid> shared(const GridSpec& grid);

  const GridSpec& grid() const { return grid_; }
  std::size_t real_size() const { return grid_.size(); }
  std::size_t spectral_size() const { return k2_.size(); }

  /// Unnormalised forward transform.
  void forward(std::span<const double> in, std::span<Complex> out) const;
  /// Inverse transform including the 1/n^3 factor; `in` is left untouched.
  void inverse(std::span<const Complex> in, std::span<double> out) const;

  ComplexBuffer make_spectrum() const { return ComplexBuffer(spectral_size()); }

  /// |k|^2 per half-spectrum entry.
  std::span<const double> k2() const { return k2_; }
  /// 1 or 2: how many full-spectrum entries each half-spectrum entry stands for.
  std::span<const double> multiplicity() const { return multiplicity_; }

 private:
  struct Plans;
  GridSpec grid_;
  std::unique_ptr<Plans> plans_;
  std::vector<double> k2_;
  std::vector<double> multiplicity_;
};

/// Enables multi-threaded FFT execution for plans created afterwards.
void set_fft_threads(int threads);

/// Dirichlet integral sum_x |grad f|^2 h^3 of a real field, from its spectrum.
double parseval_dirichlet(const SpectralGrid& sg, std::span<const Complex> spectrum);

}  // namespace nematic
