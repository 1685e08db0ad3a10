#pragma once

#include <cmath>

#include "holo/complex_field.hpp"
#include "holo/dft.hpp"
#include "holo/image.hpp"

namespace holo {

// Region-of-interest weighting for error and efficiency reporting. Error
// weights are uniform (the zero-outside-ROI convention lives in the target
// amplitudes); the region membership only drives diffraction efficiency.
class RegionWeights {
 public:
  enum class Kind { full_field, central_quadrant };

  static RegionWeights full_field(int width, int height);

  // Centered Nx/2 x Ny/2 block; requires even dimensions.
  static RegionWeights central_quadrant(int width, int height);

  Kind kind() const { return kind_; }
  int width() const { return width_; }
  int height() const { return height_; }

  double weight(int, int) const { return 1.0; }

  // Region membership for corner-origin coordinates.
  bool in_region(int x, int y) const;

  bool operator==(const RegionWeights&) const = default;

 private:
  RegionWeights(Kind kind, int width, int height);

  Kind kind_;
  int width_;
  int height_;
};

// Phase-sensitive mean squared error over the full field:
// E = (1/(Nx*Ny)) * sum |T - R|^2.
double mse(const ComplexField& target, const ComplexField& replay);

// Exact error change for setting hologram pixel (x,y) from current_value to
// new_value, evaluated against the cached replay without a fresh transform.
double mse_delta_for_pixel_change(const ComplexField& target, const ComplexField& replay,
                                  int x, int y, Complex current_value, Complex new_value,
                                  const TwiddleTable& twiddles);

// Same error change expressed through the residual projection
// S = residual_projection(target, replay, x, y) for delta_h = new - current:
// dE = (|dH|^2 - (2/sqrt(N)) * Re(conj(dH) * S)) / N.
inline double mse_delta_from_projection(Complex projection, Complex delta_h, int nx, int ny) {
  const double n = static_cast<double>(nx) * ny;
  const double d_re = delta_h.real();
  const double d_im = delta_h.imag();
  const double cross = d_re * projection.real() + d_im * projection.imag();
  return (d_re * d_re + d_im * d_im - 2.0 / std::sqrt(n) * cross) / n;
}

// Fraction of replay energy inside the region: sum_region |R|^2 / sum |R|^2.
// Throws std::domain_error on an all-zero replay.
double diffraction_efficiency(const ComplexField& replay, const RegionWeights& region);

// Mean structural similarity with an 11x11 Gaussian window (sigma 1.5),
// K1 = 0.01, K2 = 0.03, windows fully inside the image (no padding).
// Requires matching dimensions of at least 11x11 and dynamic_range > 0.
double ssim(const Image& a, const Image& b, double dynamic_range);

}  // namespace holo
