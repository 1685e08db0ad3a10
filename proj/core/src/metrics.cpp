#include "holo/metrics.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace holo {

namespace {

constexpr int kSsimWindow = 11;
constexpr double kSsimSigma = 1.5;
constexpr double kSsimK1 = 0.01;
constexpr double kSsimK2 = 0.03;

// Valid-mode separable convolution with a symmetric 1D kernel: horizontal
// pass then vertical pass, output shrinks by window-1 in each dimension.
std::vector<double> windowed_mean(const std::vector<double>& src, int width, int height,
                                  const std::vector<double>& kernel) {
  const int k = static_cast<int>(kernel.size());
  const int out_w = width - k + 1;
  const int out_h = height - k + 1;
  std::vector<double> horizontal(static_cast<std::size_t>(out_w) * height);
  for (int y = 0; y < height; ++y) {
    const double* row = src.data() + static_cast<std::size_t>(y) * width;
    double* out = horizontal.data() + static_cast<std::size_t>(y) * out_w;
    for (int x = 0; x < out_w; ++x) {
      double acc = 0.0;
      for (int i = 0; i < k; ++i) acc += kernel[i] * row[x + i];
      out[x] = acc;
    }
  }
  std::vector<double> result(static_cast<std::size_t>(out_w) * out_h);
  for (int y = 0; y < out_h; ++y) {
    double* out = result.data() + static_cast<std::size_t>(y) * out_w;
    for (int x = 0; x < out_w; ++x) {
      double acc = 0.0;
      for (int i = 0; i < k; ++i) {
        acc += kernel[i] * horizontal[static_cast<std::size_t>(y + i) * out_w + x];
      }
      out[x] = acc;
    }
  }
  return result;
}

}  // namespace

RegionWeights::RegionWeights(Kind kind, int width, int height)
    : kind_(kind), width_(width), height_(height) {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("region dimensions must be positive");
  }
  if (kind == Kind::central_quadrant && (width % 2 != 0 || height % 2 != 0)) {
    throw std::invalid_argument("central-quadrant region requires even dimensions");
  }
}

RegionWeights RegionWeights::full_field(int width, int height) {
  return RegionWeights(Kind::full_field, width, height);
}

RegionWeights RegionWeights::central_quadrant(int width, int height) {
  return RegionWeights(Kind::central_quadrant, width, height);
}

bool RegionWeights::in_region(int x, int y) const {
  if (kind_ == Kind::full_field) return true;
  const int cx = corner_to_centered(x, width_);
  const int cy = corner_to_centered(y, height_);
  return cx >= width_ / 4 && cx < width_ / 4 + width_ / 2 && cy >= height_ / 4 &&
         cy < height_ / 4 + height_ / 2;
}

double mse(const ComplexField& target, const ComplexField& replay) {
  if (target.width() != replay.width() || target.height() != replay.height()) {
    throw std::invalid_argument("mse requires matching field dimensions");
  }
  const double* t = reinterpret_cast<const double*>(target.data().data());
  const double* r = reinterpret_cast<const double*>(replay.data().data());
  const std::size_t n = target.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d_re = t[2 * i] - r[2 * i];
    const double d_im = t[2 * i + 1] - r[2 * i + 1];
    sum += d_re * d_re + d_im * d_im;
  }
  return sum / static_cast<double>(n);
}

double mse_delta_for_pixel_change(const ComplexField& target, const ComplexField& replay,
                                  int x, int y, Complex current_value, Complex new_value,
                                  const TwiddleTable& twiddles) {
  const Complex projection = residual_projection(target, replay, x, y, twiddles);
  return mse_delta_from_projection(projection, new_value - current_value, replay.width(),
                                   replay.height());
}

double diffraction_efficiency(const ComplexField& replay, const RegionWeights& region) {
  if (replay.width() != region.width() || replay.height() != region.height()) {
    throw std::invalid_argument("efficiency region does not match field dimensions");
  }
  double total = 0.0;
  double inside = 0.0;
  for (int y = 0; y < replay.height(); ++y) {
    for (int x = 0; x < replay.width(); ++x) {
      const Complex v = replay.at(x, y);
      const double e = v.real() * v.real() + v.imag() * v.imag();
      total += e;
      if (region.in_region(x, y)) inside += e;
    }
  }
  if (total == 0.0) {
    throw std::domain_error("diffraction efficiency undefined for an all-zero replay field");
  }
  return inside / total;
}

double ssim(const Image& a, const Image& b, double dynamic_range) {
  if (a.width != b.width || a.height != b.height) {
    throw std::invalid_argument("ssim requires matching image dimensions");
  }
  if (a.width < kSsimWindow || a.height < kSsimWindow) {
    throw std::invalid_argument("ssim requires images of at least 11x11");
  }
  if (!(dynamic_range > 0.0)) {
    throw std::invalid_argument("ssim dynamic range must be positive");
  }

  std::vector<double> kernel(kSsimWindow);
  double kernel_sum = 0.0;
  for (int i = 0; i < kSsimWindow; ++i) {
    const double d = i - (kSsimWindow - 1) / 2.0;
    kernel[i] = std::exp(-d * d / (2.0 * kSsimSigma * kSsimSigma));
    kernel_sum += kernel[i];
  }
  for (double& v : kernel) v /= kernel_sum;

  const std::size_t n = a.pixels.size();
  std::vector<double> aa(n);
  std::vector<double> bb(n);
  std::vector<double> ab(n);
  for (std::size_t i = 0; i < n; ++i) {
    aa[i] = a.pixels[i] * a.pixels[i];
    bb[i] = b.pixels[i] * b.pixels[i];
    ab[i] = a.pixels[i] * b.pixels[i];
  }

  const std::vector<double> mu_a = windowed_mean(a.pixels, a.width, a.height, kernel);
  const std::vector<double> mu_b = windowed_mean(b.pixels, a.width, a.height, kernel);
  const std::vector<double> m_aa = windowed_mean(aa, a.width, a.height, kernel);
  const std::vector<double> m_bb = windowed_mean(bb, a.width, a.height, kernel);
  const std::vector<double> m_ab = windowed_mean(ab, a.width, a.height, kernel);

  const double c1 = kSsimK1 * dynamic_range * kSsimK1 * dynamic_range;
  const double c2 = kSsimK2 * dynamic_range * kSsimK2 * dynamic_range;

  double total = 0.0;
  for (std::size_t i = 0; i < mu_a.size(); ++i) {
    const double var_a = m_aa[i] - mu_a[i] * mu_a[i];
    const double var_b = m_bb[i] - mu_b[i] * mu_b[i];
    const double cov = m_ab[i] - mu_a[i] * mu_b[i];
    const double numerator = (2.0 * mu_a[i] * mu_b[i] + c1) * (2.0 * cov + c2);
    const double denominator = (mu_a[i] * mu_a[i] + mu_b[i] * mu_b[i] + c1) * (var_a + var_b + c2);
    total += numerator / denominator;
  }
  return total / static_cast<double>(mu_a.size());
}

}  // namespace holo
