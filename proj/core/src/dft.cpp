#include "holo/dft.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <mutex>
#include <new>
#include <numbers>
#include <stdexcept>

namespace holo {

namespace {

// FFTW's planner is not thread safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwArray {
  fftw_complex* ptr = nullptr;

  explicit FftwArray(std::size_t n) {
    ptr = static_cast<fftw_complex*>(fftw_malloc(n * sizeof(fftw_complex)));
    if (ptr == nullptr) throw std::bad_alloc();
  }
  ~FftwArray() { fftw_free(ptr); }
  FftwArray(const FftwArray&) = delete;
  FftwArray& operator=(const FftwArray&) = delete;
};

ComplexField unitary_transform(const ComplexField& field, int sign) {
  if (field.width() <= 0 || field.height() <= 0) {
    throw std::invalid_argument("cannot transform an empty field");
  }
  if (!field.all_finite()) {
    throw std::invalid_argument("transform input contains non-finite values");
  }
  const int nx = field.width();
  const int ny = field.height();
  const std::size_t n = field.size();

  // fftw_malloc keeps the buffers identically aligned on every call, so
  // FFTW_ESTIMATE resolves to the same plan and results reproduce exactly.
  FftwArray in(n);
  FftwArray out(n);
  fftw_plan plan = nullptr;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_2d(ny, nx, in.ptr, out.ptr, sign, FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw std::runtime_error("FFTW plan creation failed");

  std::memcpy(in.ptr, field.data().data(), n * sizeof(Complex));
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }

  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<Complex> result(n);
  const double* o = reinterpret_cast<const double*>(out.ptr);
  for (std::size_t i = 0; i < n; ++i) {
    result[i] = Complex{o[2 * i] * scale, o[2 * i + 1] * scale};
  }
  return ComplexField(nx, ny, std::move(result));
}

std::vector<Complex>& pixel_row_scratch(std::size_t n) {
  thread_local std::vector<Complex> scratch;
  scratch.resize(n);
  return scratch;
}

}  // namespace

ComplexField forward_dft(const ComplexField& field) {
  return unitary_transform(field, FFTW_FORWARD);
}

ComplexField inverse_dft(const ComplexField& field) {
  return unitary_transform(field, FFTW_BACKWARD);
}

TwiddleTable::TwiddleTable(int nx, int ny) : nx_(nx), ny_(ny) {
  if (nx <= 0 || ny <= 0) {
    throw std::invalid_argument("TwiddleTable dimensions must be positive");
  }
  wx_.resize(nx);
  wy_.resize(ny);
  for (int k = 0; k < nx; ++k) {
    const double phi = -2.0 * std::numbers::pi * k / nx;
    wx_[k] = Complex{std::cos(phi), std::sin(phi)};
  }
  for (int k = 0; k < ny; ++k) {
    const double phi = -2.0 * std::numbers::pi * k / ny;
    wy_[k] = Complex{std::cos(phi), std::sin(phi)};
  }
}

void TwiddleTable::pixel_factors_x(int x, std::span<Complex> out) const {
  if (x < 0 || x >= nx_) throw std::out_of_range("pixel x out of range");
  if (out.size() != static_cast<std::size_t>(nx_)) {
    throw std::invalid_argument("pixel_factors_x output span has wrong length");
  }
  int idx = 0;
  for (int k = 0; k < nx_; ++k) {
    out[k] = wx_[idx];
    idx += x;
    if (idx >= nx_) idx -= nx_;
  }
}

void TwiddleTable::pixel_factors_y(int y, std::span<Complex> out) const {
  if (y < 0 || y >= ny_) throw std::out_of_range("pixel y out of range");
  if (out.size() != static_cast<std::size_t>(ny_)) {
    throw std::invalid_argument("pixel_factors_y output span has wrong length");
  }
  int idx = 0;
  for (int k = 0; k < ny_; ++k) {
    out[k] = wy_[idx];
    idx += y;
    if (idx >= ny_) idx -= ny_;
  }
}

void incremental_update(ComplexField& replay, int x, int y, Complex delta_h) {
  TwiddleTable twiddles(replay.width(), replay.height());
  incremental_update(replay, x, y, delta_h, twiddles);
}

void incremental_update(ComplexField& replay, int x, int y, Complex delta_h,
                        const TwiddleTable& twiddles) {
  const int nx = replay.width();
  const int ny = replay.height();
  if (nx != twiddles.nx() || ny != twiddles.ny()) {
    throw std::invalid_argument("twiddle table does not match field dimensions");
  }
  if (!replay.contains(x, y)) {
    throw std::out_of_range("incremental_update pixel index out of range");
  }
  if (delta_h == Complex{0.0, 0.0}) return;

  const double scale = 1.0 / std::sqrt(static_cast<double>(nx) * ny);
  const double c_re = delta_h.real() * scale;
  const double c_im = delta_h.imag() * scale;

  std::vector<Complex>& factors = pixel_row_scratch(static_cast<std::size_t>(nx));
  twiddles.pixel_factors_x(x, factors);
  const double* fx = reinterpret_cast<const double*>(factors.data());
  const std::span<const Complex> wy = twiddles.axis_y();
  double* r = reinterpret_cast<double*>(replay.data().data());

  int iy = 0;
  for (int v = 0; v < ny; ++v) {
    const Complex wv = wy[iy];
    iy += y;
    if (iy >= ny) iy -= ny;
    const double cv_re = c_re * wv.real() - c_im * wv.imag();
    const double cv_im = c_re * wv.imag() + c_im * wv.real();
    double* row = r + 2 * static_cast<std::size_t>(v) * nx;
    for (int u = 0; u < nx; ++u) {
      const double f_re = fx[2 * u];
      const double f_im = fx[2 * u + 1];
      row[2 * u] += cv_re * f_re - cv_im * f_im;
      row[2 * u + 1] += cv_re * f_im + cv_im * f_re;
    }
  }
}

Complex residual_projection(const ComplexField& target, const ComplexField& replay,
                            int x, int y, const TwiddleTable& twiddles) {
  const int nx = replay.width();
  const int ny = replay.height();
  if (target.width() != nx || target.height() != ny) {
    throw std::invalid_argument("target and replay dimensions differ");
  }
  if (nx != twiddles.nx() || ny != twiddles.ny()) {
    throw std::invalid_argument("twiddle table does not match field dimensions");
  }
  if (!replay.contains(x, y)) {
    throw std::out_of_range("residual_projection pixel index out of range");
  }

  std::vector<Complex>& factors = pixel_row_scratch(static_cast<std::size_t>(nx));
  twiddles.pixel_factors_x(x, factors);
  const double* fx = reinterpret_cast<const double*>(factors.data());
  const double* t = reinterpret_cast<const double*>(target.data().data());
  const double* r = reinterpret_cast<const double*>(replay.data().data());
  const std::span<const Complex> wy = twiddles.axis_y();

  double s_re = 0.0;
  double s_im = 0.0;
  int iy = 0;
  for (int v = 0; v < ny; ++v) {
    const Complex wv = wy[iy];
    iy += y;
    if (iy >= ny) iy -= ny;
    const std::size_t base = 2 * static_cast<std::size_t>(v) * nx;
    const double* trow = t + base;
    const double* rrow = r + base;
    double a_re = 0.0;
    double a_im = 0.0;
    for (int u = 0; u < nx; ++u) {
      const double d_re = trow[2 * u] - rrow[2 * u];
      const double d_im = trow[2 * u + 1] - rrow[2 * u + 1];
      const double f_re = fx[2 * u];
      const double f_im = fx[2 * u + 1];
      // conj(f) * d
      a_re += f_re * d_re + f_im * d_im;
      a_im += f_re * d_im - f_im * d_re;
    }
    // s += conj(wv) * a
    s_re += wv.real() * a_re + wv.imag() * a_im;
    s_im += wv.real() * a_im - wv.imag() * a_re;
  }
  return Complex{s_re, s_im};
}

}  // namespace holo
