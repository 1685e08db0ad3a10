#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace holo {

using Complex = std::complex<double>;

/// Row-major grid of complex amplitudes. Element (x, y) lives at
/// data[y * width + x]: x runs along a row, y selects the row. The same
/// container represents diffraction fields, replay fields and targets.
///
/// Transform-domain fields are stored corner-origin (DC at index 0); the
/// DC-centered presentation view is a reindexing applied at the target /
/// display layer only.
class ComplexField {
 public:
  ComplexField() = default;
  ComplexField(int width, int height);
  ComplexField(int width, int height, std::vector<Complex> values);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }

  Complex& at(int x, int y) { return data_[static_cast<std::size_t>(y) * width_ + x]; }
  const Complex& at(int x, int y) const {
    return data_[static_cast<std::size_t>(y) * width_ + x];
  }

  std::span<Complex> data() { return data_; }
  std::span<const Complex> data() const { return data_; }

  bool contains(int x, int y) const {
    return x >= 0 && x < width_ && y >= 0 && y < height_;
  }

  bool all_finite() const;

  /// Sum of |z|^2 over the grid.
  double total_energy() const;

  friend bool operator==(const ComplexField&, const ComplexField&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<Complex> data_;
};

/// Index maps between the corner-origin storage used by the transforms and
/// the DC-centered presentation view. Mutual inverses for any n >= 1.
constexpr int corner_to_centered(int corner, int n) { return (corner + n / 2) % n; }
constexpr int centered_to_corner(int centered, int n) {
  return (centered + n - n / 2) % n;
}

}  // namespace holo
