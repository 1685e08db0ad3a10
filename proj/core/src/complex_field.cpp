#include "holo/complex_field.hpp"

#include <cmath>
#include <stdexcept>

namespace holo {

ComplexField::ComplexField(int width, int height)
    : width_(width), height_(height) {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("ComplexField dimensions must be positive");
  }
  data_.assign(static_cast<std::size_t>(width) * height, Complex{0.0, 0.0});
}

ComplexField::ComplexField(int width, int height, std::vector<Complex> values)
    : width_(width), height_(height), data_(std::move(values)) {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("ComplexField dimensions must be positive");
  }
  if (data_.size() != static_cast<std::size_t>(width) * height) {
    throw std::invalid_argument("ComplexField data length does not match dimensions");
  }
}

bool ComplexField::all_finite() const {
  for (const Complex& z : data_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

double ComplexField::total_energy() const {
  double sum = 0.0;
  for (const Complex& z : data_) {
    sum += z.real() * z.real() + z.imag() * z.imag();
  }
  return sum;
}

}  // namespace holo
