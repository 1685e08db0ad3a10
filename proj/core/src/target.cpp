#include "holo/target.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace holo {

namespace {

void check_field_dims(const TargetSpec& spec, int width, int height) {
  if (spec.layout == TargetLayout::central_quadrant) {
    if (width % 2 != 0 || height % 2 != 0) {
      throw std::invalid_argument("central-quadrant layout requires even field dimensions");
    }
    if (spec.amplitude.width != width / 2 || spec.amplitude.height != height / 2) {
      throw std::invalid_argument(
          "central-quadrant layout requires image dimensions of exactly half the field");
    }
  } else if (spec.amplitude.width != width || spec.amplitude.height != height) {
    throw std::invalid_argument("full-field layout requires image dimensions equal to the field");
  }
}

}  // namespace

TargetLayout parse_layout(const std::string& text) {
  if (text == "full-field") return TargetLayout::full_field;
  if (text == "central-quadrant") return TargetLayout::central_quadrant;
  throw std::invalid_argument("layout must be full-field or central-quadrant");
}

EnergyNorm parse_energy_norm(const std::string& text) {
  if (text == "parseval-matched") return EnergyNorm::parseval_matched;
  if (text == "unit-max") return EnergyNorm::unit_max;
  throw std::invalid_argument("energy norm must be parseval-matched or unit-max");
}

std::string to_string(TargetLayout layout) {
  return layout == TargetLayout::full_field ? "full-field" : "central-quadrant";
}

std::string to_string(EnergyNorm norm) {
  return norm == EnergyNorm::parseval_matched ? "parseval-matched" : "unit-max";
}

RegionWeights Target::region() const {
  return layout == TargetLayout::central_quadrant
             ? RegionWeights::central_quadrant(width(), height())
             : RegionWeights::full_field(width(), height());
}

Target build_target(const TargetSpec& spec) {
  if (spec.amplitude.width <= 0 || spec.amplitude.height <= 0) {
    throw std::invalid_argument("target amplitude image is empty");
  }
  if (spec.phase.has_value() && (spec.phase->width != spec.amplitude.width ||
                                 spec.phase->height != spec.amplitude.height)) {
    throw std::invalid_argument("amplitude and phase images must share dimensions");
  }

  int width = spec.field_width;
  int height = spec.field_height;
  if (width == 0 && height == 0) {
    const int factor = spec.layout == TargetLayout::central_quadrant ? 2 : 1;
    width = spec.amplitude.width * factor;
    height = spec.amplitude.height * factor;
  }
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("field dimensions must be positive");
  }
  check_field_dims(spec, width, height);

  double scale = 0.0;
  if (spec.energy_norm == EnergyNorm::parseval_matched) {
    double energy = 0.0;
    for (double v : spec.amplitude.pixels) energy += v * v;
    if (energy == 0.0) throw std::invalid_argument("target amplitude image is all zero");
    scale = std::sqrt(static_cast<double>(width) * height / energy);
  } else {
    double peak = 0.0;
    for (double v : spec.amplitude.pixels) peak = std::max(peak, v);
    if (peak == 0.0) throw std::invalid_argument("target amplitude image is all zero");
    scale = 1.0 / peak;
  }

  ComplexField field(width, height);
  const int x0 = spec.layout == TargetLayout::central_quadrant ? width / 4 : 0;
  const int y0 = spec.layout == TargetLayout::central_quadrant ? height / 4 : 0;
  for (int j = 0; j < spec.amplitude.height; ++j) {
    for (int i = 0; i < spec.amplitude.width; ++i) {
      const int ox = centered_to_corner(x0 + i, width);
      const int oy = centered_to_corner(y0 + j, height);
      const double amplitude = scale * spec.amplitude.at(i, j);
      if (spec.phase.has_value()) {
        // Phase value 1 is the same point on the circle as 0.
        const double p = spec.phase->at(i, j);
        const double theta = 2.0 * std::numbers::pi * (p - std::floor(p));
        field.at(ox, oy) = Complex{amplitude * std::cos(theta), amplitude * std::sin(theta)};
      } else {
        field.at(ox, oy) = Complex{amplitude, 0.0};
      }
    }
  }

  Target target;
  target.field = std::move(field);
  target.layout = spec.layout;
  target.amplitude_scale = scale;
  target.reference_amplitude = spec.amplitude;
  return target;
}

ComplexField to_centered(const ComplexField& field) {
  ComplexField out(field.width(), field.height());
  for (int y = 0; y < field.height(); ++y) {
    for (int x = 0; x < field.width(); ++x) {
      out.at(corner_to_centered(x, field.width()), corner_to_centered(y, field.height())) =
          field.at(x, y);
    }
  }
  return out;
}

ComplexField to_corner(const ComplexField& field) {
  ComplexField out(field.width(), field.height());
  for (int y = 0; y < field.height(); ++y) {
    for (int x = 0; x < field.width(); ++x) {
      out.at(centered_to_corner(x, field.width()), centered_to_corner(y, field.height())) =
          field.at(x, y);
    }
  }
  return out;
}

Image roi_magnitude(const ComplexField& field, const Target& target) {
  if (field.width() != target.width() || field.height() != target.height()) {
    throw std::invalid_argument("field does not match target dimensions");
  }
  const int w = target.reference_amplitude.width;
  const int h = target.reference_amplitude.height;
  const int x0 = target.layout == TargetLayout::central_quadrant ? target.width() / 4 : 0;
  const int y0 = target.layout == TargetLayout::central_quadrant ? target.height() / 4 : 0;
  Image out(w, h);
  for (int j = 0; j < h; ++j) {
    for (int i = 0; i < w; ++i) {
      const int ox = centered_to_corner(x0 + i, target.width());
      const int oy = centered_to_corner(y0 + j, target.height());
      out.at(i, j) = std::abs(field.at(ox, oy));
    }
  }
  return out;
}

}  // namespace holo
