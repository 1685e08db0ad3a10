#include "holo/modulation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace holo {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Maps theta onto [0, 2*pi). Adding 2*pi to a tiny negative remainder can
// round back up to 2*pi itself, hence the final guard.
double wrap_angle(double theta) {
  if (!std::isfinite(theta)) {
    throw std::invalid_argument("phase angle must be finite");
  }
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

}  // namespace

ModulationScheme::ModulationScheme(ModulationKind kind, int levels)
    : kind_(kind), levels_(levels) {
  switch (kind_) {
    case ModulationKind::binary_amplitude:
    case ModulationKind::binary_phase:
      if (levels_ != 2) throw std::invalid_argument("binary scheme must have 2 levels");
      break;
    case ModulationKind::multi_amplitude:
    case ModulationKind::multi_phase:
      if (levels_ < 2) throw std::invalid_argument("discrete scheme needs at least 2 levels");
      break;
    case ModulationKind::continuous_amplitude:
    case ModulationKind::continuous_phase:
      levels_ = 0;
      break;
  }
  if (is_discrete()) {
    states_.resize(levels_);
    if (is_phase()) {
      for (int k = 0; k < levels_; ++k) {
        const double theta = kTwoPi * k / levels_;
        states_[k] = Complex{std::cos(theta), std::sin(theta)};
      }
    } else {
      for (int k = 0; k < levels_; ++k) {
        states_[k] = Complex{static_cast<double>(k) / (levels_ - 1), 0.0};
      }
    }
  }
}

ModulationScheme ModulationScheme::binary_phase() {
  return ModulationScheme(ModulationKind::binary_phase, 2);
}

ModulationScheme ModulationScheme::multi_phase(int levels) {
  if (levels == 2) return binary_phase();
  return ModulationScheme(ModulationKind::multi_phase, levels);
}

ModulationScheme ModulationScheme::continuous_phase() {
  return ModulationScheme(ModulationKind::continuous_phase, 0);
}

ModulationScheme ModulationScheme::binary_amplitude() {
  return ModulationScheme(ModulationKind::binary_amplitude, 2);
}

ModulationScheme ModulationScheme::multi_amplitude(int levels) {
  if (levels == 2) return binary_amplitude();
  return ModulationScheme(ModulationKind::multi_amplitude, levels);
}

ModulationScheme ModulationScheme::continuous_amplitude() {
  return ModulationScheme(ModulationKind::continuous_amplitude, 0);
}

ModulationScheme ModulationScheme::parse(const std::string& text) {
  const std::size_t colon = text.find(':');
  if (colon == std::string::npos) {
    throw std::invalid_argument("modulation scheme must look like phase:256 or phase:continuous");
  }
  const std::string family = text.substr(0, colon);
  const std::string arg = text.substr(colon + 1);
  if (family != "phase" && family != "amplitude") {
    throw std::invalid_argument("unknown modulation family: " + family);
  }
  const bool phase = family == "phase";
  if (arg == "continuous") {
    return phase ? continuous_phase() : continuous_amplitude();
  }
  if (arg.empty() || arg.find_first_not_of("0123456789") != std::string::npos) {
    throw std::invalid_argument("modulation level count must be a positive integer or 'continuous'");
  }
  long levels = 0;
  try {
    levels = std::stol(arg);
  } catch (const std::exception&) {
    throw std::invalid_argument("modulation level count out of range: " + arg);
  }
  if (levels < 2 || levels > 65536) {
    throw std::invalid_argument("modulation level count must be between 2 and 65536");
  }
  const int l = static_cast<int>(levels);
  return phase ? multi_phase(l) : multi_amplitude(l);
}

bool ModulationScheme::is_phase() const {
  return kind_ == ModulationKind::binary_phase || kind_ == ModulationKind::multi_phase ||
         kind_ == ModulationKind::continuous_phase;
}

bool ModulationScheme::is_amplitude() const { return !is_phase(); }

bool ModulationScheme::is_continuous() const {
  return kind_ == ModulationKind::continuous_phase ||
         kind_ == ModulationKind::continuous_amplitude;
}

Complex ModulationScheme::state(int level) const {
  if (is_continuous()) throw std::invalid_argument("continuous scheme has no state table");
  if (level < 0 || level >= levels_) throw std::out_of_range("state level out of range");
  return states_[level];
}

Complex ModulationScheme::quantize(Complex value) const {
  if (is_phase()) {
    // All phase states share unit magnitude, so the nearest state by
    // Euclidean distance is the nearest by angle. atan2(0, 0) = 0 makes
    // the origin land on level 0.
    return quantize_phase(std::atan2(value.imag(), value.real()));
  }
  const double a = std::clamp(value.real(), 0.0, 1.0);
  if (is_continuous()) return Complex{a, 0.0};
  // States are k/(L-1); scale, split into the two bracketing levels and
  // keep the closer one, lower index on a tie.
  const double pos = a * (levels_ - 1);
  int k0 = static_cast<int>(pos);
  if (k0 >= levels_ - 1) k0 = levels_ - 2;
  const int k1 = k0 + 1;
  const double d0 = std::abs(a - states_[k0].real());
  const double d1 = std::abs(a - states_[k1].real());
  return d1 < d0 ? states_[k1] : states_[k0];
}

Complex ModulationScheme::quantize_phase(double theta) const {
  if (!is_phase()) {
    throw std::invalid_argument("quantize_phase requires a phase modulation scheme");
  }
  if (is_continuous()) {
    if (!std::isfinite(theta)) throw std::invalid_argument("phase angle must be finite");
    return Complex{std::cos(theta), std::sin(theta)};
  }
  return states_[phase_level_of(theta)];
}

int ModulationScheme::phase_level_of(double theta) const {
  if (!is_phase() || is_continuous()) {
    throw std::invalid_argument("phase_level_of requires a discrete phase scheme");
  }
  const double t = wrap_angle(theta);
  // The nearest level is one of the two bracketing t. Angular distances go
  // through remainder() so the wraparound gap (level L-1 back to level 0)
  // is measured correctly.
  int k0 = static_cast<int>(t * levels_ / kTwoPi);
  if (k0 >= levels_) k0 = levels_ - 1;
  const int k1 = (k0 + 1) % levels_;
  const double d0 = std::abs(std::remainder(t - kTwoPi * k0 / levels_, kTwoPi));
  const double d1 = std::abs(std::remainder(t - kTwoPi * k1 / levels_, kTwoPi));
  if (d0 < d1) return k0;
  if (d1 < d0) return k1;
  return std::min(k0, k1);
}

std::string ModulationScheme::to_string() const {
  const std::string family = is_phase() ? "phase" : "amplitude";
  if (is_continuous()) return family + ":continuous";
  return family + ":" + std::to_string(levels_);
}

}  // namespace holo
