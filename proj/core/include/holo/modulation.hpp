#pragma once

#include <span>
#include <string>
#include <vector>

#include "holo/complex_field.hpp"

namespace holo {

enum class ModulationKind {
  binary_amplitude,
  multi_amplitude,
  continuous_amplitude,
  binary_phase,
  multi_phase,
  continuous_phase,
};

// The set of complex states a device pixel can realize, plus nearest-state
// quantization. Discrete phase states are uniformly spaced on the unit
// circle starting at 0 rad: theta_k = 2*pi*k/L. Discrete amplitude states
// are k/(L-1) on the real axis. Ties at exact midpoints resolve to the
// lower level index (the wraparound midpoint resolves to level 0).
class ModulationScheme {
 public:
  static ModulationScheme binary_phase();
  static ModulationScheme multi_phase(int levels);
  static ModulationScheme continuous_phase();
  static ModulationScheme binary_amplitude();
  static ModulationScheme multi_amplitude(int levels);
  static ModulationScheme continuous_amplitude();

  // Accepts "phase:<L>", "phase:continuous", "amplitude:<L>",
  // "amplitude:continuous" with 2 <= L <= 65536. Throws
  // std::invalid_argument on anything else.
  static ModulationScheme parse(const std::string& text);

  ModulationKind kind() const { return kind_; }

  // Number of discrete states; 0 for continuous kinds.
  int levels() const { return levels_; }

  bool is_phase() const;
  bool is_amplitude() const;
  bool is_continuous() const;
  bool is_discrete() const { return !is_continuous(); }

  // Discrete state table, indexed by level. Empty for continuous kinds.
  std::span<const Complex> states() const { return states_; }
  Complex state(int level) const;

  // Nearest achievable state by Euclidean distance in the complex plane.
  Complex quantize(Complex value) const;

  // Nearest achievable state to the unit-circle point at angle theta.
  // Phase kinds only; throws std::invalid_argument for amplitude kinds.
  Complex quantize_phase(double theta) const;

  // Level index chosen by quantize_phase. Discrete phase kinds only.
  int phase_level_of(double theta) const;

  std::string to_string() const;

  bool operator==(const ModulationScheme&) const = default;

 private:
  ModulationScheme(ModulationKind kind, int levels);

  ModulationKind kind_;
  int levels_;
  std::vector<Complex> states_;
};

}  // namespace holo
