#pragma once

#include <optional>
#include <string>

#include "holo/complex_field.hpp"
#include "holo/image.hpp"
#include "holo/metrics.hpp"

namespace holo {

enum class TargetLayout { full_field, central_quadrant };
enum class EnergyNorm { parseval_matched, unit_max };

TargetLayout parse_layout(const std::string& text);
EnergyNorm parse_energy_norm(const std::string& text);
std::string to_string(TargetLayout layout);
std::string to_string(EnergyNorm norm);

// Recipe for a phase-sensitive target: an amplitude image (optionally paired
// with a phase image mapped [0,1) -> [0,2*pi)) placed either across the whole
// field or into its centered quadrant with exact zeros outside.
struct TargetSpec {
  Image amplitude;
  std::optional<Image> phase;
  // 0 means derive from the image: equal to the image for full-field layout,
  // twice the image for central-quadrant layout.
  int field_width = 0;
  int field_height = 0;
  TargetLayout layout = TargetLayout::central_quadrant;
  EnergyNorm energy_norm = EnergyNorm::parseval_matched;
};

// A built target field plus everything reporting needs: the region of
// interest, the [0,1] reference amplitude image, and the scale that took the
// reference into field units.
struct Target {
  ComplexField field;
  TargetLayout layout = TargetLayout::central_quadrant;
  double amplitude_scale = 1.0;
  Image reference_amplitude;

  int width() const { return field.width(); }
  int height() const { return field.height(); }
  RegionWeights region() const;
};

// Builds the corner-origin target field. With parseval-matched normalization
// the amplitudes are scaled so sum |T|^2 = Nx*Ny, the total energy of any
// unit-magnitude hologram; with unit-max the peak amplitude becomes 1.
Target build_target(const TargetSpec& spec);

// Reindexes a corner-origin field to the DC-centered view and back.
ComplexField to_centered(const ComplexField& field);
ComplexField to_corner(const ComplexField& field);

// Magnitude of the region of interest of a corner-origin field, extracted in
// the centered view. Dimensions match the target's reference amplitude.
Image roi_magnitude(const ComplexField& field, const Target& target);

}  // namespace holo
