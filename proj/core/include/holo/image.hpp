#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace holo {

// Row-major grayscale image with samples normalized to [0, 1].
struct Image {
  int width = 0;
  int height = 0;
  std::vector<double> pixels;

  Image() = default;
  Image(int w, int h) : width(w), height(h) {
    if (w <= 0 || h <= 0) throw std::invalid_argument("image dimensions must be positive");
    pixels.assign(static_cast<std::size_t>(w) * h, 0.0);
  }

  double& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
  double at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
};

// Loads a PNG or binary PGM (P5) image, detected by file signature.
// Integer samples scale linearly to [0, 1]; color PNGs collapse to
// grayscale with Rec. 709 luma weights. 8- and 16-bit samples supported.
// Throws std::runtime_error on missing files or undecodable content.
Image load_image(const std::string& path);

// Writes a 16-bit grayscale image, format chosen by extension
// (.png or .pgm). Samples are clamped to [0, 1] and scaled to 0..65535.
void save_gray16(const std::string& path, const Image& image);

}  // namespace holo
