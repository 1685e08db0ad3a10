#include "holo/image.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>

namespace holo {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f != nullptr) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw std::runtime_error(path + ": " + what);
}

Image load_png(const std::string& path, std::FILE* file) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (png == nullptr) fail(path, "libpng initialization failed");
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    fail(path, "libpng initialization failed");
  }

  std::vector<png_byte> row;
  Image image;
  // libpng reports errors via longjmp; everything reachable from here must
  // stay trivially destructible or live outside the jump scope.
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    fail(path, "failed to decode PNG");
  }

  png_init_io(png, file);
  png_read_info(png, info);

  const png_byte color_type = png_get_color_type(png, info);
  const png_byte bit_depth = png_get_bit_depth(png, info);
  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  png_set_strip_alpha(png);
  png_read_update_info(png, info);

  const png_uint_32 width = png_get_image_width(png, info);
  const png_uint_32 height = png_get_image_height(png, info);
  const int channels = png_get_channels(png, info);
  const int depth = png_get_bit_depth(png, info);
  if (width == 0 || height == 0) {
    png_destroy_read_struct(&png, &info, nullptr);
    fail(path, "zero-dimension image");
  }
  if ((channels != 1 && channels != 3) || (depth != 8 && depth != 16)) {
    png_destroy_read_struct(&png, &info, nullptr);
    fail(path, "unsupported PNG layout");
  }

  image = Image(static_cast<int>(width), static_cast<int>(height));
  row.resize(png_get_rowbytes(png, info));
  const double maxval = depth == 8 ? 255.0 : 65535.0;
  const int bytes_per_sample = depth / 8;

  for (png_uint_32 y = 0; y < height; ++y) {
    png_read_row(png, row.data(), nullptr);
    for (png_uint_32 x = 0; x < width; ++x) {
      const png_byte* px = row.data() +
                           static_cast<std::size_t>(x) * channels * bytes_per_sample;
      double samples[3] = {0.0, 0.0, 0.0};
      for (int c = 0; c < channels; ++c) {
        const png_byte* s = px + c * bytes_per_sample;
        // PNG stores 16-bit samples big-endian.
        const unsigned value = depth == 8 ? s[0] : (static_cast<unsigned>(s[0]) << 8) | s[1];
        samples[c] = value / maxval;
      }
      image.at(static_cast<int>(x), static_cast<int>(y)) =
          channels == 1
              ? samples[0]
              : 0.2126 * samples[0] + 0.7152 * samples[1] + 0.0722 * samples[2];
    }
  }
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return image;
}

// Reads the next whitespace-delimited header token, skipping '#' comments.
std::string next_pgm_token(std::istream& in) {
  std::string token;
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (std::isspace(c)) {
      c = in.get();
    } else {
      break;
    }
  }
  while (c != EOF && !std::isspace(c)) {
    token.push_back(static_cast<char>(c));
    c = in.get();
  }
  return token;
}

long parse_pgm_number(const std::string& token, const std::string& path) {
  if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos) {
    fail(path, "malformed PGM header");
  }
  return std::stol(token);
}

Image load_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(path, "cannot open file");
  if (next_pgm_token(in) != "P5") fail(path, "not a binary PGM");
  const long width = parse_pgm_number(next_pgm_token(in), path);
  const long height = parse_pgm_number(next_pgm_token(in), path);
  const long maxval = parse_pgm_number(next_pgm_token(in), path);
  if (width <= 0 || height <= 0) fail(path, "zero-dimension image");
  if (maxval <= 0 || maxval > 65535) fail(path, "unsupported PGM maxval");
  // The header ends with exactly one whitespace byte before the raster,
  // already consumed by the token reader.

  Image image(static_cast<int>(width), static_cast<int>(height));
  const int bytes_per_sample = maxval > 255 ? 2 : 1;
  std::vector<unsigned char> raster(static_cast<std::size_t>(width) * height * bytes_per_sample);
  in.read(reinterpret_cast<char*>(raster.data()), static_cast<std::streamsize>(raster.size()));
  if (static_cast<std::size_t>(in.gcount()) != raster.size()) fail(path, "truncated PGM raster");

  const double scale = 1.0 / maxval;
  for (std::size_t i = 0; i < image.pixels.size(); ++i) {
    unsigned value;
    if (bytes_per_sample == 1) {
      value = raster[i];
    } else {
      value = (static_cast<unsigned>(raster[2 * i]) << 8) | raster[2 * i + 1];
    }
    if (value > static_cast<unsigned>(maxval)) fail(path, "PGM sample exceeds maxval");
    image.pixels[i] = value * scale;
  }
  return image;
}

std::vector<std::uint16_t> to_u16_samples(const Image& image) {
  if (image.width <= 0 || image.height <= 0) {
    throw std::invalid_argument("cannot save an empty image");
  }
  std::vector<std::uint16_t> samples(image.pixels.size());
  for (std::size_t i = 0; i < image.pixels.size(); ++i) {
    const double v = std::clamp(image.pixels[i], 0.0, 1.0);
    samples[i] = static_cast<std::uint16_t>(std::lround(v * 65535.0));
  }
  return samples;
}

void save_png16(const std::string& path, const Image& image,
                const std::vector<std::uint16_t>& samples) {
  FilePtr file(std::fopen(path.c_str(), "wb"));
  if (!file) fail(path, "cannot open file for writing");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (png == nullptr) fail(path, "libpng initialization failed");
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_write_struct(&png, nullptr);
    fail(path, "libpng initialization failed");
  }

  std::vector<png_byte> row(static_cast<std::size_t>(image.width) * 2);
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    fail(path, "failed to encode PNG");
  }

  png_init_io(png, file.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(image.width),
               static_cast<png_uint_32>(image.height), 16, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      const std::uint16_t v = samples[static_cast<std::size_t>(y) * image.width + x];
      row[2 * x] = static_cast<png_byte>(v >> 8);
      row[2 * x + 1] = static_cast<png_byte>(v & 0xff);
    }
    png_write_row(png, row.data());
  }
  png_write_end(png, info);
  png_destroy_write_struct(&png, &info);
}

void save_pgm16(const std::string& path, const Image& image,
                const std::vector<std::uint16_t>& samples) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(path, "cannot open file for writing");
  out << "P5\n" << image.width << " " << image.height << "\n65535\n";
  std::vector<unsigned char> raster(samples.size() * 2);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    raster[2 * i] = static_cast<unsigned char>(samples[i] >> 8);
    raster[2 * i + 1] = static_cast<unsigned char>(samples[i] & 0xff);
  }
  out.write(reinterpret_cast<const char*>(raster.data()),
            static_cast<std::streamsize>(raster.size()));
  if (!out) fail(path, "write failed");
}

}  // namespace

Image load_image(const std::string& path) {
  FilePtr file(std::fopen(path.c_str(), "rb"));
  if (!file) fail(path, "cannot open file");
  unsigned char magic[8] = {};
  const std::size_t got = std::fread(magic, 1, sizeof(magic), file.get());
  if (got >= 8 && png_sig_cmp(magic, 0, 8) == 0) {
    std::rewind(file.get());
    return load_png(path, file.get());
  }
  if (got >= 2 && magic[0] == 'P' && magic[1] == '5') {
    file.reset();
    return load_pgm(path);
  }
  fail(path, "unsupported image format (expected PNG or binary PGM)");
}

void save_gray16(const std::string& path, const Image& image) {
  const std::vector<std::uint16_t> samples = to_u16_samples(image);
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".png") == 0) {
    save_png16(path, image, samples);
  } else if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".pgm") == 0) {
    save_pgm16(path, image, samples);
  } else {
    fail(path, "unsupported output extension (use .png or .pgm)");
  }
}

}  // namespace holo
