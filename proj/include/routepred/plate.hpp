#pragma once

#include <array>
#include <bitset>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace routepred {

inline constexpr int kGlyphWidth = 5;
inline constexpr int kGlyphHeight = 7;
inline constexpr int kGlyphPixels = kGlyphWidth * kGlyphHeight;
inline constexpr int kCellStride = kGlyphWidth + 1;
inline constexpr std::size_t kMaxPlateLength = 10;
inline constexpr std::uint8_t kDefaultThreshold = 128;

/// Row-major 5x7 bitmap; bit (row * 5 + col) is set for an inked pixel.
using GlyphBits = std::bitset<kGlyphPixels>;

/// Plate characters in ascending code point order: '0'-'9' then 'A'-'Z'.
inline constexpr std::string_view kPlateCharset = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ";

bool is_plate_char(char c) noexcept;

/// Registration text over [A-Z0-9], 1 to 10 characters.
class PlateText {
 public:
  /// Throws CharsetError on an empty, over-long or out-of-charset string.
  explicit PlateText(std::string text);

  const std::string& str() const noexcept { return text_; }
  std::size_t size() const noexcept { return text_.size(); }

  auto operator<=>(const PlateText&) const = default;

 private:
  std::string text_;
};

/// The 36 plate glyphs. Immutable once constructed.
class GlyphFont {
 public:
  /// Parses the block format: a line holding the character, then 7 rows of
  /// 5 '.'/'#' cells; blocks separated by one blank line. Throws ParseError
  /// on malformed grids, DuplicateKey on a repeated character, and
  /// InvalidInput when the set is incomplete or two glyphs coincide.
  static GlyphFont parse(std::string_view content);
  static GlyphFont load(const std::filesystem::path& path);

  /// Font shipped with the library (data/font5x7.txt embedded at build time).
  static const GlyphFont& builtin();

  /// Glyph for a charset character; throws CharsetError otherwise.
  const GlyphBits& glyph(char c) const;

  /// Minimum Hamming distance over all 630 glyph pairs.
  int min_pairwise_distance() const;

 private:
  GlyphFont() = default;
  std::array<GlyphBits, kPlateCharset.size()> glyphs_{};
};

/// Grayscale plate raster, row-major, one byte per pixel.
struct PlateImage {
  int width = 0;
  int height = kGlyphHeight;
  std::vector<std::uint8_t> pixels;

  PlateImage() = default;
  PlateImage(int w, int h) : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, 0) {}

  std::uint8_t& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
  std::uint8_t at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }

  bool operator==(const PlateImage&) const = default;
};

/// Inked pixels are 255, background and separator columns 0; glyph i spans
/// columns [6i, 6i + 4].
PlateImage render_plate(const PlateText& text, const GlyphFont& font = GlyphFont::builtin());

/// Pixel -> 255 when >= threshold, else 0.
PlateImage binarize(const PlateImage& image, std::uint8_t threshold = kDefaultThreshold);

/// Cuts a binary image into fixed-stride cells. Throws SegmentationError
/// unless height is 7 and width is 6n - 1 with 1 <= n <= 10.
std::vector<GlyphBits> segment(const PlateImage& image);

/// Nearest glyph by Hamming distance; ties go to the lower code point.
char match_glyph(const GlyphBits& cell, const GlyphFont& font);

/// binarize, segment, then match_glyph per cell.
PlateText recognize(const PlateImage& image, const GlyphFont& font = GlyphFont::builtin(),
                    std::uint8_t threshold = kDefaultThreshold);

/// FNV-1a over dimensions and pixels.
std::uint64_t image_digest(const PlateImage& image);

/// Image file form: one line per row, '#' for pixels >= 128, '.' otherwise.
std::string format_grid(const PlateImage& image);

/// Inverse of format_grid. Throws ParseError on ragged rows or foreign characters.
PlateImage parse_grid(std::string_view content);

}  // namespace routepred
