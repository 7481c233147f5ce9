#include "routepred/plate.hpp"

#include <algorithm>
#include <string>

#include "routepred/error.hpp"
#include "routepred/text.hpp"

namespace routepred {

namespace {

std::size_t charset_index(char c) {
  const auto pos = kPlateCharset.find(c);
  if (pos == std::string_view::npos) {
    throw CharsetError(std::string("character '") + c + "' is not in [A-Z0-9]");
  }
  return pos;
}

}  // namespace

bool is_plate_char(char c) noexcept { return (c >= '0' && c <= '9') || (c >= 'A' && c <= 'Z'); }

PlateText::PlateText(std::string text) : text_(std::move(text)) {
  if (text_.empty() || text_.size() > kMaxPlateLength) {
    throw CharsetError("plate text must be 1-10 characters, got '" + text_ + "'");
  }
  if (!std::all_of(text_.begin(), text_.end(), is_plate_char)) {
    throw CharsetError("plate text '" + text_ + "' has characters outside [A-Z0-9]");
  }
}

GlyphFont GlyphFont::parse(std::string_view content) {
  GlyphFont font;
  std::array<bool, kPlateCharset.size()> seen{};
  const auto rows = text::lines(content);
  std::size_t i = 0;
  std::size_t blocks = 0;
  while (i < rows.size()) {
    const std::size_t header_line = i + 1;
    const auto header = rows[i];
    if (header.size() != 1 || !is_plate_char(header[0])) {
      throw ParseError(header_line, "expected a single glyph character [A-Z0-9]");
    }
    const std::size_t idx = charset_index(header[0]);
    if (seen[idx]) throw DuplicateKey(header_line, std::string("duplicate glyph '") + header[0] + "'");
    seen[idx] = true;

    GlyphBits bits;
    for (int r = 0; r < kGlyphHeight; ++r) {
      const std::size_t line_no = i + 2 + static_cast<std::size_t>(r);
      if (line_no > rows.size()) throw ParseError(line_no, "glyph grid truncated");
      const auto row = rows[line_no - 1];
      if (row.size() != kGlyphWidth) throw ParseError(line_no, "glyph row must be 5 cells wide");
      for (int c = 0; c < kGlyphWidth; ++c) {
        if (row[c] == '#') {
          bits.set(static_cast<std::size_t>(r * kGlyphWidth + c));
        } else if (row[c] != '.') {
          throw ParseError(line_no, "glyph cells must be '.' or '#'");
        }
      }
    }
    font.glyphs_[idx] = bits;
    ++blocks;
    i += 1 + kGlyphHeight;
    if (i < rows.size()) {
      if (!rows[i].empty()) throw ParseError(i + 1, "expected a blank line between glyph blocks");
      ++i;
      if (i == rows.size()) throw ParseError(i, "trailing blank line after last glyph");
    }
  }
  if (blocks != kPlateCharset.size()) {
    throw InvalidInput("font defines " + std::to_string(blocks) + " glyphs, expected 36");
  }
  for (std::size_t a = 0; a < font.glyphs_.size(); ++a) {
    for (std::size_t b = a + 1; b < font.glyphs_.size(); ++b) {
      if (font.glyphs_[a] == font.glyphs_[b]) {
        throw InvalidInput(std::string("glyphs '") + kPlateCharset[a] + "' and '" + kPlateCharset[b] +
                           "' are identical");
      }
    }
  }
  return font;
}

GlyphFont GlyphFont::load(const std::filesystem::path& path) { return parse(text::read_file(path)); }

const GlyphBits& GlyphFont::glyph(char c) const { return glyphs_[charset_index(c)]; }

int GlyphFont::min_pairwise_distance() const {
  int best = kGlyphPixels;
  for (std::size_t a = 0; a < glyphs_.size(); ++a) {
    for (std::size_t b = a + 1; b < glyphs_.size(); ++b) {
      best = std::min(best, static_cast<int>((glyphs_[a] ^ glyphs_[b]).count()));
    }
  }
  return best;
}

PlateImage render_plate(const PlateText& text, const GlyphFont& font) {
  const int n = static_cast<int>(text.size());
  PlateImage image(kCellStride * n - 1, kGlyphHeight);
  for (int i = 0; i < n; ++i) {
    const GlyphBits& bits = font.glyph(text.str()[static_cast<std::size_t>(i)]);
    for (int r = 0; r < kGlyphHeight; ++r) {
      for (int c = 0; c < kGlyphWidth; ++c) {
        if (bits.test(static_cast<std::size_t>(r * kGlyphWidth + c))) image.at(kCellStride * i + c, r) = 255;
      }
    }
  }
  return image;
}

PlateImage binarize(const PlateImage& image, std::uint8_t threshold) {
  PlateImage out = image;
  for (auto& p : out.pixels) p = p >= threshold ? 255 : 0;
  return out;
}

std::vector<GlyphBits> segment(const PlateImage& image) {
  if (image.height != kGlyphHeight) {
    throw SegmentationError("plate image must be 7 pixels tall, got " + std::to_string(image.height));
  }
  if (image.width < kGlyphWidth || (image.width + 1) % kCellStride != 0) {
    throw SegmentationError("plate width " + std::to_string(image.width) + " is not of the form 6n-1");
  }
  const int n = (image.width + 1) / kCellStride;
  if (static_cast<std::size_t>(n) > kMaxPlateLength) {
    throw SegmentationError("plate image holds " + std::to_string(n) + " cells, at most 10 allowed");
  }
  std::vector<GlyphBits> cells(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int r = 0; r < kGlyphHeight; ++r) {
      for (int c = 0; c < kGlyphWidth; ++c) {
        if (image.at(kCellStride * i + c, r) != 0) cells[static_cast<std::size_t>(i)].set(static_cast<std::size_t>(r * kGlyphWidth + c));
      }
    }
  }
  return cells;
}

char match_glyph(const GlyphBits& cell, const GlyphFont& font) {
  char best = kPlateCharset.front();
  std::size_t best_distance = kGlyphPixels + 1;
  for (const char c : kPlateCharset) {
    const std::size_t d = (cell ^ font.glyph(c)).count();
    if (d < best_distance) {
      best_distance = d;
      best = c;
    }
  }
  return best;
}

PlateText recognize(const PlateImage& image, const GlyphFont& font, std::uint8_t threshold) {
  const auto cells = segment(binarize(image, threshold));
  std::string out;
  out.reserve(cells.size());
  for (const auto& cell : cells) out.push_back(match_glyph(cell, font));
  return PlateText(std::move(out));
}

std::uint64_t image_digest(const PlateImage& image) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  auto mix = [&h](std::uint8_t byte) {
    h ^= byte;
    h *= 0x100000001B3ull;
  };
  for (int shift = 0; shift < 32; shift += 8) mix(static_cast<std::uint8_t>(static_cast<std::uint32_t>(image.width) >> shift));
  for (int shift = 0; shift < 32; shift += 8) mix(static_cast<std::uint8_t>(static_cast<std::uint32_t>(image.height) >> shift));
  for (const auto p : image.pixels) mix(p);
  return h;
}

std::string format_grid(const PlateImage& image) {
  std::string out;
  out.reserve(static_cast<std::size_t>(image.width + 1) * image.height);
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) out.push_back(image.at(x, y) >= kDefaultThreshold ? '#' : '.');
    out.push_back('\n');
  }
  return out;
}

PlateImage parse_grid(std::string_view content) {
  const auto rows = text::lines(content);
  if (rows.empty()) throw ParseError(0, "plate image is empty");
  const auto width = rows.front().size();
  if (width == 0) throw ParseError(1, "plate image row is empty");
  PlateImage image(static_cast<int>(width), static_cast<int>(rows.size()));
  for (std::size_t y = 0; y < rows.size(); ++y) {
    if (rows[y].size() != width) throw ParseError(y + 1, "ragged plate image row");
    for (std::size_t x = 0; x < width; ++x) {
      const char ch = rows[y][x];
      if (ch == '#') {
        image.at(static_cast<int>(x), static_cast<int>(y)) = 255;
      } else if (ch != '.') {
        throw ParseError(y + 1, "plate image cells must be '.' or '#'");
      }
    }
  }
  return image;
}

}  // namespace routepred
