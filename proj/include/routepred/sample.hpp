#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "routepred/rng.hpp"

namespace routepred {

enum class Label : std::uint8_t { Straight = 0, Turn = 1 };

inline constexpr std::size_t kNumLabels = 2;

constexpr std::size_t index_of(Label l) noexcept { return static_cast<std::size_t>(l); }
constexpr char label_char(Label l) noexcept { return l == Label::Straight ? 'S' : 'T'; }

/// Accepts "S" or "T"; throws InvalidInput otherwise.
Label parse_label(std::string_view s);

/// One row of the route dataset: velocity difference, mobility pattern, route.
struct Sample {
  double dv = 0.0;
  int mp = 0;
  Label label = Label::Straight;

  bool operator==(const Sample&) const = default;
};

using Dataset = std::vector<Sample>;

/// Throws InvalidInput when a sample breaks its invariants (non-finite dv, mp not 0/1).
void validate(const Sample& s);

/// Throws DegenerateDataset unless both labels occur.
void require_both_classes(std::span<const Sample> data);

/// Header `dv,mp,label`, rows `R,D,L`, LF endings. Reals use the shortest
/// round-trip form.
std::string format_dataset(std::span<const Sample> data);

/// Throws ParseError naming the offending line.
Dataset parse_dataset(std::string_view content);

Dataset load_dataset(const std::filesystem::path& path);
void save_dataset(const std::filesystem::path& path, std::span<const Sample> data);

struct Split {
  Dataset train;
  Dataset test;
};

/// Fisher-Yates shuffle driven by rng, then the first floor(n * f) rows form
/// the test set. Throws InvalidParameter unless 0 < f < 1.
Split train_test_split(std::span<const Sample> data, double test_fraction, Rng& rng);

}  // namespace routepred
