#pragma once

#include <cstddef>
#include <cstdint>

#include "routepred/sample.hpp"

namespace routepred {

/// Seed of the committed calibration run that fixed the GenConfig defaults.
inline constexpr std::uint64_t kCalibrationSeed = 42;

/// Class-conditional generator for (dv, mp, label) rows. Straight vehicles
/// keep their speed between the two radar reads; turning vehicles brake.
struct GenConfig {
  std::size_t n_straight = 1491;
  std::size_t n_turn = 1508;
  double mu_dv_straight = 0.0;
  double sigma_dv_straight = 0.5;
  double mu_dv_turn = -3.0;
  double sigma_dv_turn = 1.0;
  double p_mp_straight = 0.15;
  double p_mp_turn = 0.85;
  double label_noise = 0.01;
  std::uint64_t seed = kCalibrationSeed;

  /// Throws InvalidParameter for non-positive sigmas, probabilities outside
  /// [0, 1] or non-finite means.
  void validate() const;
};

/// Straight rows first, then turn rows; per row: dv (two uniforms), mp (one),
/// label flip (one). The result is then Fisher-Yates shuffled with the same
/// stream. Byte-identical for a given config.
Dataset generate(const GenConfig& config);

}  // namespace routepred
