#pragma once

#include "routepred/rng.hpp"

namespace routepred {

/// One radar measurement: the emitted frequency and its reflection, in hertz.
struct FrequencyPair {
  double emitted_hz = 0.0;
  double reflected_hz = 0.0;

  bool operator==(const FrequencyPair&) const = default;
};

struct Velocity {
  double value = 0.0;

  auto operator<=>(const Velocity&) const = default;
};

struct VelocityDelta {
  double value = 0.0;

  auto operator<=>(const VelocityDelta&) const = default;
};

/// `scale` maps the dimensionless shift ratio onto velocity units; the bare
/// ratio formula corresponds to scale = 1. Noise is additive Gaussian on the
/// reflected frequency only.
struct RadarCalibration {
  double scale = 1.0;
  double noise_sigma_hz = 0.0;

  /// Throws InvalidParameter unless scale > 0 and noise_sigma_hz >= 0 (both finite).
  void validate() const;
};

/// scale * (f_r - f_o) / f_o. Throws InvalidReading for non-finite values or f_o <= 0.
Velocity doppler_velocity(const FrequencyPair& reading, const RadarCalibration& cal);

/// v2 - v1. Throws InvalidReading if either is non-finite.
VelocityDelta velocity_delta(Velocity v1, Velocity v2);

/// Simulated return for a target moving at `true_velocity`:
/// (f_o, f_o * (1 + v / scale) + noise). Noise is drawn from `rng` only when
/// noise_sigma_hz > 0. Throws InvalidParameter for f_o <= 0.
FrequencyPair reflect_frequency(Velocity true_velocity, double emitted_hz,
                                const RadarCalibration& cal, Rng& rng);

}  // namespace routepred
