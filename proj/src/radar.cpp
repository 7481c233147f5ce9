#include "routepred/radar.hpp"

#include <cmath>
#include <string>

#include "routepred/error.hpp"

namespace routepred {

void RadarCalibration::validate() const {
  if (!std::isfinite(scale) || scale <= 0.0) {
    throw InvalidParameter("radar scale must be finite and > 0, got " + std::to_string(scale));
  }
  if (!std::isfinite(noise_sigma_hz) || noise_sigma_hz < 0.0) {
    throw InvalidParameter("radar noise sigma must be finite and >= 0");
  }
}

Velocity doppler_velocity(const FrequencyPair& reading, const RadarCalibration& cal) {
  if (!std::isfinite(reading.emitted_hz) || !std::isfinite(reading.reflected_hz)) {
    throw InvalidReading("radar reading contains a non-finite frequency");
  }
  if (reading.emitted_hz <= 0.0) {
    throw InvalidReading("emitted frequency must be > 0");
  }
  const double shift = reading.reflected_hz - reading.emitted_hz;
  return Velocity{cal.scale * (shift / reading.emitted_hz)};
}

VelocityDelta velocity_delta(Velocity v1, Velocity v2) {
  if (!std::isfinite(v1.value) || !std::isfinite(v2.value)) {
    throw InvalidReading("velocity delta of a non-finite velocity");
  }
  return VelocityDelta{v2.value - v1.value};
}

FrequencyPair reflect_frequency(Velocity true_velocity, double emitted_hz,
                                const RadarCalibration& cal, Rng& rng) {
  if (!std::isfinite(emitted_hz) || emitted_hz <= 0.0) {
    throw InvalidParameter("emitted frequency must be finite and > 0");
  }
  double reflected = emitted_hz * (1.0 + true_velocity.value / cal.scale);
  if (cal.noise_sigma_hz > 0.0) reflected += gaussian(rng, 0.0, cal.noise_sigma_hz);
  return FrequencyPair{emitted_hz, reflected};
}

}  // namespace routepred
