// Copyright 2026 The servopneu Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "servopneu/errors.hpp"
#include "servopneu/gasflow.hpp"

namespace servopneu {

struct PipeSpec {
  double Lt = 0.5;      // length [m]
  double D = 4.0e-3;    // inner diameter [m]
  double e_r = 1.5e-6;  // roughness [m]

  double area() const noexcept { return std::numbers::pi * D * D / 4.0; }

  void validate() const {
    if (!(Lt > 0.0) || !(D > 0.0) || !(e_r >= 0.0)) {
      throw InvariantViolation("PipeSpec: length and diameter must be positive, roughness >= 0");
    }
  }

  friend bool operator==(const PipeSpec&, const PipeSpec&) = default;
};

inline constexpr double kLaminarReynolds = 2300.0;
inline constexpr double kTurbulentReynolds = 4000.0;

/// Reynolds number on the pipe diameter. Density cancels out of
/// rho |u| D / mu once u = m / (rho A); it stays in the signature for
/// callers that carry it anyway.
inline double reynolds(double m_dot, const PipeSpec& pipe, double /*rho*/,
                       const GasProperties& gas) {
  return std::abs(m_dot) * pipe.D / (pipe.area() * gas.mu());
}

/// Haaland's explicit approximation of the Colebrook friction factor.
inline double haaland_friction(double re, const PipeSpec& pipe) {
  const double rough = std::pow(pipe.e_r / (3.7 * pipe.D), 1.11);
  const double s = -1.8 * std::log10(6.9 / re + rough);
  return 1.0 / (s * s);
}

/// Darcy friction factor: 64/Re below 2300, Haaland above 4000, linear
/// blend in between.
inline double friction_factor(double re, const PipeSpec& pipe) {
  if (!(re > 0.0)) throw InvalidStateError("friction_factor: Reynolds number must be positive");
  if (re <= kLaminarReynolds) return 64.0 / re;
  if (re >= kTurbulentReynolds) return haaland_friction(re, pipe);
  const double w = (re - kLaminarReynolds) / (kTurbulentReynolds - kLaminarReynolds);
  return (1.0 - w) * (64.0 / kLaminarReynolds) + w * haaland_friction(kTurbulentReynolds, pipe);
}

/// Linearized pipe resistance f |m| / (2 D A) [kg/(m^3 s)].
inline double pipe_resistance(double m_dot, const PipeSpec& pipe, const GasProperties& gas) {
  if (m_dot == 0.0) return 0.0;
  const double f = friction_factor(reynolds(m_dot, pipe, 1.0, gas), pipe);
  return f * std::abs(m_dot) / (2.0 * pipe.D * pipe.area());
}

class LookupUnderflow : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Fixed-interval history of a scalar stream starting at t = 0, kept in a
/// ring buffer. Values before the stream start read as zero. Lookups are
/// linearly interpolated.
class DelayLine {
 public:
  DelayLine() = default;

  DelayLine(double interval, std::size_t capacity)
      : interval_(interval), buffer_(capacity < 2 ? 2 : capacity, 0.0) {
    if (!(interval > 0.0)) throw ContractViolation("DelayLine: interval must be positive");
  }

  /// Sized to hold one transit time at the slowest sound speed expected
  /// (air at `min_temperature`), plus a few samples of slack.
  static DelayLine for_pipe(const PipeSpec& pipe, double interval, const GasProperties& gas,
                            double min_temperature = 100.0) {
    const double longest = pipe.Lt / sound_speed(min_temperature, gas);
    return DelayLine(interval, static_cast<std::size_t>(std::ceil(longest / interval)) + 4);
  }

  void push(double value) {
    buffer_[count_ % buffer_.size()] = value;
    ++count_;
  }

  std::size_t size() const noexcept { return count_; }
  std::size_t capacity() const noexcept { return buffer_.size(); }
  double interval() const noexcept { return interval_; }
  bool empty() const noexcept { return count_ == 0; }

  /// Time of the newest sample; only meaningful when non-empty.
  double newest_time() const noexcept { return static_cast<double>(count_ - 1) * interval_; }

  double oldest_time() const noexcept {
    const std::size_t kept = count_ < buffer_.size() ? count_ : buffer_.size();
    return static_cast<double>(count_ - kept) * interval_;
  }

  double sample(std::size_t k) const {
    const std::size_t kept = count_ < buffer_.size() ? count_ : buffer_.size();
    if (k >= count_ || k + kept < count_) {
      throw LookupUnderflow("DelayLine: sample " + std::to_string(k) + " not retained");
    }
    return buffer_[k % buffer_.size()];
  }

  /// Value at time t. Queries past the newest sample interpolate toward
  /// `head` (time, value), the caller's not-yet-recorded current input.
  double at(double t, std::optional<std::pair<double, double>> head = std::nullopt) const {
    if (t < 0.0) return 0.0;
    if (empty()) {
      if (head) return head->second;
      throw LookupUnderflow("DelayLine: lookup on empty history");
    }
    const double newest = newest_time();
    if (t > newest) {
      const double last = sample(count_ - 1);
      if (!head || head->first <= newest) return last;
      const double w = std::min((t - newest) / (head->first - newest), 1.0);
      return last + w * (head->second - last);
    }
    if (t < oldest_time()) {
      throw LookupUnderflow("DelayLine: lookup at t=" + std::to_string(t)
                            + " older than retained history");
    }
    const double pos = t / interval_;
    auto k = static_cast<std::size_t>(std::floor(pos));
    if (k >= count_ - 1) return sample(count_ - 1);
    const double w = pos - static_cast<double>(k);
    const double a = sample(k);
    if (w == 0.0) return a;
    return a + w * (sample(k + 1) - a);
  }

 private:
  double interval_ = 1.0;
  std::vector<double> buffer_ = std::vector<double>(2, 0.0);
  std::size_t count_ = 0;
};

inline double transit_time(const PipeSpec& pipe, double temperature, const GasProperties& gas) {
  return pipe.Lt / sound_speed(temperature, gas);
}

/// exp(-R_t R T L / (2 p c)) for a flow of magnitude m_dot.
inline double attenuation(double m_dot, const PipeSpec& pipe, double p, double temperature,
                          const GasProperties& gas) {
  const double c = sound_speed(temperature, gas);
  const double rt = pipe_resistance(m_dot, pipe, gas);
  return std::exp(-rt * gas.R() * temperature * pipe.Lt / (2.0 * p * c));
}

/// Pipe outlet flow: the inlet stream delayed by one transit time and
/// attenuated by friction. Zero until the first wavefront arrives.
inline double propagate(const DelayLine& line, double t, const PipeSpec& pipe, double p,
                        double temperature, const GasProperties& gas,
                        std::optional<std::pair<double, double>> head = std::nullopt) {
  if (!(p > 0.0)) throw InvalidStateError("propagate: pressure must be positive");
  const double delay = transit_time(pipe, temperature, gas);
  if (t <= delay) return 0.0;
  const double delayed = line.at(t - delay, head);
  return delayed * attenuation(delayed, pipe, p, temperature, gas);
}

}  // namespace servopneu
