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
#include <utility>
#include <vector>

#include "servopneu/errors.hpp"

namespace servopneu {

/// Piecewise-constant input: zero before the first breakpoint, then the
/// value of the latest breakpoint at or before t.
class Signal {
 public:
  struct Step {
    double time;
    double value;
    friend bool operator==(const Step&, const Step&) = default;
  };

  Signal() = default;
  explicit Signal(std::vector<Step> steps) : steps_(std::move(steps)) {
    if (!std::is_sorted(steps_.begin(), steps_.end(),
                        [](const Step& a, const Step& b) { return a.time < b.time; })) {
      throw InvariantViolation("Signal: breakpoints must be sorted by time");
    }
  }

  static Signal constant(double value) { return Signal({{0.0, value}}); }

  /// `amplitude` on [start, start + duration), zero elsewhere.
  static Signal pulse(double amplitude, double start, double duration) {
    return Signal({{start, amplitude}, {start + duration, 0.0}});
  }

  double operator()(double t) const {
    double v = 0.0;
    for (const auto& s : steps_) {
      if (s.time > t) break;
      v = s.value;
    }
    return v;
  }

  const std::vector<Step>& steps() const noexcept { return steps_; }

  friend bool operator==(const Signal&, const Signal&) = default;

 private:
  std::vector<Step> steps_;
};

}  // namespace servopneu
