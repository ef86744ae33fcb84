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

#include <stdexcept>
#include <string>

namespace servopneu {

/// A physical state outside the model's domain (non-positive pressure,
/// temperature, volume...).
class InvalidStateError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A caller broke a documented precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A parameter set that breaks a physical invariant (e.g. Fc > Fs).
class InvariantViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The integrator produced a non-finite or non-physical state.
class InstabilityError : public std::runtime_error {
 public:
  InstabilityError(const std::string& what, double time, double step)
      : std::runtime_error(what), time_(time), step_(step) {}

  double time() const noexcept { return time_; }
  double step() const noexcept { return step_; }

 private:
  double time_;
  double step_;
};

/// Malformed scenario or trace input. `where` carries line or key context.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownKeyError : public ParseError {
 public:
  using ParseError::ParseError;
};

}  // namespace servopneu
