// Copyright 2026 The swmpc Authors
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

#ifndef SWMPC_ERRORS_HPP
#define SWMPC_ERRORS_HPP

#include <optional>
#include <stdexcept>
#include <string>

namespace swmpc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Vector or matrix sizes do not agree with the system dimension.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A switching signal outside {0, ..., q-1}.
class SignalRangeError : public Error {
 public:
  using Error::Error;
};

/// A subsystem matrix is numerically singular where an inverse image is needed.
class SingularMatrixError : public Error {
 public:
  SingularMatrixError(int subsystem, double determinant);
  int subsystem() const { return subsystem_; }
  double determinant() const { return determinant_; }

 private:
  int subsystem_;
  double determinant_;
};

/// A geometry part-count or enumeration cap was exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

enum class InfeasibilityKind {
  kTerminal,   // some sequence satisfies waiting/state constraints, none reaches the target
  kWaiting,    // waiting-time (or cycle) rules alone leave no admissible sequence
  kState,      // every sequence leaves the state-constraint set
};

const char* to_string(InfeasibilityKind kind);

/// No switching sequence satisfies the optimal control problem constraints.
class InfeasibleError : public Error {
 public:
  InfeasibleError(InfeasibilityKind kind, std::optional<int> step = std::nullopt);
  InfeasibilityKind kind() const { return kind_; }
  /// Closed-loop step at which the solve failed, when raised from a closed loop.
  std::optional<int> step() const { return step_; }

 private:
  InfeasibilityKind kind_;
  std::optional<int> step_;
};

}  // namespace swmpc

#endif  // SWMPC_ERRORS_HPP
