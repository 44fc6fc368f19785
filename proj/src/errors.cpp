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

#include "swmpc/errors.hpp"

namespace swmpc {
namespace {

std::string singular_message(int subsystem, double det) {
  return "subsystem " + std::to_string(subsystem + 1) +
         " is singular (determinant " + std::to_string(det) + ")";
}

std::string infeasible_message(InfeasibilityKind kind, std::optional<int> step) {
  std::string msg = std::string("optimal control problem infeasible: ") + to_string(kind);
  if (step) msg += " at step " + std::to_string(*step);
  return msg;
}

}  // namespace

SingularMatrixError::SingularMatrixError(int subsystem, double determinant)
    : Error(singular_message(subsystem, determinant)),
      subsystem_(subsystem),
      determinant_(determinant) {}

const char* to_string(InfeasibilityKind kind) {
  switch (kind) {
    case InfeasibilityKind::kTerminal:
      return "terminal set unreachable";
    case InfeasibilityKind::kWaiting:
      return "waiting-time constraints";
    case InfeasibilityKind::kState:
      return "state constraints";
  }
  return "unknown";
}

InfeasibleError::InfeasibleError(InfeasibilityKind kind, std::optional<int> step)
    : Error(infeasible_message(kind, step)), kind_(kind), step_(step) {}

}  // namespace swmpc
