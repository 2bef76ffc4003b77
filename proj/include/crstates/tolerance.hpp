// Copyright 2026 The crstates Authors
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

#include "crstates/errors.hpp"

namespace crstates {

/// Numerical thresholds shared by every decision in the library.
///
/// All three are relative: PSD slack is scaled by the largest eigenvalue
/// (floored at 1), vanishing tests by the norm of the object they refer to,
/// and spectral gaps by the spectral radius of the block under inspection.
struct ToleranceConfig {
  double tol_psd = 1e-9;
  double tol_zero = 1e-9;
  double tol_gap = 1e-7;

  void validate() const {
    if (!(tol_psd > 0) || !(tol_zero > 0) || !(tol_gap > 0)) {
      throw ParameterError("tolerances must be strictly positive");
    }
    if (!(tol_gap > tol_zero)) {
      throw ParameterError("tol_gap must exceed tol_zero");
    }
  }

  friend bool operator==(const ToleranceConfig&, const ToleranceConfig&) = default;
};

}  // namespace crstates
