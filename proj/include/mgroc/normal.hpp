// Copyright 2026 The mgroc Authors
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

// Standard normal distribution helpers shared by the mixture and binormal code.

namespace mgroc::normal {

/// Density of N(0,1).
double pdf(double z) noexcept;

/// Phi(z) = P(Z <= z).
double cdf(double z) noexcept;

/// Q(z) = P(Z > z), computed without cancellation for large z.
double upper_tail(double z) noexcept;

/// Phi^{-1}(p) for p in (0,1); returns -inf/+inf at 0/1 and NaN outside [0,1].
/// Wichura's AS241 (PPND16), relative accuracy about 1e-16.
double quantile(double p) noexcept;

}  // namespace mgroc::normal
