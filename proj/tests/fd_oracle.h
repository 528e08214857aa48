// Copyright 2026 The g2pm Authors
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
#include <functional>
#include <span>

namespace g2pm::testing {

// Largest relative error between `analytic` and central differences of
// `loss` taken over every coordinate of `param`.
inline double MaxFdError(const std::function<double()>& loss, std::span<double> param,
                         std::span<const double> analytic, double eps = 1e-6) {
  double worst = 0.0;
  for (std::size_t k = 0; k < param.size(); ++k) {
    const double saved = param[k];
    param[k] = saved + eps;
    const double up = loss();
    param[k] = saved - eps;
    const double down = loss();
    param[k] = saved;
    const double numeric = (up - down) / (2 * eps);
    const double err = std::abs(analytic[k] - numeric) /
                       std::max({std::abs(analytic[k]), std::abs(numeric), 1e-8});
    worst = std::max(worst, err);
  }
  return worst;
}

}  // namespace g2pm::testing
