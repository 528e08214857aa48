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
#include <numeric>
#include <span>
#include <vector>

#include "g2pm/nn/tensor.h"
#include "g2pm/rng.h"

namespace g2pm::nn {

struct GradCheckResult {
  double max_relative_error = 0.0;
  std::size_t coordinates_checked = 0;
  std::size_t worst_array = 0;
  std::size_t worst_index = 0;
  double worst_analytic = 0.0;
  double worst_numeric = 0.0;
};

inline double RelativeError(double analytic, double numeric) {
  return std::abs(analytic - numeric) /
         std::max({std::abs(analytic), std::abs(numeric), 1e-8});
}

// Compares `analytic` against central differences (f(x+eps) - f(x-eps)) / 2eps
// of `loss`, which must read the current contents of `params`. Checks every
// coordinate when there are at most `max_coordinates`, otherwise a random
// subsample drawn from `rng`. Parameters are restored bit-exactly.
template <typename Scalar>
GradCheckResult GradCheck(const std::function<Scalar()>& loss,
                          std::span<const std::span<Scalar>> params,
                          std::span<const std::span<const Scalar>> analytic, Scalar eps,
                          std::size_t max_coordinates, Rng& rng) {
  RequireDims(params.size() == analytic.size(), "gradcheck: array count");
  std::vector<std::pair<std::size_t, std::size_t>> coords;
  for (std::size_t a = 0; a < params.size(); ++a) {
    RequireDims(params[a].size() == analytic[a].size(), "gradcheck: array shape");
    for (std::size_t k = 0; k < params[a].size(); ++k) coords.emplace_back(a, k);
  }
  if (coords.size() > max_coordinates) {
    rng.Shuffle(std::span(coords));
    coords.resize(max_coordinates);
  }

  GradCheckResult result;
  for (const auto& [a, k] : coords) {
    Scalar& x = params[a][k];
    const Scalar saved = x;
    const Scalar plus = saved + eps;
    const Scalar minus = saved - eps;
    x = plus;
    const Scalar up = loss();
    x = minus;
    const Scalar down = loss();
    x = saved;
    // Divide by the step actually taken, which can differ from 2*eps by rounding.
    const double numeric = (static_cast<double>(up) - static_cast<double>(down)) /
                           (static_cast<double>(plus) - static_cast<double>(minus));
    const double err = RelativeError(static_cast<double>(analytic[a][k]), numeric);
    ++result.coordinates_checked;
    if (err > result.max_relative_error || result.coordinates_checked == 1) {
      result.max_relative_error = err;
      result.worst_array = a;
      result.worst_index = k;
      result.worst_analytic = static_cast<double>(analytic[a][k]);
      result.worst_numeric = numeric;
    }
  }
  return result;
}

}  // namespace g2pm::nn
