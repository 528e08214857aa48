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

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "g2pm/nn/tensor.h"

namespace g2pm::nn {

struct AdamOptions {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

template <typename Scalar>
struct AdamState {
  AdamOptions options;
  std::int64_t step = 0;
  // One moment buffer per parameter array; sized on the first update.
  std::vector<std::vector<Scalar>> m;
  std::vector<std::vector<Scalar>> v;
};

// One bias-corrected Adam update over parallel lists of parameter and
// gradient arrays.
template <typename Scalar>
void AdamStep(std::span<const std::span<Scalar>> params,
              std::span<const std::span<const Scalar>> grads, AdamState<Scalar>& state) {
  RequireDims(params.size() == grads.size(), "adam: parameter/gradient array count");
  if (state.m.empty() && state.step == 0) {
    for (const auto& p : params) {
      state.m.emplace_back(p.size(), Scalar(0));
      state.v.emplace_back(p.size(), Scalar(0));
    }
  }
  RequireDims(state.m.size() == params.size(), "adam: state does not match parameters");
  for (std::size_t a = 0; a < params.size(); ++a) {
    RequireDims(params[a].size() == grads[a].size() && state.m[a].size() == params[a].size(),
                "adam: array shape mismatch");
  }

  ++state.step;
  const auto& o = state.options;
  const Scalar b1 = static_cast<Scalar>(o.beta1);
  const Scalar b2 = static_cast<Scalar>(o.beta2);
  const Scalar lr = static_cast<Scalar>(o.learning_rate);
  const Scalar eps = static_cast<Scalar>(o.epsilon);
  const Scalar correction1 = Scalar(1) - static_cast<Scalar>(std::pow(o.beta1, state.step));
  const Scalar correction2 = Scalar(1) - static_cast<Scalar>(std::pow(o.beta2, state.step));

  for (std::size_t a = 0; a < params.size(); ++a) {
    auto& m = state.m[a];
    auto& v = state.v[a];
    for (std::size_t k = 0; k < params[a].size(); ++k) {
      const Scalar g = grads[a][k];
      m[k] = b1 * m[k] + (Scalar(1) - b1) * g;
      v[k] = b2 * v[k] + (Scalar(1) - b2) * g * g;
      const Scalar update = lr * (m[k] / correction1) / (std::sqrt(v[k] / correction2) + eps);
      if (update != Scalar(0)) params[a][k] -= update;
      if (!std::isfinite(params[a][k])) {
        throw Error(ErrorCode::kNumericalFault, "adam produced a non-finite parameter");
      }
    }
  }
}

}  // namespace g2pm::nn
