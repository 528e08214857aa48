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

#include "g2pm/model_check.h"

#include <algorithm>
#include <functional>
#include <utility>
#include <vector>

#include "g2pm/nn/grad_check.h"

namespace g2pm {

ModelConfig RandomSmallConfig(Rng& rng) {
  const std::int64_t hidden_choices[] = {2, 4, 8};
  ModelConfig c;
  c.vocab_size = 3 + static_cast<std::int64_t>(rng.Below(18));
  c.embed_dim = 1 + static_cast<std::int64_t>(rng.Below(8));
  c.hidden = hidden_choices[rng.Below(3)];
  c.num_layers = 1 + static_cast<std::int64_t>(rng.Below(2));
  c.fc_dim = 1 + static_cast<std::int64_t>(rng.Below(8));
  c.num_classes = 1 + static_cast<std::int64_t>(rng.Below(5));
  return c;
}

ModelGradCheckResult CheckModelGradients(std::size_t instances, std::uint64_t seed, double eps) {
  Rng rng(seed);
  ModelGradCheckResult out;
  for (std::size_t n = 0; n < instances; ++n) {
    const ModelConfig c = RandomSmallConfig(rng);
    auto params = ModelParams<double>::Random(c, rng);
    for (auto& a : params.Arrays()) {
      for (auto& x : a) x += rng.Uniform(-0.5, 0.5);
    }
    std::vector<int> ids(1 + rng.Below(8));
    for (auto& id : ids) {
      id = 1 + static_cast<int>(rng.Below(static_cast<std::uint64_t>(c.vocab_size - 1)));
    }
    const std::size_t target = rng.Below(ids.size());
    const int gold = static_cast<int>(rng.Below(static_cast<std::uint64_t>(c.num_classes)));

    auto grads = ModelParams<double>::Zeros(c);
    LossAndGradient(params, ids, target, gold, grads);
    auto extended = [&] {
      const auto q = params.Cast<long double>();
      return nn::SoftmaxCrossEntropy(Forward(q, ids, target), gold).loss;
    };
    const long double base = extended();
    const std::function<double()> loss = [&] { return static_cast<double>(extended() - base); };
    const auto p = params.Arrays();
    const auto g = std::as_const(grads).Arrays();
    const auto r = nn::GradCheck<double>(loss, p, g, eps, SIZE_MAX, rng);
    ++out.instances;
    out.coordinates += r.coordinates_checked;
    if (r.max_relative_error >= out.max_relative_error) {
      out.max_relative_error = r.max_relative_error;
      out.worst_config = c;
    }
  }
  return out;
}

}  // namespace g2pm
