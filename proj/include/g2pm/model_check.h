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

#include <cstdint>

#include "g2pm/model.h"
#include "g2pm/rng.h"

namespace g2pm {

// A small random model: V <= 20, d <= 8, H in {2, 4, 8}, L <= 2, fc <= 8, c <= 5.
ModelConfig RandomSmallConfig(Rng& rng);

struct ModelGradCheckResult {
  std::size_t instances = 0;
  std::size_t coordinates = 0;
  double max_relative_error = 0.0;
  ModelConfig worst_config;
};

// Full-model analytic gradients (64-bit) against central differences over
// every coordinate of `instances` random configurations, each with random
// parameters, a random sentence of length <= 8 and a random gold class. The
// reference loss is evaluated in extended precision relative to the
// unperturbed loss.
ModelGradCheckResult CheckModelGradients(std::size_t instances, std::uint64_t seed,
                                         double eps = 1e-5);

}  // namespace g2pm
