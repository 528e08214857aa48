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

#include <span>
#include <string>

#include <Eigen/Dense>

#include "g2pm/error.h"

namespace g2pm::nn {

using Index = Eigen::Index;

// Row-major dense matrix; training runs at double, exported weights at float.
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

inline void RequireDims(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::kDimensionMismatch, what);
}

template <typename Derived>
void RequireFinite(const Eigen::DenseBase<Derived>& values, const char* what) {
  if (!values.allFinite()) {
    throw Error(ErrorCode::kNumericalFault, std::string("non-finite values in ") + what);
  }
}

// Flat view over an Eigen object's contiguous storage.
template <typename Derived>
auto Flat(Eigen::PlainObjectBase<Derived>& m) {
  return std::span<typename Derived::Scalar>(m.data(), static_cast<std::size_t>(m.size()));
}

template <typename Derived>
auto Flat(const Eigen::PlainObjectBase<Derived>& m) {
  return std::span<const typename Derived::Scalar>(m.data(), static_cast<std::size_t>(m.size()));
}

}  // namespace g2pm::nn
