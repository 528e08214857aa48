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

#include "g2pm/nn/tensor.h"

namespace g2pm::nn {

// y = W x + b
template <typename Scalar>
Vector<Scalar> LinearForward(const Matrix<Scalar>& w, const Vector<Scalar>& b,
                             const Vector<Scalar>& x) {
  RequireDims(w.rows() == b.size() && w.cols() == x.size(), "linear: shape mismatch");
  Vector<Scalar> y = b;
  y.noalias() += w * x;
  RequireFinite(y, "linear output");
  return y;
}

// Accumulates dW += dy x^T and db += dy; returns dx = W^T dy.
template <typename Scalar>
Vector<Scalar> LinearBackward(const Matrix<Scalar>& w, const Vector<Scalar>& x,
                              const Vector<Scalar>& dy, Matrix<Scalar>& dw, Vector<Scalar>& db) {
  RequireDims(w.rows() == dy.size() && w.cols() == x.size(), "linear backward: shape mismatch");
  RequireDims(dw.rows() == w.rows() && dw.cols() == w.cols() && db.size() == w.rows(),
              "linear backward: gradient buffer shape");
  dw.noalias() += dy * x.transpose();
  db += dy;
  Vector<Scalar> dx = w.transpose() * dy;
  return dx;
}

template <typename Scalar>
Vector<Scalar> Relu(const Vector<Scalar>& x) {
  return x.cwiseMax(Scalar(0));
}

// Gradient through ReLU given the pre-activation input.
template <typename Scalar>
Vector<Scalar> ReluBackward(const Vector<Scalar>& x, const Vector<Scalar>& dy) {
  RequireDims(x.size() == dy.size(), "relu backward: shape mismatch");
  return (x.array() > Scalar(0)).select(dy, Scalar(0));
}

template <typename Scalar>
Vector<Scalar> Softmax(const Vector<Scalar>& logits) {
  RequireDims(logits.size() > 0, "softmax of empty vector");
  Vector<Scalar> e = (logits.array() - logits.maxCoeff()).exp();
  return e / e.sum();
}

template <typename Scalar>
struct CrossEntropyResult {
  Scalar loss;
  Vector<Scalar> probs;
  Vector<Scalar> grad_logits;
};

// Loss -log softmax(logits)[gold], computed with max subtraction.
template <typename Scalar>
CrossEntropyResult<Scalar> SoftmaxCrossEntropy(const Vector<Scalar>& logits, Index gold) {
  if (gold < 0 || gold >= logits.size()) {
    throw Error(ErrorCode::kIndexOutOfRange, "gold class outside logits");
  }
  RequireFinite(logits, "logits");
  const Scalar shift = logits.maxCoeff();
  Vector<Scalar> e = (logits.array() - shift).exp();
  const Scalar z = e.sum();
  CrossEntropyResult<Scalar> r;
  r.probs = e / z;
  r.loss = std::log(z) - (logits(gold) - shift);
  r.grad_logits = r.probs;
  r.grad_logits(gold) -= Scalar(1);
  if (!std::isfinite(r.loss)) throw Error(ErrorCode::kNumericalFault, "non-finite loss");
  return r;
}

}  // namespace g2pm::nn
