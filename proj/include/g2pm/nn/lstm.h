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
#include <vector>

#include "g2pm/nn/tensor.h"

namespace g2pm::nn {

// One LSTM direction. Gate rows are stacked [input, forget, cell, output],
// each block `hidden()` rows tall; a single bias vector per direction.
template <typename Scalar>
struct LstmDirectionParams {
  Matrix<Scalar> w_x;  // 4H' x D_in
  Matrix<Scalar> w_h;  // 4H' x H'
  Vector<Scalar> b;    // 4H'

  static LstmDirectionParams Zero(Index input_dim, Index hidden) {
    return {Matrix<Scalar>::Zero(4 * hidden, input_dim), Matrix<Scalar>::Zero(4 * hidden, hidden),
            Vector<Scalar>::Zero(4 * hidden)};
  }

  Index hidden() const { return w_h.cols(); }
  Index input_dim() const { return w_x.cols(); }

  void Validate() const {
    const Index h = hidden();
    RequireDims(h >= 1, "lstm: hidden size must be >= 1");
    RequireDims(w_h.rows() == 4 * h && w_x.rows() == 4 * h && b.size() == 4 * h,
                "lstm: parameter shapes inconsistent");
  }
};

template <typename Scalar>
struct LstmCellCache {
  const LstmDirectionParams<Scalar>* owner = nullptr;
  Vector<Scalar> x, h_prev, c_prev;
  Vector<Scalar> i, f, g, o;
  Vector<Scalar> tanh_c;
};

template <typename Scalar>
struct LstmCellOutput {
  Vector<Scalar> h;
  Vector<Scalar> c;
  LstmCellCache<Scalar> cache;
};

template <typename Scalar>
Vector<Scalar> Sigmoid(const Vector<Scalar>& x) {
  return (Scalar(1) / (Scalar(1) + (-x.array()).exp())).matrix();
}

template <typename Scalar>
LstmCellOutput<Scalar> LstmCellForward(const LstmDirectionParams<Scalar>& p,
                                       const Vector<Scalar>& x, const Vector<Scalar>& h_prev,
                                       const Vector<Scalar>& c_prev) {
  p.Validate();
  const Index h = p.hidden();
  RequireDims(x.size() == p.input_dim(), "lstm cell: input size");
  RequireDims(h_prev.size() == h && c_prev.size() == h, "lstm cell: state size");

  Vector<Scalar> a = p.b;
  a.noalias() += p.w_x * x;
  a.noalias() += p.w_h * h_prev;

  LstmCellOutput<Scalar> out;
  auto& k = out.cache;
  k.owner = &p;
  k.i = Sigmoid<Scalar>(a.segment(0, h));
  k.f = Sigmoid<Scalar>(a.segment(h, h));
  k.g = a.segment(2 * h, h).array().tanh();
  k.o = Sigmoid<Scalar>(a.segment(3 * h, h));
  out.c = k.f.cwiseProduct(c_prev) + k.i.cwiseProduct(k.g);
  k.tanh_c = out.c.array().tanh();
  out.h = k.o.cwiseProduct(k.tanh_c);
  RequireFinite(out.c, "lstm cell state");
  RequireFinite(out.h, "lstm hidden state");
  k.x = x;
  k.h_prev = h_prev;
  k.c_prev = c_prev;
  return out;
}

template <typename Scalar>
struct LstmCellInputGrads {
  Vector<Scalar> dx;
  Vector<Scalar> dh_prev;
  Vector<Scalar> dc_prev;
};

// Backpropagates (dh, dc) through one cell step, accumulating parameter
// gradients into `grads`. The cache must come from a forward call on `p`.
template <typename Scalar>
LstmCellInputGrads<Scalar> LstmCellBackward(const LstmDirectionParams<Scalar>& p,
                                            const LstmCellCache<Scalar>& cache,
                                            const Vector<Scalar>& dh, const Vector<Scalar>& dc,
                                            LstmDirectionParams<Scalar>& grads) {
  if (cache.owner != &p || cache.i.size() != p.hidden() || cache.x.size() != p.input_dim()) {
    throw Error(ErrorCode::kStaleCache, "lstm cell cache does not belong to these parameters");
  }
  const Index h = p.hidden();
  RequireDims(dh.size() == h && dc.size() == h, "lstm cell backward: gradient size");
  RequireDims(grads.w_x.rows() == p.w_x.rows() && grads.w_x.cols() == p.w_x.cols() &&
                  grads.w_h.rows() == p.w_h.rows() && grads.w_h.cols() == p.w_h.cols() &&
                  grads.b.size() == p.b.size(),
              "lstm cell backward: gradient buffer shape");

  const auto one = Scalar(1);
  Vector<Scalar> dc_total =
      dc.array() + dh.array() * cache.o.array() * (one - cache.tanh_c.array().square());

  Vector<Scalar> da(4 * h);
  da.segment(0, h) = dc_total.array() * cache.g.array() * cache.i.array() * (one - cache.i.array());
  da.segment(h, h) =
      dc_total.array() * cache.c_prev.array() * cache.f.array() * (one - cache.f.array());
  da.segment(2 * h, h) = dc_total.array() * cache.i.array() * (one - cache.g.array().square());
  da.segment(3 * h, h) =
      dh.array() * cache.tanh_c.array() * cache.o.array() * (one - cache.o.array());

  grads.w_x.noalias() += da * cache.x.transpose();
  grads.w_h.noalias() += da * cache.h_prev.transpose();
  grads.b += da;

  LstmCellInputGrads<Scalar> out;
  out.dx.noalias() = p.w_x.transpose() * da;
  out.dh_prev.noalias() = p.w_h.transpose() * da;
  out.dc_prev = dc_total.cwiseProduct(cache.f);
  return out;
}

template <typename Scalar>
struct BiLstmLayer {
  LstmDirectionParams<Scalar> fwd;
  LstmDirectionParams<Scalar> bwd;
};

template <typename Scalar>
struct BiLstmCache {
  const BiLstmLayer<Scalar>* owner = nullptr;
  std::size_t length = 0;
  // [layer][t]
  std::vector<std::vector<LstmCellCache<Scalar>>> fwd;
  std::vector<std::vector<LstmCellCache<Scalar>>> bwd;
};

// Runs a stack of bidirectional layers over `inputs`. Each output is
// concat(forward h_t, backward h_t); layer l > 0 consumes layer l-1's outputs.
// Initial states are zero in both directions.
template <typename Scalar>
std::vector<Vector<Scalar>> BiLstmForward(std::span<const BiLstmLayer<Scalar>> layers,
                                          std::span<const Vector<Scalar>> inputs,
                                          BiLstmCache<Scalar>* cache = nullptr) {
  RequireDims(!layers.empty(), "bilstm: no layers");
  RequireDims(!inputs.empty(), "bilstm: empty sequence");
  const std::size_t steps = inputs.size();
  if (cache != nullptr) {
    cache->owner = layers.data();
    cache->length = steps;
    cache->fwd.assign(layers.size(), {});
    cache->bwd.assign(layers.size(), {});
  }

  std::vector<Vector<Scalar>> current(inputs.begin(), inputs.end());
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const auto& layer = layers[l];
    const Index h = layer.fwd.hidden();
    RequireDims(layer.bwd.hidden() == h, "bilstm: direction hidden sizes differ");
    std::vector<Vector<Scalar>> next(steps, Vector<Scalar>(2 * h));
    if (cache != nullptr) {
      cache->fwd[l].resize(steps);
      cache->bwd[l].resize(steps);
    }

    Vector<Scalar> hs = Vector<Scalar>::Zero(h), cs = Vector<Scalar>::Zero(h);
    for (std::size_t t = 0; t < steps; ++t) {
      auto step = LstmCellForward(layer.fwd, current[t], hs, cs);
      hs = std::move(step.h);
      cs = std::move(step.c);
      next[t].head(h) = hs;
      if (cache != nullptr) cache->fwd[l][t] = std::move(step.cache);
    }
    hs.setZero();
    cs.setZero();
    for (std::size_t t = steps; t-- > 0;) {
      auto step = LstmCellForward(layer.bwd, current[t], hs, cs);
      hs = std::move(step.h);
      cs = std::move(step.c);
      next[t].tail(h) = hs;
      if (cache != nullptr) cache->bwd[l][t] = std::move(step.cache);
    }
    current = std::move(next);
  }
  return current;
}

// Given d(loss)/d(output_t) for every t, accumulates parameter gradients into
// `grads` (shaped like `layers`) and returns d(loss)/d(input_t).
template <typename Scalar>
std::vector<Vector<Scalar>> BiLstmBackward(std::span<const BiLstmLayer<Scalar>> layers,
                                           const BiLstmCache<Scalar>& cache,
                                           std::span<const Vector<Scalar>> d_outputs,
                                           std::span<BiLstmLayer<Scalar>> grads) {
  if (cache.owner != layers.data() || cache.fwd.size() != layers.size()) {
    throw Error(ErrorCode::kStaleCache, "bilstm cache does not belong to these layers");
  }
  RequireDims(d_outputs.size() == cache.length, "bilstm backward: sequence length");
  RequireDims(grads.size() == layers.size(), "bilstm backward: gradient layer count");
  const std::size_t steps = cache.length;

  std::vector<Vector<Scalar>> upstream(d_outputs.begin(), d_outputs.end());
  for (std::size_t l = layers.size(); l-- > 0;) {
    const auto& layer = layers[l];
    const Index h = layer.fwd.hidden();
    const Index in_dim = layer.fwd.input_dim();
    std::vector<Vector<Scalar>> d_in(steps, Vector<Scalar>::Zero(in_dim));

    // Forward direction ran t = 0..T-1, so its gradients flow back from T-1.
    Vector<Scalar> dh = Vector<Scalar>::Zero(h), dc = Vector<Scalar>::Zero(h);
    for (std::size_t t = steps; t-- > 0;) {
      Vector<Scalar> dh_total = dh + upstream[t].head(h);
      auto g = LstmCellBackward(layer.fwd, cache.fwd[l][t], dh_total, dc, grads[l].fwd);
      d_in[t] += g.dx;
      dh = std::move(g.dh_prev);
      dc = std::move(g.dc_prev);
    }
    dh.setZero();
    dc.setZero();
    for (std::size_t t = 0; t < steps; ++t) {
      Vector<Scalar> dh_total = dh + upstream[t].tail(h);
      auto g = LstmCellBackward(layer.bwd, cache.bwd[l][t], dh_total, dc, grads[l].bwd);
      d_in[t] += g.dx;
      dh = std::move(g.dh_prev);
      dc = std::move(g.dc_prev);
    }
    upstream = std::move(d_in);
  }
  return upstream;
}

}  // namespace g2pm::nn
