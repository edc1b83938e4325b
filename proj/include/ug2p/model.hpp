// Copyright (c) 2026 The ug2p Authors
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

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <vector>

#include "ug2p/error.hpp"
#include "ug2p/prng.hpp"
#include "ug2p/vocab.hpp"

// Encoder-decoder LSTM grapheme-to-phoneme transducer. The encoder reads the
// time-reversed word followed by <s>; its final (h, c) of every layer seeds
// the decoder, which is trained by teacher forcing with exact
// backpropagation through time. 64-bit floats throughout; no attention.
//
// LSTM variant: plain i/f/g/o gates, no peepholes. The 4H rows of each
// weight block are ordered [i, f, g, o].

namespace ug2p {

struct ModelConfig {
  std::size_t num_layers = 2;
  std::size_t hidden_size = 512;
  std::size_t embed_size = 0;  // 0 = use hidden_size
  std::size_t max_decode_len = 32;
  std::uint64_t seed = 1;

  std::size_t embed() const {
    return embed_size == 0 ? hidden_size : embed_size;
  }

  void validate() const {
    if (num_layers == 0 || hidden_size == 0)
      throw Error(Errc::InvalidArgument, "layers and hidden size must be > 0");
    if (max_decode_len < 2)
      throw Error(Errc::InvalidArgument, "max_decode_len must be >= 2");
  }
};

struct LstmLayerParams {
  Eigen::MatrixXd w_x;  // 4H x in_dim
  Eigen::MatrixXd w_h;  // 4H x H
  Eigen::VectorXd b;    // 4H
};

struct ModelParams {
  Eigen::MatrixXd embed_in;   // |V_in| x E
  Eigen::MatrixXd embed_out;  // |V_out| x E
  std::vector<LstmLayerParams> encoder;
  std::vector<LstmLayerParams> decoder;
  Eigen::MatrixXd w_out;  // |V_out| x H
  Eigen::VectorXd b_out;  // |V_out|
};

// Canonical tensor order. Everything that walks the parameter set (the
// optimizer, gradient checks, serialization) goes through here so the order
// is defined exactly once.
template <class Params, class Fn>
void visit_tensors(Params& p, Fn&& fn) {
  fn(p.embed_in);
  fn(p.embed_out);
  for (auto& layer : p.encoder) {
    fn(layer.w_x);
    fn(layer.w_h);
    fn(layer.b);
  }
  for (auto& layer : p.decoder) {
    fn(layer.w_x);
    fn(layer.w_h);
    fn(layer.b);
  }
  fn(p.w_out);
  fn(p.b_out);
}

struct TensorSpan {
  double* data;
  std::size_t size;
};

inline std::vector<TensorSpan> tensor_spans(ModelParams& p) {
  std::vector<TensorSpan> spans;
  visit_tensors(p, [&](auto& t) {
    spans.push_back({t.data(), static_cast<std::size_t>(t.size())});
  });
  return spans;
}

inline std::size_t n_params(const ModelParams& p) {
  std::size_t n = 0;
  visit_tensors(const_cast<ModelParams&>(p),
                [&](auto& t) { n += static_cast<std::size_t>(t.size()); });
  return n;
}

inline ModelParams zero_params(const ModelConfig& cfg, std::size_t v_in,
                               std::size_t v_out) {
  const auto H = static_cast<Eigen::Index>(cfg.hidden_size);
  const auto E = static_cast<Eigen::Index>(cfg.embed());
  ModelParams p;
  p.embed_in = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(v_in), E);
  p.embed_out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(v_out), E);
  for (std::size_t l = 0; l < cfg.num_layers; ++l) {
    Eigen::Index in_dim = l == 0 ? E : H;
    LstmLayerParams layer{Eigen::MatrixXd::Zero(4 * H, in_dim),
                          Eigen::MatrixXd::Zero(4 * H, H),
                          Eigen::VectorXd::Zero(4 * H)};
    p.encoder.push_back(layer);
    p.decoder.push_back(std::move(layer));
  }
  p.w_out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(v_out), H);
  p.b_out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(v_out));
  return p;
}

// Weights uniform in [-a, a] with a = 1/sqrt(H), drawn in canonical tensor
// order from the seeded PRNG. Biases stay out of the random stream: zero
// except the forget-gate slice (rows [H, 2H)), which starts at 1.0.
inline ModelParams init_params(const ModelConfig& cfg, const Vocab& vocab) {
  cfg.validate();
  ModelParams p = zero_params(cfg, vocab.input_size(), vocab.output_size());
  Rng rng(cfg.seed);
  const double a = 1.0 / std::sqrt(static_cast<double>(cfg.hidden_size));
  auto fill = [&](Eigen::MatrixXd& m) {
    double* d = m.data();
    for (Eigen::Index i = 0; i < m.size(); ++i)
      d[i] = uniform_range(rng, -a, a);
  };
  fill(p.embed_in);
  fill(p.embed_out);
  const auto H = static_cast<Eigen::Index>(cfg.hidden_size);
  for (auto* side : {&p.encoder, &p.decoder}) {
    for (LstmLayerParams& layer : *side) {
      fill(layer.w_x);
      fill(layer.w_h);
      layer.b.segment(H, H).setConstant(1.0);
    }
  }
  fill(p.w_out);
  return p;
}

struct LstmState {
  std::vector<Eigen::VectorXd> h;  // per layer, size H
  std::vector<Eigen::VectorXd> c;

  static LstmState zero(std::size_t layers, std::size_t hidden) {
    LstmState s;
    s.h.assign(layers,
               Eigen::VectorXd::Zero(static_cast<Eigen::Index>(hidden)));
    s.c = s.h;
    return s;
  }
};

// Everything the backward pass needs from one cell application.
struct LstmCellCache {
  Eigen::VectorXd x, h_prev, c_prev;
  Eigen::VectorXd i, f, g, o;
  Eigen::VectorXd tanh_c;  // tanh of the new cell
};

namespace detail {

inline Eigen::ArrayXd sigmoid(const Eigen::ArrayXd& z) {
  return 1.0 / (1.0 + (-z).exp());
}

}  // namespace detail

// One cell step: gates from the four H-row slices of W_x x + W_h h + b,
// then c' = f.c + i.g and h' = o.tanh(c').
inline void lstm_cell(const Eigen::VectorXd& x, const Eigen::VectorXd& h_prev,
                      const Eigen::VectorXd& c_prev,
                      const LstmLayerParams& w, Eigen::VectorXd& h_out,
                      Eigen::VectorXd& c_out,
                      LstmCellCache* cache = nullptr) {
  const Eigen::Index H = w.w_h.cols();
  if (w.w_x.rows() != 4 * H || w.w_h.rows() != 4 * H || w.b.size() != 4 * H ||
      x.size() != w.w_x.cols() || h_prev.size() != H || c_prev.size() != H)
    throw Error(Errc::DimensionMismatch, "lstm_cell shape disagreement");

  Eigen::VectorXd z = w.w_x * x + w.w_h * h_prev + w.b;
  Eigen::ArrayXd i = detail::sigmoid(z.segment(0, H).array());
  Eigen::ArrayXd f = detail::sigmoid(z.segment(H, H).array());
  Eigen::ArrayXd g = z.segment(2 * H, H).array().tanh();
  Eigen::ArrayXd o = detail::sigmoid(z.segment(3 * H, H).array());

  c_out = (f * c_prev.array() + i * g).matrix();
  Eigen::ArrayXd tanh_c = c_out.array().tanh();
  h_out = (o * tanh_c).matrix();

  if (cache) {
    cache->x = x;
    cache->h_prev = h_prev;
    cache->c_prev = c_prev;
    cache->i = i.matrix();
    cache->f = f.matrix();
    cache->g = g.matrix();
    cache->o = o.matrix();
    cache->tanh_c = tanh_c.matrix();
  }
}

// Reverse of lstm_cell. dh/dc_future are the gradients flowing into h' and
// c' from later steps; grads accumulate (+=); dx, dh_prev, dc_prev come back
// for the caller to route.
inline void lstm_cell_backward(const LstmCellCache& cc,
                               const LstmLayerParams& w,
                               const Eigen::VectorXd& dh,
                               const Eigen::VectorXd& dc_future,
                               LstmLayerParams& grads, Eigen::VectorXd& dx,
                               Eigen::VectorXd& dh_prev,
                               Eigen::VectorXd& dc_prev) {
  const Eigen::Index H = w.w_h.cols();
  Eigen::ArrayXd dc =
      dc_future.array() +
      dh.array() * cc.o.array() * (1.0 - cc.tanh_c.array().square());

  Eigen::ArrayXd di = dc * cc.g.array();
  Eigen::ArrayXd df = dc * cc.c_prev.array();
  Eigen::ArrayXd dg = dc * cc.i.array();
  Eigen::ArrayXd do_ = dh.array() * cc.tanh_c.array();

  Eigen::VectorXd dz(4 * H);
  dz.segment(0, H) = (di * cc.i.array() * (1.0 - cc.i.array())).matrix();
  dz.segment(H, H) = (df * cc.f.array() * (1.0 - cc.f.array())).matrix();
  dz.segment(2 * H, H) = (dg * (1.0 - cc.g.array().square())).matrix();
  dz.segment(3 * H, H) = (do_ * cc.o.array() * (1.0 - cc.o.array())).matrix();

  grads.w_x.noalias() += dz * cc.x.transpose();
  grads.w_h.noalias() += dz * cc.h_prev.transpose();
  grads.b += dz;

  dx.noalias() = w.w_x.transpose() * dz;
  dh_prev.noalias() = w.w_h.transpose() * dz;
  dc_prev = (dc * cc.f.array()).matrix();
}

// One timestep through the whole layer stack; returns the top hidden vector.
// caches, when given, must hold num_layers slots.
inline Eigen::VectorXd step_stack(const std::vector<LstmLayerParams>& layers,
                                  const Eigen::VectorXd& x0, LstmState& state,
                                  std::vector<LstmCellCache>* caches) {
  Eigen::VectorXd x = x0;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    Eigen::VectorXd h_new, c_new;
    lstm_cell(x, state.h[l], state.c[l], layers[l], h_new, c_new,
              caches ? &(*caches)[l] : nullptr);
    state.h[l] = h_new;
    state.c[l] = c_new;
    x = std::move(h_new);
  }
  return x;
}

struct EncoderTrace {
  std::vector<int> fed_ids;  // reversed word, then <s>
  std::vector<std::vector<LstmCellCache>> steps;  // [t][layer]
};

// Feeds the embedded word in reversed order, <s> last; the final (h, c) of
// every layer is handed to the decoder verbatim.
inline LstmState encode(const std::vector<int>& word_ids,
                        const ModelParams& p, const ModelConfig& cfg,
                        EncoderTrace* trace = nullptr) {
  if (word_ids.empty()) throw Error(Errc::EmptyInput, "nothing to encode");
  LstmState state = LstmState::zero(cfg.num_layers, cfg.hidden_size);
  std::vector<int> fed(word_ids.rbegin(), word_ids.rend());
  fed.push_back(Vocab::kBosIn);
  for (int id : fed) {
    std::vector<LstmCellCache>* caches = nullptr;
    if (trace) {
      trace->steps.emplace_back(cfg.num_layers);
      caches = &trace->steps.back();
    }
    Eigen::VectorXd x0 = p.embed_in.row(id).transpose();
    step_stack(p.encoder, x0, state, caches);
  }
  if (trace) trace->fed_ids = std::move(fed);
  return state;
}

inline Eigen::VectorXd log_softmax(const Eigen::VectorXd& z) {
  const double m = z.maxCoeff();
  const double lse = std::log((z.array() - m).exp().sum());
  return (z.array() - m - lse).matrix();
}

struct DecodeLoss {
  double loss = 0.0;
  ModelParams grads;  // encoder slots left at zero
  LstmState d_init;   // gradient wrt the initial decoder state
};

// Teacher forcing over [<os>, y1..yn] scored against [y1..yn, </os>]; loss
// is the mean per-step negative log-likelihood. Backward fills the decoder
// side of grads plus the gradient wrt `init`.
inline DecodeLoss decode_training_loss(const std::vector<int>& target_ids,
                                       const LstmState& init,
                                       const ModelParams& p,
                                       const ModelConfig& cfg) {
  if (target_ids.empty()) throw Error(Errc::EmptyInput, "empty target");
  const std::size_t T = target_ids.size() + 1;
  const std::size_t L = cfg.num_layers;
  const auto v_out = static_cast<std::size_t>(p.embed_out.rows());

  std::vector<int> inputs(1, Vocab::kOsOut);
  inputs.insert(inputs.end(), target_ids.begin(), target_ids.end());
  std::vector<int> golds(target_ids);
  golds.push_back(Vocab::kEosOut);

  DecodeLoss out;
  out.grads = zero_params(cfg, static_cast<std::size_t>(p.embed_in.rows()),
                          v_out);

  // forward
  LstmState state = init;
  std::vector<std::vector<LstmCellCache>> caches(
      T, std::vector<LstmCellCache>(L));
  std::vector<Eigen::VectorXd> h_tops(T), softmaxes(T);
  double nll = 0.0;
  for (std::size_t t = 0; t < T; ++t) {
    Eigen::VectorXd x0 = p.embed_out.row(inputs[t]).transpose();
    h_tops[t] = step_stack(p.decoder, x0, state, &caches[t]);
    Eigen::VectorXd lsm = log_softmax(p.w_out * h_tops[t] + p.b_out);
    nll -= lsm(golds[t]);
    softmaxes[t] = lsm.array().exp().matrix();
  }
  out.loss = nll / static_cast<double>(T);

  // backward through time
  const auto H = static_cast<Eigen::Index>(cfg.hidden_size);
  std::vector<Eigen::VectorXd> dh_next(L, Eigen::VectorXd::Zero(H));
  std::vector<Eigen::VectorXd> dc_next(L, Eigen::VectorXd::Zero(H));
  for (std::size_t t = T; t-- > 0;) {
    Eigen::VectorXd dlogits = softmaxes[t];
    dlogits(golds[t]) -= 1.0;
    dlogits /= static_cast<double>(T);

    out.grads.w_out.noalias() += dlogits * h_tops[t].transpose();
    out.grads.b_out += dlogits;

    Eigen::VectorXd d_above = p.w_out.transpose() * dlogits;
    for (std::size_t l = L; l-- > 0;) {
      Eigen::VectorXd dh = dh_next[l] + d_above;
      Eigen::VectorXd dx, dh_prev, dc_prev;
      lstm_cell_backward(caches[t][l], p.decoder[l], dh, dc_next[l],
                         out.grads.decoder[l], dx, dh_prev, dc_prev);
      dh_next[l] = std::move(dh_prev);
      dc_next[l] = std::move(dc_prev);
      d_above = std::move(dx);
    }
    out.grads.embed_out.row(inputs[t]) += d_above.transpose();
  }
  out.d_init.h = std::move(dh_next);
  out.d_init.c = std::move(dc_next);
  return out;
}

// Backward through the encoder given the gradient at its final state.
inline void encoder_backward(const EncoderTrace& trace,
                             const LstmState& d_final, const ModelParams& p,
                             const ModelConfig& cfg, ModelParams& grads) {
  const std::size_t L = cfg.num_layers;
  std::vector<Eigen::VectorXd> dh_next = d_final.h;
  std::vector<Eigen::VectorXd> dc_next = d_final.c;
  for (std::size_t t = trace.steps.size(); t-- > 0;) {
    Eigen::VectorXd d_above =
        Eigen::VectorXd::Zero(static_cast<Eigen::Index>(cfg.hidden_size));
    for (std::size_t l = L; l-- > 0;) {
      Eigen::VectorXd dh = dh_next[l] + d_above;
      Eigen::VectorXd dx, dh_prev, dc_prev;
      lstm_cell_backward(trace.steps[t][l], p.encoder[l], dh, dc_next[l],
                         grads.encoder[l], dx, dh_prev, dc_prev);
      dh_next[l] = std::move(dh_prev);
      dc_next[l] = std::move(dc_prev);
      d_above = std::move(dx);
    }
    grads.embed_in.row(trace.fed_ids[t]) += d_above.transpose();
  }
}

struct LossAndGrads {
  double loss = 0.0;
  ModelParams grads;
};

// Loss and exact gradients for one example over the full graph.
inline LossAndGrads seq_loss_and_gradients(const std::vector<int>& input_ids,
                                           const std::vector<int>& target_ids,
                                           const ModelParams& p,
                                           const ModelConfig& cfg) {
  EncoderTrace trace;
  LstmState enc = encode(input_ids, p, cfg, &trace);
  DecodeLoss dl = decode_training_loss(target_ids, enc, p, cfg);
  encoder_backward(trace, dl.d_init, p, cfg, dl.grads);
  return {dl.loss, std::move(dl.grads)};
}

// Forward-only loss; the finite-difference oracle perturbs parameters and
// calls this.
inline double sequence_loss(const std::vector<int>& input_ids,
                            const std::vector<int>& target_ids,
                            const ModelParams& p, const ModelConfig& cfg) {
  if (target_ids.empty()) throw Error(Errc::EmptyInput, "empty target");
  LstmState state = encode(input_ids, p, cfg);
  std::vector<int> inputs(1, Vocab::kOsOut);
  inputs.insert(inputs.end(), target_ids.begin(), target_ids.end());
  std::vector<int> golds(target_ids);
  golds.push_back(Vocab::kEosOut);
  double nll = 0.0;
  for (std::size_t t = 0; t < inputs.size(); ++t) {
    Eigen::VectorXd x0 = p.embed_out.row(inputs[t]).transpose();
    Eigen::VectorXd h_top = step_stack(p.decoder, x0, state, nullptr);
    nll -= log_softmax(p.w_out * h_top + p.b_out)(golds[t]);
  }
  return nll / static_cast<double>(inputs.size());
}

// Elementwise helpers for the optimizer and gradient clipping.

inline void add_scaled(ModelParams& acc, ModelParams& g, double scale) {
  auto a = tensor_spans(acc);
  auto b = tensor_spans(g);
  for (std::size_t s = 0; s < a.size(); ++s)
    for (std::size_t k = 0; k < a[s].size; ++k)
      a[s].data[k] += scale * b[s].data[k];
}

inline void scale_params(ModelParams& p, double scale) {
  for (TensorSpan s : tensor_spans(p))
    for (std::size_t k = 0; k < s.size; ++k) s.data[k] *= scale;
}

inline double global_norm(ModelParams& g) {
  double sq = 0.0;
  for (TensorSpan s : tensor_spans(g))
    for (std::size_t k = 0; k < s.size; ++k) sq += s.data[k] * s.data[k];
  return std::sqrt(sq);
}

}  // namespace ug2p
