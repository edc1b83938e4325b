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

#include <cmath>
#include <cstdio>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "ug2p/decode.hpp"
#include "ug2p/eval.hpp"
#include "ug2p/lexicon.hpp"
#include "ug2p/model.hpp"

// Mini-batch Adam training with teacher forcing. Each epoch shuffles with
// the seeded PRNG, clips the global gradient norm, then greedy-decodes the
// validation words; the lowest-WER parameters are kept and training stops
// after `patience` epochs without improvement.

namespace ug2p {

struct TrainingConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  std::size_t batch_size = 32;
  double clip_norm = 5.0;
  std::size_t max_epochs = 100;
  std::size_t patience = 10;
  // Worker threads per batch. Examples are split into n_threads contiguous
  // chunks and chunk gradients are reduced in chunk order, so results are
  // reproducible for a fixed (batch_size, n_threads) no matter the host.
  std::size_t n_threads = 1;
  bool stop_when_perfect = true;

  void validate() const {
    if (lr < 0.0 || clip_norm <= 0.0)
      throw Error(Errc::InvalidArgument, "bad optimizer constants");
    if (batch_size == 0 || max_epochs == 0 || patience == 0 || n_threads == 0)
      throw Error(Errc::InvalidArgument, "counts must be >= 1");
  }
};

struct EpochLog {
  std::size_t epoch = 0;  // 1-based
  double train_loss = 0.0;
  double valid_wer = 0.0;
};

struct TrainResult {
  ModelConfig config;
  Vocab vocab;
  ModelParams params;  // best-validation parameters
  std::vector<EpochLog> log;
  std::size_t best_epoch = 0;
  double best_wer = 1.0;
};

inline std::string format_training_log(const std::vector<EpochLog>& log) {
  std::string out = "epoch\ttrain_loss\tvalid_wer\n";
  char buf[96];
  for (const EpochLog& e : log) {
    std::snprintf(buf, sizeof buf, "%zu\t%.17g\t%.17g\n", e.epoch,
                  e.train_loss, e.valid_wer);
    out += buf;
  }
  return out;
}

namespace detail {

struct Example {
  std::vector<int> input_ids;
  std::vector<int> target_ids;
};

inline std::vector<Example> make_examples(const Lexicon& lex,
                                          const Vocab& vocab) {
  std::vector<Example> out;
  out.reserve(lex.size());
  for (const LexiconEntry& e : lex.entries()) {
    Example ex;
    ex.input_ids = vocab.encode_word(e.word);
    ex.target_ids = vocab.encode_pron(lex.phonemes().names(e.pron));
    out.push_back(std::move(ex));
  }
  return out;
}

// Loss and summed gradients over examples[order[begin..end)], sequentially.
inline double chunk_gradients(const std::vector<Example>& examples,
                              const std::vector<std::size_t>& order,
                              std::size_t begin, std::size_t end,
                              const ModelParams& params,
                              const ModelConfig& cfg, ModelParams& grads) {
  double loss_sum = 0.0;
  for (std::size_t k = begin; k < end; ++k) {
    const Example& ex = examples[order[k]];
    LossAndGrads lg =
        seq_loss_and_gradients(ex.input_ids, ex.target_ids, params, cfg);
    loss_sum += lg.loss;
    add_scaled(grads, lg.grads, 1.0);
  }
  return loss_sum;
}

struct AdamState {
  ModelParams m, v;
  std::size_t t = 0;
};

inline void adam_step(ModelParams& params, ModelParams& grads,
                      AdamState& adam, const TrainingConfig& tc) {
  ++adam.t;
  const double bc1 = 1.0 - std::pow(tc.beta1, static_cast<double>(adam.t));
  const double bc2 = 1.0 - std::pow(tc.beta2, static_cast<double>(adam.t));
  auto ps = tensor_spans(params);
  auto gs = tensor_spans(grads);
  auto ms = tensor_spans(adam.m);
  auto vs = tensor_spans(adam.v);
  for (std::size_t s = 0; s < ps.size(); ++s) {
    for (std::size_t k = 0; k < ps[s].size; ++k) {
      const double g = gs[s].data[k];
      double& m = ms[s].data[k];
      double& v = vs[s].data[k];
      m = tc.beta1 * m + (1.0 - tc.beta1) * g;
      v = tc.beta2 * v + (1.0 - tc.beta2) * g * g;
      ps[s].data[k] -= tc.lr * (m / bc1) / (std::sqrt(v / bc2) + tc.eps);
    }
  }
}

}  // namespace detail

// Greedy-decodes one normalized word with the given model pieces.
inline std::vector<std::string> decode_word(const std::string& word_utf8,
                                            const ModelParams& params,
                                            const Vocab& vocab,
                                            const ModelConfig& cfg,
                                            const ScriptInventory& script) {
  GraphemeString gs = tokenize(script, word_utf8);
  if (gs.empty()) throw Error(Errc::EmptyInput, "empty word");
  return greedy_decode(vocab.encode_word(gs), params, vocab, cfg).phonemes;
}

inline TrainResult train(const Lexicon& train_lex, const Lexicon& valid_lex,
                         const ModelConfig& cfg, const TrainingConfig& tc) {
  cfg.validate();
  tc.validate();
  if (train_lex.empty() || valid_lex.empty())
    throw Error(Errc::TooSmall, "train and valid lexicons must be non-empty");

  TrainResult result;
  result.config = cfg;
  result.vocab = Vocab::build(train_lex);
  const Vocab& vocab = result.vocab;

  ModelParams params = init_params(cfg, vocab);
  detail::AdamState adam;
  adam.m = zero_params(cfg, vocab.input_size(), vocab.output_size());
  adam.v = zero_params(cfg, vocab.input_size(), vocab.output_size());

  std::vector<detail::Example> examples =
      detail::make_examples(train_lex, vocab);
  std::vector<std::size_t> order(examples.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  Rng shuffle_rng(cfg.seed);
  std::size_t bad_epochs = 0;

  for (std::size_t epoch = 1; epoch <= tc.max_epochs; ++epoch) {
    shuffle_deterministic(order, shuffle_rng);

    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < examples.size();
         start += tc.batch_size) {
      const std::size_t end =
          std::min(start + tc.batch_size, examples.size());
      const std::size_t n = end - start;

      ModelParams grads =
          zero_params(cfg, vocab.input_size(), vocab.output_size());
      double batch_loss_sum = 0.0;

      const std::size_t workers = std::min(tc.n_threads, n);
      if (workers <= 1) {
        batch_loss_sum = detail::chunk_gradients(examples, order, start, end,
                                                 params, cfg, grads);
      } else {
        std::vector<ModelParams> chunk_grads;
        std::vector<double> chunk_loss(workers, 0.0);
        std::vector<std::exception_ptr> errors(workers);
        chunk_grads.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w)
          chunk_grads.push_back(
              zero_params(cfg, vocab.input_size(), vocab.output_size()));
        std::vector<std::thread> threads;
        for (std::size_t w = 0; w < workers; ++w) {
          const std::size_t lo = start + n * w / workers;
          const std::size_t hi = start + n * (w + 1) / workers;
          threads.emplace_back([&, w, lo, hi] {
            try {
              chunk_loss[w] = detail::chunk_gradients(
                  examples, order, lo, hi, params, cfg, chunk_grads[w]);
            } catch (...) {
              errors[w] = std::current_exception();
            }
          });
        }
        for (std::thread& t : threads) t.join();
        for (std::exception_ptr& e : errors)
          if (e) std::rethrow_exception(e);
        for (std::size_t w = 0; w < workers; ++w) {
          batch_loss_sum += chunk_loss[w];
          add_scaled(grads, chunk_grads[w], 1.0);
        }
      }

      if (!std::isfinite(batch_loss_sum))
        throw Error(Errc::Diverged, "non-finite training loss");
      epoch_loss += batch_loss_sum;

      scale_params(grads, 1.0 / static_cast<double>(n));
      const double norm = global_norm(grads);
      if (norm > tc.clip_norm) scale_params(grads, tc.clip_norm / norm);
      detail::adam_step(params, grads, adam, tc);
    }
    epoch_loss /= static_cast<double>(examples.size());

    EvalReport report =
        evaluate(valid_lex, [&](const std::string& word) {
          return decode_word(word, params, vocab, cfg, valid_lex.script());
        });
    result.log.push_back({epoch, epoch_loss, report.wer});

    if (result.best_epoch == 0 || report.wer < result.best_wer) {
      result.best_wer = report.wer;
      result.best_epoch = epoch;
      result.params = params;
      bad_epochs = 0;
    } else {
      ++bad_epochs;
    }
    if (tc.stop_when_perfect && result.best_wer == 0.0) break;
    if (bad_epochs >= tc.patience) break;
  }
  return result;
}

}  // namespace ug2p
