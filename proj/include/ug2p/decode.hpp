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

#include <algorithm>
#include <string>
#include <vector>

#include "ug2p/model.hpp"

// Greedy and beam decoding. Both work on the same log-softmax values, so
// beam width 1 reproduces greedy token for token, ties included.

namespace ug2p {

struct DecodeResult {
  std::vector<int> emitted_ids;        // raw, includes </os> when emitted
  std::vector<std::string> phonemes;   // specials stripped
  double log_prob = 0.0;               // sum over emitted steps
  double score = 0.0;                  // ranking score (see beam_decode)
  bool truncated = false;

  bool empty() const { return phonemes.empty(); }
};

// Feeds one output token; returns the log-softmax over the next token.
inline Eigen::VectorXd decoder_step(const ModelParams& p,
                                    const ModelConfig& cfg, int token_id,
                                    LstmState& state) {
  (void)cfg;
  Eigen::VectorXd x0 = p.embed_out.row(token_id).transpose();
  Eigen::VectorXd h_top = step_stack(p.decoder, x0, state, nullptr);
  return log_softmax(p.w_out * h_top + p.b_out);
}

namespace detail {

inline void finish_result(DecodeResult& r, const Vocab& vocab) {
  for (int id : r.emitted_ids)
    if (!Vocab::is_output_special(id)) r.phonemes.push_back(vocab.output_token(id));
}

}  // namespace detail

// Argmax decoding from <os> and the encoder state. Ties go to the lowest
// index; stops at </os> or after max_decode_len emissions (then flagged
// truncated). An immediate </os> yields an empty prediction; the caller
// decides what that means.
inline DecodeResult greedy_decode(const std::vector<int>& word_ids,
                                  const ModelParams& p, const Vocab& vocab,
                                  const ModelConfig& cfg) {
  LstmState state = encode(word_ids, p, cfg);
  DecodeResult r;
  int prev = Vocab::kOsOut;
  for (std::size_t step = 0; step < cfg.max_decode_len; ++step) {
    Eigen::VectorXd lsm = decoder_step(p, cfg, prev, state);
    int pick = 0;
    for (int k = 1; k < lsm.size(); ++k)
      if (lsm(k) > lsm(pick)) pick = k;
    r.emitted_ids.push_back(pick);
    r.log_prob += lsm(pick);
    if (pick == Vocab::kEosOut) break;
    prev = pick;
  }
  r.truncated =
      r.emitted_ids.empty() || r.emitted_ids.back() != Vocab::kEosOut;
  r.score = r.log_prob / static_cast<double>(r.emitted_ids.size());
  detail::finish_result(r, vocab);
  return r;
}

// Beam search. Partial hypotheses compete on cumulative log-probability;
// final ranking uses score = logP / emitted length (including </os>) unless
// length_norm is off, then raw logP. Ties break on (score, emitted token
// sequence lexicographic). Results are deduplicated on the stripped
// pronunciation, best score kept.
inline std::vector<DecodeResult> beam_decode(const std::vector<int>& word_ids,
                                             const ModelParams& p,
                                             const Vocab& vocab,
                                             const ModelConfig& cfg,
                                             std::size_t beam_width,
                                             std::size_t n_best = 1,
                                             bool length_norm = true) {
  if (beam_width < 1)
    throw Error(Errc::InvalidArgument, "beam width must be >= 1");
  if (n_best < 1 || n_best > beam_width)
    throw Error(Errc::InvalidArgument, "need 1 <= n_best <= beam_width");

  struct Hyp {
    std::vector<int> emitted;
    double log_prob = 0.0;
    LstmState state;       // after feeding the last consumed token
    Eigen::VectorXd lsm;   // distribution for the next token
    bool truncated = false;
  };

  Hyp root;
  root.state = encode(word_ids, p, cfg);
  root.lsm = decoder_step(p, cfg, Vocab::kOsOut, root.state);

  std::vector<Hyp> active{std::move(root)};
  std::vector<Hyp> finished;

  struct Cand {
    std::size_t parent;
    int token;
    double log_prob;
    std::vector<int> emitted;
  };

  for (std::size_t step = 0; step < cfg.max_decode_len && !active.empty();
       ++step) {
    std::vector<Cand> cands;
    cands.reserve(active.size() * vocab.output_size());
    for (std::size_t a = 0; a < active.size(); ++a) {
      for (int k = 0; k < static_cast<int>(vocab.output_size()); ++k) {
        Cand c{a, k, active[a].log_prob + active[a].lsm(k), active[a].emitted};
        c.emitted.push_back(k);
        cands.push_back(std::move(c));
      }
    }
    std::sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) {
      if (x.log_prob != y.log_prob) return x.log_prob > y.log_prob;
      return x.emitted < y.emitted;
    });
    if (cands.size() > beam_width) cands.resize(beam_width);

    std::vector<Hyp> next;
    for (Cand& c : cands) {
      Hyp h;
      h.emitted = std::move(c.emitted);
      h.log_prob = c.log_prob;
      if (c.token == Vocab::kEosOut) {
        finished.push_back(std::move(h));
      } else {
        h.state = active[c.parent].state;
        h.lsm = decoder_step(p, cfg, c.token, h.state);
        next.push_back(std::move(h));
      }
    }
    active = std::move(next);
  }
  for (Hyp& h : active) {  // ran into the length cap
    h.truncated = true;
    finished.push_back(std::move(h));
  }

  std::vector<DecodeResult> results;
  for (Hyp& h : finished) {
    DecodeResult r;
    r.emitted_ids = std::move(h.emitted);
    r.log_prob = h.log_prob;
    r.truncated = h.truncated;
    r.score = length_norm
                  ? h.log_prob / static_cast<double>(r.emitted_ids.size())
                  : h.log_prob;
    detail::finish_result(r, vocab);
    results.push_back(std::move(r));
  }
  std::sort(results.begin(), results.end(),
            [](const DecodeResult& x, const DecodeResult& y) {
              if (x.score != y.score) return x.score > y.score;
              return x.emitted_ids < y.emitted_ids;
            });

  std::vector<DecodeResult> out;
  for (DecodeResult& r : results) {
    bool dup = false;
    for (const DecodeResult& kept : out)
      if (kept.phonemes == r.phonemes) {
        dup = true;
        break;
      }
    if (!dup) out.push_back(std::move(r));
    if (out.size() == n_best) break;
  }
  return out;
}

}  // namespace ug2p
