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
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <unordered_set>
#include <vector>

#include "ug2p/cisampa.hpp"
#include "ug2p/lexicon.hpp"

// Intrinsic evaluation: word accuracy / WER and phoneme error rate. A
// prediction is correct iff it exactly matches any reference pronunciation
// of its word; phoneme edits are counted against the closest reference.

namespace ug2p {

enum class EditOp : std::uint8_t { Match, Sub, Del, Ins };

struct EditResult {
  std::size_t distance = 0;
  std::vector<EditOp> alignment;  // ref/hyp walked left to right
};

// Unit-cost Levenshtein with backtrace. Ties resolve match > sub > del > ins.
template <class T>
EditResult edit_distance(const std::vector<T>& ref, const std::vector<T>& hyp) {
  const std::size_t m = ref.size(), n = hyp.size();
  std::vector<std::vector<std::size_t>> d(m + 1,
                                          std::vector<std::size_t>(n + 1));
  for (std::size_t i = 0; i <= m; ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= n; ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= m; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      std::size_t sub = d[i - 1][j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      std::size_t del = d[i - 1][j] + 1;
      std::size_t ins = d[i][j - 1] + 1;
      d[i][j] = std::min({sub, del, ins});
    }
  }

  EditResult result;
  result.distance = d[m][n];
  std::size_t i = m, j = n;
  std::vector<EditOp> rev;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 && ref[i - 1] == hyp[j - 1] &&
        d[i][j] == d[i - 1][j - 1]) {
      rev.push_back(EditOp::Match);
      --i, --j;
    } else if (i > 0 && j > 0 && d[i][j] == d[i - 1][j - 1] + 1) {
      rev.push_back(EditOp::Sub);
      --i, --j;
    } else if (i > 0 && d[i][j] == d[i - 1][j] + 1) {
      rev.push_back(EditOp::Del);
      --i;
    } else {
      rev.push_back(EditOp::Ins);
      --j;
    }
  }
  result.alignment.assign(rev.rbegin(), rev.rend());
  return result;
}

inline EditResult edit_distance(const PhonemeString& ref,
                                const PhonemeString& hyp) {
  return edit_distance(ref.ids, hyp.ids);
}

struct EvalReport {
  std::size_t n_words = 0;
  std::size_t n_word_errors = 0;
  double wer = 0.0;
  double accuracy = 1.0;
  std::size_t n_phoneme_edits = 0;
  std::size_t n_reference_phonemes = 0;
  double per = 0.0;
  // (ref phoneme, hyp phoneme); "-" marks a gap on either side
  std::map<std::pair<std::string, std::string>, std::size_t> confusion;

  static constexpr const char* kGap = "-";
};

using Decoder =
    std::function<std::vector<std::string>(const std::string& word_utf8)>;

// Scores `decoder` against every distinct word of the test lexicon. PER ties
// between references resolve to the first one in file order.
inline EvalReport evaluate(const Lexicon& test, const Decoder& decoder) {
  if (test.empty()) throw Error(Errc::TooSmall, "empty test lexicon");
  EvalReport report;

  std::unordered_set<std::string> seen;
  for (const LexiconEntry& entry : test.entries()) {
    if (!seen.insert(entry.word_utf8).second) continue;
    ++report.n_words;

    std::vector<std::vector<std::string>> refs;
    for (std::size_t idx : *test.find(entry.word_utf8))
      refs.push_back(test.phonemes().names(test.entries()[idx].pron));
    std::vector<std::string> hyp = decoder(entry.word_utf8);

    bool correct = false;
    for (const auto& r : refs)
      if (r == hyp) {
        correct = true;
        break;
      }
    if (!correct) ++report.n_word_errors;

    EditResult best;
    std::size_t best_ref = 0;
    bool first = true;
    for (std::size_t r = 0; r < refs.size(); ++r) {
      EditResult er = edit_distance(refs[r], hyp);
      if (first || er.distance < best.distance) {
        best = er;
        best_ref = r;
        first = false;
      }
    }
    report.n_phoneme_edits += best.distance;
    report.n_reference_phonemes += refs[best_ref].size();

    const auto& ref = refs[best_ref];
    std::size_t i = 0, j = 0;
    for (EditOp op : best.alignment) {
      switch (op) {
        case EditOp::Match:
        case EditOp::Sub:
          ++report.confusion[{ref[i], hyp[j]}];
          ++i, ++j;
          break;
        case EditOp::Del:
          ++report.confusion[{ref[i], EvalReport::kGap}];
          ++i;
          break;
        case EditOp::Ins:
          ++report.confusion[{EvalReport::kGap, hyp[j]}];
          ++j;
          break;
      }
    }
  }

  report.wer = static_cast<double>(report.n_word_errors) /
               static_cast<double>(report.n_words);
  report.accuracy = 1.0 - report.wer;
  report.per = report.n_reference_phonemes == 0
                   ? 0.0
                   : static_cast<double>(report.n_phoneme_edits) /
                         static_cast<double>(report.n_reference_phonemes);
  return report;
}

}  // namespace ug2p
