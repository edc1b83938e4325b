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
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "ug2p/error.hpp"
#include "ug2p/lexicon.hpp"
#include "ug2p/unicode.hpp"
#include "ug2p/urdu_script.hpp"

// Token tables for the transducer. Input side indexes graphemes, output side
// indexes phoneme names; the two spaces are disjoint. Special tokens sit at
// fixed indices so serialized models stay self-describing.

namespace ug2p {

class Vocab {
 public:
  // input specials
  static constexpr int kPadIn = 0;
  static constexpr int kBosIn = 1;  // <s>, fed as the final encoder step
  static constexpr int kUnkIn = 2;
  // output specials
  static constexpr int kPadOut = 0;
  static constexpr int kOsOut = 1;   // <os>, decoder start
  static constexpr int kEosOut = 2;  // </os>, decoder stop
  static constexpr int kUnkOut = 3;

  static constexpr std::size_t kInputSpecials = 3;
  static constexpr std::size_t kOutputSpecials = 4;

  Vocab() = default;

  Vocab(std::vector<std::string> input_tokens,
        std::vector<std::string> output_tokens)
      : input_tokens_(std::move(input_tokens)),
        output_tokens_(std::move(output_tokens)) {
    check_specials(input_tokens_, {"<pad>", "<s>", "<unk>"}, "input");
    check_specials(output_tokens_, {"<pad>", "<os>", "</os>", "<unk>"},
                   "output");
    build_maps();
  }

  // Deterministic construction from training data: graphemes sorted by
  // codepoint, phoneme names sorted lexicographically.
  static Vocab build(const Lexicon& train) {
    if (train.empty()) throw Error(Errc::TooSmall, "empty training lexicon");
    std::set<char32_t> cps;
    std::set<std::string> names;
    for (const LexiconEntry& e : train.entries()) {
      for (const Grapheme& g : e.word.units) cps.insert(g.codepoint);
      for (std::uint32_t id : e.pron.ids)
        names.insert(train.phonemes().at(id).name);
    }
    std::vector<std::string> in = {"<pad>", "<s>", "<unk>"};
    for (char32_t cp : cps) in.push_back(encode_utf8(std::u32string(1, cp)));
    std::vector<std::string> out = {"<pad>", "<os>", "</os>", "<unk>"};
    out.insert(out.end(), names.begin(), names.end());
    return Vocab(std::move(in), std::move(out));
  }

  std::size_t input_size() const { return input_tokens_.size(); }
  std::size_t output_size() const { return output_tokens_.size(); }
  const std::vector<std::string>& input_tokens() const {
    return input_tokens_;
  }
  const std::vector<std::string>& output_tokens() const {
    return output_tokens_;
  }
  const std::string& input_token(int id) const { return input_tokens_.at(id); }
  const std::string& output_token(int id) const {
    return output_tokens_.at(id);
  }

  int input_index(char32_t cp) const {
    auto it = cp_map_.find(cp);
    return it == cp_map_.end() ? kUnkIn : it->second;
  }
  int output_index(const std::string& name) const {
    auto it = out_map_.find(name);
    return it == out_map_.end() ? kUnkOut : it->second;
  }

  static bool is_output_special(int id) { return id < int(kOutputSpecials); }

  // Word graphemes to input ids, natural order, unknowns to <unk>.
  std::vector<int> encode_word(const GraphemeString& word) const {
    std::vector<int> ids;
    ids.reserve(word.size());
    for (const Grapheme& g : word.units) ids.push_back(input_index(g.codepoint));
    return ids;
  }

  std::vector<int> encode_pron(const std::vector<std::string>& names) const {
    std::vector<int> ids;
    ids.reserve(names.size());
    for (const std::string& n : names) ids.push_back(output_index(n));
    return ids;
  }

  bool operator==(const Vocab& other) const {
    return input_tokens_ == other.input_tokens_ &&
           output_tokens_ == other.output_tokens_;
  }

 private:
  static void check_specials(const std::vector<std::string>& tokens,
                             std::initializer_list<const char*> specials,
                             const char* side) {
    if (tokens.size() < specials.size())
      throw Error(Errc::InvalidArgument,
                  std::string(side) + " vocabulary too small");
    std::size_t i = 0;
    for (const char* s : specials)
      if (tokens[i++] != s)
        throw Error(Errc::InvalidArgument,
                    std::string(side) + " specials misplaced");
    std::set<std::string> seen(tokens.begin(), tokens.end());
    if (seen.size() != tokens.size())
      throw Error(Errc::InvalidArgument,
                  std::string(side) + " vocabulary has duplicates");
  }

  void build_maps() {
    for (std::size_t i = 0; i < input_tokens_.size(); ++i) {
      if (i >= kInputSpecials) {
        std::u32string cps = decode_utf8(input_tokens_[i]);
        if (cps.size() == 1) cp_map_[cps[0]] = int(i);
      }
    }
    for (std::size_t i = 0; i < output_tokens_.size(); ++i)
      out_map_[output_tokens_[i]] = int(i);
  }

  std::vector<std::string> input_tokens_;
  std::vector<std::string> output_tokens_;
  std::unordered_map<char32_t, int> cp_map_;
  std::unordered_map<std::string, int> out_map_;
};

}  // namespace ug2p
