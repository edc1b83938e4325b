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
#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ug2p/cisampa.hpp"
#include "ug2p/error.hpp"
#include "ug2p/prng.hpp"
#include "ug2p/urdu_script.hpp"

// Pronunciation lexicons: `word TAB pronunciation` per line, UTF-8, LF
// endings, `#` comments and blank lines skipped. The pronunciation column is
// either space-separated CISAMPA tokens (canonical) or an undelimited
// concatenation (legacy ingestion).

namespace ug2p {

enum class PronFormat : std::uint8_t { Spaced, Concatenated };

struct LexiconEntry {
  GraphemeString word;
  std::string word_utf8;  // normalized serialization of `word`
  PhonemeString pron;
  std::size_t line_no = 0;
};

struct LoadOptions {
  PronFormat format = PronFormat::Spaced;
  bool allow_foreign = false;
};

struct Diagnostic {
  std::size_t line_no;
  Errc code;
  std::string message;
};

class Lexicon {
 public:
  Lexicon() = default;
  explicit Lexicon(const PhonemeInventory* inv,
                   const ScriptInventory* script = nullptr)
      : phonemes_(inv ? inv : &PhonemeInventory::builtin()),
        script_(script ? script : &ScriptInventory::builtin()) {}

  static Lexicon load(const std::string& path, const LoadOptions& opts = {},
                      const PhonemeInventory* inv = nullptr,
                      const ScriptInventory* script = nullptr) {
    Lexicon lex(inv, script);
    lex.parse(read_all(path), opts, nullptr);
    return lex;
  }

  // Collects per-line problems instead of throwing; bad lines are skipped.
  static Lexicon load_lenient(const std::string& path, const LoadOptions& opts,
                              std::vector<Diagnostic>& diags,
                              const PhonemeInventory* inv = nullptr,
                              const ScriptInventory* script = nullptr) {
    Lexicon lex(inv, script);
    lex.parse(read_all(path), opts, &diags);
    return lex;
  }

  static Lexicon from_string(std::string_view text,
                             const LoadOptions& opts = {},
                             const PhonemeInventory* inv = nullptr,
                             const ScriptInventory* script = nullptr) {
    Lexicon lex(inv, script);
    lex.parse(text, opts, nullptr);
    return lex;
  }

  void add(std::string_view raw_word, const PhonemeString& pron,
           std::size_t line_no = 0, bool allow_foreign = false) {
    LexiconEntry e;
    e.word_utf8 = normalize(raw_word);
    e.word = tokenize(*script_, e.word_utf8);
    if (!allow_foreign && e.word.has_category(GraphemeCategory::Other))
      throw Error(Errc::ForeignGrapheme,
                  "word '" + e.word_utf8 + "' contains non-inventory characters",
                  line_no);
    if (pron.empty())
      throw Error(Errc::MalformedLine, "empty pronunciation", line_no);
    e.pron = pron;
    e.line_no = line_no;
    if (!pair_set_.insert(e.word_utf8 + '\t' + phonemes_->spaced(e.pron))
             .second)
      throw Error(Errc::DuplicatePair,
                  "duplicate (word, pronunciation) pair for '" + e.word_utf8 +
                      "'",
                  line_no);
    index_[e.word_utf8].push_back(entries_.size());
    entries_.push_back(std::move(e));
  }

  const std::vector<LexiconEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  const PhonemeInventory& phonemes() const { return *phonemes_; }
  const ScriptInventory& script() const { return *script_; }

  const std::vector<std::size_t>* find(std::string_view word_utf8) const {
    auto it = index_.find(std::string(word_utf8));
    return it == index_.end() ? nullptr : &it->second;
  }

  // Distinct words in first-occurrence order.
  std::vector<std::string> words() const {
    std::vector<std::string> out;
    std::unordered_set<std::string> seen;
    for (const LexiconEntry& e : entries_)
      if (seen.insert(e.word_utf8).second) out.push_back(e.word_utf8);
    return out;
  }

  std::size_t word_count() const { return index_.size(); }

  void save(const std::string& path, PronFormat format) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::IoError, "cannot write " + path);
    out << serialize(format);
    if (!out) throw Error(Errc::IoError, "write failed for " + path);
  }

  std::string serialize(PronFormat format) const {
    std::string out;
    for (const LexiconEntry& e : entries_) {
      out += e.word_utf8;
      out.push_back('\t');
      out += format == PronFormat::Spaced ? phonemes_->spaced(e.pron)
                                          : concatenate(*phonemes_, e.pron);
      out.push_back('\n');
    }
    return out;
  }

 private:
  static std::string read_all(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::IoError, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  void parse(std::string_view text, const LoadOptions& opts,
             std::vector<Diagnostic>* diags) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t eol = text.find('\n', pos);
      std::string_view line = text.substr(
          pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
      pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (line.empty() || line.front() == '#') continue;
      try {
        parse_line(line, line_no, opts);
      } catch (const Error& err) {
        if (!diags) throw;
        diags->push_back({line_no, err.code(), err.what()});
      }
    }
  }

  void parse_line(std::string_view line, std::size_t line_no,
                  const LoadOptions& opts) {
    std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos ||
        line.find('\t', tab + 1) != std::string_view::npos)
      throw Error(Errc::MalformedLine, "expected exactly one tab separator",
                  line_no);
    std::string_view word = line.substr(0, tab);
    std::string_view pron = line.substr(tab + 1);
    PhonemeString ps;
    try {
      ps = opts.format == PronFormat::Spaced
               ? parse_spaced(*phonemes_, pron)
               : segment_concatenated(*phonemes_, pron);
      add(word, ps, line_no, opts.allow_foreign);
    } catch (const Error& err) {
      if (err.line() != 0) throw;
      throw Error(err.code(), err.what(), line_no);
    }
  }

  const PhonemeInventory* phonemes_ = &PhonemeInventory::builtin();
  const ScriptInventory* script_ = &ScriptInventory::builtin();
  std::vector<LexiconEntry> entries_;
  std::unordered_map<std::string, std::vector<std::size_t>> index_;
  std::unordered_set<std::string> pair_set_;
};

struct SplitSpec {
  double train_frac = 0.85;
  double valid_frac = 0.05;
  double test_frac = 0.10;
  std::uint64_t seed = 1;

  void validate() const {
    auto in_unit = [](double f) { return f >= 0.0 && f <= 1.0; };
    if (!in_unit(train_frac) || !in_unit(valid_frac) || !in_unit(test_frac))
      throw Error(Errc::InvalidArgument, "fractions must lie in [0,1]");
    if (std::abs(train_frac + valid_frac + test_frac - 1.0) > 1e-9)
      throw Error(Errc::InvalidArgument, "fractions must sum to 1");
  }
};

struct SplitResult {
  Lexicon train, valid, test;
};

// Deterministic word-level split: distinct words are shuffled with the seeded
// engine and sliced contiguously, so all pronunciations of a word land in one
// slice. Slice sizes are round(n * frac) with the rounding residue applied to
// the training slice.
inline SplitResult split(const Lexicon& lex, const SplitSpec& spec) {
  spec.validate();
  if (lex.empty()) throw Error(Errc::TooSmall, "empty lexicon");

  std::vector<std::string> words = lex.words();
  const std::size_t n = words.size();
  Rng rng(spec.seed);
  shuffle_deterministic(words, rng);

  auto rounded = [n](double f) {
    return static_cast<long long>(std::llround(static_cast<double>(n) * f));
  };
  long long n_valid = rounded(spec.valid_frac);
  long long n_test = rounded(spec.test_frac);
  long long n_train = rounded(spec.train_frac);
  n_train += static_cast<long long>(n) - (n_train + n_valid + n_test);
  if (n_train <= 0 || n_valid <= 0 || n_test <= 0)
    throw Error(Errc::TooSmall, "a split slice would be empty");

  enum Slice : std::uint8_t { kTrain, kValid, kTest };
  std::unordered_map<std::string, Slice> assignment;
  assignment.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Slice s = i < static_cast<std::size_t>(n_train)
                  ? kTrain
                  : (i < static_cast<std::size_t>(n_train + n_valid) ? kValid
                                                                     : kTest);
    assignment.emplace(words[i], s);
  }

  SplitResult result{Lexicon(&lex.phonemes(), &lex.script()),
                     Lexicon(&lex.phonemes(), &lex.script()),
                     Lexicon(&lex.phonemes(), &lex.script())};
  for (const LexiconEntry& e : lex.entries()) {
    Lexicon& target = assignment.at(e.word_utf8) == kTrain
                          ? result.train
                          : (assignment.at(e.word_utf8) == kValid
                                 ? result.valid
                                 : result.test);
    target.add(e.word_utf8, e.pron, e.line_no, /*allow_foreign=*/true);
  }
  return result;
}

struct PhonemeFrequencyTable {
  // (count, name) sortable view plus raw map
  std::map<std::string, std::size_t> counts;
  std::size_t total = 0;

  std::vector<std::pair<std::string, std::size_t>> descending() const {
    std::vector<std::pair<std::string, std::size_t>> v(counts.begin(),
                                                       counts.end());
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second > b.second;
      return a.first < b.first;
    });
    return v;
  }
};

inline PhonemeFrequencyTable phoneme_stats(const Lexicon& lex) {
  PhonemeFrequencyTable table;
  for (const LexiconEntry& e : lex.entries()) {
    for (std::uint32_t id : e.pron.ids) {
      ++table.counts[lex.phonemes().at(id).name];
      ++table.total;
    }
  }
  return table;
}

// Fraction of distinct words carrying at least one diacritic mark.
inline double diacritic_coverage(const Lexicon& lex) {
  std::unordered_set<std::string> seen;
  std::size_t words = 0, diacritized = 0;
  for (const LexiconEntry& e : lex.entries()) {
    if (!seen.insert(e.word_utf8).second) continue;
    ++words;
    if (e.word.has_category(GraphemeCategory::Diacritic)) ++diacritized;
  }
  return words == 0 ? 0.0
                    : static_cast<double>(diacritized) /
                          static_cast<double>(words);
}

}  // namespace ug2p
