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
#include <fstream>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ug2p/error.hpp"

// The CISAMPA phoneme inventory and codecs for pronunciation strings.
//
// Two on-disk forms are supported:
//   spaced        "T_D A_A"   (canonical; token boundaries explicit)
//   concatenated  "T_DA_A"    (legacy lexicons; boundaries implicit)
// The concatenated form is decodable only because every inventory name is
// built from single-character segments joined by underscores: a token
// boundary lies exactly between two adjacent non-underscore characters.
// check_unique_decodability() verifies the codec property for any name set.

namespace ug2p {

enum class PhonemeClass : std::uint8_t {
  Consonant,
  ConsonantAspirated,
  LongVowel,
  NasalizedLongVowel,
  HalfLongVowel,
  ShortVowel,
  NasalizedShortVowel,
};

inline const char* to_string(PhonemeClass c) {
  switch (c) {
    case PhonemeClass::Consonant: return "consonant";
    case PhonemeClass::ConsonantAspirated: return "consonant_aspirated";
    case PhonemeClass::LongVowel: return "long_vowel";
    case PhonemeClass::NasalizedLongVowel: return "nasalized_long_vowel";
    case PhonemeClass::HalfLongVowel: return "half_long_vowel";
    case PhonemeClass::ShortVowel: return "short_vowel";
    case PhonemeClass::NasalizedShortVowel: return "nasalized_short_vowel";
  }
  return "?";
}

struct Phoneme {
  std::string name;
  std::string ipa;
  PhonemeClass klass;

  bool operator==(const Phoneme&) const = default;
};

// Sequence of inventory indices. Only meaningful against the inventory that
// produced it.
struct PhonemeString {
  std::vector<std::uint32_t> ids;

  bool empty() const { return ids.empty(); }
  std::size_t size() const { return ids.size(); }
  bool operator==(const PhonemeString&) const = default;
};

// A name is single uppercase characters joined by underscores: B, T_D, T_D_H.
inline bool valid_phoneme_name(std::string_view name) {
  if (name.empty()) return false;
  for (std::size_t i = 0; i < name.size(); ++i) {
    bool even = (i % 2 == 0);
    char c = name[i];
    if (even && !(c >= 'A' && c <= 'Z')) return false;
    if (!even && c != '_') return false;
  }
  return name.size() % 2 == 1;
}

class PhonemeInventory {
 public:
  static PhonemeInventory from_string(std::string_view text) {
    PhonemeInventory inv;
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
      inv.add_line(line, line_no);
    }
    return inv;
  }

  static PhonemeInventory from_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::IoError, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_string(ss.str());
  }

  // The shipped 67-phoneme inventory, compiled in. `data/cisampa.tsv`
  // carries the same records; a test keeps the two in sync.
  static const PhonemeInventory& builtin();

  const Phoneme& lookup(std::string_view name) const {
    auto it = by_name_.find(std::string(name));
    if (it == by_name_.end())
      throw Error(Errc::UnknownPhoneme, std::string(name));
    return entries_[it->second];
  }

  std::uint32_t id(std::string_view name) const {
    auto it = by_name_.find(std::string(name));
    if (it == by_name_.end())
      throw Error(Errc::UnknownPhoneme, std::string(name));
    return it->second;
  }

  bool contains(std::string_view name) const {
    return by_name_.count(std::string(name)) != 0;
  }

  const Phoneme& at(std::uint32_t id) const { return entries_.at(id); }
  std::size_t size() const { return entries_.size(); }
  const std::vector<Phoneme>& entries() const { return entries_; }

  std::size_t count(PhonemeClass c) const {
    std::size_t n = 0;
    for (const Phoneme& p : entries_)
      if (p.klass == c) ++n;
    return n;
  }

  std::vector<std::string> all_names() const {
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const Phoneme& p : entries_) out.push_back(p.name);
    return out;
  }

  PhonemeString from_names(const std::vector<std::string>& names) const {
    PhonemeString ps;
    ps.ids.reserve(names.size());
    for (const std::string& n : names) ps.ids.push_back(id(n));
    return ps;
  }

  std::vector<std::string> names(const PhonemeString& ps) const {
    std::vector<std::string> out;
    out.reserve(ps.ids.size());
    for (std::uint32_t i : ps.ids) out.push_back(at(i).name);
    return out;
  }

  std::string spaced(const PhonemeString& ps) const {
    std::string out;
    for (std::size_t k = 0; k < ps.ids.size(); ++k) {
      if (k) out.push_back(' ');
      out += at(ps.ids[k]).name;
    }
    return out;
  }

  bool operator==(const PhonemeInventory& o) const {
    return entries_ == o.entries_;
  }

 private:
  void add_line(std::string_view line, std::size_t line_no) {
    std::size_t t1 = line.find('\t');
    std::size_t t2 = t1 == std::string_view::npos
                         ? std::string_view::npos
                         : line.find('\t', t1 + 1);
    if (t1 == std::string_view::npos || t2 == std::string_view::npos)
      throw Error(Errc::BadInventoryFile, "expected 3 tab-separated fields",
                  line_no);
    Phoneme p;
    p.name = std::string(line.substr(0, t1));
    p.ipa = std::string(line.substr(t1 + 1, t2 - t1 - 1));
    std::string cls(line.substr(t2 + 1));
    if (!valid_phoneme_name(p.name))
      throw Error(Errc::BadInventoryFile, "bad phoneme name '" + p.name + "'",
                  line_no);
    if (cls == "consonant") p.klass = PhonemeClass::Consonant;
    else if (cls == "consonant_aspirated")
      p.klass = PhonemeClass::ConsonantAspirated;
    else if (cls == "long_vowel") p.klass = PhonemeClass::LongVowel;
    else if (cls == "nasalized_long_vowel")
      p.klass = PhonemeClass::NasalizedLongVowel;
    else if (cls == "half_long_vowel") p.klass = PhonemeClass::HalfLongVowel;
    else if (cls == "short_vowel") p.klass = PhonemeClass::ShortVowel;
    else if (cls == "nasalized_short_vowel")
      p.klass = PhonemeClass::NasalizedShortVowel;
    else
      throw Error(Errc::BadInventoryFile, "unknown class '" + cls + "'",
                  line_no);
    if (by_name_.count(p.name))
      throw Error(Errc::BadInventoryFile, "duplicate name " + p.name, line_no);
    by_name_.emplace(p.name, static_cast<std::uint32_t>(entries_.size()));
    entries_.push_back(std::move(p));
  }

  std::vector<Phoneme> entries_;
  std::unordered_map<std::string, std::uint32_t> by_name_;
};

// Canonical form: names separated by single spaces.
inline PhonemeString parse_spaced(const PhonemeInventory& inv,
                                  std::string_view pron) {
  PhonemeString ps;
  if (pron.empty())
    throw Error(Errc::MalformedSpacing, "empty pronunciation");
  std::size_t start = 0;
  std::size_t token_idx = 0;
  for (std::size_t i = 0; i <= pron.size(); ++i) {
    if (i == pron.size() || pron[i] == ' ') {
      if (i == start)
        throw Error(Errc::MalformedSpacing,
                    "expected single spaces between tokens");
      std::string_view tok = pron.substr(start, i - start);
      if (!inv.contains(tok))
        throw Error(Errc::UnknownPhoneme, std::string(tok) + " (token " +
                                              std::to_string(token_idx) + ")");
      ps.ids.push_back(inv.id(tok));
      ++token_idx;
      start = i + 1;
    }
  }
  return ps;
}

// Splits an undelimited concatenation of names. A boundary lies exactly
// between two adjacent non-underscore characters; within a name every
// adjacent pair is underscore-separated.
inline PhonemeString segment_concatenated(const PhonemeInventory& inv,
                                          std::string_view pron) {
  if (pron.empty())
    throw Error(Errc::UnsegmentableString, "empty pronunciation");
  for (std::size_t i = 0; i < pron.size(); ++i) {
    char c = pron[i];
    if (!((c >= 'A' && c <= 'Z') || c == '_'))
      throw Error(Errc::UnsegmentableString,
                  std::string("invalid character '") + c + "' at offset " +
                      std::to_string(i));
  }
  if (pron.front() == '_' || pron.back() == '_')
    throw Error(Errc::UnsegmentableString, "leading or trailing underscore");
  if (pron.find("__") != std::string_view::npos)
    throw Error(Errc::UnsegmentableString, "double underscore");
  PhonemeString ps;
  std::size_t start = 0;
  std::size_t token_idx = 0;
  for (std::size_t i = 1; i <= pron.size(); ++i) {
    if (i == pron.size() || (pron[i] != '_' && pron[i - 1] != '_')) {
      std::string_view tok = pron.substr(start, i - start);
      if (!inv.contains(tok))
        throw Error(Errc::UnknownPhoneme, std::string(tok) + " (token " +
                                              std::to_string(token_idx) + ")");
      ps.ids.push_back(inv.id(tok));
      ++token_idx;
      start = i;
    }
  }
  return ps;
}

// Inverse of segment_concatenated: names joined with no separator.
inline std::string concatenate(const PhonemeInventory& inv,
                               const PhonemeString& ps) {
  std::string out;
  for (std::uint32_t i : ps.ids) out += inv.at(i).name;
  return out;
}

struct AmbiguityWitness {
  std::string text;                   // string with two distinct parses
  std::vector<std::string> parse_a;
  std::vector<std::string> parse_b;
};

struct DecodabilityResult {
  bool uniquely_decodable;
  std::optional<AmbiguityWitness> witness;
};

// Sardinas-Patterson with witness reconstruction. States carry a pending
// dangling suffix w plus two token sequences P, Q with
// concat(P) == concat(Q) + w; reaching w == some codeword closes two distinct
// parses of the same string. Expansion ordered by witness length, so the
// returned witness is minimal.
inline DecodabilityResult check_unique_decodability(
    std::vector<std::string> code) {
  std::sort(code.begin(), code.end());
  code.erase(std::unique(code.begin(), code.end()), code.end());
  if (code.empty()) throw Error(Errc::EmptyInput, "empty code");
  for (const std::string& c : code)
    if (c.empty()) throw Error(Errc::EmptyInput, "empty codeword");

  struct State {
    std::string pending;
    std::vector<std::string> parse_a, parse_b;  // concat(a) = concat(b)+pending
    std::size_t text_len;                       // |concat(parse_a)|
  };
  auto cmp = [](const State& x, const State& y) {
    if (x.text_len != y.text_len) return x.text_len > y.text_len;
    return x.pending > y.pending;
  };
  std::priority_queue<State, std::vector<State>, decltype(cmp)> queue(cmp);
  std::unordered_map<std::string, std::size_t> best_len;

  for (const std::string& u : code) {
    for (const std::string& v : code) {
      if (u.size() >= v.size() || v.compare(0, u.size(), u) != 0) continue;
      State s{v.substr(u.size()), {v}, {u}, v.size()};
      queue.push(std::move(s));
    }
  }

  while (!queue.empty()) {
    State s = queue.top();
    queue.pop();
    auto it = best_len.find(s.pending);
    if (it != best_len.end() && it->second <= s.text_len) continue;
    best_len[s.pending] = s.text_len;

    for (const std::string& c : code) {
      if (c == s.pending) {
        AmbiguityWitness w;
        w.text.clear();
        for (const std::string& t : s.parse_a) w.text += t;
        w.parse_a = s.parse_a;
        w.parse_b = s.parse_b;
        w.parse_b.push_back(c);
        return {false, std::move(w)};
      }
      if (c.size() < s.pending.size() &&
          s.pending.compare(0, c.size(), c) == 0) {
        // codeword consumes a prefix of the pending suffix
        State n{s.pending.substr(c.size()), s.parse_a, s.parse_b, s.text_len};
        n.parse_b.push_back(c);
        queue.push(std::move(n));
      } else if (c.size() > s.pending.size() &&
                 c.compare(0, s.pending.size(), s.pending) == 0) {
        // pending suffix extends into a longer codeword; roles swap
        State n{c.substr(s.pending.size()), s.parse_b, s.parse_a,
                s.text_len + c.size() - s.pending.size()};
        n.parse_a.push_back(c);
        queue.push(std::move(n));
      }
    }
  }
  return {true, std::nullopt};
}

inline DecodabilityResult check_unique_decodability(
    const PhonemeInventory& inv) {
  return check_unique_decodability(inv.all_names());
}

namespace detail {

inline constexpr std::string_view kBuiltinCisampaTsv =
    "P\tp\tconsonant\nP_H\tpʰ\tconsonant_aspirated\n"
    "B\tb\tconsonant\nB_H\tbʰ\tconsonant_aspirated\n"
    "M\tm\tconsonant\nM_H\tmʰ\tconsonant_aspirated\n"
    "T_D\tt̪\tconsonant\nT_D_H\tt̪ʰ\tconsonant_aspirated\n"
    "D_D\td̪\tconsonant\nD_D_H\td̪ʰ\tconsonant_aspirated\n"
    "T\tʈ\tconsonant\nT_H\tʈʰ\tconsonant_aspirated\n"
    "D\tɖ\tconsonant\nD_H\tɖʰ\tconsonant_aspirated\n"
    "N\tn\tconsonant\nN_H\tnʰ\tconsonant_aspirated\n"
    "K\tk\tconsonant\nK_H\tkʰ\tconsonant_aspirated\n"
    "G\tg\tconsonant\nG_H\tgʰ\tconsonant_aspirated\n"
    "N_G\tŋ\tconsonant\nQ\tq\tconsonant\nY\tʔ\tconsonant\n"
    "F\tf\tconsonant\nV\tv\tconsonant\nS\ts\tconsonant\nZ\tz\tconsonant\n"
    "S_H\tʃ\tconsonant\nZ_Z\tʒ\tconsonant\nX\tx\tconsonant\n"
    "G_G\tɣ\tconsonant\nH\th\tconsonant\n"
    "L\tl\tconsonant\nL_H\tlʰ\tconsonant_aspirated\n"
    "R\tr\tconsonant\nR_H\trʰ\tconsonant_aspirated\n"
    "R_R\tɽ\tconsonant\nR_R_H\tɽʰ\tconsonant_aspirated\n"
    "J\tj\tconsonant\nJ_H\tjʰ\tconsonant_aspirated\n"
    "T_S\ttʃ\tconsonant\nT_S_H\ttʃʰ\tconsonant_aspirated\n"
    "D_Z\tdʒ\tconsonant\nD_Z_H\tdʒʰ\tconsonant_aspirated\n"
    "U_U\tuː\tlong_vowel\nO_O\toː\tlong_vowel\nO\tɔː\tlong_vowel\n"
    "A_A\taː\tlong_vowel\nI_I\tiː\tlong_vowel\nA_Y\teː\tlong_vowel\n"
    "A_E\tæː\tlong_vowel\n"
    "U_U_N\tũː\tnasalized_long_vowel\nO_O_N\tõː\tnasalized_long_vowel\n"
    "O_N\tɔ̃ː\tnasalized_long_vowel\nA_A_N\tãː\tnasalized_long_vowel\n"
    "I_I_N\tĩː\tnasalized_long_vowel\nA_Y_N\tẽː\tnasalized_long_vowel\n"
    "A_E_N\tæ̃ː\tnasalized_long_vowel\n"
    "A_Y_H\teˑ\thalf_long_vowel\nA_E_H\tæˑ\thalf_long_vowel\n"
    "O_O_H\toˑ\thalf_long_vowel\n"
    "I\tɪ\tshort_vowel\nU\tʊ\tshort_vowel\nA\tə\tshort_vowel\n"
    "I_N\tɪ̃\tnasalized_short_vowel\nU_N\tʊ̃\tnasalized_short_vowel\n"
    "A_N\tə̃\tnasalized_short_vowel\n";

}  // namespace detail

inline const PhonemeInventory& PhonemeInventory::builtin() {
  static const PhonemeInventory inv =
      from_string(detail::kBuiltinCisampaTsv);
  return inv;
}

}  // namespace ug2p
