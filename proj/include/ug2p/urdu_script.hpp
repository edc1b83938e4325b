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

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ug2p/error.hpp"
#include "ug2p/unicode.hpp"

// Urdu orthography: character inventory, word normalization and
// word -> grapheme-sequence tokenization. One grapheme per Unicode scalar;
// base letters and combining diacritics stay separate tokens.

namespace ug2p {

enum class GraphemeCategory : std::uint8_t {
  BasicLetter,
  SecondaryLetter,
  Diacritic,
  Other,
};

inline const char* to_string(GraphemeCategory c) {
  switch (c) {
    case GraphemeCategory::BasicLetter: return "basic";
    case GraphemeCategory::SecondaryLetter: return "secondary";
    case GraphemeCategory::Diacritic: return "diacritic";
    case GraphemeCategory::Other: return "other";
  }
  return "other";
}

struct Grapheme {
  char32_t codepoint;
  GraphemeCategory category;

  bool operator==(const Grapheme&) const = default;
};

struct GraphemeString {
  std::vector<Grapheme> units;

  bool empty() const { return units.empty(); }
  std::size_t size() const { return units.size(); }

  std::string to_utf8() const {
    std::string out;
    for (const Grapheme& g : units) append_utf8(out, g.codepoint);
    return out;
  }

  bool has_category(GraphemeCategory c) const {
    for (const Grapheme& g : units)
      if (g.category == c) return true;
    return false;
  }

  bool operator==(const GraphemeString&) const = default;
};

// The character inventory, loaded from a TSV data file
// (`<codepoint-hex> TAB <category> TAB <display-char>`, `#` comments).
class ScriptInventory {
 public:
  static ScriptInventory from_string(std::string_view text) {
    ScriptInventory inv;
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

  static ScriptInventory from_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::IoError, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_string(ss.str());
  }

  // The shipped inventory, compiled in. `data/urdu_script.tsv` carries the
  // same records; a test keeps the two in sync.
  static const ScriptInventory& builtin();

  GraphemeCategory classify(char32_t cp) const {
    auto it = categories_.find(cp);
    return it == categories_.end() ? GraphemeCategory::Other : it->second;
  }

  std::size_t count(GraphemeCategory c) const {
    std::size_t n = 0;
    for (const auto& [cp, cat] : categories_)
      if (cat == c) ++n;
    return n;
  }

  std::size_t size() const { return categories_.size(); }

  std::vector<char32_t> codepoints(GraphemeCategory c) const {
    std::vector<char32_t> out;
    for (const auto& [cp, cat] : categories_)
      if (cat == c) out.push_back(cp);
    std::sort(out.begin(), out.end());
    return out;
  }

  bool operator==(const ScriptInventory& other) const {
    return categories_ == other.categories_;
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
    std::string hex(line.substr(0, t1));
    std::string cat(line.substr(t1 + 1, t2 - t1 - 1));
    char32_t cp = 0;
    for (char ch : hex) {
      int d;
      if (ch >= '0' && ch <= '9') d = ch - '0';
      else if (ch >= 'a' && ch <= 'f') d = ch - 'a' + 10;
      else if (ch >= 'A' && ch <= 'F') d = ch - 'A' + 10;
      else throw Error(Errc::BadInventoryFile, "bad codepoint " + hex, line_no);
      cp = cp * 16 + static_cast<char32_t>(d);
    }
    if (hex.empty() || cp > 0x10FFFF)
      throw Error(Errc::BadInventoryFile, "bad codepoint " + hex, line_no);
    GraphemeCategory category;
    if (cat == "basic") category = GraphemeCategory::BasicLetter;
    else if (cat == "secondary") category = GraphemeCategory::SecondaryLetter;
    else if (cat == "diacritic") category = GraphemeCategory::Diacritic;
    else
      throw Error(Errc::BadInventoryFile, "unknown category '" + cat + "'",
                  line_no);
    if (!categories_.emplace(cp, category).second)
      throw Error(Errc::BadInventoryFile, "duplicate codepoint " + hex,
                  line_no);
  }

  std::unordered_map<char32_t, GraphemeCategory> categories_;
};

namespace detail {

inline constexpr std::string_view kBuiltinScriptTsv =
    "0627\tbasic\tا\n0628\tbasic\tب\n067E\tbasic\tپ\n"
    "062A\tbasic\tت\n0679\tbasic\tٹ\n062B\tbasic\tث\n"
    "062C\tbasic\tج\n0686\tbasic\tچ\n062D\tbasic\tح\n"
    "062E\tbasic\tخ\n062F\tbasic\tد\n0688\tbasic\tڈ\n"
    "0630\tbasic\tذ\n0631\tbasic\tر\n0691\tbasic\tڑ\n"
    "0632\tbasic\tز\n0698\tbasic\tژ\n0633\tbasic\tس\n"
    "0634\tbasic\tش\n0635\tbasic\tص\n0636\tbasic\tض\n"
    "0637\tbasic\tط\n0638\tbasic\tظ\n0639\tbasic\tع\n"
    "063A\tbasic\tغ\n0641\tbasic\tف\n0642\tbasic\tق\n"
    "06A9\tbasic\tک\n06AF\tbasic\tگ\n0644\tbasic\tل\n"
    "0645\tbasic\tم\n0646\tbasic\tن\n0648\tbasic\tو\n"
    "06C1\tbasic\tہ\n0621\tbasic\tء\n06CC\tbasic\tی\n"
    "06D2\tbasic\tے\n"
    "0622\tsecondary\tآ\n06BA\tsecondary\tں\n"
    "0629\tsecondary\tة\n06BE\tsecondary\tھ\n"
    "064E\tdiacritic\tَ\n0650\tdiacritic\tِ\n"
    "064F\tdiacritic\tُ\n0651\tdiacritic\tّ\n"
    "0652\tdiacritic\tْ\n0670\tdiacritic\tٰ\n"
    "064B\tdiacritic\tً\n";

}  // namespace detail

inline const ScriptInventory& ScriptInventory::builtin() {
  static const ScriptInventory inv =
      from_string(detail::kBuiltinScriptTsv);
  return inv;
}

// Normalizes one word: strips bidi controls, trims ASCII whitespace at the
// ends, rejects interior whitespace (a word is a single token), applies NFC.
inline std::string normalize(std::string_view text) {
  std::u32string cps = decode_utf8(text);
  std::u32string kept;
  kept.reserve(cps.size());
  for (char32_t cp : cps)
    if (!is_direction_control(cp)) kept.push_back(cp);
  std::size_t b = 0, e = kept.size();
  while (b < e && is_ascii_space(kept[b])) ++b;
  while (e > b && is_ascii_space(kept[e - 1])) --e;
  if (b == e)
    throw Error(Errc::EmptyAfterNormalization, "no characters left");
  for (std::size_t i = b; i < e; ++i)
    if (is_ascii_space(kept[i]))
      throw Error(Errc::InteriorWhitespace, "a word is a single token");
  return encode_utf8(normalize_nfc(kept.substr(b, e - b)));
}

// One grapheme per Unicode scalar value, in input order. Total on normalized
// input: unknown codepoints come back tagged Other, never dropped.
inline GraphemeString tokenize(const ScriptInventory& inv,
                               std::string_view word) {
  GraphemeString gs;
  for (char32_t cp : decode_utf8(word))
    gs.units.push_back(Grapheme{cp, inv.classify(cp)});
  return gs;
}

inline GraphemeString tokenize(std::string_view word) {
  return tokenize(ScriptInventory::builtin(), word);
}

}  // namespace ug2p
