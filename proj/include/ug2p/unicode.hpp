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
#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "ug2p/error.hpp"

// UTF-8 codec and canonical (NFC) normalization scoped to the Arabic script
// block (U+0600..U+06FF), which covers the writing system this toolkit
// processes. Codepoints outside the table pass through unchanged; for Arabic
// script input the result is exactly Unicode NFC. Tables follow UnicodeData
// 13.0 (canonical decompositions and combining classes of the block).

namespace ug2p {

inline bool is_ascii_space(char32_t cp) {
  return cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\v' ||
         cp == U'\f' || cp == U'\r';
}

// Bidi controls stripped during normalization: LRM, RLM, ALM.
inline bool is_direction_control(char32_t cp) {
  return cp == 0x200E || cp == 0x200F || cp == 0x061C;
}

inline std::u32string decode_utf8(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t i = 0;
  const auto fail = [&] {
    throw Error(Errc::InvalidUtf8,
                "malformed byte sequence at offset " + std::to_string(i));
  };
  while (i < text.size()) {
    unsigned char b0 = static_cast<unsigned char>(text[i]);
    char32_t cp = 0;
    std::size_t len = 0;
    if (b0 < 0x80) {
      cp = b0;
      len = 1;
    } else if ((b0 & 0xE0) == 0xC0) {
      cp = b0 & 0x1F;
      len = 2;
    } else if ((b0 & 0xF0) == 0xE0) {
      cp = b0 & 0x0F;
      len = 3;
    } else if ((b0 & 0xF8) == 0xF0) {
      cp = b0 & 0x07;
      len = 4;
    } else {
      fail();
    }
    if (i + len > text.size()) fail();
    for (std::size_t k = 1; k < len; ++k) {
      unsigned char b = static_cast<unsigned char>(text[i + k]);
      if ((b & 0xC0) != 0x80) fail();
      cp = (cp << 6) | (b & 0x3F);
    }
    // reject overlong forms, surrogates and out-of-range values
    static constexpr char32_t kMin[5] = {0, 0, 0x80, 0x800, 0x10000};
    if (len > 1 && cp < kMin[len]) fail();
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) fail();
    out.push_back(cp);
    i += len;
  }
  return out;
}

inline void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

inline std::string encode_utf8(std::u32string_view cps) {
  std::string out;
  out.reserve(cps.size() * 2);
  for (char32_t cp : cps) append_utf8(out, cp);
  return out;
}

// Canonical combining class, Arabic block subset. 0 elsewhere.
inline int combining_class(char32_t cp) {
  switch (cp) {
    case 0x0618: return 30;
    case 0x0619: return 31;
    case 0x061A: return 32;
    case 0x064B: return 27;
    case 0x064C: return 28;
    case 0x064D: return 29;
    case 0x064E: return 30;
    case 0x064F: return 31;
    case 0x0650: return 32;
    case 0x0651: return 33;
    case 0x0652: return 34;
    case 0x0655: case 0x0656: case 0x065C: case 0x065F:
    case 0x06E3: case 0x06EA: case 0x06ED:
      return 220;
    case 0x0670: return 35;
    default:
      if ((cp >= 0x0610 && cp <= 0x0617) || cp == 0x0653 || cp == 0x0654 ||
          (cp >= 0x0657 && cp <= 0x065B) || cp == 0x065D || cp == 0x065E ||
          (cp >= 0x06D6 && cp <= 0x06DC) || (cp >= 0x06DF && cp <= 0x06E2) ||
          cp == 0x06E4 || cp == 0x06E7 || cp == 0x06E8 ||
          (cp >= 0x06EB && cp <= 0x06EC))
        return 230;
      return 0;
  }
}

namespace detail {

struct CanonicalPair {
  char32_t composed;
  char32_t starter;
  char32_t mark;
};

// Every canonical decomposition in U+0600..U+06FF.
inline constexpr std::array<CanonicalPair, 8> kCanonicalPairs = {{
    {0x0622, 0x0627, 0x0653},  // alef madda
    {0x0623, 0x0627, 0x0654},  // alef hamza above
    {0x0624, 0x0648, 0x0654},  // waw hamza above
    {0x0625, 0x0627, 0x0655},  // alef hamza below
    {0x0626, 0x064A, 0x0654},  // yeh hamza above
    {0x06C0, 0x06D5, 0x0654},  // heh yeh above
    {0x06C2, 0x06C1, 0x0654},  // heh goal hamza above
    {0x06D3, 0x06D2, 0x0654},  // yeh barree hamza above
}};

inline bool decompose_pair(char32_t cp, char32_t& starter, char32_t& mark) {
  for (const auto& p : kCanonicalPairs) {
    if (p.composed == cp) {
      starter = p.starter;
      mark = p.mark;
      return true;
    }
  }
  return false;
}

inline char32_t compose_pair(char32_t starter, char32_t mark) {
  for (const auto& p : kCanonicalPairs) {
    if (p.starter == starter && p.mark == mark) return p.composed;
  }
  return 0;
}

}  // namespace detail

// NFC over the Arabic block: canonical decomposition, canonical ordering of
// combining marks, canonical composition. Idempotent.
inline std::u32string normalize_nfc(std::u32string_view input) {
  std::u32string buf;
  buf.reserve(input.size() + 4);
  for (char32_t cp : input) {
    char32_t s, m;
    if (detail::decompose_pair(cp, s, m)) {
      buf.push_back(s);
      buf.push_back(m);
    } else {
      buf.push_back(cp);
    }
  }
  // canonical ordering: stable insertion sort of nonzero-ccc runs
  for (std::size_t i = 1; i < buf.size(); ++i) {
    int cc = combining_class(buf[i]);
    if (cc == 0) continue;
    std::size_t j = i;
    while (j > 0) {
      int prev = combining_class(buf[j - 1]);
      if (prev == 0 || prev <= cc) break;
      std::swap(buf[j - 1], buf[j]);
      --j;
    }
  }
  // canonical composition
  std::u32string out;
  out.reserve(buf.size());
  std::ptrdiff_t last_starter = -1;
  for (char32_t cp : buf) {
    int cc = combining_class(cp);
    if (last_starter >= 0) {
      // blocked if some mark with ccc >= ccc(cp) sits between the starter and
      // cp; after canonical ordering it suffices to look at the previous char
      bool directly_after =
          static_cast<std::size_t>(last_starter) + 1 == out.size();
      bool blocked =
          !directly_after && combining_class(out.back()) >= cc && cc != 0;
      if (cc != 0 && !blocked) {
        char32_t composed = detail::compose_pair(
            out[static_cast<std::size_t>(last_starter)], cp);
        if (composed != 0) {
          out[static_cast<std::size_t>(last_starter)] = composed;
          continue;
        }
      }
    }
    if (cc == 0) last_starter = static_cast<std::ptrdiff_t>(out.size());
    out.push_back(cp);
  }
  return out;
}

}  // namespace ug2p
