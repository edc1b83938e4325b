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

// The synthetic corpus is test infrastructure, so it gets its own tests:
// the toy pronunciation rules must be the function we think they are, and
// the corpus must be deterministic and fully covered by the built-in
// phoneme inventory.

#include <catch2/catch_amalgamated.hpp>

#include "support/synthetic.hpp"
#include "ug2p/cisampa.hpp"
#include "ug2p/urdu_script.hpp"

using namespace ug2p;
using test::SyntheticPair;
using test::synthetic_corpus;
using test::synthetic_lexicon;
using test::synthetic_pronounce;

namespace {

// named codepoints so the expected strings can be checked by eye
constexpr char32_t B = 0x0628, N = 0x0646, S = 0x0633, R = 0x0631;
constexpr char32_t ALEF = 0x0627, WAW = 0x0648, YEH = 0x06CC;
constexpr char32_t BARI_YEH = 0x06D2, GHUNNA = 0x06BA, DO_CHASHMI = 0x06BE;
constexpr char32_t ZABAR = 0x064E;

using Names = std::vector<std::string>;

}  // namespace

TEST_CASE("toy pronunciation rules behave as documented") {
  // schwa epenthesis between bare consonants
  CHECK(synthetic_pronounce({B, N}) == Names{"B", "A", "N"});
  // alef: short initially, long elsewhere
  CHECK(synthetic_pronounce({ALEF, B}) == Names{"A", "B"});
  CHECK(synthetic_pronounce({B, ALEF}) == Names{"B", "A_A"});
  // waw: consonant initially, O_O finally, U_U in the middle
  CHECK(synthetic_pronounce({WAW, B, ALEF}) == Names{"V", "A", "B", "A_A"});
  CHECK(synthetic_pronounce({B, WAW}) == Names{"B", "O_O"});
  CHECK(synthetic_pronounce({B, WAW, N}) == Names{"B", "U_U", "N"});
  // yeh: consonant initially, I_I elsewhere; a following vowel letter
  // suppresses epenthesis
  CHECK(synthetic_pronounce({YEH, ALEF, R}) == Names{"J", "A_A", "R"});
  CHECK(synthetic_pronounce({B, YEH}) == Names{"B", "I_I"});
  CHECK(synthetic_pronounce({B, BARI_YEH}) == Names{"B", "A_Y"});
  // combining marks are short vowels
  CHECK(synthetic_pronounce({B, ZABAR, S}) == Names{"B", "A", "S"});
  // do chashmi heh aspirates, nun ghunna nasalizes the previous symbol
  CHECK(synthetic_pronounce({B, DO_CHASHMI, ALEF}) == Names{"B_H", "A_A"});
  CHECK(synthetic_pronounce({B, DO_CHASHMI, YEH, GHUNNA}) ==
        Names{"B_H", "I_I_N"});
  CHECK(synthetic_pronounce({B, ALEF, GHUNNA}) == Names{"B", "A_A_N"});
}

TEST_CASE("synthetic corpus is deterministic") {
  std::vector<SyntheticPair> a = synthetic_corpus(300, 5);
  std::vector<SyntheticPair> b = synthetic_corpus(300, 5);
  REQUIRE(a.size() == 300);
  bool same = true;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k].word != b[k].word || a[k].pron != b[k].pron) same = false;
  CHECK(same);

  std::vector<SyntheticPair> c = synthetic_corpus(300, 6);
  bool differs = false;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k].word != c[k].word) differs = true;
  CHECK(differs);
}

TEST_CASE("synthetic corpus stays inside both inventories") {
  std::vector<SyntheticPair> pairs = synthetic_corpus(2000, 7);
  REQUIRE(pairs.size() == 2000);

  const ScriptInventory& script = ScriptInventory::builtin();
  std::size_t foreign = 0;
  for (const SyntheticPair& p : pairs) {
    GraphemeString g = tokenize(script, normalize(p.word));
    if (g.has_category(GraphemeCategory::Other)) ++foreign;
  }
  CHECK(foreign == 0);

  // from_names throws on any name outside the built-in phoneme set
  Lexicon lex = synthetic_lexicon(pairs);
  CHECK(lex.size() == 2000);
  CHECK(lex.word_count() == 2000);  // generator never repeats a word
}

TEST_CASE("eleven percent of synthetic words carry diacritics") {
  std::vector<SyntheticPair> pairs = synthetic_corpus(2000, 7);
  Lexicon lex = synthetic_lexicon(pairs);
  CHECK(diacritic_coverage(lex) == 0.11);

  std::vector<SyntheticPair> small = synthetic_corpus(200, 11);
  CHECK(diacritic_coverage(synthetic_lexicon(small)) == 0.11);
}
