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

#include <catch2/catch_amalgamated.hpp>

#include "support/harness.hpp"
#include "ug2p/urdu_script.hpp"

using namespace ug2p;
using test::thrown_errc;

TEST_CASE("builtin inventory has the documented shape") {
  const ScriptInventory& inv = ScriptInventory::builtin();
  CHECK(inv.count(GraphemeCategory::BasicLetter) == 37);
  CHECK(inv.count(GraphemeCategory::SecondaryLetter) == 4);
  CHECK(inv.count(GraphemeCategory::Diacritic) == 7);
  CHECK(inv.size() == 48);

  // spot checks across all three categories
  CHECK(inv.classify(0x0628) == GraphemeCategory::BasicLetter);   // beh
  CHECK(inv.classify(0x06D2) == GraphemeCategory::BasicLetter);   // bari yeh
  CHECK(inv.classify(0x0621) == GraphemeCategory::BasicLetter);   // hamza
  CHECK(inv.classify(0x0622) == GraphemeCategory::SecondaryLetter);
  CHECK(inv.classify(0x06BE) == GraphemeCategory::SecondaryLetter);
  CHECK(inv.classify(0x064E) == GraphemeCategory::Diacritic);
  CHECK(inv.classify(0x0670) == GraphemeCategory::Diacritic);
  CHECK(inv.classify(U'x') == GraphemeCategory::Other);
  CHECK(inv.classify(0x0643) == GraphemeCategory::Other);  // arabic kaf
}

TEST_CASE("data file and builtin inventory agree") {
  ScriptInventory file =
      ScriptInventory::from_file(test::data_dir() + "/urdu_script.tsv");
  CHECK(file == ScriptInventory::builtin());
}

TEST_CASE("inventory parser reports malformed files") {
  auto code = [](std::string_view text) {
    return thrown_errc([&] { ScriptInventory::from_string(text); });
  };
  CHECK(code("0628 basic x") == Errc::BadInventoryFile);   // spaces, no tabs
  CHECK(code("zz28\tbasic\tx") == Errc::BadInventoryFile);  // bad hex
  CHECK(code("0628\tvowel\tx") == Errc::BadInventoryFile);  // bad category
  CHECK(code("0628\tbasic\tx\n0628\tbasic\tx") == Errc::BadInventoryFile);
  CHECK(code("110000\tbasic\tx") == Errc::BadInventoryFile);  // out of range
  CHECK(!code("# comment\n\n0628\tbasic\tx\r\n"));  // comments, blanks, CRLF

  try {
    ScriptInventory::from_string("0628\tbasic\tx\nbroken");
    FAIL("expected BadInventoryFile");
  } catch (const Error& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("normalize trims and strips direction controls") {
  CHECK(normalize("  بن\t") == "بن");
  CHECK(normalize("‏ب‎ن؜") == "بن");
  CHECK(normalize("بن") == "بن");
}

TEST_CASE("normalize applies canonical composition") {
  // decomposed alef+madda composes; mark order is canonicalized
  CHECK(normalize("آب") == "آب");
  CHECK(normalize("بَّ") == "بَّ");
}

TEST_CASE("normalize rejects empty and multi-token input") {
  auto code = [](std::string_view text) {
    return thrown_errc([&] { normalize(text); });
  };
  CHECK(code("") == Errc::EmptyAfterNormalization);
  CHECK(code("   ") == Errc::EmptyAfterNormalization);
  CHECK(code("‎‏") == Errc::EmptyAfterNormalization);
  CHECK(code("ب ن") == Errc::InteriorWhitespace);
  CHECK(code("ب\nن") == Errc::InteriorWhitespace);
  CHECK(code("\xFF") == Errc::InvalidUtf8);
}

TEST_CASE("tokenize yields one tagged grapheme per scalar") {
  GraphemeString gs = tokenize("کتاب");  // kitab
  REQUIRE(gs.size() == 4);
  CHECK(gs.units[0] == Grapheme{0x06A9, GraphemeCategory::BasicLetter});
  CHECK(gs.units[1] == Grapheme{0x062A, GraphemeCategory::BasicLetter});
  CHECK(gs.units[2] == Grapheme{0x0627, GraphemeCategory::BasicLetter});
  CHECK(gs.units[3] == Grapheme{0x0628, GraphemeCategory::BasicLetter});
  CHECK(gs.to_utf8() == "کتاب");
}

TEST_CASE("tokenize keeps diacritics and flags unknown codepoints") {
  GraphemeString gs = tokenize("بَنx");
  REQUIRE(gs.size() == 4);
  CHECK(gs.units[1].category == GraphemeCategory::Diacritic);
  CHECK(gs.units[3] == Grapheme{U'x', GraphemeCategory::Other});
  CHECK(gs.has_category(GraphemeCategory::Other));
  CHECK(!tokenize("ب").has_category(GraphemeCategory::Other));
}

TEST_CASE("tokenize on an empty word is empty, not an error") {
  CHECK(tokenize("").empty());
}
