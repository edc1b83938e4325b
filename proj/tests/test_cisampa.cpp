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
#include "support/oracles.hpp"
#include "ug2p/cisampa.hpp"
#include "ug2p/prng.hpp"

using namespace ug2p;
using test::thrown_errc;

namespace {

std::vector<std::string> seg_names(const PhonemeInventory& inv,
                                   std::string_view text) {
  return inv.names(segment_concatenated(inv, text));
}

// checks a reported ambiguity witness without trusting the checker
void require_valid_witness(const std::vector<std::string>& code,
                           const AmbiguityWitness& w) {
  auto concat = [](const std::vector<std::string>& parts) {
    std::string s;
    for (const auto& p : parts) s += p;
    return s;
  };
  REQUIRE(w.parse_a != w.parse_b);
  REQUIRE(concat(w.parse_a) == w.text);
  REQUIRE(concat(w.parse_b) == w.text);
  for (const auto& parts : {w.parse_a, w.parse_b})
    for (const auto& p : parts)
      REQUIRE(std::find(code.begin(), code.end(), p) != code.end());
}

}  // namespace

TEST_CASE("builtin phoneme inventory has the documented shape") {
  const PhonemeInventory& inv = PhonemeInventory::builtin();
  CHECK(inv.size() == 67);
  CHECK(inv.count(PhonemeClass::Consonant) == 28);
  CHECK(inv.count(PhonemeClass::ConsonantAspirated) == 16);
  CHECK(inv.count(PhonemeClass::Consonant) +
            inv.count(PhonemeClass::ConsonantAspirated) ==
        44);
  CHECK(inv.count(PhonemeClass::LongVowel) == 7);
  CHECK(inv.count(PhonemeClass::NasalizedLongVowel) == 7);
  CHECK(inv.count(PhonemeClass::HalfLongVowel) == 3);
  CHECK(inv.count(PhonemeClass::ShortVowel) == 3);
  CHECK(inv.count(PhonemeClass::NasalizedShortVowel) == 3);

  CHECK(inv.lookup("T_D").ipa == "t̪");
  CHECK(inv.lookup("A_A").klass == PhonemeClass::LongVowel);
  CHECK(inv.lookup("N_G").klass == PhonemeClass::Consonant);
  CHECK(inv.contains("R_R_H"));
  CHECK(!inv.contains("E"));
  CHECK(thrown_errc([&] { inv.lookup("E"); }) == Errc::UnknownPhoneme);
}

TEST_CASE("data file and builtin phoneme inventory agree") {
  PhonemeInventory file =
      PhonemeInventory::from_file(test::data_dir() + "/cisampa.tsv");
  CHECK(file == PhonemeInventory::builtin());
}

TEST_CASE("phoneme name grammar") {
  CHECK(valid_phoneme_name("B"));
  CHECK(valid_phoneme_name("T_D"));
  CHECK(valid_phoneme_name("T_D_H"));
  CHECK(!valid_phoneme_name(""));
  CHECK(!valid_phoneme_name("b"));
  CHECK(!valid_phoneme_name("TD"));
  CHECK(!valid_phoneme_name("T_"));
  CHECK(!valid_phoneme_name("_T"));
  CHECK(!valid_phoneme_name("T__D"));
  CHECK(!valid_phoneme_name("T D"));
}

TEST_CASE("inventory parser rejects malformed phoneme files") {
  auto code = [](std::string_view text) {
    return thrown_errc([&] { PhonemeInventory::from_string(text); });
  };
  CHECK(code("B b consonant") == Errc::BadInventoryFile);
  CHECK(code("b_\tb\tconsonant") == Errc::BadInventoryFile);
  CHECK(code("B\tb\tplosive") == Errc::BadInventoryFile);
  CHECK(code("B\tb\tconsonant\nB\tb\tconsonant") == Errc::BadInventoryFile);
  CHECK(!code("# note\n\nB\tb\tconsonant\r\n"));
}

TEST_CASE("parse_spaced reads the canonical form") {
  const PhonemeInventory& inv = PhonemeInventory::builtin();
  PhonemeString ps = parse_spaced(inv, "T_D A_A");
  CHECK(inv.names(ps) == std::vector<std::string>{"T_D", "A_A"});
  CHECK(inv.spaced(ps) == "T_D A_A");
  CHECK(parse_spaced(inv, "B").size() == 1);

  auto code = [&](std::string_view p) {
    return thrown_errc([&] { parse_spaced(inv, p); });
  };
  CHECK(code("") == Errc::MalformedSpacing);
  CHECK(code("T_D  A_A") == Errc::MalformedSpacing);
  CHECK(code(" T_D") == Errc::MalformedSpacing);
  CHECK(code("T_D ") == Errc::MalformedSpacing);
  CHECK(code("T_D Q_Q") == Errc::UnknownPhoneme);
}

TEST_CASE("segmentation recovers token boundaries from concatenated text") {
  const PhonemeInventory& inv = PhonemeInventory::builtin();
  CHECK(seg_names(inv, "ALA_AMA_AT_D") ==
        std::vector<std::string>{"A", "L", "A_A", "M", "A_A", "T_D"});
  CHECK(seg_names(inv, "D_ZA_AI_ID_DA_AD_D") ==
        std::vector<std::string>{"D_Z", "A_A", "I_I", "D_D", "A_A", "D_D"});
  CHECK(seg_names(inv, "B") == std::vector<std::string>{"B"});
  CHECK(seg_names(inv, "T_D_H") == std::vector<std::string>{"T_D_H"});
  CHECK(seg_names(inv, "AA") == std::vector<std::string>{"A", "A"});
}

TEST_CASE("segmentation rejects strings outside the codec") {
  const PhonemeInventory& inv = PhonemeInventory::builtin();
  auto code = [&](std::string_view p) {
    return thrown_errc([&] { segment_concatenated(inv, p); });
  };
  CHECK(code("") == Errc::UnsegmentableString);
  CHECK(code("_A") == Errc::UnsegmentableString);
  CHECK(code("A_") == Errc::UnsegmentableString);
  CHECK(code("A__B") == Errc::UnsegmentableString);
  CHECK(code("aB") == Errc::UnsegmentableString);
  CHECK(code("A B") == Errc::UnsegmentableString);
  CHECK(code("E") == Errc::UnknownPhoneme);     // shape fine, not a phoneme
  CHECK(code("A_B") == Errc::UnknownPhoneme);   // single unknown token
}

TEST_CASE("segment is a left inverse of concatenate") {
  const PhonemeInventory& inv = PhonemeInventory::builtin();
  Rng rng(2024);
  for (int n = 0; n < 300; ++n) {
    PhonemeString ps;
    const std::size_t len = 1 + uniform_below(rng, 30);
    for (std::size_t k = 0; k < len; ++k)
      ps.ids.push_back(
          static_cast<std::uint32_t>(uniform_below(rng, inv.size())));
    CHECK(segment_concatenated(inv, concatenate(inv, ps)) == ps);
  }
}

TEST_CASE("builtin inventory is a uniquely decodable code") {
  DecodabilityResult r = check_unique_decodability(PhonemeInventory::builtin());
  CHECK(r.uniquely_decodable);
  CHECK(!r.witness.has_value());
}

TEST_CASE("decodability checker classifies known codes") {
  CHECK(check_unique_decodability({"0", "10", "11"}).uniquely_decodable);
  CHECK(check_unique_decodability({"0", "01", "011"}).uniquely_decodable);
  CHECK(!check_unique_decodability({"A", "AA"}).uniquely_decodable);
  CHECK(!check_unique_decodability({"0", "01", "10"}).uniquely_decodable);
  CHECK(!check_unique_decodability({"A", "AB", "BC", "C"}).uniquely_decodable);
  CHECK(thrown_errc([] { check_unique_decodability({""}); }) ==
        Errc::EmptyInput);
}

TEST_CASE("ambiguity witnesses are real and minimal") {
  {
    std::vector<std::string> code = {"A", "AA"};
    DecodabilityResult r = check_unique_decodability(code);
    REQUIRE(r.witness.has_value());
    require_valid_witness(code, *r.witness);
    CHECK(r.witness->text == "AA");  // shortest possible ambiguous string
    CHECK(test::all_parses(r.witness->text, code).size() >= 2);
  }
  {
    std::vector<std::string> code = {"0", "01", "10"};
    DecodabilityResult r = check_unique_decodability(code);
    REQUIRE(r.witness.has_value());
    require_valid_witness(code, *r.witness);
    CHECK(r.witness->text == "010");
  }
  {
    std::vector<std::string> code = {"A", "AB", "BC", "C"};
    DecodabilityResult r = check_unique_decodability(code);
    REQUIRE(r.witness.has_value());
    require_valid_witness(code, *r.witness);
    CHECK(r.witness->text == "ABC");
  }
}

TEST_CASE("segmentation agrees with the exhaustive parse oracle") {
  // ten-name slice, exercised over every producible string up to 9 chars
  const std::vector<std::string> names = {"A",   "I",   "A_A", "A_Y", "T_D",
                                          "D_Z", "I_I", "O_O", "S_H", "R_R"};
  const PhonemeInventory& inv = PhonemeInventory::builtin();
  std::size_t checked = 0, mismatches = 0;
  for (const std::string& text : test::all_concatenations(names, 9)) {
    auto parses = test::all_parses(text, names);
    REQUIRE(parses.size() == 1);  // sub-code is itself uniquely decodable
    if (seg_names(inv, text) != parses[0]) ++mismatches;
    ++checked;
  }
  CHECK(mismatches == 0);
  CHECK(checked > 10000);
}
