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
#include "ug2p/lexicon.hpp"

using namespace ug2p;
using test::thrown_errc;

namespace {

// n distinct two/three-letter words over the basic letters
std::vector<std::string> make_words(std::size_t n) {
  const std::vector<char32_t> letters =
      ScriptInventory::builtin().codepoints(GraphemeCategory::BasicLetter);
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; out.size() < n; ++i) {
    std::u32string w;
    std::size_t x = i;
    w.push_back(letters[x % letters.size()]);
    x /= letters.size();
    w.push_back(letters[x % letters.size()]);
    x /= letters.size();
    if (x) w.push_back(letters[(x - 1) % letters.size()]);
    out.push_back(encode_utf8(w));
  }
  return out;
}

Lexicon lex_of(const std::vector<std::string>& words,
               const std::string& pron = "B") {
  const PhonemeInventory& inv = PhonemeInventory::builtin();
  Lexicon lex;
  for (const std::string& w : words) lex.add(w, parse_spaced(inv, pron));
  return lex;
}

std::vector<std::string> pron_names(const Lexicon& lex, std::size_t i) {
  return lex.phonemes().names(lex.entries()[i].pron);
}

}  // namespace

TEST_CASE("lexicon parses word-tab-pronunciation lines") {
  Lexicon lex = Lexicon::from_string(
      "# comment\n"
      "\n"
      "بن\tB A N\r\n"
      "بات\tB A_A T_D\n");
  REQUIRE(lex.size() == 2);
  CHECK(lex.entries()[0].word_utf8 == "بن");
  CHECK(lex.entries()[0].line_no == 3);
  CHECK(pron_names(lex, 0) == std::vector<std::string>{"B", "A", "N"});
  CHECK(lex.entries()[1].word_utf8 == "بات");
  CHECK(pron_names(lex, 1) == std::vector<std::string>{"B", "A_A", "T_D"});
  CHECK(lex.word_count() == 2);
}

TEST_CASE("lexicon reads the concatenated pronunciation form") {
  LoadOptions opts;
  opts.format = PronFormat::Concatenated;
  Lexicon lex = Lexicon::from_string("بن\tBAN\n", opts);
  REQUIRE(lex.size() == 1);
  CHECK(pron_names(lex, 0) == std::vector<std::string>{"B", "A", "N"});
}

TEST_CASE("lexicon rejects malformed lines with line numbers") {
  auto load_err = [](std::string_view text, LoadOptions opts = {}) {
    try {
      Lexicon::from_string(text, opts);
      return std::pair<Errc, std::size_t>{Errc::InvalidArgument, 0};
    } catch (const Error& e) {
      return std::pair<Errc, std::size_t>{e.code(), e.line()};
    }
  };
  CHECK(load_err("بن B A N\n") ==
        std::pair<Errc, std::size_t>{Errc::MalformedLine, 1});
  CHECK(load_err("بن\tB\tA\n") ==
        std::pair<Errc, std::size_t>{Errc::MalformedLine, 1});
  CHECK(load_err("بن\t\n") ==
        std::pair<Errc, std::size_t>{Errc::MalformedSpacing, 1});
  CHECK(load_err("ok\tB\nبن\tB A Q_Q\n").first ==
        Errc::ForeignGrapheme);  // line 1 word is latin
  CHECK(load_err("بن\tB A Q_Q\n") ==
        std::pair<Errc, std::size_t>{Errc::UnknownPhoneme, 1});
  CHECK(load_err("بxن\tB\n") ==
        std::pair<Errc, std::size_t>{Errc::ForeignGrapheme, 1});
  CHECK(load_err("بن\tB\nبن\tB\n") ==
        std::pair<Errc, std::size_t>{Errc::DuplicatePair, 2});
  CHECK(load_err("\tB\n") ==
        std::pair<Errc, std::size_t>{Errc::EmptyAfterNormalization, 1});
}

TEST_CASE("same word with a second pronunciation is not a duplicate") {
  Lexicon lex = Lexicon::from_string("بن\tB A N\nبن\tB A_A N\n");
  CHECK(lex.size() == 2);
  CHECK(lex.word_count() == 1);
  const auto* idx = lex.find("بن");
  REQUIRE(idx != nullptr);
  CHECK(idx->size() == 2);
  CHECK(lex.find("نب") == nullptr);
  CHECK(lex.words() == std::vector<std::string>{"بن"});
}

TEST_CASE("allow_foreign keeps words with out-of-inventory characters") {
  LoadOptions opts;
  opts.allow_foreign = true;
  Lexicon lex = Lexicon::from_string("بxن\tB\n", opts);
  REQUIRE(lex.size() == 1);
  CHECK(lex.entries()[0].word.has_category(GraphemeCategory::Other));
}

TEST_CASE("lenient loading collects diagnostics and keeps good lines") {
  test::TempDir tmp;
  test::write_file(tmp.file("lex.tsv"),
                   "بن\tB A N\n"
                   "broken line\n"
                   "بات\tB A_A T_D\n"
                   "بن\tB A Q_Q\n"
                   "بxن\tB\n");
  std::vector<Diagnostic> diags;
  Lexicon lex = Lexicon::load_lenient(tmp.file("lex.tsv"), {}, diags);
  CHECK(lex.size() == 2);
  REQUIRE(diags.size() == 3);
  CHECK(diags[0].line_no == 2);
  CHECK(diags[0].code == Errc::MalformedLine);
  CHECK(diags[1].line_no == 4);
  CHECK(diags[1].code == Errc::UnknownPhoneme);
  CHECK(diags[2].line_no == 5);
  CHECK(diags[2].code == Errc::ForeignGrapheme);
  CHECK(diags[1].message.find("line 4") != std::string::npos);
}

TEST_CASE("word normalization happens on ingestion") {
  // decomposed alef+madda and a stray direction mark normalize away
  Lexicon lex = Lexicon::from_string("‏آب\tA_A B\n");
  REQUIRE(lex.size() == 1);
  CHECK(lex.entries()[0].word_utf8 == "آب");
  CHECK(lex.find("آب") != nullptr);
}

TEST_CASE("serialize and reload are lossless in both formats") {
  Lexicon lex = Lexicon::from_string(
      "بن\tB A N\n"
      "بات\tB A_A T_D\n"
      "بن\tB A_A N\n");
  for (PronFormat f : {PronFormat::Spaced, PronFormat::Concatenated}) {
    std::string text = lex.serialize(f);
    LoadOptions opts;
    opts.format = f;
    Lexicon back = Lexicon::from_string(text, opts);
    REQUIRE(back.size() == lex.size());
    for (std::size_t i = 0; i < lex.size(); ++i) {
      CHECK(back.entries()[i].word_utf8 == lex.entries()[i].word_utf8);
      CHECK(back.entries()[i].pron == lex.entries()[i].pron);
    }
    CHECK(back.serialize(f) == text);  // fixed point
  }
  const std::string first_line = "بن\tB A N\n";
  CHECK(lex.serialize(PronFormat::Spaced).rfind(first_line, 0) == 0);
  CHECK(lex.serialize(PronFormat::Concatenated).find("\tBAN\n") !=
        std::string::npos);

  test::TempDir tmp;
  lex.save(tmp.file("out.tsv"), PronFormat::Spaced);
  CHECK(test::read_file(tmp.file("out.tsv")) ==
        lex.serialize(PronFormat::Spaced));
}

TEST_CASE("split slices by word, deterministically") {
  Lexicon lex = lex_of(make_words(200));
  SplitSpec spec;  // 0.85 / 0.05 / 0.10, seed 1
  SplitResult a = split(lex, spec);
  SplitResult b = split(lex, spec);
  CHECK(a.train.word_count() == 170);
  CHECK(a.valid.word_count() == 10);
  CHECK(a.test.word_count() == 20);
  CHECK(a.train.serialize(PronFormat::Spaced) ==
        b.train.serialize(PronFormat::Spaced));
  CHECK(a.valid.serialize(PronFormat::Spaced) ==
        b.valid.serialize(PronFormat::Spaced));
  CHECK(a.test.serialize(PronFormat::Spaced) ==
        b.test.serialize(PronFormat::Spaced));

  SplitSpec other = spec;
  other.seed = 2;
  CHECK(split(lex, other).test.serialize(PronFormat::Spaced) !=
        a.test.serialize(PronFormat::Spaced));

  // no word leaks across slices
  for (const std::string& w : a.test.words()) {
    CHECK(a.train.find(w) == nullptr);
    CHECK(a.valid.find(w) == nullptr);
  }
}

TEST_CASE("split keeps all pronunciations of a word together") {
  std::vector<std::string> words = make_words(40);
  Lexicon lex = lex_of(words);
  const PhonemeInventory& inv = lex.phonemes();
  Lexicon multi;
  for (const std::string& w : words) {
    multi.add(w, parse_spaced(inv, "B"));
    multi.add(w, parse_spaced(inv, "B A_A"));  // every word has two prons
  }
  SplitResult r = split(multi, SplitSpec{0.5, 0.25, 0.25, 9});
  CHECK(r.train.size() + r.valid.size() + r.test.size() == multi.size());
  for (const Lexicon* slice : {&r.train, &r.valid, &r.test})
    for (const std::string& w : slice->words()) {
      REQUIRE(slice->find(w) != nullptr);
      CHECK(slice->find(w)->size() == 2);
    }
}

TEST_CASE("split sizes follow rounding with the residue on train") {
  // n=103: round(5.15)=5 valid, round(10.3)=10 test, train takes the rest
  SplitResult r = split(lex_of(make_words(103)), SplitSpec{});
  CHECK(r.train.word_count() == 88);
  CHECK(r.valid.word_count() == 5);
  CHECK(r.test.word_count() == 10);
}

TEST_CASE("split rejects bad fractions and too-small lexicons") {
  Lexicon lex = lex_of(make_words(20));
  CHECK(thrown_errc([&] { split(lex, SplitSpec{0.9, 0.2, 0.1, 1}); }) ==
        Errc::InvalidArgument);
  CHECK(thrown_errc([&] { split(lex, SplitSpec{-0.1, 0.6, 0.5, 1}); }) ==
        Errc::InvalidArgument);
  CHECK(thrown_errc([&] { split(Lexicon(), SplitSpec{}); }) == Errc::TooSmall);
  // 7 words: round(7*0.05) = 0 validation words
  CHECK(thrown_errc([&] { split(lex_of(make_words(7)), SplitSpec{}); }) ==
        Errc::TooSmall);
}

TEST_CASE("phoneme stats count tokens and order by frequency") {
  Lexicon lex = Lexicon::from_string(
      "بن\tB A N\n"
      "بات\tB A_A T_D\n"
      "بن\tN A B\n");
  PhonemeFrequencyTable t = phoneme_stats(lex);
  CHECK(t.total == 9);
  CHECK(t.counts.at("B") == 3);
  CHECK(t.counts.at("A") == 2);
  CHECK(t.counts.at("N") == 2);
  auto desc = t.descending();
  REQUIRE(desc.size() == 5);
  CHECK(desc[0] == std::pair<std::string, std::size_t>{"B", 3});
  CHECK(desc[1] == std::pair<std::string, std::size_t>{"A", 2});  // tie: A < N
  CHECK(desc[2] == std::pair<std::string, std::size_t>{"N", 2});
}

TEST_CASE("diacritic coverage is a fraction of distinct words") {
  Lexicon lex = Lexicon::from_string(
      "بَن\tB A N\n"   // with fatha
      "بات\tB A_A T_D\n"
      "بن\tB A N\n"
      "بن\tB A_A N\n");  // duplicate word counts once
  CHECK(diacritic_coverage(lex) == 1.0 / 3.0);
  CHECK(diacritic_coverage(Lexicon()) == 0.0);
}
