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

// Batch front end for the toolkit: validate -> stats -> split -> train ->
// generate -> evaluate, plus inventory checks and codec segmentation.
//
// Exit codes: 0 success, 1 data error, 2 usage error, 3 internal/numeric.
// All randomness flows from --seed flags (default 1); nothing reads the
// clock or the environment.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ug2p/ug2p.hpp"

namespace {

constexpr std::uint64_t kDefaultSeed = 1;

struct Inventories {
  std::optional<ug2p::PhonemeInventory> phonemes;
  std::optional<ug2p::ScriptInventory> script;

  const ug2p::PhonemeInventory* phoneme_ptr() const {
    return phonemes ? &*phonemes : nullptr;
  }
  const ug2p::ScriptInventory* script_ptr() const {
    return script ? &*script : nullptr;
  }
  const ug2p::PhonemeInventory& phoneme_ref() const {
    return phonemes ? *phonemes : ug2p::PhonemeInventory::builtin();
  }
  const ug2p::ScriptInventory& script_ref() const {
    return script ? *script : ug2p::ScriptInventory::builtin();
  }
};

// Shared flag plumbing: every subcommand that touches data files accepts
// inventory overrides and a pronunciation column format.
void add_inventory_flags(CLI::App* cmd, std::string& phonemes_path,
                         std::string& script_path) {
  cmd->add_option("--phonemes", phonemes_path,
                  "phoneme inventory TSV (default: built-in)");
  cmd->add_option("--script", script_path,
                  "script inventory TSV (default: built-in)");
}

Inventories load_inventories(const std::string& phonemes_path,
                             const std::string& script_path) {
  Inventories inv;
  if (!phonemes_path.empty())
    inv.phonemes = ug2p::PhonemeInventory::from_file(phonemes_path);
  if (!script_path.empty())
    inv.script = ug2p::ScriptInventory::from_file(script_path);
  return inv;
}

ug2p::PronFormat parse_format(const std::string& name) {
  if (name == "spaced") return ug2p::PronFormat::Spaced;
  if (name == "concatenated") return ug2p::PronFormat::Concatenated;
  throw ug2p::Error(ug2p::Errc::InvalidArgument,
                    "--format must be spaced or concatenated");
}

std::string strip_extension(const std::string& path) {
  const std::size_t slash = path.find_last_of('/');
  const std::size_t dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return path;
  return path.substr(0, dot);
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ug2p::Error(ug2p::Errc::IoError, "cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ug2p::Error(ug2p::Errc::IoError, "cannot write " + path);
  out << content;
  if (!out) throw ug2p::Error(ug2p::Errc::IoError, "write failed: " + path);
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string format_pron(const std::vector<std::string>& names,
                        ug2p::PronFormat format) {
  return join(names, format == ug2p::PronFormat::Spaced ? " " : "");
}

std::string percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f%%", fraction * 100.0);
  return buf;
}

// ---- subcommand bodies ----

int run_validate_inventory(const Inventories& inv) {
  const ug2p::PhonemeInventory& ph = inv.phoneme_ref();
  const ug2p::ScriptInventory& sc = inv.script_ref();
  using PC = ug2p::PhonemeClass;
  using GC = ug2p::GraphemeCategory;

  std::printf("graphemes\t%zu\n", sc.size());
  std::printf("basic_letters\t%zu\n", sc.count(GC::BasicLetter));
  std::printf("secondary_letters\t%zu\n", sc.count(GC::SecondaryLetter));
  std::printf("diacritics\t%zu\n", sc.count(GC::Diacritic));
  std::printf("phonemes\t%zu\n", ph.size());
  std::printf("consonants\t%zu\n",
              ph.count(PC::Consonant) + ph.count(PC::ConsonantAspirated));
  std::printf("aspirated_consonants\t%zu\n", ph.count(PC::ConsonantAspirated));
  std::printf("long_vowels\t%zu\n", ph.count(PC::LongVowel));
  std::printf("nasalized_long_vowels\t%zu\n",
              ph.count(PC::NasalizedLongVowel));
  std::printf("half_long_vowels\t%zu\n", ph.count(PC::HalfLongVowel));
  std::printf("short_vowels\t%zu\n", ph.count(PC::ShortVowel));
  std::printf("nasalized_short_vowels\t%zu\n",
              ph.count(PC::NasalizedShortVowel));

  ug2p::DecodabilityResult dec = ug2p::check_unique_decodability(ph);
  if (!dec.uniquely_decodable) {
    std::printf("code\tambiguous\n");
    std::fprintf(stderr, "ambiguous concatenation: %s ([%s] vs [%s])\n",
                 dec.witness->text.c_str(),
                 join(dec.witness->parse_a, " ").c_str(),
                 join(dec.witness->parse_b, " ").c_str());
    return 1;
  }
  std::printf("code\tuniquely_decodable\n");
  return 0;
}

int run_validate(const std::string& path, ug2p::PronFormat format,
                 bool allow_foreign, const Inventories& inv) {
  std::vector<ug2p::Diagnostic> diags;
  ug2p::LoadOptions opts{format, allow_foreign};
  ug2p::Lexicon lex = ug2p::Lexicon::load_lenient(
      path, opts, diags, inv.phoneme_ptr(), inv.script_ptr());
  for (const ug2p::Diagnostic& d : diags)
    std::fprintf(stderr, "line %zu: %s: %s\n", d.line_no,
                 ug2p::errc_name(d.code), d.message.c_str());
  std::printf("%zu entries, %zu words, %zu problems\n", lex.size(),
              lex.word_count(), diags.size());
  return diags.empty() ? 0 : 1;
}

int run_stats(const std::string& path, ug2p::PronFormat format,
              bool allow_foreign, const Inventories& inv) {
  ug2p::LoadOptions opts{format, allow_foreign};
  ug2p::Lexicon lex =
      ug2p::Lexicon::load(path, opts, inv.phoneme_ptr(), inv.script_ptr());
  std::printf("# entries\t%zu\n", lex.size());
  std::printf("# distinct_words\t%zu\n", lex.word_count());
  std::printf("# diacritic_coverage\t%.6g\n", ug2p::diacritic_coverage(lex));
  ug2p::PhonemeFrequencyTable table = ug2p::phoneme_stats(lex);
  std::size_t rank = 0;
  for (const auto& [name, count] : table.descending())
    std::printf("%zu\t%s\t%zu\n", ++rank, name.c_str(), count);
  return 0;
}

int run_split(const std::string& path, double train_frac, double valid_frac,
              double test_frac, std::uint64_t seed, ug2p::PronFormat format,
              bool allow_foreign, const Inventories& inv) {
  ug2p::LoadOptions opts{format, allow_foreign};
  ug2p::Lexicon lex =
      ug2p::Lexicon::load(path, opts, inv.phoneme_ptr(), inv.script_ptr());
  ug2p::SplitSpec spec{train_frac, valid_frac, test_frac, seed};
  ug2p::SplitResult split = ug2p::split(lex, spec);
  const std::string stem = strip_extension(path);
  const struct {
    const char* name;
    const ug2p::Lexicon* lex;
  } parts[] = {{"train", &split.train}, {"valid", &split.valid},
               {"test", &split.test}};
  for (const auto& part : parts) {
    const std::string out_path = stem + "." + part.name;
    part.lex->save(out_path, format);
    std::printf("%s\t%zu words\t%zu entries\t%s\n", part.name,
                part.lex->word_count(), part.lex->size(), out_path.c_str());
  }
  return 0;
}

int run_train(const std::string& train_path, const std::string& valid_path,
              const std::string& model_path, const std::string& log_path,
              const ug2p::ModelConfig& cfg, const ug2p::TrainingConfig& tc,
              ug2p::PronFormat format, bool allow_foreign,
              const Inventories& inv) {
  ug2p::LoadOptions opts{format, allow_foreign};
  ug2p::Lexicon train_lex = ug2p::Lexicon::load(
      train_path, opts, inv.phoneme_ptr(), inv.script_ptr());
  ug2p::Lexicon valid_lex = ug2p::Lexicon::load(
      valid_path, opts, inv.phoneme_ptr(), inv.script_ptr());

  ug2p::TrainResult result = ug2p::train(train_lex, valid_lex, cfg, tc);
  for (const ug2p::EpochLog& e : result.log)
    std::fprintf(stderr, "epoch %zu\tloss %.6f\twer %.4f\n", e.epoch,
                 e.train_loss, e.valid_wer);

  ug2p::Model model{result.config, result.vocab, result.params};
  ug2p::save_model(model, model_path);
  if (!log_path.empty())
    write_file(log_path, ug2p::format_training_log(result.log));
  std::printf("best_epoch\t%zu\nbest_valid_wer\t%.17g\nmodel\t%s\n",
              result.best_epoch, result.best_wer, model_path.c_str());
  return 0;
}

int run_generate(const std::string& model_path, const std::string& words_path,
                 const std::string& out_path, std::size_t beam,
                 std::size_t n_best, bool length_norm,
                 ug2p::PronFormat format, const Inventories& inv) {
  ug2p::Model model = ug2p::load_model(model_path);
  const ug2p::ScriptInventory& script = inv.script_ref();
  std::vector<std::string> lines = read_lines(words_path);

  std::string out, rejects;
  std::size_t n_words = 0, n_ok = 0, n_unknown = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    ++n_words;
    std::string word;
    try {
      word = ug2p::normalize(lines[i]);
    } catch (const ug2p::Error& e) {
      rejects += lines[i] + '\t' + ug2p::errc_name(e.code()) + '\n';
      continue;
    }
    ug2p::GraphemeString gs = ug2p::tokenize(script, word);
    if (gs.has_category(ug2p::GraphemeCategory::Other)) {
      ++n_unknown;
      std::fprintf(stderr, "line %zu: '%s' has characters outside the "
                   "script inventory; decoding with <unk>\n",
                   i + 1, word.c_str());
    }
    std::vector<int> ids = model.vocab.encode_word(gs);

    std::vector<ug2p::DecodeResult> hyps;
    if (beam == 1) {
      hyps.push_back(ug2p::greedy_decode(ids, model.params, model.vocab,
                                         model.config));
    } else {
      hyps = ug2p::beam_decode(ids, model.params, model.vocab, model.config,
                               beam, n_best, length_norm);
    }
    std::size_t emitted = 0;
    for (const ug2p::DecodeResult& h : hyps) {
      if (h.empty()) continue;
      out += word + '\t' + format_pron(h.phonemes, format) + '\n';
      ++emitted;
    }
    if (emitted == 0)
      rejects += lines[i] + "\tEmptyPrediction\n";
    else
      ++n_ok;
  }

  write_file(out_path, out);
  write_file(out_path + ".rejects", rejects);
  if (n_words == 0) {
    std::fprintf(stderr, "warning: empty word list\n");
    return 0;
  }
  std::printf("%zu/%zu words pronounced (%zu with unknown characters), "
              "rejects in %s.rejects\n",
              n_ok, n_words, n_unknown, out_path.c_str());
  return n_ok == 0 ? 1 : 0;
}

int run_evaluate(const std::string& model_path, const std::string& test_path,
                 std::size_t beam, bool length_norm,
                 const std::string& tsv_path, const std::string& conf_path,
                 ug2p::PronFormat format, bool allow_foreign,
                 const Inventories& inv) {
  ug2p::Model model = ug2p::load_model(model_path);
  ug2p::LoadOptions opts{format, allow_foreign};
  ug2p::Lexicon test = ug2p::Lexicon::load(test_path, opts, inv.phoneme_ptr(),
                                           inv.script_ptr());

  auto decoder = [&](const std::string& word) -> std::vector<std::string> {
    ug2p::GraphemeString gs = ug2p::tokenize(test.script(), word);
    std::vector<int> ids = model.vocab.encode_word(gs);
    if (beam == 1)
      return ug2p::greedy_decode(ids, model.params, model.vocab, model.config)
          .phonemes;
    return ug2p::beam_decode(ids, model.params, model.vocab, model.config,
                             beam, 1, length_norm)[0]
        .phonemes;
  };
  ug2p::EvalReport r = ug2p::evaluate(test, decoder);

  std::printf("words\t%zu\n", r.n_words);
  std::printf("word_errors\t%zu\n", r.n_word_errors);
  std::printf("wer\t%s\n", percent(r.wer).c_str());
  std::printf("accuracy\t%s\n", percent(r.accuracy).c_str());
  std::printf("phoneme_edits\t%zu\n", r.n_phoneme_edits);
  std::printf("reference_phonemes\t%zu\n", r.n_reference_phonemes);
  std::printf("per\t%s\n", percent(r.per).c_str());

  if (!tsv_path.empty()) {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "n_words\tn_word_errors\twer\taccuracy\tn_phoneme_edits\t"
                  "n_reference_phonemes\tper\n%zu\t%zu\t%.17g\t%.17g\t%zu\t%zu"
                  "\t%.17g\n",
                  r.n_words, r.n_word_errors, r.wer, r.accuracy,
                  r.n_phoneme_edits, r.n_reference_phonemes, r.per);
    write_file(tsv_path, buf);
  }
  if (!conf_path.empty()) {
    std::string conf;
    for (const auto& [pair, count] : r.confusion)
      conf += pair.first + '\t' + pair.second + '\t' +
              std::to_string(count) + '\n';
    write_file(conf_path, conf);
  }
  return 0;
}

int run_segment(const std::string& text, const std::string& file,
                const Inventories& inv) {
  const ug2p::PhonemeInventory& ph = inv.phoneme_ref();
  std::vector<std::string> inputs;
  if (!file.empty()) {
    for (std::string& line : read_lines(file))
      if (!line.empty()) inputs.push_back(std::move(line));
  } else {
    inputs.push_back(text);
  }
  for (const std::string& s : inputs) {
    ug2p::PhonemeString ps = ug2p::segment_concatenated(ph, s);
    std::printf("%s\t%s\n", s.c_str(), ph.spaced(ps).c_str());
  }
  return 0;
}

int classify_error(const ug2p::Error& e) {
  switch (e.code()) {
    case ug2p::Errc::InvalidArgument:
      return 2;
    case ug2p::Errc::Diverged:
    case ug2p::Errc::DimensionMismatch:
      return 3;
    default:
      return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Urdu grapheme-to-phoneme toolkit"};
  app.require_subcommand(1);

  // common option storage
  std::string phonemes_path, script_path, lex_path, format_name = "spaced";
  bool allow_foreign = false;

  auto* inv_cmd = app.add_subcommand("validate-inventory",
                                     "check the shipped inventories");
  add_inventory_flags(inv_cmd, phonemes_path, script_path);

  auto* val_cmd = app.add_subcommand("validate", "check a lexicon file");
  val_cmd->add_option("lexicon", lex_path, "lexicon TSV")->required();
  val_cmd->add_option("--format", format_name, "spaced|concatenated");
  val_cmd->add_flag("--allow-foreign", allow_foreign,
                    "permit words with non-inventory characters");
  add_inventory_flags(val_cmd, phonemes_path, script_path);

  auto* stats_cmd = app.add_subcommand("stats", "phoneme frequency table");
  stats_cmd->add_option("lexicon", lex_path, "lexicon TSV")->required();
  stats_cmd->add_option("--format", format_name, "spaced|concatenated");
  stats_cmd->add_flag("--allow-foreign", allow_foreign);
  add_inventory_flags(stats_cmd, phonemes_path, script_path);

  double train_frac = 0.85, valid_frac = 0.05, test_frac = 0.10;
  std::uint64_t seed = kDefaultSeed;
  auto* split_cmd = app.add_subcommand("split",
                                       "word-level train/valid/test split");
  split_cmd->add_option("lexicon", lex_path, "lexicon TSV")->required();
  split_cmd->add_option("--train", train_frac, "training fraction");
  split_cmd->add_option("--valid", valid_frac, "validation fraction");
  split_cmd->add_option("--test", test_frac, "test fraction");
  split_cmd->add_option("--seed", seed, "shuffle seed");
  split_cmd->add_option("--format", format_name, "spaced|concatenated");
  split_cmd->add_flag("--allow-foreign", allow_foreign);
  add_inventory_flags(split_cmd, phonemes_path, script_path);

  std::string train_path, valid_path, model_path = "model.g2pm", log_path;
  ug2p::ModelConfig mcfg;
  ug2p::TrainingConfig tcfg;
  auto* train_cmd = app.add_subcommand("train", "train a transducer");
  train_cmd->add_option("--train", train_path, "training lexicon")->required();
  train_cmd->add_option("--valid", valid_path, "validation lexicon")
      ->required();
  train_cmd->add_option("--out", model_path, "model output path");
  train_cmd->add_option("--log", log_path, "training log TSV path");
  train_cmd->add_option("--layers", mcfg.num_layers, "LSTM layers");
  train_cmd->add_option("--hidden", mcfg.hidden_size, "hidden units");
  train_cmd->add_option("--embed", mcfg.embed_size,
                        "embedding size (0 = hidden)");
  train_cmd->add_option("--max-decode-len", mcfg.max_decode_len,
                        "decode length cap");
  train_cmd->add_option("--seed", mcfg.seed, "init and shuffle seed");
  train_cmd->add_option("--lr", tcfg.lr, "Adam learning rate");
  train_cmd->add_option("--batch", tcfg.batch_size, "batch size");
  train_cmd->add_option("--clip", tcfg.clip_norm, "gradient norm clip");
  train_cmd->add_option("--max-epochs", tcfg.max_epochs, "epoch cap");
  train_cmd->add_option("--patience", tcfg.patience,
                        "epochs without improvement before stopping");
  train_cmd->add_option("--threads", tcfg.n_threads,
                        "worker threads per batch");
  train_cmd->add_option("--format", format_name, "spaced|concatenated");
  train_cmd->add_flag("--allow-foreign", allow_foreign);
  add_inventory_flags(train_cmd, phonemes_path, script_path);

  std::string words_path, gen_out = "generated.lex";
  std::size_t beam = 1, n_best = 1;
  bool no_length_norm = false;
  auto* gen_cmd = app.add_subcommand("generate",
                                     "pronounce a word list with a model");
  gen_cmd->add_option("--model", model_path, "model file")->required();
  gen_cmd->add_option("words", words_path, "word list, one per line")
      ->required();
  gen_cmd->add_option("--out", gen_out, "output lexicon path");
  gen_cmd->add_option("--beam", beam, "beam width (1 = greedy)");
  gen_cmd->add_option("--n-best", n_best, "pronunciations per word");
  gen_cmd->add_flag("--no-length-norm", no_length_norm,
                    "rank beams by raw log-probability");
  gen_cmd->add_option("--format", format_name, "spaced|concatenated");
  add_inventory_flags(gen_cmd, phonemes_path, script_path);

  std::string test_path, tsv_path, conf_path;
  auto* eval_cmd = app.add_subcommand("evaluate",
                                      "score a model against references");
  eval_cmd->add_option("--model", model_path, "model file")->required();
  eval_cmd->add_option("test", test_path, "test lexicon")->required();
  eval_cmd->add_option("--beam", beam, "beam width (1 = greedy)");
  eval_cmd->add_flag("--no-length-norm", no_length_norm);
  eval_cmd->add_option("--tsv", tsv_path, "machine-readable report path");
  eval_cmd->add_option("--confusion", conf_path, "confusion TSV path");
  eval_cmd->add_option("--format", format_name, "spaced|concatenated");
  eval_cmd->add_flag("--allow-foreign", allow_foreign);
  add_inventory_flags(eval_cmd, phonemes_path, script_path);

  std::string seg_text, seg_file;
  auto* seg_cmd = app.add_subcommand("segment",
                                     "split concatenated pronunciations");
  seg_cmd->add_option("text", seg_text, "one concatenated pronunciation");
  seg_cmd->add_option("--file", seg_file, "file of pronunciations");
  add_inventory_flags(seg_cmd, phonemes_path, script_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // fold CLI11's many parse-error codes into the documented usage code
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // rc 0 is --help / --version
  }

  try {
    Inventories inv = load_inventories(phonemes_path, script_path);
    ug2p::PronFormat format = parse_format(format_name);

    if (*inv_cmd) return run_validate_inventory(inv);
    if (*val_cmd) return run_validate(lex_path, format, allow_foreign, inv);
    if (*stats_cmd) return run_stats(lex_path, format, allow_foreign, inv);
    if (*split_cmd)
      return run_split(lex_path, train_frac, valid_frac, test_frac, seed,
                       format, allow_foreign, inv);
    if (*train_cmd)
      return run_train(train_path, valid_path, model_path, log_path, mcfg,
                       tcfg, format, allow_foreign, inv);
    if (*gen_cmd)
      return run_generate(model_path, words_path, gen_out, beam, n_best,
                          !no_length_norm, format, inv);
    if (*eval_cmd)
      return run_evaluate(model_path, test_path, beam, !no_length_norm,
                          tsv_path, conf_path, format, allow_foreign, inv);
    if (*seg_cmd) {
      if (seg_text.empty() && seg_file.empty())
        throw ug2p::Error(ug2p::Errc::InvalidArgument,
                          "segment needs a string or --file");
      return run_segment(seg_text, seg_file, inv);
    }
    return 2;
  } catch (const ug2p::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return classify_error(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 3;
  }
}
