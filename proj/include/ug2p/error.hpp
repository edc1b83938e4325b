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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ug2p {

enum class Errc {
  // text normalization
  InvalidUtf8,
  EmptyAfterNormalization,
  InteriorWhitespace,
  // inventory files
  BadInventoryFile,
  // phoneme codec
  UnknownPhoneme,
  MalformedSpacing,
  UnsegmentableString,
  // lexicon
  MalformedLine,
  DuplicatePair,
  ForeignGrapheme,
  TooSmall,
  // model
  DimensionMismatch,
  EmptyInput,
  Diverged,
  // model files
  BadMagic,
  UnsupportedVersion,
  TruncatedFile,
  ChecksumMismatch,
  // generic I/O
  IoError,
  // contract violations
  InvalidArgument,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::InvalidUtf8: return "InvalidUtf8";
    case Errc::EmptyAfterNormalization: return "EmptyAfterNormalization";
    case Errc::InteriorWhitespace: return "InteriorWhitespace";
    case Errc::BadInventoryFile: return "BadInventoryFile";
    case Errc::UnknownPhoneme: return "UnknownPhoneme";
    case Errc::MalformedSpacing: return "MalformedSpacing";
    case Errc::UnsegmentableString: return "UnsegmentableString";
    case Errc::MalformedLine: return "MalformedLine";
    case Errc::DuplicatePair: return "DuplicatePair";
    case Errc::ForeignGrapheme: return "ForeignGrapheme";
    case Errc::TooSmall: return "TooSmall";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::Diverged: return "Diverged";
    case Errc::BadMagic: return "BadMagic";
    case Errc::UnsupportedVersion: return "UnsupportedVersion";
    case Errc::TruncatedFile: return "TruncatedFile";
    case Errc::ChecksumMismatch: return "ChecksumMismatch";
    case Errc::IoError: return "IoError";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

// All library failures surface as this exception. `line()` is the 1-based
// source line for file-derived errors, 0 when not applicable.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, std::size_t line = 0)
      : std::runtime_error(line == 0
                               ? std::string(errc_name(code)) + ": " + what
                               : "line " + std::to_string(line) + ": " +
                                     errc_name(code) + ": " + what),
        code_(code),
        line_(line) {}

  Errc code() const { return code_; }
  std::size_t line() const { return line_; }

 private:
  Errc code_;
  std::size_t line_;
};

}  // namespace ug2p
