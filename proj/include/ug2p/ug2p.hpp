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

#include "ug2p/checksum.hpp"
#include "ug2p/cisampa.hpp"
#include "ug2p/decode.hpp"
#include "ug2p/error.hpp"
#include "ug2p/eval.hpp"
#include "ug2p/lexicon.hpp"
#include "ug2p/model.hpp"
#include "ug2p/model_io.hpp"
#include "ug2p/prng.hpp"
#include "ug2p/train.hpp"
#include "ug2p/unicode.hpp"
#include "ug2p/urdu_script.hpp"
#include "ug2p/vocab.hpp"
