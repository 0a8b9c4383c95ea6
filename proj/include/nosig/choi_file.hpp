// Copyright 2026 The nosig Authors
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

// Choi-file interchange format (JSON):
//
//   {
//     "format_version": 1,
//     "in_dims":  [{"label": "A", "dim": 2}, ...],
//     "out_dims": [{"label": "A", "dim": 2}, ...],
//     "choi": [[[re, im], ...], ...]        // rows, (out ⧺ in) ordering
//   }
//
// Numbers are written in the shortest decimal form that parses back to the
// same double, so a write/read cycle is bit-exact.

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "nosig/channel.hpp"

namespace nosig {

inline constexpr int kChoiFormatVersion = 1;

std::string to_choi_json(const CpMap& map);

/// Throws FormatError on malformed input or a shape mismatch.
CpMap parse_choi_json(std::string_view text);

void write_choi_file(const std::filesystem::path& path, const CpMap& map);
CpMap read_choi_file(const std::filesystem::path& path);

}  // namespace nosig
