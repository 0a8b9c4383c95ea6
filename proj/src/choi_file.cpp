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

#include "nosig/choi_file.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace nosig {

namespace {

using json = nlohmann::ordered_json;

json layout_to_json(const SystemLayout& layout) {
  json arr = json::array();
  for (const auto& s : layout.subsystems()) arr.push_back({{"label", s.label}, {"dim", s.dim}});
  return arr;
}

SystemLayout layout_from_json(const json& arr, const char* key) {
  if (!arr.is_array()) throw FormatError(std::string("'") + key + "' must be an array");
  std::vector<Subsystem> subs;
  for (const auto& entry : arr) {
    if (!entry.is_object() || !entry.contains("label") || !entry.contains("dim") || !entry["label"].is_string() ||
        !entry["dim"].is_number_integer())
      throw FormatError(std::string("'") + key + "' entries need a string 'label' and an integer 'dim'");
    subs.push_back({entry["label"].get<std::string>(), entry["dim"].get<Index>()});
  }
  try {
    return SystemLayout(std::move(subs));
  } catch (const Error& e) {
    throw FormatError(std::string("'") + key + "': " + e.what());
  }
}

}  // namespace

std::string to_choi_json(const CpMap& map) {
  json doc;
  doc["format_version"] = kChoiFormatVersion;
  doc["in_dims"] = layout_to_json(map.in);
  doc["out_dims"] = layout_to_json(map.out);
  json rows = json::array();
  for (Index i = 0; i < map.choi.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < map.choi.cols(); ++j) row.push_back(json::array({map.choi(i, j).real(), map.choi(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  doc["choi"] = std::move(rows);
  return doc.dump() + "\n";
}

CpMap parse_choi_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw FormatError("top level must be an object");
  for (const char* key : {"format_version", "in_dims", "out_dims", "choi"})
    if (!doc.contains(key)) throw FormatError(std::string("missing '") + key + "'");
  if (!doc["format_version"].is_number_integer() || doc["format_version"].get<int>() != kChoiFormatVersion)
    throw FormatError("unsupported format_version");

  CpMap map;
  map.in = layout_from_json(doc["in_dims"], "in_dims");
  map.out = layout_from_json(doc["out_dims"], "out_dims");
  const Index side = map.in_dim() * map.out_dim();
  const auto& rows = doc["choi"];
  if (!rows.is_array() || static_cast<Index>(rows.size()) != side)
    throw FormatError("'choi' must have " + std::to_string(side) + " rows");
  map.choi.resize(side, side);
  for (Index i = 0; i < side; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != side)
      throw FormatError("'choi' row " + std::to_string(i) + " must have " + std::to_string(side) + " entries");
    for (Index j = 0; j < side; ++j) {
      const auto& z = row[static_cast<std::size_t>(j)];
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
        throw FormatError("'choi' entries must be [re, im] pairs");
      map.choi(i, j) = Complex(z[0].get<double>(), z[1].get<double>());
    }
  }
  return map;
}

void write_choi_file(const std::filesystem::path& path, const CpMap& map) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open '" + path.string() + "' for writing");
  os << to_choi_json(map);
  if (!os) throw Error("failed writing '" + path.string() + "'");
}

CpMap read_choi_file(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << is.rdbuf();
  return parse_choi_json(buf.str());
}

}  // namespace nosig
