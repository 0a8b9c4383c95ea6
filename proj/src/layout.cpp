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

#include "nosig/layout.hpp"

#include <algorithm>
#include <set>

namespace nosig {

SystemLayout::SystemLayout(std::initializer_list<Subsystem> subsystems)
    : subsystems_(subsystems) {
  validate();
}

SystemLayout::SystemLayout(std::vector<Subsystem> subsystems)
    : subsystems_(std::move(subsystems)) {
  validate();
}

SystemLayout SystemLayout::qubits(std::initializer_list<std::string_view> labels) {
  std::vector<Subsystem> subs;
  for (auto label : labels) subs.push_back({std::string(label), 2});
  return SystemLayout(std::move(subs));
}

void SystemLayout::validate() const {
  std::set<std::string_view> seen;
  for (const auto& s : subsystems_) {
    if (s.dim < 1) throw DimensionError("subsystem '" + s.label + "' has dimension < 1");
    if (!seen.insert(s.label).second) throw LabelError("duplicate subsystem label '" + s.label + "'");
  }
}

Index SystemLayout::total_dim() const {
  Index d = 1;
  for (const auto& s : subsystems_) d *= s.dim;
  return d;
}

Dims SystemLayout::dims() const {
  Dims out;
  out.reserve(subsystems_.size());
  for (const auto& s : subsystems_) out.push_back(s.dim);
  return out;
}

std::vector<std::string> SystemLayout::labels() const {
  std::vector<std::string> out;
  out.reserve(subsystems_.size());
  for (const auto& s : subsystems_) out.push_back(s.label);
  return out;
}

bool SystemLayout::contains(std::string_view label) const {
  return std::any_of(subsystems_.begin(), subsystems_.end(),
                     [&](const Subsystem& s) { return s.label == label; });
}

Index SystemLayout::position(std::string_view label) const {
  for (std::size_t i = 0; i < subsystems_.size(); ++i)
    if (subsystems_[i].label == label) return static_cast<Index>(i);
  throw LabelError("unknown subsystem label '" + std::string(label) + "'");
}

Positions SystemLayout::positions(std::span<const std::string> labels) const {
  Positions out;
  out.reserve(labels.size());
  for (const auto& l : labels) out.push_back(position(l));
  return out;
}

Index SystemLayout::dim_of(std::span<const Index> positions) const {
  Index d = 1;
  for (Index p : positions) d *= (*this)[p].dim;
  return d;
}

SystemLayout SystemLayout::select(std::span<const Index> positions) const {
  std::vector<Subsystem> subs;
  for (Index p : positions) subs.push_back((*this)[p]);
  return SystemLayout(std::move(subs));
}

SystemLayout SystemLayout::without(std::span<const Index> positions) const {
  std::vector<Subsystem> subs;
  for (Index i = 0; i < size(); ++i)
    if (std::find(positions.begin(), positions.end(), i) == positions.end())
      subs.push_back((*this)[i]);
  return SystemLayout(std::move(subs));
}

SystemLayout SystemLayout::permuted(std::span<const Index> perm) const {
  if (static_cast<Index>(perm.size()) != size())
    throw DimensionError("permutation length does not match layout");
  return select(perm);
}

SystemLayout concat(const SystemLayout& a, const SystemLayout& b) {
  auto subs = a.subsystems();
  subs.insert(subs.end(), b.subsystems().begin(), b.subsystems().end());
  return SystemLayout(std::move(subs));
}

std::ostream& operator<<(std::ostream& os, const SystemLayout& layout) {
  os << '(';
  for (Index i = 0; i < layout.size(); ++i) {
    if (i) os << ", ";
    os << layout[i].label << ':' << layout[i].dim;
  }
  return os << ')';
}

}  // namespace nosig
