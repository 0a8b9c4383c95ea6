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

#pragma once

#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nosig/types.hpp"

namespace nosig {

struct Subsystem {
  std::string label;
  Index dim = 1;

  friend bool operator==(const Subsystem&, const Subsystem&) = default;
};

/// Ordered, labeled list of tensor factors. The first subsystem is the most
/// significant digit of a flat index. Labels are unique within a layout; an
/// empty layout is the trivial one-dimensional system.
class SystemLayout {
 public:
  SystemLayout() = default;
  SystemLayout(std::initializer_list<Subsystem> subsystems);
  explicit SystemLayout(std::vector<Subsystem> subsystems);

  /// Layout of qubits with the given labels.
  static SystemLayout qubits(std::initializer_list<std::string_view> labels);

  Index size() const { return static_cast<Index>(subsystems_.size()); }
  bool empty() const { return subsystems_.empty(); }
  Index total_dim() const;

  const Subsystem& operator[](Index pos) const { return subsystems_.at(static_cast<std::size_t>(pos)); }
  const std::vector<Subsystem>& subsystems() const { return subsystems_; }
  Dims dims() const;
  std::vector<std::string> labels() const;

  bool contains(std::string_view label) const;
  /// Position of a label; throws LabelError when absent.
  Index position(std::string_view label) const;
  Positions positions(std::span<const std::string> labels) const;

  /// Product of the dimensions at the given positions.
  Index dim_of(std::span<const Index> positions) const;

  SystemLayout select(std::span<const Index> positions) const;
  SystemLayout without(std::span<const Index> positions) const;
  /// new[k] = old[perm[k]].
  SystemLayout permuted(std::span<const Index> perm) const;

  friend bool operator==(const SystemLayout&, const SystemLayout&) = default;

 private:
  void validate() const;

  std::vector<Subsystem> subsystems_;
};

/// a ⧺ b; throws LabelError on a label collision.
SystemLayout concat(const SystemLayout& a, const SystemLayout& b);

std::ostream& operator<<(std::ostream& os, const SystemLayout& layout);

}  // namespace nosig
