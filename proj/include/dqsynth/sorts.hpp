// Copyright 2026 The dqsynth Authors. All rights reserved.
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

#ifndef DQSYNTH_SORTS_HPP
#define DQSYNTH_SORTS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dqsynth {

// Bool and (_ BitVec w). Bool is a distinct sort from (_ BitVec 1) even
// though both compile to a single propositional bit.
class Sort {
public:
  enum class Kind : uint8_t { Bool, BitVec };

  static Sort boolean() { return Sort(Kind::Bool, 0); }
  static Sort bitvec(uint32_t width) {
    if (width == 0)
      throw std::invalid_argument("bitvector width must be >= 1");
    return Sort(Kind::BitVec, width);
  }

  Kind kind() const { return kind_; }
  bool is_bool() const { return kind_ == Kind::Bool; }
  bool is_bitvec() const { return kind_ == Kind::BitVec; }
  uint32_t width() const { return width_; }
  // Number of propositional bits the sort compiles to.
  uint32_t bit_count() const { return is_bool() ? 1 : width_; }

  bool operator==(const Sort &o) const = default;

  std::string str() const {
    return is_bool() ? "Bool" : "(_ BitVec " + std::to_string(width_) + ")";
  }

private:
  Sort(Kind k, uint32_t w) : kind_(k), width_(w) {}
  Kind kind_;
  uint32_t width_;
};

} // namespace dqsynth

#endif
