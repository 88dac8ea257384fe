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

#ifndef DQSYNTH_BV_HPP
#define DQSYNTH_BV_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace dqsynth {

// A bitvector constant of known width. Widths up to 64 stay on the fast
// single-word path; wider values spill into extra words (little-endian).
// Division and remainder follow the SMT-LIB totalization:
//   x udiv 0 = all-ones, x urem 0 = x.
class BvValue {
public:
  BvValue() : width_(0), lo_(0) {}
  explicit BvValue(uint32_t width); // zero of the given width
  static BvValue from_uint(uint32_t width, uint64_t value);
  static BvValue ones(uint32_t width);
  // bits is MSB-first, e.g. "101" -> 5 at width 3
  static BvValue from_binary(const std::string &bits);

  uint32_t width() const { return width_; }
  bool bit(uint32_t i) const;
  void set_bit(uint32_t i, bool v);
  bool is_zero() const;
  // Valid for width <= 64.
  uint64_t to_uint() const;
  std::string to_binary() const; // MSB-first, width chars

  bool operator==(const BvValue &o) const = default;
  bool operator<(const BvValue &o) const; // unsigned, same width

private:
  friend BvValue bv_not(const BvValue &);
  friend BvValue bv_and(const BvValue &, const BvValue &);
  friend BvValue bv_or(const BvValue &, const BvValue &);
  friend BvValue bv_xor(const BvValue &, const BvValue &);
  friend BvValue bv_add(const BvValue &, const BvValue &);

  uint32_t word_count() const { return (width_ + 63) / 64; }
  uint64_t word(uint32_t i) const;
  void set_word(uint32_t i, uint64_t w);
  void mask_top();

  uint32_t width_;
  uint64_t lo_;                // word 0
  std::vector<uint64_t> rest_; // words 1.., empty when width <= 64
};

BvValue bv_not(const BvValue &a);
BvValue bv_and(const BvValue &a, const BvValue &b);
BvValue bv_or(const BvValue &a, const BvValue &b);
BvValue bv_xor(const BvValue &a, const BvValue &b);
BvValue bv_neg(const BvValue &a);
BvValue bv_add(const BvValue &a, const BvValue &b);
BvValue bv_sub(const BvValue &a, const BvValue &b);
BvValue bv_mul(const BvValue &a, const BvValue &b);
BvValue bv_udiv(const BvValue &a, const BvValue &b);
BvValue bv_urem(const BvValue &a, const BvValue &b);
BvValue bv_shl(const BvValue &a, const BvValue &amount);
BvValue bv_lshr(const BvValue &a, const BvValue &amount);
BvValue bv_ashr(const BvValue &a, const BvValue &amount);
// SMT-LIB concat: first operand is the high part.
BvValue bv_concat(const BvValue &hi, const BvValue &lo);
BvValue bv_extract(const BvValue &a, uint32_t hi, uint32_t lo);

bool bv_ult(const BvValue &a, const BvValue &b);
bool bv_ule(const BvValue &a, const BvValue &b);
bool bv_slt(const BvValue &a, const BvValue &b);
bool bv_sle(const BvValue &a, const BvValue &b);

} // namespace dqsynth

#endif
