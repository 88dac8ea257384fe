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

#include "dqsynth/bv.hpp"

#include <cassert>
#include <stdexcept>

namespace dqsynth {

BvValue::BvValue(uint32_t width) : width_(width), lo_(0) {
  if (width == 0)
    throw std::invalid_argument("BvValue width must be >= 1");
  if (width > 64)
    rest_.assign((width + 63) / 64 - 1, 0);
}

BvValue BvValue::from_uint(uint32_t width, uint64_t value) {
  BvValue r(width);
  r.lo_ = value;
  r.mask_top();
  return r;
}

BvValue BvValue::ones(uint32_t width) {
  BvValue r(width);
  r.lo_ = ~uint64_t(0);
  for (auto &w : r.rest_)
    w = ~uint64_t(0);
  r.mask_top();
  return r;
}

BvValue BvValue::from_binary(const std::string &bits) {
  if (bits.empty())
    throw std::invalid_argument("empty binary literal");
  BvValue r(static_cast<uint32_t>(bits.size()));
  for (size_t i = 0; i < bits.size(); ++i) {
    char c = bits[bits.size() - 1 - i];
    if (c != '0' && c != '1')
      throw std::invalid_argument("bad binary digit");
    r.set_bit(static_cast<uint32_t>(i), c == '1');
  }
  return r;
}

uint64_t BvValue::word(uint32_t i) const {
  if (i == 0)
    return lo_;
  return i - 1 < rest_.size() ? rest_[i - 1] : 0;
}

void BvValue::set_word(uint32_t i, uint64_t w) {
  if (i == 0)
    lo_ = w;
  else
    rest_[i - 1] = w;
}

void BvValue::mask_top() {
  uint32_t top = word_count() - 1;
  uint32_t used = width_ - top * 64;
  if (used < 64)
    set_word(top, word(top) & ((uint64_t(1) << used) - 1));
}

bool BvValue::bit(uint32_t i) const {
  assert(i < width_);
  return (word(i / 64) >> (i % 64)) & 1;
}

void BvValue::set_bit(uint32_t i, bool v) {
  assert(i < width_);
  uint64_t w = word(i / 64);
  uint64_t m = uint64_t(1) << (i % 64);
  set_word(i / 64, v ? (w | m) : (w & ~m));
}

bool BvValue::is_zero() const {
  if (lo_ != 0)
    return false;
  for (uint64_t w : rest_)
    if (w != 0)
      return false;
  return true;
}

uint64_t BvValue::to_uint() const {
  assert(width_ <= 64);
  return lo_;
}

std::string BvValue::to_binary() const {
  std::string s(width_, '0');
  for (uint32_t i = 0; i < width_; ++i)
    if (bit(i))
      s[width_ - 1 - i] = '1';
  return s;
}

bool BvValue::operator<(const BvValue &o) const { return bv_ult(*this, o); }

namespace {

void check_same_width(const BvValue &a, const BvValue &b) {
  if (a.width() != b.width())
    throw std::invalid_argument("bitvector width mismatch");
}

} // namespace

BvValue bv_not(const BvValue &a) {
  BvValue r = a;
  r.lo_ = ~r.lo_;
  for (auto &w : r.rest_)
    w = ~w;
  r.mask_top();
  return r;
}

BvValue bv_and(const BvValue &a, const BvValue &b) {
  check_same_width(a, b);
  BvValue r = a;
  r.lo_ &= b.lo_;
  for (size_t i = 0; i < r.rest_.size(); ++i)
    r.rest_[i] &= b.rest_[i];
  return r;
}

BvValue bv_or(const BvValue &a, const BvValue &b) {
  check_same_width(a, b);
  BvValue r = a;
  r.lo_ |= b.lo_;
  for (size_t i = 0; i < r.rest_.size(); ++i)
    r.rest_[i] |= b.rest_[i];
  return r;
}

BvValue bv_xor(const BvValue &a, const BvValue &b) {
  check_same_width(a, b);
  BvValue r = a;
  r.lo_ ^= b.lo_;
  for (size_t i = 0; i < r.rest_.size(); ++i)
    r.rest_[i] ^= b.rest_[i];
  return r;
}

BvValue bv_add(const BvValue &a, const BvValue &b) {
  check_same_width(a, b);
  BvValue r(a.width());
  unsigned __int128 carry = 0;
  for (uint32_t i = 0; i < r.word_count(); ++i) {
    unsigned __int128 s = (unsigned __int128)a.word(i) + b.word(i) + carry;
    r.set_word(i, static_cast<uint64_t>(s));
    carry = s >> 64;
  }
  r.mask_top();
  return r;
}

BvValue bv_neg(const BvValue &a) {
  return bv_add(bv_not(a), BvValue::from_uint(a.width(), 1));
}

BvValue bv_sub(const BvValue &a, const BvValue &b) {
  return bv_add(a, bv_neg(b));
}

BvValue bv_mul(const BvValue &a, const BvValue &b) {
  check_same_width(a, b);
  if (a.width() <= 64)
    return BvValue::from_uint(a.width(), a.to_uint() * b.to_uint());
  // shift-and-add for the wide case
  BvValue acc(a.width());
  BvValue shifted = a;
  for (uint32_t i = 0; i < a.width(); ++i) {
    if (b.bit(i))
      acc = bv_add(acc, shifted);
    shifted = bv_shl(shifted, BvValue::from_uint(a.width(), 1));
  }
  return acc;
}

namespace {

// Effective shift amount, saturated at `width` (anything >= width shifts
// everything out).
uint32_t shift_amount(const BvValue &amount, uint32_t width) {
  uint64_t v = 0;
  bool big = false;
  for (uint32_t i = 0; i < amount.width(); ++i) {
    if (amount.bit(i)) {
      if (i >= 32 || (uint64_t(1) << i) >= width)
        big = true;
      else
        v |= uint64_t(1) << i;
    }
  }
  if (big || v >= width)
    return width;
  return static_cast<uint32_t>(v);
}

} // namespace

BvValue bv_shl(const BvValue &a, const BvValue &amount) {
  uint32_t k = shift_amount(amount, a.width());
  BvValue r(a.width());
  for (uint32_t i = k; i < a.width(); ++i)
    r.set_bit(i, a.bit(i - k));
  return r;
}

BvValue bv_lshr(const BvValue &a, const BvValue &amount) {
  uint32_t k = shift_amount(amount, a.width());
  BvValue r(a.width());
  for (uint32_t i = 0; i + k < a.width(); ++i)
    r.set_bit(i, a.bit(i + k));
  return r;
}

BvValue bv_ashr(const BvValue &a, const BvValue &amount) {
  uint32_t k = shift_amount(amount, a.width());
  bool sign = a.bit(a.width() - 1);
  BvValue r = sign ? BvValue::ones(a.width()) : BvValue(a.width());
  for (uint32_t i = 0; i + k < a.width(); ++i)
    r.set_bit(i, a.bit(i + k));
  return r;
}

BvValue bv_udiv(const BvValue &a, const BvValue &b) {
  check_same_width(a, b);
  if (b.is_zero())
    return BvValue::ones(a.width()); // SMT-LIB total semantics
  if (a.width() <= 64)
    return BvValue::from_uint(a.width(), a.to_uint() / b.to_uint());
  // restoring division, MSB first
  uint32_t w = a.width();
  BvValue rem(w + 1), div(w + 1), q(w);
  for (uint32_t i = 0; i < w; ++i)
    div.set_bit(i, b.bit(i));
  for (uint32_t i = w; i-- > 0;) {
    rem = bv_shl(rem, BvValue::from_uint(w + 1, 1));
    rem.set_bit(0, a.bit(i));
    if (!bv_ult(rem, div)) {
      rem = bv_sub(rem, div);
      q.set_bit(i, true);
    }
  }
  return q;
}

BvValue bv_urem(const BvValue &a, const BvValue &b) {
  check_same_width(a, b);
  if (b.is_zero())
    return a; // SMT-LIB total semantics
  if (a.width() <= 64)
    return BvValue::from_uint(a.width(), a.to_uint() % b.to_uint());
  return bv_sub(a, bv_mul(bv_udiv(a, b), b));
}

BvValue bv_concat(const BvValue &hi, const BvValue &lo) {
  BvValue r(hi.width() + lo.width());
  for (uint32_t i = 0; i < lo.width(); ++i)
    r.set_bit(i, lo.bit(i));
  for (uint32_t i = 0; i < hi.width(); ++i)
    r.set_bit(lo.width() + i, hi.bit(i));
  return r;
}

BvValue bv_extract(const BvValue &a, uint32_t hi, uint32_t lo) {
  if (hi >= a.width() || lo > hi)
    throw std::invalid_argument("extract indices out of range");
  BvValue r(hi - lo + 1);
  for (uint32_t i = 0; i < r.width(); ++i)
    r.set_bit(i, a.bit(lo + i));
  return r;
}

bool bv_ult(const BvValue &a, const BvValue &b) {
  check_same_width(a, b);
  for (uint32_t i = a.width(); i-- > 0;) {
    if (a.bit(i) != b.bit(i))
      return b.bit(i);
  }
  return false;
}

bool bv_ule(const BvValue &a, const BvValue &b) { return !bv_ult(b, a); }

bool bv_slt(const BvValue &a, const BvValue &b) {
  bool sa = a.bit(a.width() - 1), sb = b.bit(b.width() - 1);
  if (sa != sb)
    return sa; // negative < non-negative
  return bv_ult(a, b);
}

bool bv_sle(const BvValue &a, const BvValue &b) { return !bv_slt(b, a); }

} // namespace dqsynth
