// Copyright 2026 The cdplab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CDPLAB_BIT_VECTOR_H_
#define CDPLAB_BIT_VECTOR_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cdplab/errors.h"

namespace cdplab {

// A point of the hypercube {0,1}^n. Position 0 is the most significant bit
// for every conversion (integer index, packed bytes, string), so the integer
// order of ToIndex() and the lexicographic order of the bit sequence agree.
class BitVector {
 public:
  BitVector() = default;

  explicit BitVector(int n) : bits_(CheckedLength(n), 0) {}

  explicit BitVector(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    if (bits_.empty()) {
      throw Error(ErrorCode::kDimension, "bit vector must have length >= 1");
    }
    for (std::uint8_t& b : bits_) {
      if (b > 1) {
        throw Error(ErrorCode::kParameter, "bit values must be 0 or 1");
      }
    }
  }

  // Parses "0110"-style strings.
  static BitVector FromString(std::string_view text) {
    std::vector<std::uint8_t> bits;
    bits.reserve(text.size());
    for (char c : text) {
      if (c != '0' && c != '1') {
        throw Error(ErrorCode::kParameter,
                    "bit string contains non-binary character");
      }
      bits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return BitVector(std::move(bits));
  }

  // The n-bit vector whose MSB-first reading is `index`.
  static BitVector FromIndex(int n, std::uint64_t index) {
    if (n < 1 || n > 64) {
      throw Error(ErrorCode::kDimension,
                  "FromIndex supports 1 <= n <= 64, got " + std::to_string(n));
    }
    BitVector v(n);
    for (int i = 0; i < n; ++i) {
      v.bits_[i] = static_cast<std::uint8_t>((index >> (n - 1 - i)) & 1U);
    }
    return v;
  }

  static BitVector Zeros(int n) { return BitVector(n); }

  int size() const { return static_cast<int>(bits_.size()); }

  std::uint8_t operator[](int i) const { return bits_[i]; }

  void Set(int i, bool value) { bits_.at(i) = value ? 1 : 0; }

  BitVector WithFlipped(int i) const {
    BitVector out = *this;
    out.bits_.at(i) ^= 1U;
    return out;
  }

  std::uint64_t ToIndex() const {
    if (size() > 64) {
      throw Error(ErrorCode::kDimension, "ToIndex supports n <= 64");
    }
    std::uint64_t index = 0;
    for (std::uint8_t b : bits_) index = (index << 1) | b;
    return index;
  }

  int Weight() const {
    int w = 0;
    for (std::uint8_t b : bits_) w += b;
    return w;
  }

  BitVector Xor(const BitVector& other) const {
    RequireSameSize(other);
    BitVector out = *this;
    for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] ^= other.bits_[i];
    return out;
  }

  // Big-endian packing, zero-padded to whole bytes.
  std::vector<std::uint8_t> Pack() const {
    std::vector<std::uint8_t> bytes((bits_.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < bits_.size(); ++i) {
      if (bits_[i]) bytes[i / 8] |= static_cast<std::uint8_t>(0x80U >> (i % 8));
    }
    return bytes;
  }

  std::string ToHex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    for (std::uint8_t byte : Pack()) {
      out.push_back(kDigits[byte >> 4]);
      out.push_back(kDigits[byte & 0xF]);
    }
    return out;
  }

  std::string ToString() const {
    std::string out;
    out.reserve(bits_.size());
    for (std::uint8_t b : bits_) out.push_back(static_cast<char>('0' + b));
    return out;
  }

  const std::vector<std::uint8_t>& bits() const { return bits_; }

  void RequireSameSize(const BitVector& other) const {
    if (other.size() != size()) {
      throw Error(ErrorCode::kDimension,
                  "bit vector length mismatch: " + std::to_string(size()) +
                      " vs " + std::to_string(other.size()));
    }
  }

  friend bool operator==(const BitVector&, const BitVector&) = default;
  friend std::strong_ordering operator<=>(const BitVector& a,
                                          const BitVector& b) {
    if (a.size() != b.size()) return a.size() <=> b.size();
    return a.bits_ <=> b.bits_;
  }

 private:
  static std::size_t CheckedLength(int n) {
    if (n < 1) {
      throw Error(ErrorCode::kDimension, "bit vector must have length >= 1");
    }
    return static_cast<std::size_t>(n);
  }

  std::vector<std::uint8_t> bits_;
};

inline int HammingDistance(const BitVector& a, const BitVector& b) {
  a.RequireSameSize(b);
  int d = 0;
  for (int i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

// Iterates fn(BitVector) over all of {0,1}^n in lexicographic order.
template <typename Fn>
void ForEachPoint(int n, Fn&& fn) {
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t i = 0; i < count; ++i) fn(BitVector::FromIndex(n, i));
}

}  // namespace cdplab

template <>
struct std::hash<cdplab::BitVector> {
  std::size_t operator()(const cdplab::BitVector& v) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (std::uint8_t b : v.bits()) h = (h ^ b) * 1099511628211ULL;
    return h;
  }
};

#endif  // CDPLAB_BIT_VECTOR_H_
