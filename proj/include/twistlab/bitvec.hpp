// Copyright 2026 The twistlab developers
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

#ifndef TWISTLAB_BITVEC_HPP
#define TWISTLAB_BITVEC_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace twistlab {

/// Packed bit vector over GF(2). All the hot loops in the simulator reduce
/// to word-parallel XOR/AND/popcount on these.
class BitVec {
  public:
    BitVec() : num_bits_(0) {}
    explicit BitVec(size_t num_bits) : num_bits_(num_bits), words_((num_bits + 63) / 64, 0) {}

    size_t size() const {
        return num_bits_;
    }
    size_t num_words() const {
        return words_.size();
    }

    bool get(size_t k) const {
        return (words_[k >> 6] >> (k & 63)) & 1;
    }
    void set(size_t k, bool v) {
        uint64_t mask = uint64_t{1} << (k & 63);
        if (v) {
            words_[k >> 6] |= mask;
        } else {
            words_[k >> 6] &= ~mask;
        }
    }
    void toggle(size_t k) {
        words_[k >> 6] ^= uint64_t{1} << (k & 63);
    }

    void clear() {
        for (auto &w : words_) {
            w = 0;
        }
    }

    bool any() const {
        for (auto w : words_) {
            if (w) {
                return true;
            }
        }
        return false;
    }

    size_t popcount() const {
        size_t t = 0;
        for (auto w : words_) {
            t += (size_t)std::popcount(w);
        }
        return t;
    }

    /// Index of the lowest set bit, or size() if empty.
    size_t lowest_set_bit() const {
        for (size_t i = 0; i < words_.size(); i++) {
            if (words_[i]) {
                return (i << 6) + (size_t)std::countr_zero(words_[i]);
            }
        }
        return num_bits_;
    }

    void xor_with(const BitVec &other) {
        for (size_t i = 0; i < words_.size(); i++) {
            words_[i] ^= other.words_[i];
        }
    }
    void and_with(const BitVec &other) {
        for (size_t i = 0; i < words_.size(); i++) {
            words_[i] &= other.words_[i];
        }
    }
    void or_with(const BitVec &other) {
        for (size_t i = 0; i < words_.size(); i++) {
            words_[i] |= other.words_[i];
        }
    }
    void andnot_with(const BitVec &other) {
        for (size_t i = 0; i < words_.size(); i++) {
            words_[i] &= ~other.words_[i];
        }
    }

    static size_t popcount_and(const BitVec &a, const BitVec &b) {
        size_t t = 0;
        for (size_t i = 0; i < a.words_.size(); i++) {
            t += (size_t)std::popcount(a.words_[i] & b.words_[i]);
        }
        return t;
    }
    static bool parity_and(const BitVec &a, const BitVec &b) {
        uint64_t acc = 0;
        for (size_t i = 0; i < a.words_.size(); i++) {
            acc ^= a.words_[i] & b.words_[i];
        }
        return std::popcount(acc) & 1;
    }
    static bool intersects(const BitVec &a, const BitVec &b) {
        for (size_t i = 0; i < a.words_.size(); i++) {
            if (a.words_[i] & b.words_[i]) {
                return true;
            }
        }
        return false;
    }

    bool operator==(const BitVec &other) const = default;
    bool operator<(const BitVec &other) const {
        return words_ < other.words_;
    }

    const std::vector<uint64_t> &words() const {
        return words_;
    }

    template <typename F>
    void for_each_set_bit(F &&f) const {
        for (size_t i = 0; i < words_.size(); i++) {
            uint64_t w = words_[i];
            while (w) {
                f((i << 6) + (size_t)std::countr_zero(w));
                w &= w - 1;
            }
        }
    }

  private:
    size_t num_bits_;
    std::vector<uint64_t> words_;
};

}  // namespace twistlab

#endif
