#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "mbg/errors.hpp"

namespace mbg {

// Fixed-size dynamic bitset over 64-bit words. This is the workhorse behind
// vertex sets and adjacency rows; neighborhood unions/intersections run at
// one word per 64 vertices.
class Bitset {
public:
    Bitset() = default;

    explicit Bitset(std::size_t nbits)
        : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

    Bitset(std::size_t nbits, std::initializer_list<int> bits) : Bitset(nbits) {
        for (int b : bits) set(static_cast<std::size_t>(b));
    }

    std::size_t size() const { return nbits_; }

    void set(std::size_t i) {
        check(i);
        words_[i >> 6] |= std::uint64_t{1} << (i & 63);
    }

    void reset(std::size_t i) {
        check(i);
        words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }

    bool test(std::size_t i) const {
        check(i);
        return (words_[i >> 6] >> (i & 63)) & 1;
    }

    void clear() {
        for (auto& w : words_) w = 0;
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    bool any() const {
        for (auto w : words_)
            if (w) return true;
        return false;
    }

    bool none() const { return !any(); }

    bool intersects(const Bitset& o) const {
        std::size_t k = std::min(words_.size(), o.words_.size());
        for (std::size_t i = 0; i < k; ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }

    std::size_t count_and(const Bitset& o) const {
        std::size_t k = std::min(words_.size(), o.words_.size());
        std::size_t c = 0;
        for (std::size_t i = 0; i < k; ++i)
            c += static_cast<std::size_t>(std::popcount(words_[i] & o.words_[i]));
        return c;
    }

    bool is_subset_of(const Bitset& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            std::uint64_t ow = i < o.words_.size() ? o.words_[i] : 0;
            if (words_[i] & ~ow) return false;
        }
        return true;
    }

    Bitset& operator|=(const Bitset& o) {
        for (std::size_t i = 0; i < words_.size() && i < o.words_.size(); ++i)
            words_[i] |= o.words_[i];
        return *this;
    }

    Bitset& operator&=(const Bitset& o) {
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] &= i < o.words_.size() ? o.words_[i] : 0;
        return *this;
    }

    // Set difference: remove every bit of o.
    Bitset& operator-=(const Bitset& o) {
        for (std::size_t i = 0; i < words_.size() && i < o.words_.size(); ++i)
            words_[i] &= ~o.words_[i];
        return *this;
    }

    friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
    friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
    friend Bitset operator-(Bitset a, const Bitset& b) { return a -= b; }

    bool operator==(const Bitset& o) const {
        return nbits_ == o.nbits_ && words_ == o.words_;
    }
    bool operator!=(const Bitset& o) const { return !(*this == o); }

    // First set bit at position >= from, or size() if none.
    std::size_t next(std::size_t from) const {
        if (from >= nbits_) return nbits_;
        std::size_t wi = from >> 6;
        std::uint64_t w = words_[wi] & (~std::uint64_t{0} << (from & 63));
        while (true) {
            if (w) {
                std::size_t bit = (wi << 6) +
                                  static_cast<std::size_t>(std::countr_zero(w));
                return bit < nbits_ ? bit : nbits_;
            }
            if (++wi == words_.size()) return nbits_;
            w = words_[wi];
        }
    }

    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (std::size_t i = next(0); i < nbits_; i = next(i + 1)) fn(i);
    }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        for_each([&](std::size_t i) { out.push_back(static_cast<int>(i)); });
        return out;
    }

    const std::vector<std::uint64_t>& words() const { return words_; }

private:
    void check(std::size_t i) const {
        if (i >= nbits_) throw invalid_input("bit index out of range");
    }

    std::size_t nbits_ = 0;
    std::vector<std::uint64_t> words_;
};

// Vertex subsets are plain bitsets over 0..n-1.
using VertexSet = Bitset;

} // namespace mbg
