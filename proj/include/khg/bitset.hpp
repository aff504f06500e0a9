#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace khg {

// Dynamic fixed-width bitset used by the search kernels. One word covers
// every host in the acceptance corpus; larger graphs just take more words.
class Bitset {
public:
    Bitset() : nbits_(0) {}
    explicit Bitset(int nbits, bool fill = false)
        : nbits_(nbits), words_((static_cast<std::size_t>(nbits) + 63) / 64, fill ? ~0ULL : 0ULL) {
        trim();
    }

    int size() const { return nbits_; }

    void set(int i) { words_[static_cast<std::size_t>(i) >> 6] |= 1ULL << (i & 63); }
    void reset(int i) { words_[static_cast<std::size_t>(i) >> 6] &= ~(1ULL << (i & 63)); }
    bool test(int i) const { return (words_[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1U; }

    int count() const {
        int c = 0;
        for (auto w : words_) c += std::popcount(w);
        return c;
    }
    bool any() const {
        for (auto w : words_)
            if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    Bitset& operator&=(const Bitset& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    Bitset& operator|=(const Bitset& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    // this &= ~o
    Bitset& and_not(const Bitset& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }

    bool subset_of(const Bitset& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }
    bool intersects(const Bitset& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }

    bool operator==(const Bitset& o) const { return nbits_ == o.nbits_ && words_ == o.words_; }

    // index of first set bit >= from, or -1
    int next_set(int from) const {
        if (from >= nbits_) return -1;
        std::size_t w = static_cast<std::size_t>(from) >> 6;
        std::uint64_t cur = words_[w] & (~0ULL << (from & 63));
        for (;;) {
            if (cur) return static_cast<int>((w << 6) + static_cast<std::size_t>(std::countr_zero(cur)));
            if (++w >= words_.size()) return -1;
            cur = words_[w];
        }
    }

    template <typename Fn>
    void for_each_set(Fn&& fn) const {
        for (int v = next_set(0); v >= 0; v = next_set(v + 1)) fn(v);
    }

private:
    void trim() {
        int extra = nbits_ & 63;
        if (extra && !words_.empty()) words_.back() &= (1ULL << extra) - 1;
    }

    int nbits_;
    std::vector<std::uint64_t> words_;
};

} // namespace khg
