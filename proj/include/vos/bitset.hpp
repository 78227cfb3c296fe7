#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace vos {

// Fixed-size bit vector used for element sets over a group's index range.
class Bitset {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    Bitset() = default;
    explicit Bitset(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }

    bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i) { w_[i >> 6] |= std::uint64_t(1) << (i & 63); }
    void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto x : w_) c += std::popcount(x);
        return c;
    }

    bool any() const {
        for (auto x : w_)
            if (x) return true;
        return false;
    }

    bool subset_of(const Bitset& o) const {
        for (std::size_t k = 0; k < w_.size(); ++k)
            if (w_[k] & ~o.w_[k]) return false;
        return true;
    }

    Bitset& operator&=(const Bitset& o) {
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
        return *this;
    }
    Bitset& operator|=(const Bitset& o) {
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
        return *this;
    }

    friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
    friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }

    bool operator==(const Bitset& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const Bitset& o) const { return !(*this == o); }

    // First set index >= i, or npos.
    std::size_t next(std::size_t i) const {
        if (i >= n_) return npos;
        std::size_t k = i >> 6;
        std::uint64_t cur = w_[k] & (~std::uint64_t(0) << (i & 63));
        while (true) {
            if (cur) {
                std::size_t r = (k << 6) + std::countr_zero(cur);
                return r < n_ ? r : npos;
            }
            if (++k == w_.size()) return npos;
            cur = w_[k];
        }
    }

    // Orders sets by their sorted membership lists; the set containing the
    // first point of difference comes first.
    bool lex_less(const Bitset& o) const {
        for (std::size_t k = 0; k < w_.size(); ++k) {
            std::uint64_t d = w_[k] ^ o.w_[k];
            if (d) {
                std::size_t bit = std::countr_zero(d);
                return (w_[k] >> bit) & 1u;
            }
        }
        return false;
    }

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

} // namespace vos

#define VOS_FOR_SET(var, bs) \
    for (std::size_t var = (bs).next(0); var != vos::Bitset::npos; var = (bs).next(var + 1))
