#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace distgirth {

// Fixed-size (at construction) bitset over 64-bit words. Only the operations
// the solvers need; bits past size() are always zero.
class Bitset {
public:
    using word_type = std::uint64_t;
    static constexpr std::size_t word_bits = 64;

    Bitset() = default;
    explicit Bitset(std::size_t size) : size_(size), words_((size + word_bits - 1) / word_bits, 0) {}

    std::size_t size() const noexcept { return size_; }
    std::size_t word_count() const noexcept { return words_.size(); }
    const word_type* data() const noexcept { return words_.data(); }
    word_type* data() noexcept { return words_.data(); }

    bool test(std::size_t i) const noexcept { return (words_[i / word_bits] >> (i % word_bits)) & 1u; }
    void set(std::size_t i) noexcept { words_[i / word_bits] |= word_type{1} << (i % word_bits); }
    void reset(std::size_t i) noexcept { words_[i / word_bits] &= ~(word_type{1} << (i % word_bits)); }

    void set_all() noexcept {
        for (auto& w : words_) w = ~word_type{0};
        trim();
    }
    void reset_all() noexcept {
        for (auto& w : words_) w = 0;
    }

    std::size_t count() const noexcept {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    bool none() const noexcept {
        for (auto w : words_)
            if (w != 0) return false;
        return true;
    }
    bool any() const noexcept { return !none(); }

    // Index of the first set bit, or size() if none.
    std::size_t first() const noexcept {
        for (std::size_t k = 0; k < words_.size(); ++k)
            if (words_[k] != 0)
                return k * word_bits + static_cast<std::size_t>(std::countr_zero(words_[k]));
        return size_;
    }

    Bitset& operator&=(const Bitset& o) noexcept {
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
        return *this;
    }
    Bitset& operator|=(const Bitset& o) noexcept {
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
        return *this;
    }
    // this &= ~o
    Bitset& subtract(const Bitset& o) noexcept {
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~o.words_[k];
        return *this;
    }

    std::size_t intersection_count(const Bitset& o) const noexcept {
        std::size_t c = 0;
        for (std::size_t k = 0; k < words_.size(); ++k)
            c += static_cast<std::size_t>(std::popcount(words_[k] & o.words_[k]));
        return c;
    }

    bool intersects(const Bitset& o) const noexcept {
        for (std::size_t k = 0; k < words_.size(); ++k)
            if (words_[k] & o.words_[k]) return true;
        return false;
    }

    // Calls f(i) for each set bit in increasing order.
    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t k = 0; k < words_.size(); ++k) {
            word_type w = words_[k];
            while (w != 0) {
                const auto b = static_cast<std::size_t>(std::countr_zero(w));
                f(k * word_bits + b);
                w &= w - 1;
            }
        }
    }

    std::vector<std::uint32_t> to_indices() const {
        std::vector<std::uint32_t> out;
        out.reserve(count());
        for_each([&](std::size_t i) { out.push_back(static_cast<std::uint32_t>(i)); });
        return out;
    }

    friend bool operator==(const Bitset&, const Bitset&) = default;

private:
    void trim() noexcept {
        if (size_ % word_bits != 0 && !words_.empty())
            words_.back() &= (word_type{1} << (size_ % word_bits)) - 1;
    }

    std::size_t size_ = 0;
    std::vector<word_type> words_;
};

} // namespace distgirth
