#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace bramsey {

/// Fixed-size set of small indices packed into 64-bit words.
///
/// The size is chosen at construction; every operation keeps the bits above
/// `size()` cleared, so `count()` and equality never see garbage.  Rows of a
/// bipartite graph with n <= 64 occupy a single word.
class BitSet {
public:
    using word_type = std::uint64_t;
    static constexpr std::size_t word_bits = 64;

    BitSet() = default;
    explicit BitSet(std::size_t size) : size_(size), words_((size + word_bits - 1) / word_bits, 0) {}

    static auto full(std::size_t size) -> BitSet
    {
        BitSet result(size);
        for (auto & w : result.words_)
            w = ~word_type{0};
        result.trim();
        return result;
    }

    auto size() const noexcept -> std::size_t { return size_; }
    auto word_count() const noexcept -> std::size_t { return words_.size(); }
    auto word(std::size_t k) const noexcept -> word_type { return words_[k]; }

    auto test(std::size_t i) const noexcept -> bool
    {
        return (words_[i / word_bits] >> (i % word_bits)) & 1u;
    }

    auto set(std::size_t i) noexcept -> BitSet &
    {
        words_[i / word_bits] |= word_type{1} << (i % word_bits);
        return *this;
    }

    auto reset(std::size_t i) noexcept -> BitSet &
    {
        words_[i / word_bits] &= ~(word_type{1} << (i % word_bits));
        return *this;
    }

    auto count() const noexcept -> std::size_t
    {
        std::size_t c = 0;
        for (auto w : words_)
            c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    auto none() const noexcept -> bool
    {
        for (auto w : words_)
            if (w != 0)
                return false;
        return true;
    }

    auto any() const noexcept -> bool { return ! none(); }

    /// Complement within [0, size).
    auto flip() noexcept -> BitSet &
    {
        for (auto & w : words_)
            w = ~w;
        trim();
        return *this;
    }

    auto operator&=(const BitSet & other) noexcept -> BitSet &
    {
        for (std::size_t k = 0; k < words_.size(); ++k)
            words_[k] &= other.words_[k];
        return *this;
    }

    auto operator|=(const BitSet & other) noexcept -> BitSet &
    {
        for (std::size_t k = 0; k < words_.size(); ++k)
            words_[k] |= other.words_[k];
        return *this;
    }

    auto operator^=(const BitSet & other) noexcept -> BitSet &
    {
        for (std::size_t k = 0; k < words_.size(); ++k)
            words_[k] ^= other.words_[k];
        return *this;
    }

    friend auto operator&(BitSet a, const BitSet & b) noexcept -> BitSet { return a &= b; }
    friend auto operator|(BitSet a, const BitSet & b) noexcept -> BitSet { return a |= b; }
    friend auto operator^(BitSet a, const BitSet & b) noexcept -> BitSet { return a ^= b; }
    friend auto operator~(BitSet a) noexcept -> BitSet { return a.flip(); }

    friend auto operator==(const BitSet &, const BitSet &) -> bool = default;

    /// |a & b| without materialising the intersection.
    friend auto intersection_count(const BitSet & a, const BitSet & b) noexcept -> std::size_t
    {
        std::size_t c = 0;
        for (std::size_t k = 0; k < a.words_.size(); ++k)
            c += static_cast<std::size_t>(std::popcount(a.words_[k] & b.words_[k]));
        return c;
    }

    auto is_subset_of(const BitSet & other) const noexcept -> bool
    {
        for (std::size_t k = 0; k < words_.size(); ++k)
            if (words_[k] & ~other.words_[k])
                return false;
        return true;
    }

    /// Index of the first set bit at or after `from`, or size() if none.
    auto find_next(std::size_t from) const noexcept -> std::size_t
    {
        if (from >= size_)
            return size_;
        std::size_t k = from / word_bits;
        word_type w = words_[k] & (~word_type{0} << (from % word_bits));
        while (true) {
            if (w != 0)
                return k * word_bits + static_cast<std::size_t>(std::countr_zero(w));
            if (++k == words_.size())
                return size_;
            w = words_[k];
        }
    }

    auto find_first() const noexcept -> std::size_t { return find_next(0); }

    template <typename F>
    void for_each(F && f) const
    {
        for (std::size_t k = 0; k < words_.size(); ++k)
            for (word_type w = words_[k]; w != 0; w &= w - 1)
                f(k * word_bits + static_cast<std::size_t>(std::countr_zero(w)));
    }

    auto indices() const -> std::vector<std::size_t>
    {
        std::vector<std::size_t> out;
        out.reserve(count());
        for_each([&](std::size_t i) { out.push_back(i); });
        return out;
    }

private:
    void trim() noexcept
    {
        if (size_ % word_bits != 0 && ! words_.empty())
            words_.back() &= (word_type{1} << (size_ % word_bits)) - 1;
    }

    std::size_t size_ = 0;
    std::vector<word_type> words_;
};

} // namespace bramsey
