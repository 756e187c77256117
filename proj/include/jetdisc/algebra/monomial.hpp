#pragma once

#include <jetdisc/error.hpp>

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>

namespace jetdisc {

/// Maximum ring arity. Jet rings of level m over N base variables need N*(m+1) slots.
inline constexpr std::size_t kMaxVars = 64;
/// Largest exponent a single variable may carry.
inline constexpr unsigned kMaxExponent = 127;

/// Exponent vector packed one byte per variable, eight variables per word.
///
/// Exponents are kept below 128 so the high bit of every byte is free; divisibility and overflow checks then run
/// word-at-a-time. Slots beyond the ring arity are always zero, so comparisons need not know the arity.
class Monomial {
public:
    static constexpr std::size_t kWords = kMaxVars / 8;

    Monomial() = default;

    static Monomial from_exponents(std::span<unsigned const> exps)
    {
        if (exps.size() > kMaxVars) throw DomainError("ring arity exceeds " + std::to_string(kMaxVars));
        Monomial m;
        for (std::size_t i = 0; i < exps.size(); ++i) m.set(i, exps[i]);
        return m;
    }

    static Monomial variable(std::size_t i, unsigned e = 1)
    {
        Monomial m;
        m.set(i, e);
        return m;
    }

    unsigned operator[](std::size_t i) const noexcept
    {
        return static_cast<unsigned>((words_[i >> 3] >> ((i & 7) * 8)) & 0xFF);
    }

    void set(std::size_t i, unsigned e)
    {
        if (i >= kMaxVars) throw DomainError("variable index out of range");
        if (e > kMaxExponent) throw DomainError("exponent " + std::to_string(e) + " exceeds supported maximum");
        unsigned old = (*this)[i];
        std::uint64_t const shift = (i & 7) * 8;
        words_[i >> 3] = (words_[i >> 3] & ~(std::uint64_t{0xFF} << shift)) | (std::uint64_t{e} << shift);
        degree_ = degree_ - old + e;
    }

    unsigned degree() const noexcept { return degree_; }
    bool is_one() const noexcept { return degree_ == 0; }

    /// Bit i is set iff variable i occurs.
    std::uint64_t support() const noexcept
    {
        std::uint64_t mask = 0;
        for (std::size_t w = 0; w < kWords; ++w) {
            std::uint64_t word = words_[w];
            while (word) {
                int bit = std::countr_zero(word);
                mask |= std::uint64_t{1} << (w * 8 + static_cast<std::size_t>(bit) / 8);
                word &= ~(std::uint64_t{0xFF} << (bit / 8 * 8));
            }
        }
        return mask;
    }

    bool divides(Monomial const& other) const noexcept
    {
        constexpr std::uint64_t high = 0x8080808080808080ULL;
        if (degree_ > other.degree_) return false;
        for (std::size_t w = 0; w < kWords; ++w)
            if ((((other.words_[w] | high) - words_[w]) & high) != high) return false;
        return true;
    }

    friend Monomial operator*(Monomial const& a, Monomial const& b)
    {
        constexpr std::uint64_t high = 0x8080808080808080ULL;
        Monomial r;
        for (std::size_t w = 0; w < kWords; ++w) {
            r.words_[w] = a.words_[w] + b.words_[w];
            if (r.words_[w] & high) throw DomainError("exponent overflow in monomial product");
        }
        r.degree_ = a.degree_ + b.degree_;
        return r;
    }

    /// Quotient a / b; requires b | a.
    friend Monomial operator/(Monomial const& a, Monomial const& b)
    {
        Monomial r;
        for (std::size_t w = 0; w < kWords; ++w) r.words_[w] = a.words_[w] - b.words_[w];
        r.degree_ = a.degree_ - b.degree_;
        return r;
    }

    friend Monomial lcm(Monomial const& a, Monomial const& b)
    {
        constexpr std::uint64_t high = 0x8080808080808080ULL;
        Monomial r;
        for (std::size_t w = 0; w < kWords; ++w) {
            std::uint64_t x = a.words_[w], y = b.words_[w];
            if ((x | y) == 0) continue;
            std::uint64_t ge = (((x | high) - y) & high) >> 7; // low bit per byte: x >= y
            std::uint64_t mask = ge * 0xFF;
            std::uint64_t word = (x & mask) | (y & ~mask);
            r.words_[w] = word;
            for (; word; word >>= 8) r.degree_ += static_cast<unsigned>(word & 0xFF);
        }
        return r;
    }

    friend bool coprime(Monomial const& a, Monomial const& b) noexcept
    {
        for (std::size_t w = 0; w < kWords; ++w) {
            std::uint64_t x = a.words_[w], y = b.words_[w];
            // Collapse every non-zero byte to its low bit, then test overlap.
            auto nonzero = [](std::uint64_t v) {
                v |= v >> 4;
                v |= v >> 2;
                v |= v >> 1;
                return v & 0x0101010101010101ULL;
            };
            if (nonzero(x) & nonzero(y)) return false;
        }
        return true;
    }

    friend bool operator==(Monomial const& a, Monomial const& b) noexcept
    {
        return a.degree_ == b.degree_ && a.words_ == b.words_;
    }

    /// Graded reverse lexicographic comparison: -1, 0, +1.
    ///
    /// Higher total degree wins; on ties the monomial with the smaller exponent in the last variable where they
    /// differ is the larger one.
    friend int grevlex_compare(Monomial const& a, Monomial const& b) noexcept
    {
        if (a.degree_ != b.degree_) return a.degree_ > b.degree_ ? 1 : -1;
        for (std::size_t w = kWords; w-- > 0;) {
            std::uint64_t diff = a.words_[w] ^ b.words_[w];
            if (!diff) continue;
            unsigned shift = static_cast<unsigned>(63 - std::countl_zero(diff)) / 8 * 8;
            unsigned ea = static_cast<unsigned>((a.words_[w] >> shift) & 0xFF);
            unsigned eb = static_cast<unsigned>((b.words_[w] >> shift) & 0xFF);
            return ea < eb ? 1 : -1;
        }
        return 0;
    }

    std::size_t hash() const noexcept
    {
        std::size_t h = degree_;
        for (auto w : words_) h = h * 0x9E3779B97F4A7C15ULL ^ std::hash<std::uint64_t>{}(w);
        return h;
    }

private:
    std::array<std::uint64_t, kWords> words_{};
    unsigned degree_ = 0;
};

/// Strict "a comes before b" in descending grevlex order.
struct GrevlexDescending {
    bool operator()(Monomial const& a, Monomial const& b) const noexcept { return grevlex_compare(a, b) > 0; }
};

struct MonomialHash {
    std::size_t operator()(Monomial const& m) const noexcept { return m.hash(); }
};

} // namespace jetdisc
