#pragma once

#include <jetdisc/error.hpp>

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <string>
#include <utility>

namespace jetdisc {

inline bool is_prime(std::uint64_t n)
{
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Runtime description of a coefficient field: characteristic 0 means Q.
struct FieldSpec {
    std::uint32_t characteristic = 0;

    static FieldSpec rationals() { return {0}; }
    static FieldSpec prime(std::uint32_t p)
    {
        if (!is_prime(p)) throw DomainError("field characteristic " + std::to_string(p) + " is not prime");
        return {p};
    }

    bool is_rationals() const noexcept { return characteristic == 0; }
    std::string to_string() const { return is_rationals() ? "Q" : "F_" + std::to_string(characteristic); }

    friend bool operator==(FieldSpec, FieldSpec) = default;
};

// --------------------------------------------------------------------------------------------------------------------
// Fields. Elements are plain values; the field object carries whatever runtime state (the modulus) arithmetic needs.
// --------------------------------------------------------------------------------------------------------------------

template <typename F>
concept CoefficientField = requires(F const& f, typename F::value_type const& a, long n, mpq_class const& q) {
    { f.zero() } -> std::same_as<typename F::value_type>;
    { f.one() } -> std::same_as<typename F::value_type>;
    { f.add(a, a) } -> std::same_as<typename F::value_type>;
    { f.sub(a, a) } -> std::same_as<typename F::value_type>;
    { f.mul(a, a) } -> std::same_as<typename F::value_type>;
    { f.neg(a) } -> std::same_as<typename F::value_type>;
    { f.inv(a) } -> std::same_as<typename F::value_type>;
    { f.is_zero(a) } -> std::same_as<bool>;
    { f.from_integer(n) } -> std::same_as<typename F::value_type>;
    { f.from_rational(q) } -> std::same_as<typename F::value_type>;
    { f.to_rational(a) } -> std::same_as<mpq_class>;
    { f.to_string(a) } -> std::same_as<std::string>;
    { f.spec() } -> std::same_as<FieldSpec>;
};

class RationalField {
public:
    using value_type = mpq_class;

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type add(value_type const& a, value_type const& b) const { return a + b; }
    value_type sub(value_type const& a, value_type const& b) const { return a - b; }
    value_type mul(value_type const& a, value_type const& b) const { return a * b; }
    value_type neg(value_type const& a) const { return -a; }
    value_type inv(value_type const& a) const
    {
        if (sgn(a) == 0) throw DomainError("division by zero");
        return 1 / a;
    }
    bool is_zero(value_type const& a) const { return sgn(a) == 0; }
    bool is_one(value_type const& a) const { return a == 1; }
    value_type from_integer(long n) const { return n; }
    value_type from_integer(mpz_class const& n) const { return mpq_class(n); }
    value_type from_rational(mpq_class const& q) const { return q; }
    mpq_class to_rational(value_type const& a) const { return a; }
    std::string to_string(value_type const& a) const { return a.get_str(); }
    std::uint32_t characteristic() const noexcept { return 0; }
    FieldSpec spec() const { return FieldSpec::rationals(); }

    friend bool operator==(RationalField const&, RationalField const&) { return true; }
};

class PrimeField {
public:
    using value_type = std::uint32_t;

    explicit PrimeField(std::uint32_t p) : p_(p)
    {
        if (!is_prime(p) || p >= (1u << 31)) throw DomainError("unsupported prime " + std::to_string(p));
    }

    std::uint32_t modulus() const noexcept { return p_; }
    std::uint32_t characteristic() const noexcept { return p_; }
    FieldSpec spec() const { return FieldSpec{p_}; }

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type add(value_type a, value_type b) const
    {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + p_ - b; }
    value_type mul(value_type a, value_type b) const
    {
        return static_cast<value_type>(static_cast<std::uint64_t>(a) * b % p_);
    }
    value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
    value_type inv(value_type a) const
    {
        if (a == 0) throw DomainError("division by zero in F_" + std::to_string(p_));
        std::int64_t t = 0, new_t = 1, r = p_, new_r = a;
        while (new_r != 0) {
            std::int64_t q = r / new_r;
            t = std::exchange(new_t, t - q * new_t);
            r = std::exchange(new_r, r - q * new_r);
        }
        return static_cast<value_type>(t < 0 ? t + p_ : t);
    }
    value_type pow(value_type a, std::uint64_t e) const
    {
        value_type r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    bool is_zero(value_type a) const { return a == 0; }
    bool is_one(value_type a) const { return a == 1; }
    value_type from_integer(long n) const
    {
        long r = n % static_cast<long>(p_);
        return static_cast<value_type>(r < 0 ? r + p_ : r);
    }
    value_type from_integer(mpz_class const& n) const
    {
        mpz_class r = n % p_;
        if (r < 0) r += p_;
        return static_cast<value_type>(r.get_ui());
    }
    value_type from_rational(mpq_class const& q) const
    {
        value_type den = from_integer(q.get_den());
        if (den == 0)
            throw DomainError("coefficient " + q.get_str() + " is not reducible mod " + std::to_string(p_));
        return mul(from_integer(q.get_num()), inv(den));
    }
    mpq_class to_rational(value_type a) const { return mpq_class(static_cast<unsigned long>(a)); }
    std::string to_string(value_type a) const { return std::to_string(a); }

    friend bool operator==(PrimeField const& a, PrimeField const& b) { return a.p_ == b.p_; }

private:
    std::uint32_t p_;
};

static_assert(CoefficientField<RationalField>);
static_assert(CoefficientField<PrimeField>);

/// Surrogate prime used for characteristic-0 dimension work.
inline constexpr std::uint32_t kSurrogatePrime = 32003;

/// Calls fn with the concrete field object described by spec.
template <typename Fn>
decltype(auto) visit_field(FieldSpec spec, Fn&& fn)
{
    if (spec.is_rationals()) return fn(RationalField{});
    return fn(PrimeField{spec.characteristic});
}

} // namespace jetdisc
