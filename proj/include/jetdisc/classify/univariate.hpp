#pragma once

#include <jetdisc/algebra/field.hpp>
#include <jetdisc/error.hpp>

#include <vector>

namespace jetdisc::uni {

/// Dense univariate polynomials and truncated power series as coefficient vectors, constant term first.
template <CoefficientField F>
using Poly = std::vector<typename F::value_type>;

template <CoefficientField F>
void trim(F const& k, Poly<F>& p)
{
    while (!p.empty() && k.is_zero(p.back())) p.pop_back();
}

template <CoefficientField F>
int degree(F const& k, Poly<F> p)
{
    trim(k, p);
    return static_cast<int>(p.size()) - 1;
}

template <CoefficientField F>
Poly<F> derivative(F const& k, Poly<F> const& p)
{
    Poly<F> r;
    for (std::size_t i = 1; i < p.size(); ++i) r.push_back(k.mul(k.from_integer(static_cast<long>(i)), p[i]));
    trim(k, r);
    return r;
}

/// Remainder of a on division by b (b non-zero).
template <CoefficientField F>
Poly<F> remainder(F const& k, Poly<F> a, Poly<F> b)
{
    trim(k, a);
    trim(k, b);
    if (b.empty()) throw DomainError("polynomial division by zero");
    auto inv = k.inv(b.back());
    while (a.size() >= b.size()) {
        auto c = k.mul(a.back(), inv);
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = k.sub(a[shift + i], k.mul(c, b[i]));
        a.pop_back();
        trim(k, a);
    }
    return a;
}

/// Quotient of a by b when the division is exact enough to ignore the remainder.
template <CoefficientField F>
Poly<F> quotient(F const& k, Poly<F> a, Poly<F> b)
{
    trim(k, a);
    trim(k, b);
    if (b.empty()) throw DomainError("polynomial division by zero");
    if (a.size() < b.size()) return {};
    Poly<F> q(a.size() - b.size() + 1, k.zero());
    auto inv = k.inv(b.back());
    while (a.size() >= b.size()) {
        auto c = k.mul(a.back(), inv);
        std::size_t shift = a.size() - b.size();
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = k.sub(a[shift + i], k.mul(c, b[i]));
        a.pop_back();
        trim(k, a);
        if (a.size() < b.size()) break;
    }
    trim(k, q);
    return q;
}

template <CoefficientField F>
Poly<F> gcd(F const& k, Poly<F> a, Poly<F> b)
{
    trim(k, a);
    trim(k, b);
    while (!b.empty()) {
        auto r = remainder(k, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        auto inv = k.inv(a.back());
        for (auto& c : a) c = k.mul(c, inv);
    }
    return a;
}

// ---- truncated series: length fixes the precision --------------------------------------------------------------------

template <CoefficientField F>
Poly<F> series_mul(F const& k, Poly<F> const& a, Poly<F> const& b, std::size_t len)
{
    Poly<F> r(len, k.zero());
    for (std::size_t i = 0; i < a.size() && i < len; ++i) {
        if (k.is_zero(a[i])) continue;
        for (std::size_t j = 0; j < b.size() && i + j < len; ++j) r[i + j] = k.add(r[i + j], k.mul(a[i], b[j]));
    }
    return r;
}

/// Inverse of a series with non-zero constant term, to `len` coefficients.
template <CoefficientField F>
Poly<F> series_inverse(F const& k, Poly<F> const& a, std::size_t len)
{
    if (a.empty() || k.is_zero(a[0])) throw DomainError("series is not a unit");
    Poly<F> r(len, k.zero());
    auto inv0 = k.inv(a[0]);
    r[0] = inv0;
    for (std::size_t n = 1; n < len; ++n) {
        auto acc = k.zero();
        for (std::size_t i = 1; i <= n && i < a.size(); ++i) acc = k.add(acc, k.mul(a[i], r[n - i]));
        r[n] = k.neg(k.mul(acc, inv0));
    }
    return r;
}

/// Index of the first non-zero coefficient, or -1 for the zero series.
template <CoefficientField F>
int valuation(F const& k, Poly<F> const& a)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!k.is_zero(a[i])) return static_cast<int>(i);
    return -1;
}

} // namespace jetdisc::uni
