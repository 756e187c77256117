#pragma once

#include <jetdisc/algebra/polynomial.hpp>
#include <jetdisc/error.hpp>

#include <cctype>
#include <string>
#include <string_view>

namespace jetdisc {

namespace detail {

/// Recursive-descent reader for the polynomial grammar
///
///     expr    := term (('+' | '-') term)*
///     term    := unary (('*' | '/') unary)*
///     unary   := ('+' | '-') unary | power
///     power   := primary ('^' integer)?
///     primary := integer | identifier | '(' expr ')'
///
/// Division is only by non-zero constants, which keeps printed rational coefficients readable back.
template <CoefficientField F>
class PolynomialReader {
public:
    PolynomialReader(std::string_view src, RingPtr<F> ring) : src_(src), ring_(std::move(ring)) {}

    Polynomial<F> read()
    {
        skip_space();
        if (pos_ == src_.size()) throw ParseError("empty polynomial", pos_);
        auto p = expr();
        skip_space();
        if (pos_ != src_.size()) throw ParseError(std::string("unexpected '") + src_[pos_] + "'", pos_);
        return p;
    }

private:
    Polynomial<F> expr()
    {
        auto acc = term();
        for (;;) {
            skip_space();
            if (accept('+'))
                acc += term();
            else if (accept('-'))
                acc -= term();
            else
                return acc;
        }
    }

    Polynomial<F> term()
    {
        auto acc = unary();
        for (;;) {
            skip_space();
            std::size_t at = pos_;
            if (accept('*')) {
                acc *= unary();
            } else if (accept('/')) {
                auto d = unary();
                if (!d.is_constant()) throw ParseError("division by a non-constant", at);
                if (d.is_zero()) {
                    if (ring_->field().characteristic() == 0) throw ParseError("division by zero", at);
                    throw ParseError("coefficient not reducible mod " +
                                         std::to_string(ring_->field().characteristic()),
                                     at);
                }
                acc = acc.scale(ring_->field().inv(d.constant_coefficient()));
            } else {
                return acc;
            }
        }
    }

    Polynomial<F> unary()
    {
        skip_space();
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    Polynomial<F> power()
    {
        auto base = primary();
        skip_space();
        if (accept('^')) {
            skip_space();
            std::size_t at = pos_;
            if (pos_ == src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
                throw ParseError("exponent must be a non-negative integer literal", at);
            mpz_class e = integer();
            if (e > kMaxExponent) throw ParseError("exponent too large", at);
            skip_space();
            if (pos_ < src_.size() && src_[pos_] == '^') throw ParseError("chained exponents are ambiguous", pos_);
            return base.pow(static_cast<unsigned>(e.get_ui()));
        }
        return base;
    }

    Polynomial<F> primary()
    {
        skip_space();
        if (pos_ == src_.size()) throw ParseError("unexpected end of input", pos_);
        char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            auto inner = expr();
            skip_space();
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)))
            return Polynomial<F>::constant(ring_, ring_->field().from_integer(integer()));
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            std::string_view name = src_.substr(start, pos_ - start);
            auto index = ring_->index_of(name);
            if (!index) throw ParseError("unknown variable '" + std::string(name) + "'", start);
            return Polynomial<F>::variable(ring_, *index);
        }
        throw ParseError(std::string("unexpected '") + c + "'", pos_);
    }

    mpz_class integer()
    {
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        return mpz_class(std::string(src_.substr(start, pos_ - start)));
    }

    bool accept(char c)
    {
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void skip_space()
    {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    std::string_view src_;
    RingPtr<F> ring_;
    std::size_t pos_ = 0;
};

} // namespace detail

template <CoefficientField F>
Polynomial<F> parse_poly(std::string_view src, RingPtr<F> const& ring)
{
    return detail::PolynomialReader<F>(src, ring).read();
}

} // namespace jetdisc
