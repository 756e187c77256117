#pragma once

#include <jetdisc/algebra/field.hpp>
#include <jetdisc/algebra/monomial.hpp>
#include <jetdisc/error.hpp>

#include <algorithm>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace jetdisc {

/// A polynomial ring: ordered variable names over a coefficient field.
template <CoefficientField F>
class Ring {
public:
    Ring(F field, std::vector<std::string> names) : field_(std::move(field)), names_(std::move(names))
    {
        if (names_.size() > kMaxVars)
            throw DomainError("ring arity " + std::to_string(names_.size()) + " exceeds " + std::to_string(kMaxVars));
        for (std::size_t i = 0; i < names_.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (names_[i] == names_[j]) throw DomainError("duplicate variable name '" + names_[i] + "'");
    }

    F const& field() const noexcept { return field_; }
    std::size_t arity() const noexcept { return names_.size(); }
    std::vector<std::string> const& names() const noexcept { return names_; }
    std::string const& name(std::size_t i) const { return names_.at(i); }

    std::optional<std::size_t> index_of(std::string_view name) const
    {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name) return i;
        return std::nullopt;
    }

    friend bool operator==(Ring const& a, Ring const& b) { return a.field_ == b.field_ && a.names_ == b.names_; }

private:
    F field_;
    std::vector<std::string> names_;
};

template <CoefficientField F>
using RingPtr = std::shared_ptr<Ring<F> const>;

template <CoefficientField F>
RingPtr<F> make_ring(F field, std::vector<std::string> names)
{
    return std::make_shared<Ring<F> const>(std::move(field), std::move(names));
}

template <CoefficientField F>
struct Term {
    Monomial monomial;
    typename F::value_type coefficient;

    friend bool operator==(Term const&, Term const&) = default;
};

/// Sparse polynomial in canonical form: terms sorted by descending grevlex, no zero coefficients.
template <CoefficientField F>
class Polynomial {
public:
    using value_type = typename F::value_type;
    using term_type = Term<F>;

    explicit Polynomial(RingPtr<F> ring) : ring_(std::move(ring)) {}

    /// Takes terms in any order, possibly with repeated monomials and zero coefficients.
    static Polynomial from_terms(RingPtr<F> ring, std::vector<term_type> terms)
    {
        Polynomial p(std::move(ring));
        auto const& k = p.field();
        std::sort(terms.begin(), terms.end(),
                  [](term_type const& a, term_type const& b) { return grevlex_compare(a.monomial, b.monomial) > 0; });
        for (auto& t : terms) {
            if (!p.terms_.empty() && p.terms_.back().monomial == t.monomial)
                p.terms_.back().coefficient = k.add(p.terms_.back().coefficient, t.coefficient);
            else
                p.terms_.push_back(std::move(t));
            if (k.is_zero(p.terms_.back().coefficient)) p.terms_.pop_back();
        }
        return p;
    }

    /// Trusted constructor: terms already canonical.
    static Polynomial from_sorted_terms(RingPtr<F> ring, std::vector<term_type> terms)
    {
        Polynomial p(std::move(ring));
        p.terms_ = std::move(terms);
        return p;
    }

    static Polynomial constant(RingPtr<F> ring, value_type c)
    {
        Polynomial p(std::move(ring));
        if (!p.field().is_zero(c)) p.terms_.push_back({Monomial{}, std::move(c)});
        return p;
    }

    static Polynomial variable(RingPtr<F> ring, std::size_t i)
    {
        if (i >= ring->arity()) throw DomainError("variable index out of range");
        Polynomial p(std::move(ring));
        p.terms_.push_back({Monomial::variable(i), p.field().one()});
        return p;
    }

    static Polynomial monomial(RingPtr<F> ring, Monomial m, value_type c)
    {
        Polynomial p(std::move(ring));
        if (!p.field().is_zero(c)) p.terms_.push_back({m, std::move(c)});
        return p;
    }

    RingPtr<F> const& ring() const noexcept { return ring_; }
    F const& field() const noexcept { return ring_->field(); }
    std::vector<term_type> const& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one()); }

    term_type const& leading_term() const
    {
        if (terms_.empty()) throw DomainError("zero polynomial has no leading term");
        return terms_.front();
    }
    Monomial const& leading_monomial() const { return leading_term().monomial; }
    value_type const& leading_coefficient() const { return leading_term().coefficient; }

    value_type constant_coefficient() const
    {
        if (!terms_.empty() && terms_.back().monomial.is_one()) return terms_.back().coefficient;
        return field().zero();
    }

    value_type coefficient(Monomial const& m) const
    {
        for (auto const& t : terms_)
            if (t.monomial == m) return t.coefficient;
        return field().zero();
    }

    /// Largest total degree; -1 for zero.
    int total_degree() const
    {
        int d = -1;
        for (auto const& t : terms_) d = std::max(d, static_cast<int>(t.monomial.degree()));
        return d;
    }

    /// Smallest total degree of a term; nullopt stands for infinity (zero polynomial).
    std::optional<unsigned> order() const
    {
        if (terms_.empty()) return std::nullopt;
        unsigned d = terms_.front().monomial.degree();
        for (auto const& t : terms_) d = std::min(d, t.monomial.degree());
        return d;
    }

    bool is_homogeneous() const
    {
        return terms_.empty() ||
               std::all_of(terms_.begin(), terms_.end(),
                           [&](term_type const& t) { return t.monomial.degree() == terms_.front().monomial.degree(); });
    }

    /// Bitmask of the variables that occur.
    std::uint64_t support() const
    {
        std::uint64_t s = 0;
        for (auto const& t : terms_) s |= t.monomial.support();
        return s;
    }

    Polynomial operator-() const
    {
        Polynomial r = *this;
        for (auto& t : r.terms_) t.coefficient = field().neg(t.coefficient);
        return r;
    }

    friend Polynomial operator+(Polynomial const& a, Polynomial const& b) { return combine(a, b, false); }
    friend Polynomial operator-(Polynomial const& a, Polynomial const& b) { return combine(a, b, true); }
    Polynomial& operator+=(Polynomial const& b) { return *this = *this + b; }
    Polynomial& operator-=(Polynomial const& b) { return *this = *this - b; }

    friend Polynomial operator*(Polynomial const& a, Polynomial const& b)
    {
        check_same_ring(a, b);
        if (a.is_zero() || b.is_zero()) return Polynomial(a.ring_);
        if (a.size() == 1) return b.scale_monomial(a.terms_[0].monomial, a.terms_[0].coefficient);
        if (b.size() == 1) return a.scale_monomial(b.terms_[0].monomial, b.terms_[0].coefficient);
        auto const& k = a.field();
        std::unordered_map<Monomial, value_type, MonomialHash> acc;
        acc.reserve(a.size() * b.size());
        for (auto const& s : a.terms_)
            for (auto const& t : b.terms_) {
                auto [it, fresh] = acc.try_emplace(s.monomial * t.monomial, k.zero());
                it->second = k.add(it->second, k.mul(s.coefficient, t.coefficient));
            }
        std::vector<term_type> terms;
        terms.reserve(acc.size());
        for (auto& [m, c] : acc)
            if (!k.is_zero(c)) terms.push_back({m, std::move(c)});
        std::sort(terms.begin(), terms.end(),
                  [](term_type const& x, term_type const& y) { return grevlex_compare(x.monomial, y.monomial) > 0; });
        return from_sorted_terms(a.ring_, std::move(terms));
    }
    Polynomial& operator*=(Polynomial const& b) { return *this = *this * b; }

    Polynomial scale(value_type const& c) const
    {
        if (field().is_zero(c)) return Polynomial(ring_);
        Polynomial r = *this;
        for (auto& t : r.terms_) t.coefficient = field().mul(t.coefficient, c);
        return r;
    }

    /// c * m * this; multiplying by a monomial preserves the term order.
    Polynomial scale_monomial(Monomial const& m, value_type const& c) const
    {
        if (field().is_zero(c)) return Polynomial(ring_);
        Polynomial r(ring_);
        r.terms_.reserve(terms_.size());
        for (auto const& t : terms_) r.terms_.push_back({t.monomial * m, field().mul(t.coefficient, c)});
        return r;
    }

    Polynomial pow(unsigned e) const
    {
        Polynomial result = constant(ring_, field().one());
        Polynomial base = *this;
        while (e) {
            if (e & 1) result *= base;
            e >>= 1;
            if (e) base *= base;
        }
        return result;
    }

    /// Scales so the leading coefficient is one.
    Polynomial monic() const
    {
        if (is_zero()) return *this;
        return scale(field().inv(leading_coefficient()));
    }

    friend bool operator==(Polynomial const& a, Polynomial const& b)
    {
        return (a.ring_ == b.ring_ || *a.ring_ == *b.ring_) && a.terms_ == b.terms_;
    }

    static void check_same_ring(Polynomial const& a, Polynomial const& b)
    {
        if (a.ring_ != b.ring_ && !(*a.ring_ == *b.ring_)) throw DomainError("polynomials live in different rings");
    }

private:
    static Polynomial combine(Polynomial const& a, Polynomial const& b, bool subtract)
    {
        check_same_ring(a, b);
        auto const& k = a.field();
        Polynomial r(a.ring_);
        r.terms_.reserve(a.size() + b.size());
        std::size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            int cmp = i == a.size() ? -1 : j == b.size() ? 1 : grevlex_compare(a.terms_[i].monomial, b.terms_[j].monomial);
            if (cmp > 0) {
                r.terms_.push_back(a.terms_[i++]);
            } else if (cmp < 0) {
                auto const& t = b.terms_[j++];
                r.terms_.push_back({t.monomial, subtract ? k.neg(t.coefficient) : t.coefficient});
            } else {
                auto c = subtract ? k.sub(a.terms_[i].coefficient, b.terms_[j].coefficient)
                                  : k.add(a.terms_[i].coefficient, b.terms_[j].coefficient);
                if (!k.is_zero(c)) r.terms_.push_back({a.terms_[i].monomial, std::move(c)});
                ++i;
                ++j;
            }
        }
        return r;
    }

    RingPtr<F> ring_;
    std::vector<term_type> terms_;
};

// --------------------------------------------------------------------------------------------------------------------
// Basic operations
// --------------------------------------------------------------------------------------------------------------------

/// Formal partial derivative with respect to variable i (exact in every characteristic).
template <CoefficientField F>
Polynomial<F> derivative(Polynomial<F> const& f, std::size_t i)
{
    auto const& k = f.field();
    std::vector<Term<F>> terms;
    for (auto const& t : f.terms()) {
        unsigned e = t.monomial[i];
        if (e == 0) continue;
        Monomial m = t.monomial;
        m.set(i, e - 1);
        terms.push_back({m, k.mul(k.from_integer(static_cast<long>(e)), t.coefficient)});
    }
    return Polynomial<F>::from_terms(f.ring(), std::move(terms));
}

template <CoefficientField F>
typename F::value_type evaluate(Polynomial<F> const& f, std::span<typename F::value_type const> point)
{
    auto const& k = f.field();
    if (point.size() != f.ring()->arity()) throw DomainError("point has wrong number of coordinates");
    auto acc = k.zero();
    for (auto const& t : f.terms()) {
        auto v = t.coefficient;
        for (std::size_t i = 0; i < point.size(); ++i)
            for (unsigned e = t.monomial[i]; e > 0; --e) v = k.mul(v, point[i]);
        acc = k.add(acc, v);
    }
    return acc;
}

/// Order of vanishing at the origin; nullopt is infinity (f = 0).
template <CoefficientField F>
std::optional<unsigned> multiplicity_at_origin(Polynomial<F> const& f)
{
    return f.order();
}

/// Sum of the terms of minimal total degree.
template <CoefficientField F>
Polynomial<F> initial_form(Polynomial<F> const& f)
{
    auto mult = f.order();
    if (!mult) throw DomainError("initial form of the zero polynomial");
    std::vector<Term<F>> terms;
    for (auto const& t : f.terms())
        if (t.monomial.degree() == *mult) terms.push_back(t);
    return Polynomial<F>::from_sorted_terms(f.ring(), std::move(terms));
}

/// Drops every term of total degree above max_degree.
template <CoefficientField F>
Polynomial<F> truncate(Polynomial<F> const& f, unsigned max_degree)
{
    std::vector<Term<F>> terms;
    for (auto const& t : f.terms())
        if (t.monomial.degree() <= max_degree) terms.push_back(t);
    return Polynomial<F>::from_sorted_terms(f.ring(), std::move(terms));
}

/// Product truncated at total degree max_degree, never forming the discarded terms.
template <CoefficientField F>
Polynomial<F> multiply_truncated(Polynomial<F> const& a, Polynomial<F> const& b, unsigned max_degree)
{
    Polynomial<F>::check_same_ring(a, b);
    auto const& k = a.field();
    std::unordered_map<Monomial, typename F::value_type, MonomialHash> acc;
    for (auto const& s : a.terms())
        for (auto const& t : b.terms()) {
            if (s.monomial.degree() + t.monomial.degree() > max_degree) continue;
            auto [it, fresh] = acc.try_emplace(s.monomial * t.monomial, k.zero());
            it->second = k.add(it->second, k.mul(s.coefficient, t.coefficient));
        }
    std::vector<Term<F>> terms;
    for (auto& [m, c] : acc)
        if (!k.is_zero(c)) terms.push_back({m, std::move(c)});
    return Polynomial<F>::from_terms(a.ring(), std::move(terms));
}

/// Ring homomorphism sending variable i to images[i] (all images in one target ring).
///
/// With a degree cap the result and every intermediate power are truncated above that total degree.
template <CoefficientField F>
Polynomial<F> substitute(Polynomial<F> const& f, std::span<Polynomial<F> const> images,
                         std::optional<unsigned> max_degree = std::nullopt)
{
    if (images.size() != f.ring()->arity()) throw DomainError("substitution needs one image per variable");
    if (images.empty()) return Polynomial<F>::constant(f.ring(), f.constant_coefficient());
    auto const& target = images.front().ring();
    auto const& k = target->field();
    auto mul = [&](Polynomial<F> const& a, Polynomial<F> const& b) {
        return max_degree ? multiply_truncated(a, b, *max_degree) : a * b;
    };
    // powers[i][e] = images[i]^e, grown on demand
    std::vector<std::vector<Polynomial<F>>> powers(images.size());
    auto power = [&](std::size_t i, unsigned e) -> Polynomial<F> const& {
        auto& cache = powers[i];
        if (cache.empty()) cache.push_back(Polynomial<F>::constant(target, k.one()));
        while (cache.size() <= e) cache.push_back(mul(cache.back(), images[i]));
        return cache[e];
    };
    Polynomial<F> result(target);
    for (auto const& t : f.terms()) {
        Polynomial<F> prod = Polynomial<F>::constant(target, t.coefficient);
        for (std::size_t i = 0; i < images.size() && !prod.is_zero(); ++i)
            if (unsigned e = t.monomial[i]) prod = mul(prod, power(i, e));
        result += prod;
    }
    return result;
}

/// Re-expresses f in another ring over the same field whose variables include all of f's variables (by name).
template <CoefficientField F>
Polynomial<F> change_ring(Polynomial<F> const& f, RingPtr<F> const& target)
{
    std::vector<std::size_t> slot(f.ring()->arity());
    std::uint64_t used = f.support();
    for (std::size_t i = 0; i < slot.size(); ++i) {
        auto j = target->index_of(f.ring()->name(i));
        if (!j) {
            if (used >> i & 1) throw DomainError("variable '" + f.ring()->name(i) + "' missing in target ring");
            continue;
        }
        slot[i] = *j;
    }
    std::vector<Term<F>> terms;
    terms.reserve(f.size());
    for (auto const& t : f.terms()) {
        Monomial m;
        for (std::size_t i = 0; i < slot.size(); ++i)
            if (unsigned e = t.monomial[i]) m.set(slot[i], e);
        terms.push_back({m, t.coefficient});
    }
    return Polynomial<F>::from_terms(target, std::move(terms));
}

/// Maps coefficients into another field (e.g. Q -> F_p) keeping variable positions.
template <CoefficientField F, CoefficientField G>
Polynomial<G> map_coefficients(Polynomial<F> const& f, RingPtr<G> const& target)
{
    if (target->arity() != f.ring()->arity()) throw DomainError("coefficient map needs rings of equal arity");
    std::vector<Term<G>> terms;
    terms.reserve(f.size());
    for (auto const& t : f.terms())
        terms.push_back({t.monomial, target->field().from_rational(f.field().to_rational(t.coefficient))});
    return Polynomial<G>::from_terms(target, std::move(terms));
}

// --------------------------------------------------------------------------------------------------------------------
// Printing: graded reverse lexicographic order, deterministic.
// --------------------------------------------------------------------------------------------------------------------

namespace detail {

inline std::string monomial_string(Monomial const& m, std::vector<std::string> const& names)
{
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        unsigned e = m[i];
        if (!e) continue;
        if (!out.empty()) out += '*';
        out += names[i];
        if (e > 1) out += '^' + std::to_string(e);
    }
    return out;
}

} // namespace detail

template <CoefficientField F>
std::string to_string(Polynomial<F> const& f)
{
    if (f.is_zero()) return "0";
    auto const& names = f.ring()->names();
    std::string out;
    bool first = true;
    for (auto const& t : f.terms()) {
        mpq_class c = f.field().to_rational(t.coefficient);
        bool negative = c < 0;
        if (negative) c = -c;
        if (first)
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        first = false;
        std::string mono = detail::monomial_string(t.monomial, names);
        if (mono.empty())
            out += c.get_str();
        else if (c == 1)
            out += mono;
        else
            out += c.get_str() + "*" + mono;
    }
    return out;
}

template <CoefficientField F>
std::ostream& operator<<(std::ostream& os, Polynomial<F> const& f)
{
    return os << to_string(f);
}

// --------------------------------------------------------------------------------------------------------------------
// Ideals
// --------------------------------------------------------------------------------------------------------------------

/// Generators in a common ring; an empty list is the zero ideal.
template <CoefficientField F>
struct IdealPresentation {
    RingPtr<F> ring;
    std::vector<Polynomial<F>> generators;

    explicit IdealPresentation(RingPtr<F> r, std::vector<Polynomial<F>> gens = {})
        : ring(std::move(r)), generators(std::move(gens))
    {
        for (auto const& g : generators)
            if (g.ring() != ring && !(*g.ring() == *ring)) throw DomainError("ideal generators must share a ring");
    }

    std::size_t arity() const { return ring->arity(); }

    /// Copy with zero generators removed.
    IdealPresentation nonzero() const
    {
        IdealPresentation r(ring);
        for (auto const& g : generators)
            if (!g.is_zero()) r.generators.push_back(g);
        return r;
    }
};

template <CoefficientField F, CoefficientField G>
IdealPresentation<G> map_coefficients(IdealPresentation<F> const& ideal, RingPtr<G> const& target)
{
    IdealPresentation<G> r(target);
    for (auto const& g : ideal.generators) r.generators.push_back(map_coefficients(g, target));
    return r;
}

} // namespace jetdisc
