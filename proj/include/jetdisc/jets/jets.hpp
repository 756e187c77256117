#pragma once

#include <jetdisc/algebra/polynomial.hpp>
#include <jetdisc/error.hpp>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace jetdisc {

/// Ring of jet variables x_i^(j) for base variables x_1..x_N and levels first_level..level.
///
/// Full jet rings start at level 0; jet fibers over a point start at level 1 because the level-0 coordinates are
/// fixed by the point. Variable x_i^(j) is named `<x_i>_<j>` and carries weight j; ordering is i major, j minor.
template <CoefficientField F>
class JetRing {
public:
    JetRing(F field, std::vector<std::string> base_names, unsigned level, unsigned first_level = 0)
        : base_names_(std::move(base_names)), level_(level), first_level_(first_level)
    {
        if (first_level > level + 1) throw DomainError("jet ring levels out of order");
        std::vector<std::string> names;
        for (auto const& b : base_names_)
            for (unsigned j = first_level_; j <= level_; ++j) names.push_back(b + "_" + std::to_string(j));
        ring_ = make_ring(std::move(field), std::move(names));
    }

    static JetRing full(F field, std::vector<std::string> base_names, unsigned level)
    {
        return JetRing(std::move(field), std::move(base_names), level, 0);
    }

    /// Ring of a jet fiber over a point: levels 1..m, so N*m variables.
    static JetRing fiber(F field, std::vector<std::string> base_names, unsigned level)
    {
        return JetRing(std::move(field), std::move(base_names), level, 1);
    }

    RingPtr<F> const& ring() const noexcept { return ring_; }
    std::vector<std::string> const& base_names() const noexcept { return base_names_; }
    std::size_t base_arity() const noexcept { return base_names_.size(); }
    unsigned level() const noexcept { return level_; }
    unsigned first_level() const noexcept { return first_level_; }
    std::size_t levels_per_variable() const noexcept { return level_ + 1 - first_level_; }
    std::size_t arity() const noexcept { return ring_->arity(); }

    std::size_t index(std::size_t base, unsigned j) const
    {
        if (base >= base_names_.size() || j < first_level_ || j > level_) throw DomainError("jet variable out of range");
        return base * levels_per_variable() + (j - first_level_);
    }

    unsigned weight(std::size_t var) const { return first_level_ + static_cast<unsigned>(var % levels_per_variable()); }

    /// Weighted degree of a monomial under wt(x_i^(j)) = j.
    unsigned weight(Monomial const& m) const
    {
        unsigned w = 0;
        for (std::size_t v = 0; v < arity(); ++v) w += m[v] * weight(v);
        return w;
    }

private:
    std::vector<std::string> base_names_;
    unsigned level_;
    unsigned first_level_;
    RingPtr<F> ring_;
};

enum class JetMeaning { full_jet, fiber_over_point, contact };

inline std::string to_string(JetMeaning m)
{
    switch (m) {
    case JetMeaning::full_jet: return "full_jet";
    case JetMeaning::fiber_over_point: return "fiber_over_point";
    case JetMeaning::contact: return "contact";
    }
    return "?";
}

/// Defining ideal of a jet scheme, jet fiber or contact locus.
/// `empty` marks a fiber over a point that does not lie on the variety (no ideal is meaningful then).
template <CoefficientField F>
struct JetSystem {
    JetRing<F> ring;
    IdealPresentation<F> ideal;
    JetMeaning meaning;
    bool empty = false;
};

/// One clause of a contact condition: every generator of `ideal` vanishes to order >= min_order along the arc.
template <CoefficientField F>
struct ContactClause {
    IdealPresentation<F> ideal;
    unsigned min_order;
};

template <CoefficientField F>
struct ContactSpec {
    std::vector<ContactClause<F>> clauses;
    unsigned level;
};

namespace detail {

/// Truncated power series in t with polynomial coefficients.
template <CoefficientField F>
using Series = std::vector<Polynomial<F>>;

template <CoefficientField F>
Series<F> series_multiply(Series<F> const& a, Series<F> const& b)
{
    std::size_t n = a.size();
    Series<F> r(n, Polynomial<F>(a.front().ring()));
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; i + j < n; ++j)
            if (!b[j].is_zero()) r[i + j] += a[i] * b[j];
    }
    return r;
}

/// f(s_1(t), ..., s_N(t)) mod t^{len}, by iterated truncated multiplication.
template <CoefficientField F>
Series<F> compose_series(Polynomial<F> const& f, std::vector<Series<F>> const& base, RingPtr<F> const& target)
{
    std::size_t len = base.empty() ? 1 : base.front().size();
    auto const& k = target->field();
    Series<F> unit(len, Polynomial<F>(target));
    unit[0] = Polynomial<F>::constant(target, k.one());
    std::vector<std::vector<Series<F>>> powers(base.size(), std::vector<Series<F>>{unit});
    auto power = [&](std::size_t i, unsigned e) -> Series<F> const& {
        auto& cache = powers[i];
        while (cache.size() <= e) cache.push_back(series_multiply(cache.back(), base[i]));
        return cache[e];
    };
    Series<F> out(len, Polynomial<F>(target));
    for (auto const& t : f.terms()) {
        Series<F> prod = unit;
        for (auto& c : prod) c = c.scale(k.from_rational(f.field().to_rational(t.coefficient)));
        for (std::size_t i = 0; i < base.size(); ++i)
            if (unsigned e = t.monomial[i]) prod = series_multiply(prod, power(i, e));
        for (std::size_t j = 0; j < len; ++j) out[j] += prod[j];
    }
    return out;
}

/// Series x_i(t) = offset_i + sum_{j >= first_level} x_i^(j) t^j.
template <CoefficientField F>
std::vector<Series<F>> generic_arcs(JetRing<F> const& jr, std::span<typename F::value_type const> offsets)
{
    auto const& ring = jr.ring();
    std::vector<Series<F>> base;
    for (std::size_t i = 0; i < jr.base_arity(); ++i) {
        Series<F> s(jr.level() + 1, Polynomial<F>(ring));
        if (!offsets.empty()) s[0] = Polynomial<F>::constant(ring, offsets[i]);
        for (unsigned j = jr.first_level(); j <= jr.level(); ++j) s[j] = Polynomial<F>::variable(ring, jr.index(i, j));
        base.push_back(std::move(s));
    }
    return base;
}

} // namespace detail

/// Coefficients c_0..c_m of f(sum_j x_i^(j) t^j) mod t^{m+1}; c_k is weighted-homogeneous of weight k.
template <CoefficientField F>
std::vector<Polynomial<F>> expand_truncated(Polynomial<F> const& f, JetRing<F> const& jr)
{
    if (jr.first_level() != 0) throw DomainError("expand_truncated needs a full jet ring");
    if (f.ring()->names() != jr.base_names()) throw DomainError("polynomial is not in the base ring of the jet ring");
    return detail::compose_series(f, detail::generic_arcs(jr, {}), jr.ring());
}

/// Ideal of the fiber of the level-m jet scheme over a point, with the level-0 coordinates substituted.
template <CoefficientField F>
JetSystem<F> jet_fiber_ideal(IdealPresentation<F> const& X, std::span<typename F::value_type const> point, unsigned m)
{
    if (point.size() != X.arity()) throw DomainError("point has wrong number of coordinates");
    auto jr = JetRing<F>::fiber(X.ring->field(), X.ring->names(), m);
    JetSystem<F> sys{jr, IdealPresentation<F>(jr.ring()), JetMeaning::fiber_over_point};
    for (auto const& g : X.generators)
        if (!X.ring->field().is_zero(evaluate(g, point))) {
            sys.empty = true;
            return sys;
        }
    if (m == 0) return sys;
    auto arcs = detail::generic_arcs(jr, point);
    for (auto const& g : X.generators) {
        auto coeffs = detail::compose_series(g, arcs, jr.ring());
        for (unsigned k = 1; k <= m; ++k)
            if (!coeffs[k].is_zero()) sys.ideal.generators.push_back(std::move(coeffs[k]));
    }
    return sys;
}

/// Closed contact locus Cont^{>=r_1}(b_1) ∩ ... at truncation level m, optionally intersected with arcs centred at
/// a point.
template <CoefficientField F>
JetSystem<F> contact_ideal(ContactSpec<F> const& spec, std::vector<std::string> const& base_names, F const& field,
                           std::optional<std::vector<typename F::value_type>> const& point = std::nullopt)
{
    auto jr = JetRing<F>::full(field, base_names, spec.level);
    JetSystem<F> sys{jr, IdealPresentation<F>(jr.ring()), JetMeaning::contact};
    auto arcs = detail::generic_arcs(jr, {});
    for (auto const& clause : spec.clauses) {
        if (clause.min_order > spec.level + 1)
            throw DomainError("contact order " + std::to_string(clause.min_order) + " exceeds truncation level " +
                              std::to_string(spec.level));
        if (clause.ideal.ring->names() != base_names) throw DomainError("contact clause is not in the base ring");
        if (clause.min_order == 0) continue;
        for (auto const& g : clause.ideal.generators) {
            if (g.is_zero()) continue;
            auto coeffs = detail::compose_series(g, arcs, jr.ring());
            for (unsigned k = 0; k < clause.min_order; ++k)
                if (!coeffs[k].is_zero()) sys.ideal.generators.push_back(std::move(coeffs[k]));
        }
    }
    if (point) {
        if (point->size() != base_names.size()) throw DomainError("point has wrong number of coordinates");
        for (std::size_t i = 0; i < base_names.size(); ++i) {
            auto g = Polynomial<F>::variable(jr.ring(), jr.index(i, 0)) -
                     Polynomial<F>::constant(jr.ring(), (*point)[i]);
            sys.ideal.generators.push_back(std::move(g));
        }
    }
    return sys;
}

/// True iff every generator is weighted-homogeneous under wt(x_i^(j)) = j.
template <CoefficientField F>
bool weight_check(JetSystem<F> const& sys)
{
    for (auto const& g : sys.ideal.generators) {
        if (g.is_zero()) continue;
        unsigned w = sys.ring.weight(g.terms().front().monomial);
        for (auto const& t : g.terms())
            if (sys.ring.weight(t.monomial) != w) return false;
    }
    return true;
}

} // namespace jetdisc
