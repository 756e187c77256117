#pragma once

#include <jetdisc/algebra/polynomial.hpp>
#include <jetdisc/error.hpp>

#include <algorithm>
#include <cstdint>
#include <vector>

namespace jetdisc {

struct GroebnerBudget {
    std::size_t max_steps = 2'000'000; ///< reduction steps summed over the whole run
    unsigned max_degree = 64;          ///< largest S-pair lcm degree considered
};

/// Reduced Gröbner basis in graded reverse lexicographic order: monic, inter-reduced, sorted by ascending leading
/// monomial. The unit ideal is {1}; the zero ideal has an empty basis.
template <CoefficientField F>
struct GroebnerBasis {
    RingPtr<F> ring;
    std::vector<Polynomial<F>> basis;

    bool is_unit() const { return basis.size() == 1 && basis.front().is_constant(); }
    bool is_zero_ideal() const { return basis.empty(); }
};

namespace detail {

template <CoefficientField F>
class Buchberger {
public:
    using value_type = typename F::value_type;
    using Terms = std::vector<Term<F>>;

    Buchberger(RingPtr<F> ring, GroebnerBudget budget) : ring_(std::move(ring)), k_(ring_->field()), budget_(budget) {}

    GroebnerBasis<F> run(std::vector<Polynomial<F>> input)
    {
        std::vector<Terms> gens;
        for (auto& g : input)
            if (!g.is_zero()) gens.push_back(make_monic(g.terms()));
        std::sort(gens.begin(), gens.end(), [](Terms const& a, Terms const& b) {
            return grevlex_compare(a.front().monomial, b.front().monomial) < 0;
        });
        for (auto& g : gens) {
            unsigned sugar = max_degree(g);
            auto h = reduce(std::move(g), false, sugar);
            if (h.empty()) continue;
            if (h.front().monomial.is_one()) return unit();
            insert(make_monic(std::move(h)), sugar);
        }
        while (!pairs_.empty()) {
            std::size_t best = 0;
            for (std::size_t i = 1; i < pairs_.size(); ++i)
                if (pair_less(pairs_[i], pairs_[best])) best = i;
            Pair p = pairs_[best];
            pairs_[best] = pairs_.back();
            pairs_.pop_back();
            if (p.lcm.degree() > budget_.max_degree)
                throw BudgetExceeded("Groebner degree cap " + std::to_string(budget_.max_degree) + " exceeded");
            unsigned sugar = p.sugar;
            auto h = reduce(spoly(p), false, sugar);
            if (h.empty()) continue;
            if (h.front().monomial.is_one()) return unit();
            insert(make_monic(std::move(h)), sugar);
        }
        return finish();
    }

    /// Installs a fixed list of monic polynomials as reducers.
    void load(std::vector<Terms> basis)
    {
        for (auto& b : basis) add_entry(std::move(b), 0);
    }

    /// Full normal form with respect to the loaded reducers.
    Terms normal_form(Terms f)
    {
        unsigned sugar = 0;
        return reduce(std::move(f), true, sugar);
    }

private:
    struct Entry {
        Terms poly;
        Monomial lm;
        std::uint64_t mask;
        unsigned sugar;
        bool active;
    };

    struct Pair {
        std::size_t i, j;
        Monomial lcm;
        unsigned sugar;
    };

    static bool pair_less(Pair const& a, Pair const& b)
    {
        if (a.sugar != b.sugar) return a.sugar < b.sugar;
        int c = grevlex_compare(a.lcm, b.lcm);
        if (c != 0) return c < 0;
        if (a.j != b.j) return a.j < b.j;
        return a.i < b.i;
    }

    static unsigned max_degree(Terms const& t)
    {
        unsigned d = 0;
        for (auto const& x : t) d = std::max(d, x.monomial.degree());
        return d;
    }

    Terms make_monic(Terms t) const
    {
        auto inv = k_.inv(t.front().coefficient);
        for (auto& x : t) x.coefficient = k_.mul(x.coefficient, inv);
        return t;
    }

    GroebnerBasis<F> unit() const
    {
        return {ring_, {Polynomial<F>::constant(ring_, k_.one())}};
    }

    void add_entry(Terms poly, unsigned sugar)
    {
        Monomial lm = poly.front().monomial;
        entries_.push_back({std::move(poly), lm, lm.support(), sugar, true});
    }

    /// Index of an active entry whose leading monomial divides m, or npos.
    std::size_t find_reducer(Monomial const& m) const
    {
        std::uint64_t ms = m.support();
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            auto const& e = entries_[i];
            if (e.active && (e.mask & ~ms) == 0 && e.lm.divides(m)) return i;
        }
        return static_cast<std::size_t>(-1);
    }

    void charge()
    {
        if (++steps_ > budget_.max_steps)
            throw BudgetExceeded("Groebner step budget " + std::to_string(budget_.max_steps) + " exceeded");
    }

    /// rest[from..] - c * m * g[1..], merged in descending order. The leading terms are assumed to cancel.
    Terms subtract_multiple(Terms const& rest, std::size_t from, Terms const& g, Monomial const& m,
                            value_type const& c) const
    {
        Terms out;
        out.reserve(rest.size() - from + g.size());
        std::size_t i = from, j = 1;
        while (i < rest.size() || j < g.size()) {
            if (j == g.size()) {
                out.push_back(rest[i++]);
                continue;
            }
            Monomial gm = g[j].monomial * m;
            int cmp = i == rest.size() ? -1 : grevlex_compare(rest[i].monomial, gm);
            if (cmp > 0) {
                out.push_back(rest[i++]);
            } else if (cmp < 0) {
                out.push_back({gm, k_.neg(k_.mul(c, g[j].coefficient))});
                ++j;
            } else {
                auto v = k_.sub(rest[i].coefficient, k_.mul(c, g[j].coefficient));
                if (!k_.is_zero(v)) out.push_back({gm, std::move(v)});
                ++i;
                ++j;
            }
        }
        return out;
    }

    /// Top reduction (full = false) or complete reduction.
    ///
    /// The working polynomial is kept as a heap of lazily expanded streams (f itself and one scaled reducer tail per
    /// reduction step), so a step costs a logarithmic number of comparisons per produced term instead of a copy of the
    /// whole remainder.
    Terms reduce(Terms f, bool full, unsigned& sugar)
    {
        struct Stream {
            Terms const* poly;
            std::size_t idx;
            Monomial mult;
            value_type coef;
        };
        struct Node {
            Monomial m;
            std::size_t stream;
        };
        auto below = [](Node const& x, Node const& y) { return grevlex_compare(x.m, y.m) < 0; };
        std::vector<Stream> streams;
        std::vector<Node> heap;
        auto advance = [&](std::size_t s) {
            auto const& st = streams[s];
            if (st.idx < st.poly->size()) {
                heap.push_back({(*st.poly)[st.idx].monomial * st.mult, s});
                std::push_heap(heap.begin(), heap.end(), below);
            }
        };
        streams.push_back({&f, 0, Monomial{}, k_.one()});
        advance(0);
        Terms out;
        bool reducing = true;
        while (!heap.empty()) {
            Monomial m = heap.front().m;
            value_type c = k_.zero();
            while (!heap.empty() && heap.front().m == m) {
                std::size_t s = heap.front().stream;
                std::pop_heap(heap.begin(), heap.end(), below);
                heap.pop_back();
                auto& st = streams[s];
                c = k_.add(c, k_.mul(st.coef, (*st.poly)[st.idx].coefficient));
                ++st.idx;
                advance(s);
            }
            if (k_.is_zero(c)) continue;
            if (reducing) {
                std::size_t r = find_reducer(m);
                if (r != static_cast<std::size_t>(-1)) {
                    charge();
                    auto const& g = entries_[r];
                    Monomial q = m / g.lm;
                    sugar = std::max(sugar, g.sugar + q.degree());
                    streams.push_back({&g.poly, 1, q, k_.neg(c)});
                    advance(streams.size() - 1);
                    continue;
                }
                if (!full) reducing = false;
            }
            out.push_back({m, std::move(c)});
        }
        return out;
    }

    Terms spoly(Pair const& p) const
    {
        auto const& a = entries_[p.i];
        auto const& b = entries_[p.j];
        Monomial ma = p.lcm / a.lm;
        Monomial mb = p.lcm / b.lm;
        Terms left;
        left.reserve(a.poly.size());
        for (auto const& t : a.poly) left.push_back({t.monomial * ma, t.coefficient});
        return subtract_multiple(left, 1, b.poly, mb, k_.one());
    }

    /// Adds a new basis element and updates the pair set with the Gebauer-Moeller criteria.
    void insert(Terms h, unsigned sugar)
    {
        std::size_t hi = entries_.size();
        add_entry(std::move(h), sugar);
        Monomial const hlm = entries_[hi].lm;

        // Candidate pairs with every active element.
        std::vector<Pair> fresh;
        for (std::size_t i = 0; i < hi; ++i) {
            if (!entries_[i].active) continue;
            Monomial l = lcm(entries_[i].lm, hlm);
            unsigned s = std::max(entries_[i].sugar + (l.degree() - entries_[i].lm.degree()),
                                  sugar + (l.degree() - hlm.degree()));
            fresh.push_back({i, hi, l, s});
        }
        // Chain criterion on the new pairs: drop (i,h) if lcm(i,h) is a proper multiple of some lcm(j,h).
        std::vector<bool> keep(fresh.size(), true);
        for (std::size_t a = 0; a < fresh.size(); ++a)
            for (std::size_t b = 0; b < fresh.size() && keep[a]; ++b) {
                if (a == b || !keep[b]) continue;
                if (fresh[b].lcm.divides(fresh[a].lcm) && !(fresh[b].lcm == fresh[a].lcm)) keep[a] = false;
            }
        // Among pairs with equal lcm keep one; drop all of that lcm class if any member has coprime leading monomials.
        std::vector<Pair> chosen;
        for (std::size_t a = 0; a < fresh.size(); ++a) {
            if (!keep[a]) continue;
            bool has_coprime = false;
            bool first = true;
            for (std::size_t b = 0; b < fresh.size(); ++b) {
                if (!keep[b] || !(fresh[b].lcm == fresh[a].lcm)) continue;
                if (b < a) first = false;
                if (coprime(entries_[fresh[b].i].lm, hlm)) has_coprime = true;
            }
            if (first && !has_coprime) chosen.push_back(fresh[a]);
        }
        // Old pairs whose lcm is strictly divisible by the new leading monomial in the required sense.
        std::vector<Pair> kept;
        kept.reserve(pairs_.size() + chosen.size());
        for (auto const& p : pairs_) {
            bool drop = hlm.divides(p.lcm) && !(lcm(entries_[p.i].lm, hlm) == p.lcm) &&
                        !(lcm(entries_[p.j].lm, hlm) == p.lcm);
            if (!drop) kept.push_back(p);
        }
        for (auto& p : chosen) kept.push_back(p);
        pairs_ = std::move(kept);
        // Elements whose leading monomial is a multiple of the new one are no longer needed as reducers.
        for (std::size_t i = 0; i < hi; ++i)
            if (entries_[i].active && hlm.divides(entries_[i].lm)) entries_[i].active = false;
    }

    GroebnerBasis<F> finish()
    {
        std::vector<std::size_t> active;
        for (std::size_t i = 0; i < entries_.size(); ++i)
            if (entries_[i].active) active.push_back(i);
        std::vector<Terms> reduced;
        for (std::size_t i : active) {
            entries_[i].active = false;
            unsigned s = 0;
            auto r = reduce(entries_[i].poly, true, s);
            entries_[i].active = true;
            reduced.push_back(make_monic(std::move(r)));
        }
        std::sort(reduced.begin(), reduced.end(), [](Terms const& a, Terms const& b) {
            return grevlex_compare(a.front().monomial, b.front().monomial) < 0;
        });
        GroebnerBasis<F> gb{ring_, {}};
        for (auto& r : reduced) gb.basis.push_back(Polynomial<F>::from_sorted_terms(ring_, std::move(r)));
        return gb;
    }

    RingPtr<F> ring_;
    F const& k_;
    GroebnerBudget budget_;
    std::vector<Entry> entries_;
    std::vector<Pair> pairs_;
    std::size_t steps_ = 0;
};

} // namespace detail

template <CoefficientField F>
GroebnerBasis<F> groebner_basis(IdealPresentation<F> const& ideal, GroebnerBudget budget = {})
{
    return detail::Buchberger<F>(ideal.ring, budget).run(ideal.generators);
}

/// Division by a fixed Gröbner basis; loads the basis once for repeated queries.
template <CoefficientField F>
class NormalForm {
public:
    explicit NormalForm(GroebnerBasis<F> const& gb)
        : ring_(gb.ring), engine_(gb.ring, GroebnerBudget{static_cast<std::size_t>(-1), ~0u})
    {
        std::vector<std::vector<Term<F>>> basis;
        for (auto const& g : gb.basis) basis.push_back(g.monic().terms());
        engine_.load(std::move(basis));
    }

    Polynomial<F> operator()(Polynomial<F> const& f)
    {
        if (f.is_zero()) return f;
        return Polynomial<F>::from_sorted_terms(ring_, engine_.normal_form(f.terms()));
    }

private:
    RingPtr<F> ring_;
    detail::Buchberger<F> engine_;
};

/// Remainder of f on division by the basis; zero iff f lies in the ideal.
template <CoefficientField F>
Polynomial<F> normal_form(Polynomial<F> const& f, GroebnerBasis<F> const& gb)
{
    return NormalForm<F>(gb)(f);
}

template <CoefficientField F>
bool ideal_member(Polynomial<F> const& f, GroebnerBasis<F> const& gb)
{
    return normal_form(f, gb).is_zero();
}

/// Buchberger criterion checked directly: every S-polynomial of the basis reduces to zero. Pairs with coprime
/// leading monomials are included, not skipped.
template <CoefficientField F>
bool satisfies_buchberger(GroebnerBasis<F> const& gb)
{
    auto const& k = gb.ring->field();
    NormalForm<F> nf(gb);
    for (std::size_t i = 0; i < gb.basis.size(); ++i)
        for (std::size_t j = i + 1; j < gb.basis.size(); ++j) {
            auto const& a = gb.basis[i];
            auto const& b = gb.basis[j];
            Monomial l = lcm(a.leading_monomial(), b.leading_monomial());
            auto s = a.scale_monomial(l / a.leading_monomial(), k.inv(a.leading_coefficient())) -
                     b.scale_monomial(l / b.leading_monomial(), k.inv(b.leading_coefficient()));
            if (!nf(s).is_zero()) return false;
        }
    return true;
}

/// True iff the basis is reduced: monic, and no term of any element is divisible by another element's leading
/// monomial.
template <CoefficientField F>
bool is_reduced(GroebnerBasis<F> const& gb)
{
    auto const& k = gb.ring->field();
    for (std::size_t i = 0; i < gb.basis.size(); ++i) {
        if (gb.basis[i].is_zero() || !(gb.basis[i].leading_coefficient() == k.one())) return false;
        for (std::size_t j = 0; j < gb.basis.size(); ++j) {
            if (i == j) continue;
            for (auto const& t : gb.basis[i].terms())
                if (gb.basis[j].leading_monomial().divides(t.monomial)) return false;
        }
    }
    return true;
}

} // namespace jetdisc
