#pragma once

#include <jetdisc/algebra/field.hpp>
#include <jetdisc/algebra/polynomial.hpp>
#include <jetdisc/dimension/groebner.hpp>
#include <jetdisc/error.hpp>

#include <gmpxx.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace jetdisc {

enum class DimMethod { groebner, point_count };

inline std::string to_string(DimMethod m) { return m == DimMethod::groebner ? "groebner" : "point_count"; }

/// Dimension of V(I) in affine space. dim = -1 encodes the empty variety; its codim is then arity + 1.
struct DimResult {
    int dim = -1;
    int codim = 0;
    DimMethod method = DimMethod::groebner;

    static DimResult make(int dim, std::size_t arity, DimMethod method)
    {
        int n = static_cast<int>(arity);
        return {dim, dim >= 0 ? n - dim : n + 1, method};
    }
};

namespace detail {

/// Smallest set of variables meeting every mask (minimum hitting set), by branch and bound.
class HittingSet {
public:
    explicit HittingSet(std::vector<std::uint64_t> sets)
    {
        std::sort(sets.begin(), sets.end(),
                  [](std::uint64_t a, std::uint64_t b) { return std::popcount(a) < std::popcount(b) || (std::popcount(a) == std::popcount(b) && a < b); });
        // Supersets of another set are hit automatically.
        for (auto s : sets) {
            bool dominated = false;
            for (auto t : sets_)
                if ((t & s) == t) {
                    dominated = true;
                    break;
                }
            if (!dominated) sets_.push_back(s);
        }
    }

    std::uint64_t solve()
    {
        best_size_ = 65;
        search(0, 0);
        return best_;
    }

private:
    void search(std::uint64_t chosen, int size)
    {
        if (size >= best_size_) return;
        for (auto s : sets_) {
            if (s & chosen) continue;
            // Lower bound: disjoint unhit sets each need their own variable.
            int bound = 0;
            std::uint64_t used = chosen;
            for (auto t : sets_)
                if (!(t & used)) {
                    ++bound;
                    used |= t;
                }
            if (size + bound >= best_size_) return;
            for (std::uint64_t rest = s; rest; rest &= rest - 1) search(chosen | (rest & -rest), size + 1);
            return;
        }
        best_size_ = size;
        best_ = chosen;
    }

    std::vector<std::uint64_t> sets_;
    std::uint64_t best_ = 0;
    int best_size_ = 65;
};

} // namespace detail

/// A largest set of variables containing no leading-monomial support (a maximal independent set of the leading-term
/// ideal), as a bitmask. Empty for the unit ideal.
template <CoefficientField F>
std::uint64_t independent_set(GroebnerBasis<F> const& gb)
{
    std::size_t n = gb.ring->arity();
    std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    if (gb.is_unit()) return 0;
    std::vector<std::uint64_t> supports;
    for (auto const& g : gb.basis) supports.push_back(g.leading_monomial().support());
    return all & ~detail::HittingSet(std::move(supports)).solve();
}

template <CoefficientField F>
int dimension_of(GroebnerBasis<F> const& gb)
{
    if (gb.is_unit()) return -1;
    return std::popcount(independent_set(gb));
}

template <CoefficientField F>
DimResult krull_dim(IdealPresentation<F> const& ideal, GroebnerBudget budget = {})
{
    return DimResult::make(dimension_of(groebner_basis(ideal, budget)), ideal.arity(), DimMethod::groebner);
}

// --------------------------------------------------------------------------------------------------------------------
// Point counting over F_q
// --------------------------------------------------------------------------------------------------------------------

namespace detail {

class PointCounter {
public:
    struct Term {
        std::uint32_t coefficient;
        std::vector<std::pair<std::size_t, unsigned>> powers;
    };

    PointCounter(std::vector<std::vector<Term>> gens, std::size_t arity, std::uint32_t q, std::uint64_t budget)
        : gens_(std::move(gens)), k_(q), q_(q), budget_(budget), value_(arity, 0)
    {
        // Greedy order: repeatedly complete the generator with the fewest unassigned variables.
        std::vector<std::uint64_t> vars;
        std::uint64_t involved = 0;
        for (auto const& g : gens_) {
            std::uint64_t m = 0;
            for (auto const& t : g)
                for (auto [v, e] : t.powers) m |= std::uint64_t{1} << v;
            vars.push_back(m);
            involved |= m;
        }
        free_ = static_cast<unsigned>(arity) - static_cast<unsigned>(std::popcount(involved));
        std::uint64_t assigned = 0;
        std::vector<bool> placed(gens_.size(), false);
        std::vector<std::size_t> checks_at_level;
        while (assigned != involved) {
            std::size_t pick = 0;
            int best = 65;
            for (std::size_t i = 0; i < gens_.size(); ++i) {
                int missing = std::popcount(vars[i] & ~assigned);
                if (!placed[i] && missing > 0 && missing < best) {
                    best = missing;
                    pick = i;
                }
            }
            for (std::uint64_t rest = vars[pick] & ~assigned; rest; rest &= rest - 1) {
                order_.push_back(static_cast<std::size_t>(std::countr_zero(rest)));
                assigned |= rest & -rest;
                checks_.emplace_back();
                for (std::size_t i = 0; i < gens_.size(); ++i)
                    if (!placed[i] && (vars[i] & ~assigned) == 0) {
                        placed[i] = true;
                        checks_.back().push_back(i);
                    }
            }
        }
        for (std::size_t i = 0; i < gens_.size(); ++i)
            if (!placed[i]) constant_checks_.push_back(i);
    }

    mpz_class count()
    {
        for (auto i : constant_checks_)
            if (eval(i) != 0) return 0;
        mpz_class solutions = search(0);
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), q_, free_);
        return solutions * scale;
    }

private:
    std::uint32_t eval(std::size_t g) const
    {
        std::uint32_t acc = 0;
        for (auto const& t : gens_[g]) {
            std::uint32_t v = t.coefficient;
            for (auto [var, e] : t.powers) v = k_.mul(v, k_.pow(value_[var], e));
            acc = k_.add(acc, v);
        }
        return acc;
    }

    mpz_class search(std::size_t depth)
    {
        if (depth == order_.size()) return 1;
        mpz_class total = 0;
        std::size_t var = order_[depth];
        for (std::uint32_t a = 0; a < q_; ++a) {
            if (++nodes_ > budget_)
                throw BudgetExceeded("point-count enumeration budget " + std::to_string(budget_) + " exceeded");
            value_[var] = a;
            bool ok = true;
            for (auto g : checks_[depth])
                if (eval(g) != 0) {
                    ok = false;
                    break;
                }
            if (ok) total += search(depth + 1);
        }
        value_[var] = 0;
        return total;
    }

    std::vector<std::vector<Term>> gens_;
    PrimeField k_;
    std::uint32_t q_;
    std::uint64_t budget_;
    std::vector<std::uint32_t> value_;
    std::vector<std::size_t> order_;
    std::vector<std::vector<std::size_t>> checks_;
    std::vector<std::size_t> constant_checks_;
    unsigned free_ = 0;
    std::uint64_t nodes_ = 0;
};

} // namespace detail

inline constexpr std::uint64_t kDefaultCountBudget = 10'000'000;

/// Exact number of F_q-points of V(I), by pruned exhaustive enumeration. Variables that occur in no generator
/// contribute a factor q each without being enumerated; the budget bounds the number of enumeration nodes.
template <CoefficientField F>
mpz_class count_points(IdealPresentation<F> const& ideal, std::uint32_t q, std::uint64_t budget = kDefaultCountBudget)
{
    PrimeField fq(q);
    auto const& k = ideal.ring->field();
    if (k.characteristic() != 0 && k.characteristic() != q)
        throw DomainError("cannot count points of an F_" + std::to_string(k.characteristic()) + " system over F_" +
                          std::to_string(q));
    std::vector<std::vector<detail::PointCounter::Term>> gens;
    for (auto const& g : ideal.generators) {
        std::vector<detail::PointCounter::Term> terms;
        for (auto const& t : g.terms()) {
            auto c = fq.from_rational(k.to_rational(t.coefficient));
            if (c == 0) continue;
            detail::PointCounter::Term term{c, {}};
            for (std::size_t v = 0; v < ideal.arity(); ++v)
                if (unsigned e = t.monomial[v]) term.powers.emplace_back(v, e);
            terms.push_back(std::move(term));
        }
        if (!terms.empty()) gens.push_back(std::move(terms));
    }
    return detail::PointCounter(std::move(gens), ideal.arity(), q, budget).count();
}

struct CountDimension {
    int dim = -1;
    bool reliable = true;
    double slope = 0;
};

/// Dimension read off point counts: the rounded least-squares slope of log N_q against log q.
/// Flagged unreliable when the slope is more than 0.2 away from the integer.
inline CountDimension dim_from_counts(std::vector<std::pair<std::uint32_t, mpz_class>> const& counts)
{
    if (counts.size() < 3) throw DomainError("dimension from counts needs at least 3 primes");
    std::size_t zeros = 0;
    for (auto const& [q, n] : counts) zeros += n == 0;
    if (zeros == counts.size()) return {-1, true, 0};
    if (zeros != 0) throw DomainError("inconsistent counts: some primes give no points and others do");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    double n = static_cast<double>(counts.size());
    for (auto const& [q, c] : counts) {
        double x = std::log(static_cast<double>(q));
        double y = std::log(c.get_d());
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    int dim = static_cast<int>(std::lround(slope));
    return {dim, std::abs(slope - dim) <= 0.2, slope};
}

// --------------------------------------------------------------------------------------------------------------------
// Dimension policy: which engine produces the number, and how it is cross-checked.
// --------------------------------------------------------------------------------------------------------------------

enum class Oracle { groebner, count, both };

inline std::string to_string(Oracle o)
{
    switch (o) {
    case Oracle::groebner: return "groebner";
    case Oracle::count: return "count";
    case Oracle::both: return "both";
    }
    return "?";
}

inline Oracle parse_oracle(std::string const& s)
{
    if (s == "groebner") return Oracle::groebner;
    if (s == "count") return Oracle::count;
    if (s == "both") return Oracle::both;
    throw DomainError("unknown oracle '" + s + "' (expected groebner, count or both)");
}

struct DimensionConfig {
    Oracle oracle = Oracle::both;
    GroebnerBudget groebner{};
    std::uint64_t count_budget = kDefaultCountBudget;
    std::vector<std::uint32_t> primes{5, 7, 11, 13};
    std::size_t count_max_arity = 8; ///< point counts are only attempted up to this many variables
};

/// A dimension together with the path that produced it.
///
/// `method` names the engine and field, e.g. "groebner[F_32003]", "groebner[Q]" or "point_count".
/// `oracle` is "agree", "disagree", "skipped" or "unreliable".
struct DimensionOutcome {
    DimResult result;
    std::string method;
    std::string oracle = "skipped";
    std::optional<int> count_dim;
};

namespace detail {

template <CoefficientField F>
std::optional<CountDimension> counted_dimension(IdealPresentation<F> const& ideal, DimensionConfig const& cfg)
{
    if (ideal.ring->field().characteristic() != 0 || ideal.arity() > cfg.count_max_arity) return std::nullopt;
    std::vector<std::pair<std::uint32_t, mpz_class>> counts;
    for (auto q : cfg.primes) {
        try {
            counts.emplace_back(q, count_points(ideal, q, cfg.count_budget));
        } catch (DomainError const&) {
            // A prime dividing a denominator is a bad prime for this system; skip it.
        }
    }
    if (counts.size() < 3) return std::nullopt;
    return dim_from_counts(counts);
}

} // namespace detail

/// Dimension of V(I) under the configured policy.
///
/// Over Q the Gröbner computation runs over F_32003 and is recomputed exactly over Q when the point-count oracle
/// disagrees (or when 32003 divides a denominator). Over F_p the Gröbner engine runs in F_p and no count oracle is
/// available, because counts over a single prime field do not determine a slope.
template <CoefficientField F>
DimensionOutcome compute_dimension(IdealPresentation<F> const& ideal, DimensionConfig const& cfg = {})
{
    DimensionOutcome out;
    bool rational = ideal.ring->field().characteristic() == 0;
    if (cfg.oracle == Oracle::count) {
        auto c = detail::counted_dimension(ideal, cfg);
        if (!c) throw DomainError("point-count oracle unavailable for this system (characteristic p or too many variables)");
        out.result = DimResult::make(c->dim, ideal.arity(), DimMethod::point_count);
        out.method = "point_count";
        out.oracle = c->reliable ? "agree" : "unreliable";
        out.count_dim = c->dim;
        return out;
    }

    auto exact = [&] {
        out.result = krull_dim(ideal, cfg.groebner);
        out.method = "groebner[" + ideal.ring->field().spec().to_string() + "]";
    };
    if (rational) {
        try {
            auto surrogate = make_ring(PrimeField(kSurrogatePrime), ideal.ring->names());
            out.result = krull_dim(map_coefficients(ideal, surrogate), cfg.groebner);
            out.method = "groebner[F_" + std::to_string(kSurrogatePrime) + "]";
        } catch (DomainError const&) {
            exact();
        }
    } else {
        exact();
    }
    if (cfg.oracle == Oracle::both && rational) {
        auto c = detail::counted_dimension(ideal, cfg);
        if (c) {
            out.count_dim = c->dim;
            if (!c->reliable) {
                out.oracle = "unreliable";
            } else if (c->dim == out.result.dim) {
                out.oracle = "agree";
            } else if (out.method != "groebner[Q]") {
                exact();
                out.oracle = c->dim == out.result.dim ? "agree" : "disagree";
            } else {
                out.oracle = "disagree";
            }
        }
    }
    return out;
}

} // namespace jetdisc
