#pragma once

#include <jetdisc/algebra/ideal_ops.hpp>
#include <jetdisc/algebra/linear.hpp>
#include <jetdisc/dimension/dimension.hpp>
#include <jetdisc/mld/mld.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace jetdisc {

/// The single generator behind every random choice: mt19937_64 seeded with the job seed. Bounded draws use a plain
/// modulus so sequences are identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    std::uint32_t below(std::uint32_t bound) { return static_cast<std::uint32_t>(engine_() % bound); }

private:
    std::mt19937_64 engine_;
};

namespace detail {

/// Minimal polynomial (coefficients c_0..c_k, monic) of variable v in k[x]/J for a zero-dimensional J, or nullopt if
/// no relation of degree <= max_degree exists.
inline std::optional<std::vector<std::uint32_t>> minimal_polynomial(GroebnerBasis<PrimeField> const& gb, std::size_t v,
                                                                   unsigned max_degree = 64)
{
    auto const& ring = gb.ring;
    auto const& k = ring->field();
    NormalForm<PrimeField> nf(gb);
    auto x = Polynomial<PrimeField>::variable(ring, v);
    std::vector<Polynomial<PrimeField>> powers{nf(Polynomial<PrimeField>::constant(ring, k.one()))};
    for (unsigned deg = 1; deg <= max_degree; ++deg) {
        powers.push_back(nf(powers.back() * x));
        // Columns p_0..p_{deg-1} and the target -p_deg, rows indexed by the monomials that occur.
        std::vector<Monomial> monos;
        for (auto const& p : powers)
            for (auto const& t : p.terms())
                if (std::find(monos.begin(), monos.end(), t.monomial) == monos.end()) monos.push_back(t.monomial);
        Matrix<PrimeField> m(k, monos.size(), deg + 1);
        for (std::size_t c = 0; c <= deg; ++c)
            for (auto const& t : powers[c].terms()) {
                auto r = static_cast<std::size_t>(std::find(monos.begin(), monos.end(), t.monomial) - monos.begin());
                m(r, c) = c == deg ? k.neg(t.coefficient) : t.coefficient;
            }
        Matrix<PrimeField> reduced = m;
        std::size_t rk_aug = row_reduce(k, reduced);
        Matrix<PrimeField> lhs(k, monos.size(), deg);
        for (std::size_t r = 0; r < monos.size(); ++r)
            for (std::size_t c = 0; c < deg; ++c) lhs(r, c) = m(r, c);
        if (rank(k, lhs) != rk_aug) continue;
        // Consistent: read the solution from the reduced echelon form (pivot columns only).
        std::vector<std::uint32_t> coeffs(deg + 1, 0);
        coeffs[deg] = 1;
        for (std::size_t r = 0; r < rk_aug; ++r) {
            std::size_t pivot = 0;
            while (pivot < deg && k.is_zero(reduced(r, pivot))) ++pivot;
            if (pivot < deg) coeffs[pivot] = reduced(r, deg);
        }
        return coeffs;
    }
    return std::nullopt;
}

inline std::uint32_t eval_univariate(PrimeField const& k, std::vector<std::uint32_t> const& c, std::uint32_t a)
{
    std::uint32_t acc = 0;
    for (std::size_t i = c.size(); i-- > 0;) acc = k.add(k.mul(acc, a), c[i]);
    return acc;
}

} // namespace detail

struct SampledPoint {
    std::vector<std::uint32_t> point;
    unsigned attempts = 0;
};

/// A random closed point of V over F_q that is a smooth point of V.
///
/// Coordinates in a maximal independent set of the leading-term ideal are drawn at random; each remaining coordinate
/// is a random root of its minimal polynomial over the ideal fixed so far.
inline SampledPoint sample_smooth_point(IdealPresentation<PrimeField> const& V, Rng& rng, unsigned max_attempts = 20,
                                        GroebnerBudget budget = {})
{
    auto const& ring = V.ring;
    auto const& k = ring->field();
    std::uint32_t q = k.modulus();
    auto gb = groebner_basis(V, budget);
    if (gb.is_unit()) throw DomainError("subvariety is empty");
    std::uint64_t free = independent_set(gb);
    int dim = std::popcount(free);
    std::size_t n = ring->arity();
    for (unsigned attempt = 1; attempt <= max_attempts; ++attempt) {
        IdealPresentation<PrimeField> J = V;
        std::vector<std::uint32_t> point(n, 0);
        for (std::size_t v = 0; v < n; ++v)
            if (free >> v & 1) {
                point[v] = rng.below(q);
                J.generators.push_back(Polynomial<PrimeField>::variable(ring, v) -
                                       Polynomial<PrimeField>::constant(ring, point[v]));
            }
        bool ok = true;
        for (std::size_t v = 0; v < n && ok; ++v) {
            if (free >> v & 1) continue;
            auto gj = groebner_basis(J, budget);
            if (gj.is_unit()) {
                ok = false;
                break;
            }
            auto mp = detail::minimal_polynomial(gj, v);
            if (!mp) {
                ok = false;
                break;
            }
            std::vector<std::uint32_t> roots;
            for (std::uint32_t a = 0; a < q; ++a)
                if (detail::eval_univariate(k, *mp, a) == 0) roots.push_back(a);
            if (roots.empty()) {
                ok = false;
                break;
            }
            point[v] = roots[rng.below(static_cast<std::uint32_t>(roots.size()))];
            J.generators.push_back(Polynomial<PrimeField>::variable(ring, v) -
                                   Polynomial<PrimeField>::constant(ring, point[v]));
        }
        if (!ok) continue;
        bool on_v = true;
        for (auto const& g : V.generators) on_v = on_v && evaluate(g, std::span<std::uint32_t const>(point)) == 0;
        if (!on_v) continue;
        std::size_t codim = n - static_cast<std::size_t>(dim);
        if (codim > 0 && (V.generators.empty() ||
                          jacobian_rank_at(V, std::span<std::uint32_t const>(point)) != codim))
            continue;
        return {point, attempt};
    }
    throw Error("failed to sample a smooth point of the subvariety within " + std::to_string(max_attempts) +
                " attempts");
}

struct GenericPointReport {
    std::uint32_t prime = 0;
    SampledPoint first, second;
    SSequence seq_first, seq_second;
    bool disagree = false;

    SSequence const& sequence() const { return seq_first; }
};

/// s-sequence at a sampled general point of V ⊂ X, computed over F_q (q = 32003 for characteristic-0 jobs), with a
/// second independent sample as a replication check.
template <CoefficientField F>
GenericPointReport generic_point_s_sequence(VarietyJob<F> const& job, IdealPresentation<F> const& V, unsigned M,
                                            std::uint64_t seed, DimensionConfig const& cfg = {})
{
    std::uint32_t q = job.X.ring->field().characteristic() == 0 ? kSurrogatePrime : job.X.ring->field().characteristic();
    auto ring = make_ring(PrimeField(q), job.X.ring->names());
    auto Xq = map_coefficients(job.X, ring);
    auto Vq = map_coefficients(V, ring);
    Rng rng(seed);
    GenericPointReport rep;
    rep.prime = q;
    auto run = [&](SampledPoint& sp, SSequence& seq) {
        sp = sample_smooth_point(Vq, rng, 20, cfg.groebner);
        VarietyJob<PrimeField> at{Xq, job.d, sp.point};
        if (!point_on_variety(at)) throw DomainError("subvariety is not contained in the variety");
        seq = s_sequence(at, M, cfg);
    };
    run(rep.first, rep.seq_first);
    run(rep.second, rep.seq_second);
    rep.disagree = rep.seq_first.values() != rep.seq_second.values();
    return rep;
}

// --------------------------------------------------------------------------------------------------------------------
// Sweep over a corpus: at which level does the s-sequence reach its minimum?
// --------------------------------------------------------------------------------------------------------------------

struct SweepRow {
    std::string name;
    int d = 0;
    std::optional<MldValue> delta;       ///< truncated minimum (-inf when negative)
    std::optional<unsigned> first_level; ///< first m attaining the minimum, or first negative m
    bool negative = false;
    std::vector<int> values;
};

inline SweepRow sweep_row(std::string name, SSequence const& seq)
{
    SweepRow row{std::move(name), seq.d, std::nullopt, std::nullopt, false, seq.values()};
    auto mn = seq.minimum();
    if (!mn) return row;
    row.negative = *mn < 0;
    row.delta = row.negative && seq.d >= 2 ? MldValue::neg_inf() : MldValue::of(*mn);
    for (auto const& l : seq.levels) {
        if (!l.s) continue;
        if ((row.negative && *l.s < 0) || (!row.negative && *l.s == *mn)) {
            row.first_level = l.m;
            break;
        }
    }
    return row;
}

struct SweepSummary {
    int d = 0;
    std::string delta;
    std::size_t jobs = 0;
    unsigned max_first_level = 0;
};

/// Empirical bound per (d, δ): the largest first-minimum level seen.
inline std::vector<SweepSummary> summarize_sweep(std::vector<SweepRow> const& rows)
{
    std::vector<SweepSummary> out;
    for (auto const& r : rows) {
        if (!r.delta || !r.first_level) continue;
        std::string delta = r.delta->to_string();
        auto it = std::find_if(out.begin(), out.end(), [&](SweepSummary const& s) { return s.d == r.d && s.delta == delta; });
        if (it == out.end()) {
            out.push_back({r.d, delta, 0, 0});
            it = out.end() - 1;
        }
        ++it->jobs;
        it->max_first_level = std::max(it->max_first_level, *r.first_level);
    }
    std::sort(out.begin(), out.end(), [](SweepSummary const& a, SweepSummary const& b) {
        return a.d != b.d ? a.d < b.d : a.delta < b.delta;
    });
    return out;
}

} // namespace jetdisc
