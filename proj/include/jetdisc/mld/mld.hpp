#pragma once

#include <jetdisc/algebra/ideal_ops.hpp>
#include <jetdisc/algebra/polynomial.hpp>
#include <jetdisc/dimension/dimension.hpp>
#include <jetdisc/error.hpp>
#include <jetdisc/jets/jets.hpp>

#include <gmpxx.h>

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace jetdisc {

/// Default truncation level: the threshold certificate needs s_0..s_5.
inline constexpr unsigned kDefaultMaxLevel = 5;
inline constexpr unsigned kThresholdLevels = 5;

/// An affine variety X = V(I) ⊂ A^N of dimension d together with a closed point of X.
template <CoefficientField F>
struct VarietyJob {
    IdealPresentation<F> X;
    int d;
    std::vector<typename F::value_type> point;

    std::size_t ambient_arity() const { return X.arity(); }
    std::span<typename F::value_type const> point_span() const { return point; }

    void validate() const
    {
        if (point.size() != X.arity()) throw DomainError("point has wrong number of coordinates");
        if (d < 0 || static_cast<std::size_t>(d) > X.arity()) throw DomainError("declared dimension out of range");
    }
};

template <CoefficientField F>
bool point_on_variety(VarietyJob<F> const& job)
{
    auto const& k = job.X.ring->field();
    for (auto const& g : job.X.generators)
        if (!k.is_zero(evaluate(g, job.point_span()))) return false;
    return true;
}

/// X is smooth of dimension d at the point iff the Jacobian there has rank N - d.
template <CoefficientField F>
bool jacobian_full_rank(VarietyJob<F> const& job)
{
    std::size_t c = job.ambient_arity() - static_cast<std::size_t>(job.d);
    if (c == 0) return true;
    if (job.X.generators.empty()) return false;
    return jacobian_rank_at(job.X, job.point_span()) == c;
}

// --------------------------------------------------------------------------------------------------------------------
// Values
// --------------------------------------------------------------------------------------------------------------------

/// A minimal log discrepancy: a rational number or minus infinity.
struct MldValue {
    bool minus_infinity = false;
    mpq_class value = 0;

    static MldValue neg_inf() { return {true, 0}; }
    static MldValue of(mpq_class v) { return {false, std::move(v)}; }

    std::string to_string() const { return minus_infinity ? "-inf" : value.get_str(); }

    friend bool operator==(MldValue const& a, MldValue const& b)
    {
        return a.minus_infinity == b.minus_infinity && (a.minus_infinity || a.value == b.value);
    }
    friend bool operator<(MldValue const& a, MldValue const& b)
    {
        if (a.minus_infinity) return !b.minus_infinity;
        if (b.minus_infinity) return false;
        return a.value < b.value;
    }
    friend bool operator<=(MldValue const& a, MldValue const& b) { return a < b || a == b; }
};

enum class Flag { yes, no, unknown };

inline std::string to_string(Flag f)
{
    switch (f) {
    case Flag::yes: return "yes";
    case Flag::no: return "no";
    case Flag::unknown: return "unknown";
    }
    return "?";
}

/// Certificate names recorded in reports.
namespace certificate {
inline constexpr char const* negative_value = "negative_value"; ///< some truncated value is negative: -inf
inline constexpr char const* top_threshold = "top_threshold";   ///< s_m >= d-1 for m <= 5 and the minimum is d-1
inline constexpr char const* smooth_point = "smooth_point";     ///< minimum d and full-rank Jacobian
inline constexpr char const* truncated = "truncated";           ///< upper bound only
} // namespace certificate

// --------------------------------------------------------------------------------------------------------------------
// s-sequence
// --------------------------------------------------------------------------------------------------------------------

struct SLevel {
    unsigned m = 0;
    int fiber_dim = -1; ///< -1: empty fiber
    std::optional<int> s;
    std::string method;
    std::string oracle;
};

struct SSequence {
    int d = 0;
    unsigned M = 0;
    std::vector<SLevel> levels;
    bool empty = false;   ///< the point is not on X
    bool partial = false; ///< a budget stopped the computation before level M
    std::string partial_reason;

    std::vector<int> values() const
    {
        std::vector<int> v;
        for (auto const& l : levels)
            if (l.s) v.push_back(*l.s);
        return v;
    }

    std::vector<int> dims() const
    {
        std::vector<int> v;
        for (auto const& l : levels) v.push_back(l.fiber_dim);
        return v;
    }

    std::optional<int> minimum() const
    {
        auto v = values();
        if (v.empty()) return std::nullopt;
        return *std::min_element(v.begin(), v.end());
    }
};

/// s_m = (m+1)d - dim π_m^{-1}(x) for m = 0..M.
template <CoefficientField F>
SSequence s_sequence(VarietyJob<F> const& job, unsigned M, DimensionConfig const& cfg = {})
{
    job.validate();
    SSequence seq;
    seq.d = job.d;
    seq.M = M;
    if (!point_on_variety(job)) {
        seq.empty = true;
        for (unsigned m = 0; m <= M; ++m) seq.levels.push_back({m, -1, std::nullopt, "empty", "skipped"});
        return seq;
    }
    for (unsigned m = 0; m <= M; ++m) {
        try {
            auto sys = jet_fiber_ideal(job.X, job.point_span(), m);
            auto dim = compute_dimension(sys.ideal, cfg);
            seq.levels.push_back({m, dim.result.dim, static_cast<int>(m + 1) * job.d - dim.result.dim, dim.method,
                                  dim.oracle});
        } catch (BudgetExceeded const& e) {
            seq.partial = true;
            seq.partial_reason = "level " + std::to_string(m) + ": " + e.what();
            break;
        }
    }
    return seq;
}

// --------------------------------------------------------------------------------------------------------------------
// MJ minimal log discrepancy at a closed point
// --------------------------------------------------------------------------------------------------------------------

struct MldReport {
    SSequence seq;
    std::optional<MldValue> estimate; ///< absent when nothing was computed (empty fiber)
    bool exact = false;
    std::string certificate = certificate::truncated;
    Flag mj_canonical = Flag::unknown;
    Flag mj_log_canonical = Flag::unknown;
    std::vector<std::string> notes;
};

namespace detail {

inline void set_canonicity(MldReport& r)
{
    if (!r.estimate) return;
    auto const& v = *r.estimate;
    if (r.exact) {
        r.mj_canonical = !v.minus_infinity && v.value >= 1 ? Flag::yes : Flag::no;
        r.mj_log_canonical = !v.minus_infinity && v.value >= 0 ? Flag::yes : Flag::no;
        return;
    }
    // A truncated minimum only bounds the mld from above.
    r.mj_canonical = v < MldValue::of(1) ? Flag::no : Flag::unknown;
    r.mj_log_canonical = v < MldValue::of(0) ? Flag::no : Flag::unknown;
}

/// Shared certificate logic for a list of truncated values v_0..v_M that bound the mld from above.
/// `threshold_ok` says whether levels 0..5 are all present.
inline void certify(MldReport& r, std::vector<int> const& values, int d, bool smooth, bool negativity_allowed)
{
    if (values.empty()) return;
    int mn = *std::min_element(values.begin(), values.end());
    r.estimate = MldValue::of(mn);
    if (mn < 0) {
        if (negativity_allowed) {
            r.estimate = MldValue::neg_inf();
            r.exact = true;
            r.certificate = certificate::negative_value;
        } else {
            r.notes.push_back("dimension 1: a negative value does not certify -inf, estimate kept as truncated");
        }
    } else if (values.size() > kThresholdLevels && mn == d - 1 &&
               std::all_of(values.begin(), values.begin() + kThresholdLevels + 1, [&](int v) { return v >= d - 1; })) {
        r.exact = true;
        r.certificate = certificate::top_threshold;
    } else if (mn == d && smooth) {
        r.exact = true;
        r.certificate = certificate::smooth_point;
    }
    set_canonicity(r);
}

} // namespace detail

template <CoefficientField F>
MldReport mld_mj_estimate(VarietyJob<F> const& job, unsigned M = kDefaultMaxLevel, DimensionConfig const& cfg = {})
{
    MldReport r;
    r.seq = s_sequence(job, M, cfg);
    if (r.seq.empty) {
        r.notes.push_back("point is not on the variety");
        return r;
    }
    if (r.seq.partial) r.notes.push_back("partial: " + r.seq.partial_reason);
    detail::certify(r, r.seq.values(), job.d, jacobian_full_rank(job), job.d >= 2);
    return r;
}

// --------------------------------------------------------------------------------------------------------------------
// Pairs on a smooth ambient space
// --------------------------------------------------------------------------------------------------------------------

template <CoefficientField F>
struct PairClause {
    IdealPresentation<F> ideal;
    mpq_class exponent;
};

template <CoefficientField F>
struct PairSpec {
    std::vector<PairClause<F>> clauses;
};

/// The center W: either a closed point or an ideal I_W.
template <CoefficientField F>
struct Center {
    std::optional<std::vector<typename F::value_type>> point;
    std::optional<IdealPresentation<F>> ideal;
};

struct PairTerm {
    std::vector<unsigned> orders; ///< m_i per clause
    unsigned level = 0;           ///< jet level at which the codimension was computed
    int codim = 0;
    MldValue value;
};

struct PairReport {
    MldValue value;
    bool exact = false;
    std::string certificate = certificate::truncated;
    std::vector<PairTerm> terms;
    std::vector<std::string> notes;
};

/// min over tuples m_i <= bounds_i of codim(∩ Cont^{>=m_i}(a_i) ∩ Cont^{>=1}(I_W)) - Σ m_i e_i in the arc space of
/// A^N, each codimension computed at the smallest jet level that can express the contact orders.
template <CoefficientField F>
PairReport mld_ambient_pair(std::vector<std::string> const& base_names, PairSpec<F> const& pair, Center<F> const& center,
                            std::vector<unsigned> const& bounds, DimensionConfig const& cfg = {})
{
    if (pair.clauses.empty()) throw DomainError("pair needs at least one clause");
    if (bounds.size() != pair.clauses.size()) throw DomainError("one bound per pair clause is required");
    for (auto const& c : pair.clauses)
        if (c.exponent < 0) throw DomainError("pair exponents must be non-negative");
    if (!center.point && !center.ideal) throw DomainError("pair needs a center");
    F const& field = pair.clauses.front().ideal.ring->field();
    std::size_t n = base_names.size();

    PairReport rep;
    std::vector<unsigned> orders(pair.clauses.size(), 0);
    bool first = true;
    for (;;) {
        unsigned top = *std::max_element(orders.begin(), orders.end());
        unsigned level = top == 0 ? 0 : top - 1;
        ContactSpec<F> spec{{}, level};
        for (std::size_t i = 0; i < orders.size(); ++i) spec.clauses.push_back({pair.clauses[i].ideal, orders[i]});
        if (center.ideal) spec.clauses.push_back({*center.ideal, 1});
        auto sys = contact_ideal(spec, base_names, field, center.point);
        auto dim = compute_dimension(sys.ideal, cfg);
        int codim = dim.result.codim;
        mpq_class v = codim;
        for (std::size_t i = 0; i < orders.size(); ++i) v -= orders[i] * pair.clauses[i].exponent;
        rep.terms.push_back({orders, level, codim, MldValue::of(v)});
        if (first || MldValue::of(v) < rep.value) rep.value = MldValue::of(v);
        first = false;

        std::size_t i = 0;
        while (i < orders.size() && orders[i] == bounds[i]) orders[i++] = 0;
        if (i == orders.size()) break;
        ++orders[i];
    }
    if (rep.value.value < 0) {
        if (n >= 2) {
            rep.value = MldValue::neg_inf();
            rep.exact = true;
            rep.certificate = certificate::negative_value;
        } else {
            rep.notes.push_back("ambient dimension 1: a negative value does not certify -inf");
        }
    }
    return rep;
}

// --------------------------------------------------------------------------------------------------------------------
// Inversion of adjunction
// --------------------------------------------------------------------------------------------------------------------

struct InversionReport {
    MldReport lhs;
    PairReport rhs_pair;
    MldValue rhs;
    bool rhs_exact = false;
    std::string rhs_certificate = certificate::truncated;
    bool agree = false;
};

/// Compares the mld on X (jet fibers of X) with the mld of (A^N, I_X^c) at the point (contact loci in A^N), c = N - d.
template <CoefficientField F>
InversionReport inversion_check(VarietyJob<F> const& job, unsigned M = kDefaultMaxLevel, DimensionConfig const& cfg = {})
{
    InversionReport r;
    r.lhs = mld_mj_estimate(job, M, cfg);
    if (r.lhs.seq.empty) throw DomainError("point is not on the variety");
    int c = static_cast<int>(job.ambient_arity()) - job.d;
    PairSpec<F> pair{{{job.X, mpq_class(c)}}};
    Center<F> center{job.point, std::nullopt};
    r.rhs_pair = mld_ambient_pair(job.X.ring->names(), pair, center, {M + 1}, cfg);

    // Certificates on the right-hand side, read from its own truncated values.
    std::vector<int> values;
    for (auto const& t : r.rhs_pair.terms) values.push_back(static_cast<int>(t.value.value.get_num().get_si()));
    MldReport tmp;
    std::vector<int> shifted(values.begin() + 1, values.end()); // m_1 >= 1 terms; the m_1 = 0 term is N >= d
    detail::certify(tmp, shifted, job.d, jacobian_full_rank(job), job.ambient_arity() >= 2);
    int mn = *std::min_element(values.begin(), values.end());
    r.rhs = tmp.estimate ? *tmp.estimate : MldValue::of(mn);
    if (!r.rhs.minus_infinity && mn < r.rhs.value) r.rhs = MldValue::of(mn);
    r.rhs_exact = tmp.exact;
    r.rhs_certificate = tmp.certificate;

    auto const& lhs = *r.lhs.estimate;
    if (r.lhs.exact && r.rhs_exact)
        r.agree = lhs == r.rhs;
    else if (r.lhs.exact)
        r.agree = lhs <= r.rhs;
    else if (r.rhs_exact)
        r.agree = r.rhs <= lhs;
    else
        r.agree = lhs == r.rhs;
    return r;
}

// --------------------------------------------------------------------------------------------------------------------
// Embedding dimension pre-filter
// --------------------------------------------------------------------------------------------------------------------

struct EmbDimReport {
    int emb = 0;
    bool mj_canonical_possible = false;
    bool mj_lc_possible = false;
};

template <CoefficientField F>
EmbDimReport emb_dim_bound_check(VarietyJob<F> const& job)
{
    job.validate();
    int rank = job.X.generators.empty() ? 0 : static_cast<int>(jacobian_rank_at(job.X, job.point_span()));
    int emb = static_cast<int>(job.ambient_arity()) - rank;
    return {emb, emb <= 2 * job.d - 1, emb <= 2 * job.d};
}

} // namespace jetdisc
