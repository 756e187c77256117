#pragma once

#include <jetdisc/classify/classify.hpp>
#include <jetdisc/mld/generic.hpp>
#include <jetdisc/mld/mld.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace jetdisc {

struct TopReport {
    bool top = false;
    MldReport mld;
    std::optional<SingularityClass> classification; ///< surfaces in A^3 only
    std::optional<bool> consistent;                 ///< classification is a top label exactly when `top`
};

/// A point is a top singularity when the mld equals d - 1 with the threshold certificate. Surfaces in A^3 are
/// cross-checked against the equation-level classification.
template <CoefficientField F>
TopReport top_singularity_test(VarietyJob<F> const& job, DimensionConfig const& cfg = {})
{
    job.validate();
    TopReport rep;
    rep.mld = mld_mj_estimate(job, kDefaultMaxLevel, cfg);
    rep.top = rep.mld.exact && rep.mld.certificate == certificate::top_threshold;
    if (job.d == 2 && job.X.arity() == 3 && job.X.nonzero().generators.size() == 1 && point_on_variety(job)) {
        auto f = translate(job.X.nonzero().generators.front(), job.point_span());
        rep.classification = classify_surface_dp(f);
        rep.consistent = rep.classification->is_top() == rep.top;
    }
    return rep;
}

struct HyperplaneCut {
    std::vector<std::string> coefficients; ///< a_0..a_3 of the hyperplane sum a_i v_i = 0 through the point
    unsigned attempts = 0;
    SingularityClass classification;
};

struct CdvReport {
    std::vector<HyperplaneCut> cuts;
    std::map<std::string, unsigned> multiset; ///< label name -> number of cuts
    std::string majority;
    bool unanimous = false;
    bool cdv = false;                    ///< every cut is Du Val
    std::optional<std::string> compound; ///< cA_n, cD_n, cE_n when all cuts agree and are Du Val
};

/// Random hyperplane sections of a 3-fold hypersurface through the point, each classified as a surface germ.
template <CoefficientField F>
CdvReport cdv_hyperplane_test(VarietyJob<F> const& job, unsigned trials, std::uint64_t seed,
                              unsigned max_attempts = 20)
{
    job.validate();
    if (job.d != 3 || job.X.arity() != 4 || job.X.nonzero().generators.size() != 1)
        throw DomainError("hyperplane test needs a 3-fold hypersurface in A^4");
    if (!point_on_variety(job)) throw DomainError("point is not on the variety");
    auto const& k = job.X.ring->field();
    auto f = translate(job.X.nonzero().generators.front(), job.point_span());
    auto const& names = job.X.ring->names();
    std::size_t rank_q = 0;
    bool odd = k.characteristic() != 2;
    if (odd && f.order() == 2u) rank_q = quadratic_rank(f);

    Rng rng(seed);
    CdvReport rep;
    for (unsigned t = 0; t < trials; ++t) {
        bool done = false;
        for (unsigned attempt = 1; attempt <= max_attempts && !done; ++attempt) {
            std::vector<typename F::value_type> a;
            for (std::size_t i = 0; i < 4; ++i) a.push_back(k.from_integer(static_cast<long>(rng.below(kSurrogatePrime))));
            std::size_t pivot = 4;
            for (std::size_t i = 4; i-- > 0;)
                if (!k.is_zero(a[i])) {
                    pivot = i;
                    break;
                }
            if (pivot == 4) continue;
            std::vector<std::string> cut_names;
            for (std::size_t i = 0; i < 4; ++i)
                if (i != pivot) cut_names.push_back(names[i]);
            auto ring3 = make_ring(k, cut_names);
            std::vector<Polynomial<F>> images;
            auto minus_inv = k.neg(k.inv(a[pivot]));
            Polynomial<F> solved(ring3);
            for (std::size_t i = 0, j = 0; i < 4; ++i) {
                if (i == pivot) continue;
                solved = solved + Polynomial<F>::variable(ring3, j).scale(k.mul(a[i], minus_inv));
                ++j;
            }
            for (std::size_t i = 0, j = 0; i < 4; ++i)
                images.push_back(i == pivot ? solved : Polynomial<F>::variable(ring3, j++));
            auto cut = substitute(f, std::span<Polynomial<F> const>(images));
            if (cut.is_zero()) continue;
            if (odd && rank_q > 0 && cut.order() == 2u && quadratic_rank(cut) < std::min<std::size_t>(rank_q, 3))
                continue;
            HyperplaneCut hc;
            for (auto const& c : a) hc.coefficients.push_back(k.to_string(c));
            hc.attempts = attempt;
            hc.classification = classify_surface_dp(cut);
            rep.cuts.push_back(std::move(hc));
            done = true;
        }
        if (!done) throw Error("hyperplane retries exhausted after " + std::to_string(max_attempts) + " attempts");
    }
    unsigned best = 0;
    for (auto const& c : rep.cuts) ++rep.multiset[c.classification.name()];
    for (auto const& c : rep.cuts) {
        unsigned n = rep.multiset[c.classification.name()];
        if (n > best) {
            best = n;
            rep.majority = c.classification.name();
        }
    }
    rep.unanimous = !rep.cuts.empty() && rep.multiset.size() == 1;
    rep.cdv = !rep.cuts.empty();
    for (auto const& c : rep.cuts) rep.cdv = rep.cdv && c.classification.is_du_val();
    if (rep.unanimous && rep.cdv) rep.compound = "c" + rep.cuts.front().classification.short_name();
    return rep;
}

} // namespace jetdisc
