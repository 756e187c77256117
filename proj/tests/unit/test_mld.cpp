#include "../support.hpp"

#include <jetdisc/mld/generic.hpp>
#include <jetdisc/mld/mld.hpp>

#include <gtest/gtest.h>

using namespace jetdisc;
using jetdisc::testing::ade_corpus;
using jetdisc::testing::xyz;

namespace {

using Q = RationalField;
using Fp = PrimeField;

VarietyJob<Q> surface(std::string const& eq, std::vector<mpq_class> point = {0, 0, 0})
{
    auto R = make_ring(Q{}, xyz());
    return {IdealPresentation<Q>(R, {parse_poly(eq, R)}), 2, std::move(point)};
}

VarietyJob<Q> job(std::vector<std::string> const& vars, std::vector<std::string> const& gens, int d,
                  std::vector<mpq_class> point)
{
    auto R = make_ring(Q{}, vars);
    IdealPresentation<Q> X(R);
    for (auto const& g : gens) X.generators.push_back(parse_poly(g, R));
    return {X, d, std::move(point)};
}

} // namespace

TEST(SSequence, A1ConeLevels)
{
    // Level m fiber of the A1 cone at the origin: c_2 = q(x_1) is the only equation up to m = 2, so the dims are
    // 0, 3, 5 and then 7 once c_3 appears.
    auto seq = s_sequence(surface("x^2+y^2+z^2"), 3);
    EXPECT_EQ(seq.dims(), (std::vector<int>{0, 3, 5, 7}));
    EXPECT_EQ(seq.values(), (std::vector<int>{2, 1, 1, 1}));
}

TEST(SSequence, LevelZeroIsTheDimension)
{
    for (auto const& c : ade_corpus()) {
        auto seq = s_sequence(surface(c.equation), 1);
        ASSERT_FALSE(seq.levels.empty());
        EXPECT_EQ(seq.levels[0].fiber_dim, 0);
        EXPECT_EQ(seq.values()[0], 2);
    }
}

TEST(SSequence, QuarticConeGoesNegative)
{
    auto seq = s_sequence(surface("x^4+y^4+z^4"), 3);
    EXPECT_EQ(seq.dims().back(), 9);
    EXPECT_EQ(seq.values().back(), -1);
}

TEST(SSequence, EmptyFiber)
{
    auto seq = s_sequence(surface("x^2+y^2+z^2", {1, 0, 0}), 2);
    EXPECT_TRUE(seq.empty);
    for (auto const& l : seq.levels) {
        EXPECT_EQ(l.fiber_dim, -1);
        EXPECT_FALSE(l.s.has_value());
    }
    EXPECT_FALSE(mld_mj_estimate(surface("x^2+y^2+z^2", {1, 0, 0}), 2).estimate.has_value());
}

TEST(SSequence, BudgetStopsAndFlags)
{
    DimensionConfig cfg;
    cfg.oracle = Oracle::groebner;
    cfg.groebner.max_steps = 3;
    auto seq = s_sequence(surface("z^2+y^3+x^5"), 5, cfg);
    EXPECT_TRUE(seq.partial);
    EXPECT_LT(seq.levels.size(), 6u);
}

TEST(MldEstimate, AdeSurfacesAreTop)
{
    for (auto const& c : ade_corpus()) {
        auto r = mld_mj_estimate(surface(c.equation));
        ASSERT_TRUE(r.estimate) << c.name;
        EXPECT_EQ(r.estimate->to_string(), "1") << c.name;
        EXPECT_TRUE(r.exact) << c.name;
        EXPECT_EQ(r.certificate, certificate::top_threshold) << c.name;
        EXPECT_EQ(r.mj_canonical, Flag::yes);
    }
}

TEST(MldEstimate, SmoothPointsGiveTheDimension)
{
    std::vector<VarietyJob<Q>> smooth{
        surface("z"),
        surface("x^2+y^2+z^2-1", {1, 0, 0}),
        job({"x", "y", "z", "w"}, {"x+y^2", "z-w^3"}, 2, {0, 0, 0, 0}),
        job({"x", "y"}, {"y-x^3"}, 1, {0, 0}),
        job({"x", "y", "z", "w"}, {"w"}, 3, {5, 0, 1, 0}),
    };
    for (auto const& j : smooth) {
        auto r = mld_mj_estimate(j);
        EXPECT_TRUE(r.exact);
        EXPECT_EQ(r.certificate, certificate::smooth_point);
        EXPECT_EQ(r.estimate->to_string(), std::to_string(j.d));
    }
}

TEST(MldEstimate, SingularPointsStayBelowTheDimension)
{
    for (auto const& eq : {"x^2+y^2+z^2", "x*y", "z^2+x^3", "x^4+y^4+z^4", "z^2"}) {
        auto r = mld_mj_estimate(surface(eq));
        EXPECT_TRUE(*r.estimate < MldValue::of(2)) << eq;
    }
}

TEST(MldEstimate, NegativeValueCertifiesMinusInfinity)
{
    auto r = mld_mj_estimate(surface("x^4+y^4+z^4"));
    EXPECT_TRUE(r.estimate->minus_infinity);
    EXPECT_TRUE(r.exact);
    EXPECT_EQ(r.certificate, certificate::negative_value);
    EXPECT_EQ(r.mj_log_canonical, Flag::no);
}

TEST(MldEstimate, CurvesAbstainFromMinusInfinity)
{
    auto r = mld_mj_estimate(job({"x", "y"}, {"y^2-x^5"}, 1, {0, 0}), 5);
    EXPECT_FALSE(r.estimate->minus_infinity);
    EXPECT_FALSE(r.exact);
    EXPECT_FALSE(r.notes.empty());
}

TEST(MldEstimate, TruncatedMinimumIsMonotoneInTheLevel)
{
    for (auto const& eq : {"x^2+y^2+z^2", "z^2+x^3", "x^3+y^3+z^3", "x^4+y^4+z^4"}) {
        auto seq = s_sequence(surface(eq), 5);
        auto v = seq.values();
        int running = v[0];
        for (std::size_t m = 1; m < v.size(); ++m) {
            int next = std::min(running, v[m]);
            EXPECT_LE(next, running);
            running = next;
        }
    }
}

TEST(MldEstimate, IncrementsSettleAtTheDimension)
{
    // Once past twice the Jacobian contact order the fiber grows by exactly d per level.
    for (auto const& c : ade_corpus()) {
        auto dims = s_sequence(surface(c.equation), 5).dims();
        EXPECT_EQ(dims[5] - dims[4], 2) << c.name;
    }
}

TEST(MldEstimate, CodimensionBoundAlongASubvariety)
{
    // estimate(generic point of V) <= estimate(generic point of W) + codim(V, W) for V = origin, W = singular line.
    auto X = job({"x", "y", "z"}, {"z^2+x*y^2"}, 2, {0, 0, 0});
    auto at_origin = mld_mj_estimate(X, 3);
    auto R = X.X.ring;
    IdealPresentation<Q> line(R, {parse_poly("y", R), parse_poly("z", R)});
    auto gen = generic_point_s_sequence(X, line, 3, 42);
    int along_line = *gen.seq_first.minimum();
    EXPECT_LE(at_origin.estimate->value, along_line + 1);
    EXPECT_FALSE(gen.disagree);
}

TEST(PairMld, ExamplesOnAffineSpace)
{
    DimensionConfig cfg;
    auto R2 = make_ring(Q{}, {"x", "y"});
    PairSpec<Q> maximal{{{IdealPresentation<Q>(R2, {parse_poly("x", R2), parse_poly("y", R2)}), 1}}};
    Center<Q> origin2{std::vector<mpq_class>{0, 0}, std::nullopt};
    auto a = mld_ambient_pair({"x", "y"}, maximal, origin2, {5}, cfg);
    EXPECT_EQ(a.value.to_string(), "1");
    for (auto const& t : a.terms) {
        if (t.orders[0] >= 1) {
            EXPECT_EQ(t.codim, 2 * static_cast<int>(t.orders[0]));
        }
    }

    auto R3 = make_ring(Q{}, xyz());
    PairSpec<Q> plane{{{IdealPresentation<Q>(R3, {parse_poly("z", R3)}), 1}}};
    Center<Q> origin3{std::vector<mpq_class>{0, 0, 0}, std::nullopt};
    EXPECT_EQ(mld_ambient_pair(xyz(), plane, origin3, {5}, cfg).value.to_string(), "2");

    PairSpec<Q> quartic{{{IdealPresentation<Q>(R3, {parse_poly("x^4+y^4+z^4", R3)}), 1}}};
    auto q = mld_ambient_pair(xyz(), quartic, origin3, {5}, cfg);
    EXPECT_TRUE(q.value.minus_infinity);
    EXPECT_EQ(q.certificate, certificate::negative_value);
    EXPECT_EQ(q.terms[4].codim, 3); // m = 4: Cont^{>=4} at the origin is cut out by level 0 alone

    PairSpec<Q> half{{{IdealPresentation<Q>(R2, {parse_poly("x", R2), parse_poly("y", R2)}), mpq_class(1, 2)}}};
    EXPECT_EQ(mld_ambient_pair({"x", "y"}, half, origin2, {3}, cfg).value.to_string(), "3/2");
    EXPECT_THROW(mld_ambient_pair({"x", "y"}, PairSpec<Q>{}, origin2, {}, cfg), DomainError);
}

TEST(Inversion, BothSidesAgreeOnTheCorpus)
{
    for (auto const& c : ade_corpus()) {
        auto r = inversion_check(surface(c.equation));
        EXPECT_TRUE(r.lhs.exact && r.rhs_exact) << c.name;
        EXPECT_TRUE(r.agree) << c.name;
        EXPECT_EQ(r.rhs.to_string(), "1") << c.name;
    }
    auto plane = inversion_check(surface("z"));
    EXPECT_TRUE(plane.agree);
    EXPECT_EQ(plane.rhs.to_string(), "2");
    auto quartic = inversion_check(surface("x^4+y^4+z^4"));
    EXPECT_TRUE(quartic.agree);
    EXPECT_TRUE(quartic.rhs.minus_infinity);
}

TEST(EmbeddingDimension, Filter)
{
    auto a1 = emb_dim_bound_check(surface("x^2+y^2+z^2"));
    EXPECT_EQ(a1.emb, 3);
    EXPECT_TRUE(a1.mj_canonical_possible);
    auto smooth = emb_dim_bound_check(surface("z"));
    EXPECT_EQ(smooth.emb, 2);
    EXPECT_TRUE(smooth.mj_lc_possible);
    auto quartic = emb_dim_bound_check(surface("x^4+y^4+z^4"));
    EXPECT_TRUE(quartic.mj_canonical_possible);
    auto curve_in_4 = emb_dim_bound_check(job({"x", "y", "z", "w"}, {"x*y", "x*z", "x*w", "y*z", "y*w", "z*w"}, 1,
                                              {0, 0, 0, 0}));
    EXPECT_EQ(curve_in_4.emb, 4);
    EXPECT_FALSE(curve_in_4.mj_lc_possible);
}

TEST(GenericPoint, NormalCrossingAlongTheSingularLine)
{
    auto X = surface("x*y");
    IdealPresentation<Q> line(X.X.ring, {parse_poly("x", X.X.ring), parse_poly("y", X.X.ring)});
    auto g = generic_point_s_sequence(X, line, 3, 7);
    EXPECT_EQ(*g.seq_first.minimum(), 1);
    EXPECT_EQ(g.first.point[0], 0u);
    EXPECT_EQ(g.first.point[1], 0u);
    EXPECT_FALSE(g.disagree);
}

TEST(GenericPoint, PointSubvarietyMatchesTheSequence)
{
    auto X = surface("x^2+y^2+z^2");
    IdealPresentation<Q> origin(X.X.ring, {parse_poly("x", X.X.ring), parse_poly("y", X.X.ring), parse_poly("z", X.X.ring)});
    auto g = generic_point_s_sequence(X, origin, 3, 1);
    EXPECT_EQ(g.seq_first.values(), s_sequence(X, 3).values());
}

TEST(GenericPoint, ProductWithALine)
{
    auto X = job({"x", "y", "z", "w"}, {"x^2+y^2+z^2"}, 3, {0, 0, 0, 0});
    auto R = X.X.ring;
    IdealPresentation<Q> line(R, {parse_poly("x", R), parse_poly("y", R), parse_poly("z", R)});
    auto g = generic_point_s_sequence(X, line, 3, 3);
    EXPECT_EQ(*g.seq_first.minimum(), 2);
}

TEST(GenericPoint, SeededAndReproducible)
{
    auto X = surface("x*y");
    IdealPresentation<Q> line(X.X.ring, {parse_poly("x", X.X.ring), parse_poly("y", X.X.ring)});
    auto a = generic_point_s_sequence(X, line, 2, 99), b = generic_point_s_sequence(X, line, 2, 99);
    EXPECT_EQ(a.first.point, b.first.point);
    EXPECT_EQ(a.second.point, b.second.point);
}

TEST(Sweep, FirstMinimumLevels)
{
    std::vector<SweepRow> rows;
    for (auto const& c : ade_corpus()) rows.push_back(sweep_row(c.name, s_sequence(surface(c.equation), 5)));
    rows.push_back(sweep_row("quartic", s_sequence(surface("x^4+y^4+z^4"), 5)));
    rows.push_back(sweep_row("plane", s_sequence(surface("z"), 5)));
    EXPECT_EQ(rows[10].first_level, 3u);
    EXPECT_TRUE(rows[10].negative);
    EXPECT_EQ(rows[11].first_level, 0u);
    auto summary = summarize_sweep(rows);
    bool found = false;
    for (auto const& s : summary)
        if (s.d == 2 && s.delta == "1") {
            found = true;
            EXPECT_EQ(s.jobs, 10u);
            EXPECT_LE(s.max_first_level, 5u);
        }
    EXPECT_TRUE(found);
}
