#include "../support.hpp"

#include <jetdisc/dimension/dimension.hpp>
#include <jetdisc/jets/jets.hpp>

#include <gtest/gtest.h>

#include <bit>
#include <random>

using namespace jetdisc;
using jetdisc::testing::ade_corpus;
using jetdisc::testing::random_poly;
using jetdisc::testing::xyz;

namespace {

using Q = RationalField;

template <CoefficientField F>
IdealPresentation<F> ideal(RingPtr<F> const& R, std::vector<std::string> const& gens)
{
    IdealPresentation<F> I(R);
    for (auto const& g : gens) I.generators.push_back(parse_poly(g, R));
    return I;
}

/// Dimension of V(I) by brute force over the subsets of variables: the largest S such that I contains no non-zero
/// polynomial in the variables of S alone is too expensive in general, so this oracle uses the definition through
/// leading monomials directly (no hitting-set search).
template <CoefficientField F>
int dimension_by_subsets(GroebnerBasis<F> const& gb)
{
    if (gb.is_unit()) return -1;
    std::size_t n = gb.ring->arity();
    int best = 0;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
        bool free = true;
        for (auto const& g : gb.basis)
            if ((g.leading_monomial().support() & ~s) == 0) free = false;
        if (free) best = std::max(best, std::popcount(s));
    }
    return best;
}

} // namespace

TEST(Groebner, SmallExamples)
{
    auto R = make_ring(Q{}, {"x", "y"});
    auto gb = groebner_basis(ideal(R, {"x^2", "x*y"}));
    ASSERT_EQ(gb.basis.size(), 2u);
    EXPECT_TRUE(ideal_member(parse_poly("x^3 + x*y^5", R), gb));
    EXPECT_FALSE(ideal_member(parse_poly("x", R), gb));
    auto lin = groebner_basis(ideal(R, {"x+y", "x-y"}));
    ASSERT_EQ(lin.basis.size(), 2u);
    EXPECT_EQ(lin.basis[0], parse_poly("y", R));
    EXPECT_EQ(lin.basis[1], parse_poly("x", R));
    EXPECT_TRUE(groebner_basis(ideal(R, {"x*y-1", "x"})).is_unit());
    EXPECT_TRUE(groebner_basis(IdealPresentation<Q>(R)).is_zero_ideal());
}

TEST(Groebner, BuchbergerPostconditionOnRandomIdeals)
{
    std::mt19937_64 rng(31);
    auto Rq = make_ring(Q{}, {"a", "b", "c", "d"});
    auto Rp = make_ring(PrimeField(32003), {"a", "b", "c", "d"});
    for (int i = 0; i < 25; ++i) {
        IdealPresentation<Q> I(Rq);
        for (int g = 0; g < 3; ++g) I.generators.push_back(random_poly(Rq, rng, 3, 4));
        auto gb = groebner_basis(I);
        EXPECT_TRUE(satisfies_buchberger(gb));
        EXPECT_TRUE(is_reduced(gb));
        for (auto const& g : I.generators) EXPECT_TRUE(ideal_member(g, gb));
        auto gbp = groebner_basis(map_coefficients(I, Rp));
        EXPECT_TRUE(satisfies_buchberger(gbp));
        EXPECT_TRUE(is_reduced(gbp));
    }
}

TEST(Groebner, Deterministic)
{
    auto R = make_ring(PrimeField(32003), xyz());
    auto I = ideal(R, {"x^2+y^2+z^2", "x*y+z^2", "y^3-x*z"});
    auto a = groebner_basis(I), b = groebner_basis(I);
    EXPECT_EQ(a.basis, b.basis);
}

TEST(Groebner, BudgetIsReportedNotTruncated)
{
    auto R = make_ring(PrimeField(32003), {"a", "b", "c", "d"});
    auto I = ideal(R, {"a^3+b^3+c^3+d^3", "a*b*c+b*c*d+c*d*a", "a^2*b-c^2*d+a*d^2"});
    EXPECT_THROW(groebner_basis(I, GroebnerBudget{5, 64}), BudgetExceeded);
}

TEST(KrullDim, Examples)
{
    auto R9 = make_ring(Q{}, {"a", "b", "c", "d", "e", "f", "g", "h", "i"});
    EXPECT_EQ(krull_dim(IdealPresentation<Q>(R9)).dim, 9);
    auto R2 = make_ring(Q{}, {"x", "y"});
    auto pt = krull_dim(ideal(R2, {"x", "y"}));
    EXPECT_EQ(pt.dim, 0);
    EXPECT_EQ(pt.codim, 2);
    auto empty = krull_dim(ideal(R2, {"x", "x-1"}));
    EXPECT_EQ(empty.dim, -1);
    EXPECT_EQ(empty.codim, 3);
    auto R4 = make_ring(Q{}, {"t", "x", "y", "z"});
    EXPECT_EQ(krull_dim(ideal(R4, {"x*z-y^2", "x*y-z*t", "y*t-x^2"})).dim, 2); // cone over the twisted cubic
}

TEST(KrullDim, A1LevelTwoFiber)
{
    auto R = make_ring(Q{}, {"x1", "y1", "z1", "x2", "y2", "z2"});
    auto I = ideal(R, {"x1^2+y1^2+z1^2", "2*(x1*x2+y1*y2+z1*z2)"});
    EXPECT_EQ(krull_dim(I).dim, 4);
}

TEST(KrullDim, HittingSetMatchesSubsetEnumeration)
{
    std::mt19937_64 rng(32);
    auto R = make_ring(PrimeField(32003), {"a", "b", "c", "d", "e"});
    for (int i = 0; i < 40; ++i) {
        IdealPresentation<PrimeField> I(R);
        int gens = 1 + static_cast<int>(rng() % 4);
        for (int g = 0; g < gens; ++g) I.generators.push_back(random_poly(R, rng, 3, 3));
        auto gb = groebner_basis(I);
        EXPECT_EQ(dimension_of(gb), dimension_by_subsets(gb));
    }
}

TEST(KrullDim, AddingGeneratorsNeverRaisesTheDimension)
{
    std::mt19937_64 rng(33);
    auto R = make_ring(PrimeField(32003), {"a", "b", "c", "d"});
    for (int i = 0; i < 20; ++i) {
        IdealPresentation<PrimeField> I(R);
        int prev = 4;
        for (int g = 0; g < 4; ++g) {
            I.generators.push_back(random_poly(R, rng, 2, 3));
            int d = krull_dim(I).dim;
            EXPECT_LE(d, prev);
            prev = d;
        }
    }
}

TEST(CountPoints, Examples)
{
    auto R = make_ring(Q{}, xyz());
    EXPECT_EQ(count_points(ideal(R, {"x^2+y^2+z^2"}), 3), 9);
    auto R2 = make_ring(Q{}, {"x", "y"});
    EXPECT_EQ(count_points(IdealPresentation<Q>(R2), 5), 25);
    EXPECT_EQ(count_points(ideal(R2, {"1"}), 5), 0);
    EXPECT_THROW(count_points(ideal(make_ring(PrimeField(7), {"x"}), {"x"}), 5), DomainError);
    EXPECT_THROW(count_points(ideal(R, {"x^2+y^2+z^2"}), 13, 10), BudgetExceeded);
}

TEST(CountPoints, NondegenerateConeOverAConic)
{
    auto R = make_ring(Q{}, xyz());
    for (std::uint32_t q : {5u, 7u, 11u, 13u}) EXPECT_EQ(count_points(ideal(R, {"x^2+y^2+z^2"}), q), q * q);
}

TEST(CountPoints, AgreesWithNaiveEnumeration)
{
    std::mt19937_64 rng(34);
    auto R = make_ring(Q{}, xyz());
    PrimeField k(5);
    for (int i = 0; i < 20; ++i) {
        IdealPresentation<Q> I(R);
        for (int g = 0; g < 2; ++g) I.generators.push_back(random_poly(R, rng, 3, 3));
        long naive = 0;
        for (std::uint32_t a = 0; a < 5; ++a)
            for (std::uint32_t b = 0; b < 5; ++b)
                for (std::uint32_t c = 0; c < 5; ++c) {
                    std::vector<std::uint32_t> p{a, b, c};
                    bool zero = true;
                    for (auto const& g : I.generators) {
                        auto gp = map_coefficients(g, make_ring(k, xyz()));
                        zero = zero && evaluate(gp, std::span<std::uint32_t const>(p)) == 0;
                    }
                    naive += zero;
                }
        EXPECT_EQ(count_points(I, 5), naive);
    }
}

TEST(DimFromCounts, Slopes)
{
    auto c = dim_from_counts({{5, 25}, {7, 49}, {11, 121}});
    EXPECT_EQ(c.dim, 2);
    EXPECT_TRUE(c.reliable);
    EXPECT_EQ(dim_from_counts({{5, 0}, {7, 0}, {11, 0}}).dim, -1);
    EXPECT_THROW(dim_from_counts({{5, 0}, {7, 3}, {11, 0}}), DomainError);
    EXPECT_THROW(dim_from_counts({{5, 25}, {7, 49}}), DomainError);
    EXPECT_FALSE(dim_from_counts({{5, 60}, {7, 49}, {11, 400}}).reliable);
}

TEST(ComputeDimension, OracleAgreesOnCorpusFibers)
{
    auto base = make_ring(Q{}, xyz());
    std::vector<mpq_class> origin{0, 0, 0};
    for (auto const& c : ade_corpus()) {
        IdealPresentation<Q> X(base, {parse_poly(c.equation, base)});
        for (unsigned m = 1; m <= 2; ++m) {
            auto sys = jet_fiber_ideal(X, std::span<mpq_class const>(origin), m);
            auto out = compute_dimension(sys.ideal);
            EXPECT_EQ(out.oracle, "agree") << c.name << " m=" << m;
            EXPECT_EQ(out.method, "groebner[F_32003]");
        }
    }
}

TEST(ComputeDimension, MethodsAndBadPrimes)
{
    auto R = make_ring(Q{}, xyz());
    DimensionConfig g;
    g.oracle = Oracle::groebner;
    auto plain = compute_dimension(ideal(R, {"x^2+y^2+z^2"}), g);
    EXPECT_EQ(plain.oracle, "skipped");
    EXPECT_EQ(plain.result.dim, 2);
    auto exact = compute_dimension(ideal(R, {"x/32003 + y"}), g);
    EXPECT_EQ(exact.method, "groebner[Q]");
    EXPECT_EQ(exact.result.dim, 2);
    DimensionConfig cnt;
    cnt.oracle = Oracle::count;
    auto counted = compute_dimension(ideal(R, {"x*y"}), cnt);
    EXPECT_EQ(counted.method, "point_count");
    EXPECT_EQ(counted.result.dim, 2);
    auto Rp = make_ring(PrimeField(7), xyz());
    EXPECT_THROW(compute_dimension(ideal(Rp, {"x"}), cnt), DomainError);
    EXPECT_EQ(compute_dimension(ideal(Rp, {"x"})).method, "groebner[F_7]");
}
