#pragma once

#include <jetdisc/algebra/ideal_ops.hpp>
#include <jetdisc/algebra/linear.hpp>
#include <jetdisc/algebra/parse.hpp>
#include <jetdisc/algebra/polynomial.hpp>

#include <optional>
#include <random>
#include <string>
#include <vector>

namespace jetdisc::testing {

/// The surface corpus: normal forms with their expected labels and τ (nullopt where τ is not defined).
struct SurfaceCase {
    std::string name;
    std::string equation;
    std::string label;
    std::optional<int> tau;
};

inline std::vector<SurfaceCase> const& ade_corpus()
{
    static std::vector<SurfaceCase> const corpus{
        {"A1", "x^2+y^2+z^2", "A_n(1)", 3},
        {"A2", "x*y+z^3", "A_n(2)", 2},
        {"A3", "x*y+z^4", "A_n(3)", 2},
        {"D4", "z^2+x^2*y-y^3", "D_n(4)", 1},
        {"D5", "z^2+x^2*y+y^4", "D_n(5)", 1},
        {"E6", "z^2+x^3+y^4", "E6", 1},
        {"E7", "z^2+y^3+x^3*y", "E7", 1},
        {"E8", "z^2+y^3+x^5", "E8", 1},
        {"NC", "x*y", "NormalCrossing", 2},
        {"Whitney", "z^2+x*y^2", "WhitneyType", 1},
    };
    return corpus;
}

/// Surfaces whose mld is below 1 (each with a label outside the top list).
inline std::vector<SurfaceCase> const& non_top_corpus()
{
    static std::vector<SurfaceCase> const corpus{
        {"quartic cone", "x^4+y^4+z^4", "NotDuVal", std::nullopt},
        {"cubic cone", "x^3+y^3+z^3", "NotDuVal", std::nullopt},
        {"cuspidal edge", "z^2+x^3", "NotDuVal", 1},
        {"double plane", "z^2", "NonNormal_other", 1},
        {"T_{2,3,7}", "z^2+y^3+x^7", "NotDuVal", 1},
    };
    return corpus;
}

inline std::vector<std::string> xyz() { return {"x", "y", "z"}; }

template <CoefficientField F>
Polynomial<F> poly(std::string const& s, RingPtr<F> const& ring)
{
    return parse_poly(s, ring);
}

/// Random polynomial with small integer coefficients, at most `terms` terms of degree <= `degree`.
template <CoefficientField F>
Polynomial<F> random_poly(RingPtr<F> const& ring, std::mt19937_64& rng, unsigned degree, unsigned terms)
{
    auto const& k = ring->field();
    std::vector<Term<F>> out;
    std::uniform_int_distribution<int> coef(-5, 5);
    std::uniform_int_distribution<unsigned> exp(0, degree);
    for (unsigned t = 0; t < terms; ++t) {
        Monomial m;
        unsigned left = degree;
        for (std::size_t v = 0; v < ring->arity() && left > 0; ++v) {
            unsigned e = std::min(left, exp(rng));
            e = std::uniform_int_distribution<unsigned>(0, e)(rng);
            if (e) m.set(v, e);
            left -= e;
        }
        out.push_back({m, k.from_integer(coef(rng))});
    }
    return Polynomial<F>::from_terms(ring, std::move(out));
}

/// Random invertible matrix with entries in [-3, 3].
template <CoefficientField F>
Matrix<F> random_invertible(F const& k, std::size_t n, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> entry(-3, 3);
    for (;;) {
        Matrix<F> m(k, n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = k.from_integer(entry(rng));
        if (inverse(k, m)) return m;
    }
}

} // namespace jetdisc::testing
