#pragma once

#include <jetdisc/algebra/ideal_ops.hpp>
#include <jetdisc/algebra/linear.hpp>
#include <jetdisc/algebra/polynomial.hpp>
#include <jetdisc/classify/univariate.hpp>
#include <jetdisc/error.hpp>

#include <algorithm>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace jetdisc {

// --------------------------------------------------------------------------------------------------------------------
// Result types
// --------------------------------------------------------------------------------------------------------------------

enum class CubicShape { three_distinct, linear_times_square, single_factor };

inline std::string to_string(CubicShape s)
{
    switch (s) {
    case CubicShape::three_distinct: return "three_distinct";
    case CubicShape::linear_times_square: return "linear_times_square";
    case CubicShape::single_factor: return "single_factor";
    }
    return "?";
}

template <CoefficientField F>
struct TauResult {
    int tau = 0;
    /// Basis of the smallest subspace V0 of linear forms with the initial form in k[V0]; coefficient vectors.
    std::vector<std::vector<typename F::value_type>> witness;
};

enum class Label { Smooth, A, D, E6, E7, E8, NormalCrossing, WhitneyType, NonNormal_other, cDV, NotDuVal, Unclassified };

struct SingularityClass {
    Label label = Label::Unclassified;
    int index = 0; ///< n for A_n and D_n
    std::optional<unsigned> multiplicity;
    std::optional<int> tau;
    std::optional<CubicShape> shape;
    unsigned truncation = 0; ///< power-series precision used by the normalizations
    std::string reason;

    /// Label string from the closed list: Smooth, A_n(n), D_n(n), E6, E7, E8, NormalCrossing, WhitneyType,
    /// NonNormal_other, cDV, NotDuVal, Unclassified.
    std::string name() const
    {
        switch (label) {
        case Label::Smooth: return "Smooth";
        case Label::A: return "A_n(" + std::to_string(index) + ")";
        case Label::D: return "D_n(" + std::to_string(index) + ")";
        case Label::E6: return "E6";
        case Label::E7: return "E7";
        case Label::E8: return "E8";
        case Label::NormalCrossing: return "NormalCrossing";
        case Label::WhitneyType: return "WhitneyType";
        case Label::NonNormal_other: return "NonNormal_other";
        case Label::cDV: return "cDV";
        case Label::NotDuVal: return "NotDuVal";
        case Label::Unclassified: return "Unclassified";
        }
        return "?";
    }

    /// Compact form: A1, D5, E6, ...
    std::string short_name() const
    {
        if (label == Label::A) return "A" + std::to_string(index);
        if (label == Label::D) return "D" + std::to_string(index);
        return name();
    }

    bool is_du_val() const
    {
        return label == Label::A || label == Label::D || label == Label::E6 || label == Label::E7 || label == Label::E8;
    }

    /// Labels of germs with mld = dim - 1 (the double points together with the two non-normal exceptions).
    bool is_top() const { return is_du_val() || label == Label::NormalCrossing || label == Label::WhitneyType; }

    friend bool operator==(SingularityClass const& a, SingularityClass const& b)
    {
        return a.label == b.label && a.index == b.index;
    }
};

struct ClassifyOptions {
    unsigned degree_cap = 32; ///< upper limit for the power-series precision
};

namespace detail {

template <CoefficientField F>
Polynomial<F> homogeneous_part(Polynomial<F> const& f, unsigned degree)
{
    std::vector<Term<F>> terms;
    for (auto const& t : f.terms())
        if (t.monomial.degree() == degree) terms.push_back(t);
    return Polynomial<F>::from_sorted_terms(f.ring(), std::move(terms));
}

/// Symmetric matrix of the quadratic part (characteristic not 2).
template <CoefficientField F>
Matrix<F> quadratic_matrix(Polynomial<F> const& f)
{
    auto const& k = f.field();
    std::size_t n = f.ring()->arity();
    Matrix<F> a(k, n, n);
    auto half = k.inv(k.from_integer(2));
    for (auto const& t : f.terms()) {
        if (t.monomial.degree() != 2) continue;
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i)
            for (unsigned e = t.monomial[i]; e > 0; --e) idx.push_back(i);
        if (idx[0] == idx[1]) {
            a(idx[0], idx[0]) = t.coefficient;
        } else {
            a(idx[0], idx[1]) = k.mul(t.coefficient, half);
            a(idx[1], idx[0]) = a(idx[0], idx[1]);
        }
    }
    return a;
}

template <CoefficientField F>
struct Diagonalization {
    Matrix<F> T; ///< x = T u turns the form into sum diag[i] u_i^2, non-zero entries first
    std::vector<typename F::value_type> diag;
    std::size_t rank = 0;
};

/// Symmetric congruence T^t A T = diag (characteristic not 2).
template <CoefficientField F>
Diagonalization<F> diagonalize(F const& k, Matrix<F> a)
{
    std::size_t n = a.rows;
    auto t = Matrix<F>::identity(k, n);
    auto col_op = [&](std::size_t dst, std::size_t src, typename F::value_type const& c) {
        // column dst += c * column src, then the matching row operation
        for (std::size_t r = 0; r < n; ++r) a(r, dst) = k.add(a(r, dst), k.mul(c, a(r, src)));
        for (std::size_t r = 0; r < n; ++r) a(dst, r) = k.add(a(dst, r), k.mul(c, a(src, r)));
        for (std::size_t r = 0; r < n; ++r) t(r, dst) = k.add(t(r, dst), k.mul(c, t(r, src)));
    };
    auto swap = [&](std::size_t i, std::size_t j) {
        for (std::size_t r = 0; r < n; ++r) std::swap(a(r, i), a(r, j));
        for (std::size_t r = 0; r < n; ++r) std::swap(a(i, r), a(j, r));
        for (std::size_t r = 0; r < n; ++r) std::swap(t(r, i), t(r, j));
    };
    std::size_t next = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t pivot = n;
        for (std::size_t j = next; j < n; ++j)
            if (!k.is_zero(a(j, j))) {
                pivot = j;
                break;
            }
        if (pivot == n) {
            // No diagonal pivot left: combine two coordinates with a non-zero off-diagonal entry.
            for (std::size_t j = next; j < n && pivot == n; ++j)
                for (std::size_t l = j + 1; l < n; ++l)
                    if (!k.is_zero(a(j, l))) {
                        col_op(j, l, k.one());
                        pivot = j;
                        break;
                    }
        }
        if (pivot == n) break;
        if (pivot != next) swap(pivot, next);
        auto inv = k.inv(a(next, next));
        for (std::size_t j = next + 1; j < n; ++j)
            if (!k.is_zero(a(next, j))) col_op(j, next, k.neg(k.mul(a(next, j), inv)));
        ++next;
    }
    Diagonalization<F> d{t, {}, next};
    for (std::size_t i = 0; i < n; ++i) d.diag.push_back(a(i, i));
    return d;
}

/// Embeds a 2x2 change of the coordinates (i, j) into an n x n identity.
template <CoefficientField F>
Matrix<F> embed2(F const& k, std::size_t n, std::size_t i, std::size_t j, Matrix<F> const& m2)
{
    auto m = Matrix<F>::identity(k, n);
    m(i, i) = m2(0, 0);
    m(i, j) = m2(0, 1);
    m(j, i) = m2(1, 0);
    m(j, j) = m2(1, 1);
    return m;
}

/// Eliminates a variable z entering f as a*z^2 + ..., with no linear term, by a truncated implicit-function
/// iteration: phi <- phi - f_z(phi)/(2a). Returns f(phi(w), w) truncated at degree D, a function of the other
/// variables, and whether phi was found exactly (the iteration closed without truncation).
template <CoefficientField F>
std::pair<Polynomial<F>, bool> eliminate_square(Polynomial<F> const& f, std::size_t z, typename F::value_type const& a,
                                                unsigned D)
{
    auto const& ring = f.ring();
    auto const& k = f.field();
    auto fz = derivative(f, z);
    auto scale = k.neg(k.inv(k.mul(k.from_integer(2), a)));
    std::vector<Polynomial<F>> images;
    for (std::size_t i = 0; i < ring->arity(); ++i) images.push_back(Polynomial<F>::variable(ring, i));
    Polynomial<F> phi(ring);
    bool exact = false;
    for (unsigned it = 0; it <= D + 2; ++it) {
        images[z] = phi;
        auto r = substitute(fz, std::span<Polynomial<F> const>(images), D);
        if (r.is_zero()) {
            // Exact when the untruncated derivative also vanishes; only attempted while the degrees stay small.
            unsigned dphi = phi.is_zero() ? 0 : static_cast<unsigned>(phi.total_degree());
            if (static_cast<unsigned>(fz.total_degree()) * std::max(1u, dphi) <= 2 * D)
                exact = substitute(fz, std::span<Polynomial<F> const>(images)).is_zero();
            break;
        }
        auto next = truncate(phi + r.scale(scale), D);
        if (next == phi) break;
        phi = std::move(next);
    }
    images[z] = phi;
    auto g = exact ? substitute(f, std::span<Polynomial<F> const>(images))
                   : substitute(f, std::span<Polynomial<F> const>(images), D);
    return {g, exact};
}

/// Roots of a binary cubic form in variables (ix, iy), as linear factors a*x + b*y with multiplicities.
template <CoefficientField F>
struct BinaryCubic {
    CubicShape shape;
    /// For linear_times_square: simple then double factor. For single_factor: the factor. Empty otherwise.
    std::vector<std::pair<typename F::value_type, typename F::value_type>> factors;
};

template <CoefficientField F>
BinaryCubic<F> analyze_binary_cubic(Polynomial<F> const& g, std::size_t ix, std::size_t iy)
{
    auto const& k = g.field();
    if (k.characteristic() == 2 || k.characteristic() == 3)
        throw DomainError("cubic factor shape needs characteristic 0 or greater than 3");
    if (g.is_zero() || !g.is_homogeneous() || g.total_degree() != 3) throw DomainError("not a homogeneous cubic");
    uni::Poly<F> p(4, k.zero());
    for (auto const& t : g.terms()) {
        if ((t.monomial.support() & ~((std::uint64_t{1} << ix) | (std::uint64_t{1} << iy))) != 0)
            throw DomainError("cubic form involves more than two variables");
        p[t.monomial[ix]] = t.coefficient; // P(t) = G(t, 1)
    }
    uni::trim(k, p);
    int dp = static_cast<int>(p.size()) - 1;
    int m_inf = 3 - dp;
    auto dpoly = uni::derivative(k, p);
    auto gd = dpoly.empty() ? p : uni::gcd(k, p, dpoly);
    int sq = dp - (static_cast<int>(gd.size()) - 1);
    int distinct = sq + (m_inf > 0 ? 1 : 0);
    BinaryCubic<F> out{distinct == 3 ? CubicShape::three_distinct
                                     : distinct == 2 ? CubicShape::linear_times_square : CubicShape::single_factor,
                       {}};
    auto y_factor = std::make_pair(k.zero(), k.one());
    auto root_factor = [&](typename F::value_type const& r) { return std::make_pair(k.one(), k.neg(r)); };
    auto linear_root = [&](uni::Poly<F> const& l) { return k.neg(k.mul(l[0], k.inv(l[1]))); };
    if (out.shape == CubicShape::single_factor) {
        if (m_inf == 3)
            out.factors.push_back(y_factor);
        else // P = c (t - r)^3
            out.factors.push_back(root_factor(k.neg(k.mul(p[2], k.inv(k.mul(k.from_integer(3), p[3]))))));
    } else if (out.shape == CubicShape::linear_times_square) {
        if (m_inf == 0) {
            auto r = linear_root(gd);
            uni::Poly<F> sq2 = {k.mul(r, r), k.neg(k.add(r, r)), k.one()};
            auto rest = uni::quotient(k, p, sq2);
            out.factors.push_back(root_factor(linear_root(rest)));
            out.factors.push_back(root_factor(r));
        } else if (m_inf == 1) {
            out.factors.push_back(y_factor);
            out.factors.push_back(root_factor(linear_root(gd)));
        } else {
            out.factors.push_back(root_factor(linear_root(p)));
            out.factors.push_back(y_factor);
        }
    }
    return out;
}

/// Series of p(X, psi(X)) for a polynomial p in which only variables ix, iy occur.
template <CoefficientField F>
uni::Poly<F> eval_on_curve(Polynomial<F> const& p, std::size_t ix, std::size_t iy, uni::Poly<F> const& psi,
                           std::size_t len)
{
    auto const& k = p.field();
    std::vector<uni::Poly<F>> powers{uni::Poly<F>(len, k.zero())};
    powers[0][0] = k.one();
    uni::Poly<F> out(len, k.zero());
    for (auto const& t : p.terms()) {
        unsigned a = t.monomial[ix], b = t.monomial[iy];
        if (a >= len) continue;
        while (powers.size() <= b) powers.push_back(uni::series_mul(k, powers.back(), psi, len));
        for (std::size_t i = 0; i + a < len; ++i)
            out[i + a] = k.add(out[i + a], k.mul(t.coefficient, powers[b][i]));
    }
    return out;
}

template <CoefficientField F>
Matrix<F> two_by_two(F const& k, typename F::value_type a, typename F::value_type b, typename F::value_type c,
                     typename F::value_type d)
{
    Matrix<F> m(k, 2, 2);
    m(0, 0) = std::move(a);
    m(0, 1) = std::move(b);
    m(1, 0) = std::move(c);
    m(1, 1) = std::move(d);
    return m;
}

/// New coordinates (X, Y) = (l1, l2) in slots (ix, iy): returns g expressed in X, Y.
template <CoefficientField F>
Polynomial<F> to_linear_forms(Polynomial<F> const& g, std::size_t ix, std::size_t iy,
                              std::pair<typename F::value_type, typename F::value_type> const& l1,
                              std::pair<typename F::value_type, typename F::value_type> const& l2)
{
    auto const& k = g.field();
    auto L = two_by_two(k, l1.first, l1.second, l2.first, l2.second);
    auto inv = inverse(k, L);
    if (!inv) throw DomainError("linear forms are dependent");
    return linear_substitute(g, embed2(k, g.ring()->arity(), ix, iy, *inv));
}

template <CoefficientField F>
Monomial mono2(std::size_t ix, unsigned a, std::size_t iy, unsigned b)
{
    Monomial m;
    if (a) m.set(ix, a);
    if (b) m.set(iy, b);
    return m;
}

} // namespace detail

// --------------------------------------------------------------------------------------------------------------------
// τ invariant
// --------------------------------------------------------------------------------------------------------------------

/// τ by the definition: the least dimension of a space of linear forms whose polynomial algebra contains the
/// quadratic initial form, searched exhaustively over the subspaces of F_p^n in reduced echelon form.
inline TauResult<PrimeField> tau_by_search(Polynomial<PrimeField> const& f)
{
    auto const& k = f.field();
    std::uint32_t p = k.modulus();
    std::size_t n = f.ring()->arity();
    if (p > 13 || n > 4) throw DomainError("exhaustive tau search is limited to p <= 13 and at most 4 variables");
    if (f.order() != 2u) throw DomainError("tau needs a double point (multiplicity 2)");
    auto q = detail::homogeneous_part(f, 2);
    for (std::size_t r = 0; r <= n; ++r) {
        std::optional<TauResult<PrimeField>> found;
        detail::for_each_subset(n, r, [&](std::vector<std::size_t> const& pivots) {
            if (found) return;
            std::vector<std::pair<std::size_t, std::size_t>> free; // (row, column)
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t c = pivots[i] + 1; c < n; ++c)
                    if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) free.emplace_back(i, c);
            std::vector<std::uint32_t> values(free.size(), 0);
            for (;;) {
                Matrix<PrimeField> L(k, n, n);
                for (std::size_t i = 0; i < r; ++i) L(i, pivots[i]) = 1;
                for (std::size_t f_i = 0; f_i < free.size(); ++f_i) L(free[f_i].first, free[f_i].second) = values[f_i];
                std::size_t row = r;
                for (std::size_t c = 0; c < n; ++c)
                    if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) L(row++, c) = 1;
                auto m = inverse(k, L);
                auto qq = linear_substitute(q, *m);
                std::uint64_t allowed = r == 0 ? 0 : (std::uint64_t{1} << r) - 1;
                if ((qq.support() & ~allowed) == 0) {
                    TauResult<PrimeField> res{static_cast<int>(r), {}};
                    for (std::size_t i = 0; i < r; ++i) {
                        std::vector<std::uint32_t> v(n);
                        for (std::size_t c = 0; c < n; ++c) v[c] = L(i, c);
                        res.witness.push_back(std::move(v));
                    }
                    found = std::move(res);
                    return;
                }
                std::size_t i = 0;
                while (i < values.size() && values[i] == p - 1) values[i++] = 0;
                if (i == values.size()) return;
                ++values[i];
            }
        });
        if (found) return *found;
    }
    throw DomainError("no subspace found");
}

/// τ of a double point: the rank of the quadratic part in characteristic not 2, the exhaustive search in
/// characteristic 2.
template <CoefficientField F>
TauResult<F> tau_invariant(Polynomial<F> const& f)
{
    if (f.order() != 2u) throw DomainError("tau needs a double point (multiplicity 2)");
    auto const& k = f.field();
    if (k.characteristic() == 2) {
        if constexpr (std::is_same_v<F, PrimeField>) return tau_by_search(f);
        throw DomainError("characteristic 2 needs a prime field");
    }
    auto a = detail::quadratic_matrix(f);
    std::size_t n = a.rows;
    std::size_t r = row_reduce(k, a);
    TauResult<F> res{static_cast<int>(r), {}};
    for (std::size_t i = 0; i < r; ++i) {
        std::vector<typename F::value_type> v;
        for (std::size_t c = 0; c < n; ++c) v.push_back(a(i, c));
        res.witness.push_back(std::move(v));
    }
    return res;
}

/// Rank of the quadratic part (characteristic not 2).
template <CoefficientField F>
std::size_t quadratic_rank(Polynomial<F> const& f)
{
    if (f.field().characteristic() == 2) throw DomainError("quadratic rank needs characteristic not 2");
    auto a = detail::quadratic_matrix(f);
    return row_reduce(f.field(), a);
}

/// Shape of the factorization of a binary cubic form over the algebraic closure.
template <CoefficientField F>
CubicShape cubic_factor_shape(Polynomial<F> const& g)
{
    std::uint64_t s = g.support();
    std::vector<std::size_t> vars;
    for (std::size_t i = 0; i < g.ring()->arity(); ++i)
        if (s >> i & 1) vars.push_back(i);
    if (vars.size() > 2) throw DomainError("cubic form involves more than two variables");
    std::size_t ix = vars.size() > 0 ? vars[0] : 0;
    std::size_t iy = vars.size() > 1 ? vars[1] : (ix == 0 ? 1 : 0);
    if (g.ring()->arity() < 2) throw DomainError("binary cubic needs two variables");
    return detail::analyze_binary_cubic(g, ix, iy).shape;
}

// --------------------------------------------------------------------------------------------------------------------
// Surface double points
// --------------------------------------------------------------------------------------------------------------------

namespace detail {

/// Characteristic 2: recognize only the exact normal forms xy and z^2 + x y^2 + y z g(x, y) up to permuting variables.
template <CoefficientField F>
SingularityClass classify_char2(Polynomial<F> const& f, SingularityClass cls)
{
    auto const& ring = f.ring();
    auto const& k = f.field();
    if constexpr (std::is_same_v<F, PrimeField>) cls.tau = tau_by_search(f).tau;
    std::vector<std::size_t> perm{0, 1, 2};
    do {
        auto X = Polynomial<F>::variable(ring, perm[0]);
        auto Y = Polynomial<F>::variable(ring, perm[1]);
        auto Z = Polynomial<F>::variable(ring, perm[2]);
        if (f == X * Y) {
            cls.label = Label::NormalCrossing;
            cls.reason = "normal form xy";
            return cls;
        }
        auto rest = f - Z * Z - X * Y * Y;
        // rest must equal y z g(x, y) with mult g >= 1 and (g = 0 or g(x, 0) != 0).
        std::vector<Term<F>> gterms;
        bool ok = true;
        for (auto const& t : rest.terms()) {
            if (t.monomial[perm[1]] < 1 || t.monomial[perm[2]] != 1) {
                ok = false;
                break;
            }
            Monomial m = t.monomial;
            m.set(perm[1], m[perm[1]] - 1);
            m.set(perm[2], 0);
            gterms.push_back({m, t.coefficient});
        }
        if (!ok) continue;
        auto g = Polynomial<F>::from_terms(ring, std::move(gterms));
        if (!g.is_zero()) {
            if (!k.is_zero(g.constant_coefficient())) continue;
            bool has_pure_x = false;
            for (auto const& t : g.terms())
                if (t.monomial[perm[1]] == 0) has_pure_x = true;
            if (!has_pure_x) continue;
        }
        cls.label = Label::WhitneyType;
        cls.reason = "normal form z^2 + x y^2 + y z g(x,y)";
        return cls;
    } while (std::next_permutation(perm.begin(), perm.end()));
    cls.label = Label::Unclassified;
    cls.reason = "characteristic 2: not one of the recognized normal forms";
    return cls;
}

} // namespace detail

namespace detail {

/// Normal-form decisions for a double point of rank tau < 3, with every series computed through degree D. Returns
/// nullopt when the answer may change at a higher precision and `final` is false.
template <CoefficientField F>
std::optional<SingularityClass> classify_double_point(Polynomial<F> const& g, Diagonalization<F> const& diag,
                                                      unsigned D, bool final, SingularityClass cls)
{
    auto const& k = g.field();
    int tau = static_cast<int>(diag.rank);
    cls.truncation = D;
    if (tau == 2) {
        auto [g1, exact1] = eliminate_square(g, 0, diag.diag[0], D);
        auto [h, exact2] = eliminate_square(g1, 1, diag.diag[1], D);
        if (h.is_zero()) {
            if (!final && !(exact1 && exact2)) return std::nullopt;
            cls.label = Label::NormalCrossing;
            cls.reason = exact1 && exact2 ? "residual vanishes identically"
                                          : "residual vanishes through degree " + std::to_string(D);
            return cls;
        }
        cls.label = Label::A;
        cls.index = static_cast<int>(*h.order()) - 1;
        cls.reason = "residual of order " + std::to_string(*h.order());
        return cls;
    }
    // tau = 1: f ~ z^2 - G(x, y)
    auto G = eliminate_square(g, 0, diag.diag[0], D).first;
    if (G.is_zero()) {
        if (!final) return std::nullopt;
        cls.label = Label::NonNormal_other;
        cls.reason = "f is a unit times a square through degree " + std::to_string(D);
        return cls;
    }
    unsigned mg = *G.order();
    if (mg != 3) {
        cls.label = Label::NotDuVal;
        cls.reason = "mult G = " + std::to_string(mg);
        return cls;
    }
    auto cubic = analyze_binary_cubic(initial_form(G), 1, 2);
    cls.shape = cubic.shape;
    if (cubic.shape == CubicShape::three_distinct) {
        cls.label = Label::D;
        cls.index = 4;
        cls.reason = "cubic with three distinct factors";
        return cls;
    }
    if (cubic.shape == CubicShape::linear_times_square) {
        // Coordinates with initial cubic c * X * Y^2; follow the curve G_Y = 0 and read the order of G along it.
        auto H = to_linear_forms(G, 1, 2, cubic.factors[0], cubic.factors[1]);
        std::size_t len = D + 4;
        auto hy = derivative(H, 2);
        auto hyy = derivative(hy, 2);
        uni::Poly<F> psi(len, k.zero());
        for (unsigned it = 0; it < 2 * len; ++it) {
            auto num = eval_on_curve(hy, 1, 2, psi, len);
            if (uni::valuation(k, num) < 0) break;
            auto den = eval_on_curve(hyy, 1, 2, psi, len);
            if (!k.is_zero(num[0]) || !k.is_zero(den[0]) || k.is_zero(den[1]))
                throw DomainError("unexpected curve equation in the D_n normalization");
            uni::Poly<F> n1(num.begin() + 1, num.end()), d1(den.begin() + 1, den.end());
            auto step = uni::series_mul(k, n1, uni::series_inverse(k, d1, len - 1), len - 1);
            bool moved = false;
            for (std::size_t i = 0; i + 1 < len; ++i)
                if (!k.is_zero(step[i])) {
                    psi[i] = k.sub(psi[i], step[i]);
                    moved = true;
                }
            if (!moved) break;
        }
        auto C = eval_on_curve(H, 1, 2, psi, D + 1);
        int v = uni::valuation(k, C);
        if (!final && (v < 0 || v + 2 > static_cast<int>(D))) return std::nullopt;
        if (v < 0) {
            cls.label = Label::WhitneyType;
            cls.reason = "G vanishes along its polar curve through degree " + std::to_string(D);
            return cls;
        }
        cls.label = Label::D;
        cls.index = v + 1;
        cls.reason = "order " + std::to_string(v) + " along the polar curve";
        return cls;
    }
    // single factor: initial cubic c * Y^3
    auto lf = cubic.factors[0];
    auto other = k.is_zero(lf.first) ? std::make_pair(k.one(), k.zero()) : std::make_pair(k.zero(), k.one());
    auto H = to_linear_forms(G, 1, 2, other, lf);
    auto x4 = H.coefficient(mono2<F>(1, 4, 2, 0));
    auto rho = H.coefficient(mono2<F>(1, 3, 2, 1));
    auto sigma = H.coefficient(mono2<F>(1, 5, 2, 0));
    if (!k.is_zero(x4)) {
        cls.label = Label::E6;
        cls.reason = "x^4 coefficient is a unit";
    } else if (!k.is_zero(rho)) {
        cls.label = Label::E7;
        cls.reason = "rho is a unit";
    } else if (!k.is_zero(sigma)) {
        cls.label = Label::E8;
        cls.reason = "rho vanishes, sigma is a unit";
    } else {
        cls.label = Label::NotDuVal;
        cls.reason = "rho and sigma vanish";
    }
    return cls;
}

} // namespace detail

/// Type of the surface germ {f = 0} ⊂ A^3 at the origin.
template <CoefficientField F>
SingularityClass classify_surface_dp(Polynomial<F> const& f, ClassifyOptions const& opt = {})
{
    auto const& k = f.field();
    auto const& ring = f.ring();
    if (ring->arity() != 3) throw DomainError("surface classification needs a polynomial in 3 variables");
    if (f.is_zero()) throw DomainError("the zero polynomial does not define a surface");
    if (!k.is_zero(f.constant_coefficient())) throw DomainError("polynomial does not vanish at the origin");

    SingularityClass cls;
    unsigned mult = *f.order();
    cls.multiplicity = mult;
    if (mult == 1) {
        cls.label = Label::Smooth;
        cls.reason = "multiplicity 1";
        return cls;
    }
    if (mult >= 3) {
        cls.label = Label::NotDuVal;
        cls.reason = "multiplicity " + std::to_string(mult) + " >= 3";
        return cls;
    }
    auto p = k.characteristic();
    if (p == 2) return detail::classify_char2(f, cls);

    unsigned e = static_cast<unsigned>(f.total_degree());
    unsigned bound = (e - 1) * (e - 1) * (e - 1) + 2;
    unsigned D = std::max(6u, std::min(bound, opt.degree_cap));

    auto diag = detail::diagonalize(k, detail::quadratic_matrix(f));
    int tau = static_cast<int>(diag.rank);
    cls.tau = tau;
    if (tau == 3) {
        cls.label = Label::A;
        cls.index = 1;
        cls.reason = "nondegenerate quadratic part";
        return cls;
    }
    if (tau == 1 && p == 3) {
        cls.label = Label::Unclassified;
        cls.reason = "characteristic 3 with tau = 1";
        return cls;
    }
    auto g = linear_substitute(f, diag.T);
    // A non-vanishing residual at a low precision is already exact there, so escalate only when needed.
    for (unsigned P : {8u, 16u, D}) {
        P = std::min(P, D);
        if (auto res = detail::classify_double_point(g, diag, P, P == D, cls)) return *res;
    }
    return cls;
}

} // namespace jetdisc
