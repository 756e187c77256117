#pragma once

#include <jetdisc/algebra/linear.hpp>
#include <jetdisc/algebra/polynomial.hpp>

#include <functional>
#include <span>
#include <vector>

namespace jetdisc {

namespace detail {

inline void for_each_subset(std::size_t n, std::size_t k, std::function<void(std::vector<std::size_t> const&)> const& fn)
{
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    if (k > n) return;
    for (;;) {
        fn(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

template <CoefficientField F>
Polynomial<F> determinant(std::vector<std::vector<Polynomial<F>>> const& m)
{
    std::size_t n = m.size();
    if (n == 1) return m[0][0];
    Polynomial<F> acc(m[0][0].ring());
    for (std::size_t c = 0; c < n; ++c) {
        if (m[0][c].is_zero()) continue;
        std::vector<std::vector<Polynomial<F>>> sub;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<Polynomial<F>> row;
            for (std::size_t j = 0; j < n; ++j)
                if (j != c) row.push_back(m[r][j]);
            sub.push_back(std::move(row));
        }
        auto term = m[0][c] * determinant(sub);
        acc = (c % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

} // namespace detail

/// Matrix of formal partial derivatives, one row per generator.
template <CoefficientField F>
std::vector<std::vector<Polynomial<F>>> jacobian_matrix(IdealPresentation<F> const& gens)
{
    std::vector<std::vector<Polynomial<F>>> jac;
    for (auto const& g : gens.generators) {
        std::vector<Polynomial<F>> row;
        for (std::size_t i = 0; i < gens.arity(); ++i) row.push_back(derivative(g, i));
        jac.push_back(std::move(row));
    }
    return jac;
}

/// All size x size minors of the Jacobian matrix, rows outer and columns inner in lexicographic order.
/// Zero minors are kept so positions stay meaningful.
template <CoefficientField F>
IdealPresentation<F> jacobian_minors(IdealPresentation<F> const& gens, std::size_t size)
{
    if (size < 1 || size > std::min(gens.generators.size(), gens.arity()))
        throw DomainError("minor size " + std::to_string(size) + " out of range");
    auto jac = jacobian_matrix(gens);
    IdealPresentation<F> out(gens.ring);
    detail::for_each_subset(jac.size(), size, [&](std::vector<std::size_t> const& rows) {
        detail::for_each_subset(gens.arity(), size, [&](std::vector<std::size_t> const& cols) {
            std::vector<std::vector<Polynomial<F>>> sub;
            for (auto r : rows) {
                std::vector<Polynomial<F>> row;
                for (auto c : cols) row.push_back(jac[r][c]);
                sub.push_back(std::move(row));
            }
            out.generators.push_back(detail::determinant(sub));
        });
    });
    return out;
}

/// Rank of the Jacobian matrix evaluated at a point.
template <CoefficientField F>
std::size_t jacobian_rank_at(IdealPresentation<F> const& gens, std::span<typename F::value_type const> point)
{
    auto const& k = gens.ring->field();
    auto jac = jacobian_matrix(gens);
    Matrix<F> m(k, jac.size(), gens.arity());
    for (std::size_t r = 0; r < jac.size(); ++r)
        for (std::size_t c = 0; c < gens.arity(); ++c) m(r, c) = evaluate(jac[r][c], point);
    return rank(k, std::move(m));
}

/// f(M x): variable i is replaced by sum_j M(i, j) x_j. The matrix must be invertible.
template <CoefficientField F>
Polynomial<F> linear_substitute(Polynomial<F> const& f, Matrix<F> const& m)
{
    auto const& ring = f.ring();
    auto const& k = ring->field();
    if (m.rows != ring->arity() || m.cols != ring->arity()) throw DomainError("substitution matrix has wrong size");
    if (!inverse(k, m)) throw DomainError("substitution matrix is singular");
    std::vector<Polynomial<F>> images;
    for (std::size_t i = 0; i < m.rows; ++i) {
        std::vector<Term<F>> terms;
        for (std::size_t j = 0; j < m.cols; ++j)
            if (!k.is_zero(m(i, j))) terms.push_back({Monomial::variable(j), m(i, j)});
        images.push_back(Polynomial<F>::from_terms(ring, std::move(terms)));
    }
    return substitute(f, std::span<Polynomial<F> const>(images));
}

/// f(x + point), moving the point to the origin.
template <CoefficientField F>
Polynomial<F> translate(Polynomial<F> const& f, std::span<typename F::value_type const> point)
{
    auto const& ring = f.ring();
    if (point.size() != ring->arity()) throw DomainError("point has wrong number of coordinates");
    std::vector<Polynomial<F>> images;
    for (std::size_t i = 0; i < point.size(); ++i)
        images.push_back(Polynomial<F>::variable(ring, i) + Polynomial<F>::constant(ring, point[i]));
    return substitute(f, std::span<Polynomial<F> const>(images));
}

} // namespace jetdisc
