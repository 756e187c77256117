#pragma once

#include <jetdisc/algebra/field.hpp>
#include <jetdisc/error.hpp>

#include <cstddef>
#include <optional>
#include <vector>

namespace jetdisc {

/// Dense row-major matrix of field elements.
template <CoefficientField F>
struct Matrix {
    using value_type = typename F::value_type;

    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<value_type> data;

    Matrix() = default;
    Matrix(F const& k, std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, k.zero()) {}

    static Matrix identity(F const& k, std::size_t n)
    {
        Matrix m(k, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = k.one();
        return m;
    }

    value_type& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    value_type const& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

template <CoefficientField F>
Matrix<F> multiply(F const& k, Matrix<F> const& a, Matrix<F> const& b)
{
    if (a.cols != b.rows) throw DomainError("matrix dimensions do not match");
    Matrix<F> r(k, a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t l = 0; l < a.cols; ++l) {
            if (k.is_zero(a(i, l))) continue;
            for (std::size_t j = 0; j < b.cols; ++j) r(i, j) = k.add(r(i, j), k.mul(a(i, l), b(l, j)));
        }
    return r;
}

/// Row echelon form in place; returns the rank. When tracking, `companion` receives the same row operations.
template <CoefficientField F>
std::size_t row_reduce(F const& k, Matrix<F>& m, Matrix<F>* companion = nullptr)
{
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols && rank < m.rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < m.rows && k.is_zero(m(pivot, col))) ++pivot;
        if (pivot == m.rows) continue;
        if (pivot != rank) {
            for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(pivot, j), m(rank, j));
            if (companion)
                for (std::size_t j = 0; j < companion->cols; ++j) std::swap((*companion)(pivot, j), (*companion)(rank, j));
        }
        auto inv = k.inv(m(rank, col));
        for (std::size_t j = 0; j < m.cols; ++j) m(rank, j) = k.mul(m(rank, j), inv);
        if (companion)
            for (std::size_t j = 0; j < companion->cols; ++j) (*companion)(rank, j) = k.mul((*companion)(rank, j), inv);
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == rank || k.is_zero(m(i, col))) continue;
            auto factor = m(i, col);
            for (std::size_t j = 0; j < m.cols; ++j) m(i, j) = k.sub(m(i, j), k.mul(factor, m(rank, j)));
            if (companion)
                for (std::size_t j = 0; j < companion->cols; ++j)
                    (*companion)(i, j) = k.sub((*companion)(i, j), k.mul(factor, (*companion)(rank, j)));
        }
        ++rank;
    }
    return rank;
}

template <CoefficientField F>
std::size_t rank(F const& k, Matrix<F> m)
{
    return row_reduce(k, m);
}

template <CoefficientField F>
std::optional<Matrix<F>> inverse(F const& k, Matrix<F> m)
{
    if (m.rows != m.cols) throw DomainError("inverse of a non-square matrix");
    auto inv = Matrix<F>::identity(k, m.rows);
    if (row_reduce(k, m, &inv) != m.rows) return std::nullopt;
    return inv;
}

} // namespace jetdisc
