#pragma once

#include "opz/errors.hpp"
#include "opz/rational.hpp"
#include "opz/scalar.hpp"

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace opz {

template <class S>
inline constexpr bool is_exact_v = std::is_same_v<S, Rational>;

struct EngineLimits
{
    int exact_degree_cap = 12;
    int float_degree_cap = 30;
    /// A Hankel pivot below this fraction of its diagonal entry is treated as singular on the float path.
    double singular_threshold = 1e-12;
};

/// p(x) = x^n + c_{n-1} x^{n-1} + ... + c_0.
template <class S>
struct MonicPolynomial
{
    std::vector<S> coefficients; // c_0 .. c_{n-1}

    int degree() const { return static_cast<int>(coefficients.size()); }

    S operator()(const S& x) const
    {
        S value = 1;
        for (std::size_t i = coefficients.size(); i-- > 0;)
            value = value * x + coefficients[i];
        return value;
    }

    /// All n + 1 coefficients, lowest degree first, with the leading 1.
    std::vector<S> full() const
    {
        std::vector<S> out = coefficients;
        out.push_back(S(1));
        return out;
    }
};

/// p_{k+1} = (x - alpha_k) p_k - beta_k p_{k-1}; betas[0] holds beta_0 = m_0.
template <class S>
struct RecurrenceCoefficients
{
    std::vector<S> alphas; // alpha_0 .. alpha_{n-1}
    std::vector<S> betas;  // beta_0 .. beta_{n-1}

    int size() const { return static_cast<int>(alphas.size()); }
    const S& beta0() const { return betas.front(); }
};

/// Symmetric tridiagonal matrix with diagonal alpha_k and off-diagonal sqrt(beta_k).
template <class S>
struct JacobiMatrix
{
    std::vector<S> diagonal;
    std::vector<S> off_diagonal; // length order - 1

    int order() const { return static_cast<int>(diagonal.size()); }
};

namespace detail {

template <class S>
S abs_value(const S& x)
{
    if constexpr (is_exact_v<S>)
        return abs(x);
    else {
        using std::abs;
        return abs(x);
    }
}

template <class S>
bool is_finite(const S& x)
{
    if constexpr (is_exact_v<S>)
        return true;
    else {
        using std::isfinite;
        return isfinite(x);
    }
}

inline void check_degree(int n, bool exact, const EngineLimits& limits, const char* what)
{
    if (n < 0)
        throw std::invalid_argument(std::string(what) + ": negative degree");
    const int cap = exact ? limits.exact_degree_cap : limits.float_degree_cap;
    if (n > cap)
        throw DegreeCapError(std::string(what) + ": degree " + std::to_string(n) + " exceeds the " +
                             (exact ? "exact" : "float") + "-mode cap of " + std::to_string(cap));
}

template <class S>
void check_moment_count(std::span<const S> moments, std::size_t needed, const char* what)
{
    if (moments.size() < needed)
        throw std::invalid_argument(std::string(what) + ": need " + std::to_string(needed) + " moments, got " +
                                    std::to_string(moments.size()));
}

/// Rejects a Hankel pivot (the ratio det H_{k+1} / det H_k) that is nonpositive, or, on the
/// float path, tiny relative to the diagonal entry m_{2k} it was reduced from.
template <class S>
void check_pivot(const S& pivot, const S& diagonal, int k, const EngineLimits& limits, const char* what)
{
    const int minor = k + 1;
    if constexpr (is_exact_v<S>) {
        if (pivot <= 0)
            throw SingularMomentsError(minor, std::string(what) + ": moment functional is not positive definite "
                                                                  "(leading Hankel minor of order " +
                                                  std::to_string(minor) + ")");
    } else {
        if (!is_finite(pivot) || !(pivot > 0))
            throw SingularMomentsError(minor, std::string(what) + ": nonpositive Hankel pivot at leading minor of order " +
                                                  std::to_string(minor) + " (numerical breakdown; use exact mode)");
        if (pivot < S(limits.singular_threshold) * abs_value(diagonal))
            throw SingularMomentsError(minor, std::string(what) + ": leading Hankel minor of order " +
                                                  std::to_string(minor) +
                                                  " is numerically singular in float mode; use exact mode");
    }
}

/// Determinant by Gaussian elimination (first nonzero pivot when exact, largest pivot otherwise).
template <class S>
S determinant(std::vector<S> a, int n)
{
    auto at = [&](int i, int j) -> S& { return a[static_cast<std::size_t>(i * n + j)]; };
    S det = 1;
    for (int k = 0; k < n; ++k) {
        int pivot_row = -1;
        if constexpr (is_exact_v<S>) {
            for (int i = k; i < n; ++i)
                if (at(i, k) != 0) {
                    pivot_row = i;
                    break;
                }
        } else {
            S best = 0;
            for (int i = k; i < n; ++i)
                if (abs_value(at(i, k)) > best) {
                    best = abs_value(at(i, k));
                    pivot_row = i;
                }
        }
        if (pivot_row < 0)
            return S(0);
        if (pivot_row != k) {
            for (int j = 0; j < n; ++j)
                std::swap(at(k, j), at(pivot_row, j));
            det = -det;
        }
        const S pivot = at(k, k);
        det *= pivot;
        for (int i = k + 1; i < n; ++i) {
            const S factor = at(i, k) / pivot;
            if (factor == 0)
                continue;
            for (int j = k + 1; j < n; ++j)
                at(i, j) -= factor * at(k, j);
        }
    }
    return det;
}

} // namespace detail

/// Monic p_n as the quotient of the (n+1)x(n+1) moment determinant with last row (1, x, ..., x^n)
/// by the Hankel determinant det(m_{i+j})_{i,j<n}. Uses m_0 .. m_{2n-1}.
template <class S>
MonicPolynomial<S> hankel_polynomial(std::span<const S> moments, int n, const EngineLimits& limits = {})
{
    constexpr const char* what = "hankel_polynomial";
    detail::check_degree(n, is_exact_v<S>, limits, what);
    if (n == 0)
        return {};
    detail::check_moment_count(moments, static_cast<std::size_t>(2 * n), what);

    // Leading minors of the Hankel block, via unpivoted elimination.
    {
        std::vector<S> h(static_cast<std::size_t>(n * n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                h[static_cast<std::size_t>(i * n + j)] = moments[static_cast<std::size_t>(i + j)];
        for (int k = 0; k < n; ++k) {
            const S pivot = h[static_cast<std::size_t>(k * n + k)];
            detail::check_pivot(pivot, moments[static_cast<std::size_t>(2 * k)], k, limits, what);
            for (int i = k + 1; i < n; ++i) {
                const S factor = h[static_cast<std::size_t>(i * n + k)] / pivot;
                for (int j = k + 1; j < n; ++j)
                    h[static_cast<std::size_t>(i * n + j)] -= factor * h[static_cast<std::size_t>(k * n + j)];
            }
        }
    }

    // Cofactor expansion along the row (1, x, ..., x^n): coefficient of x^j is
    // (-1)^(n+j) times the minor with column j removed.
    auto minor_without_column = [&](int column) {
        std::vector<S> m;
        m.reserve(static_cast<std::size_t>(n * n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j <= n; ++j)
                if (j != column)
                    m.push_back(moments[static_cast<std::size_t>(i + j)]);
        return detail::determinant(std::move(m), n);
    };

    const S leading = minor_without_column(n);
    MonicPolynomial<S> p;
    p.coefficients.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        S c = minor_without_column(j) / leading;
        p.coefficients[static_cast<std::size_t>(j)] = ((n + j) % 2 == 0) ? c : S(-c);
    }
    return p;
}

/// Chebyshev's algorithm: recurrence coefficients alpha_0..alpha_{n-1}, beta_0..beta_{n-1}
/// from the ordinary moments m_0 .. m_{2n-1}.
template <class S>
RecurrenceCoefficients<S> moments_to_recurrence(std::span<const S> moments, int n, const EngineLimits& limits = {})
{
    constexpr const char* what = "moments_to_recurrence";
    detail::check_degree(n, is_exact_v<S>, limits, what);
    RecurrenceCoefficients<S> rc;
    detail::check_moment_count(moments, static_cast<std::size_t>(n == 0 ? 1 : 2 * n), what);
    detail::check_pivot(moments[0], moments[0], 0, limits, what);
    rc.betas.push_back(moments[0]);
    if (n == 0)
        return rc;

    const std::size_t width = static_cast<std::size_t>(2 * n);
    // sigma_k(l) = integral of p_k(x) x^l; rows k-1 and k kept.
    std::vector<S> previous(width, S(0));
    std::vector<S> current(moments.begin(), moments.begin() + static_cast<std::ptrdiff_t>(width));
    rc.alphas.push_back(moments[1] / moments[0]);

    for (int k = 1; k < n; ++k) {
        std::vector<S> next(width, S(0));
        const S& alpha = rc.alphas[static_cast<std::size_t>(k - 1)];
        const S& beta = rc.betas[static_cast<std::size_t>(k - 1)];
        for (int l = k; l < 2 * n - k; ++l) {
            const auto ul = static_cast<std::size_t>(l);
            next[ul] = current[ul + 1] - alpha * current[ul] - beta * previous[ul];
        }
        const auto uk = static_cast<std::size_t>(k);
        detail::check_pivot(next[uk], moments[2 * uk], k, limits, what);
        rc.alphas.push_back(next[uk + 1] / next[uk] - current[uk] / current[uk - 1]);
        rc.betas.push_back(next[uk] / current[uk - 1]);
        previous = std::move(current);
        current = std::move(next);
    }
    return rc;
}

/// Monic p_n(x) by the three-term recurrence.
template <class S>
S evaluate(const RecurrenceCoefficients<S>& rc, int n, const S& x)
{
    if (n < 0 || n > rc.size())
        throw std::out_of_range("evaluate: degree " + std::to_string(n) + " beyond recurrence length " +
                                std::to_string(rc.size()));
    S previous = 0;
    S current = 1;
    for (int k = 0; k < n; ++k) {
        const auto uk = static_cast<std::size_t>(k);
        S next = (x - rc.alphas[uk]) * current - (k == 0 ? S(0) : S(rc.betas[uk] * previous));
        previous = std::move(current);
        current = std::move(next);
    }
    return current;
}

/// Coefficients of monic p_n generated by the recurrence.
template <class S>
MonicPolynomial<S> polynomial_from_recurrence(const RecurrenceCoefficients<S>& rc, int n)
{
    if (n < 0 || n > rc.size())
        throw std::out_of_range("polynomial_from_recurrence: degree beyond recurrence length");
    std::vector<S> previous;     // p_{k-1}, full coefficients
    std::vector<S> current{S(1)}; // p_k
    for (int k = 0; k < n; ++k) {
        const auto uk = static_cast<std::size_t>(k);
        std::vector<S> next(current.size() + 1, S(0));
        for (std::size_t i = 0; i < current.size(); ++i) {
            next[i + 1] += current[i];
            next[i] -= rc.alphas[uk] * current[i];
        }
        if (k > 0)
            for (std::size_t i = 0; i < previous.size(); ++i)
                next[i] -= rc.betas[uk] * previous[i];
        previous = std::move(current);
        current = std::move(next);
    }
    current.pop_back();
    return MonicPolynomial<S>{std::move(current)};
}

template <class S>
JacobiMatrix<S> jacobi_matrix(const RecurrenceCoefficients<S>& rc, int n)
{
    static_assert(!is_exact_v<S>, "Jacobi matrices need square roots; use the floating path");
    if (n < 0 || n > rc.size())
        throw std::out_of_range("jacobi_matrix: order beyond recurrence length");
    JacobiMatrix<S> j;
    j.diagonal.assign(rc.alphas.begin(), rc.alphas.begin() + n);
    for (int k = 1; k < n; ++k) {
        const S& beta = rc.betas[static_cast<std::size_t>(k)];
        if (!(beta > 0))
            throw std::invalid_argument("jacobi_matrix: beta_" + std::to_string(k) + " is not positive");
        using std::sqrt;
        j.off_diagonal.push_back(S(sqrt(beta)));
    }
    return j;
}

/// sum_i c_i m_{i+j} for j = 0 .. n-1 (c_n = 1): zero exactly when p is orthogonal to x^j.
template <class S>
std::vector<S> orthogonality_residuals(const MonicPolynomial<S>& p, std::span<const S> moments)
{
    const int n = p.degree();
    detail::check_moment_count(moments, static_cast<std::size_t>(2 * n), "orthogonality_residuals");
    const std::vector<S> c = p.full();
    std::vector<S> residuals;
    for (int j = 0; j < n; ++j) {
        S sum = 0;
        for (int i = 0; i <= n; ++i)
            sum += c[static_cast<std::size_t>(i)] * moments[static_cast<std::size_t>(i + j)];
        residuals.push_back(sum);
    }
    return residuals;
}

} // namespace opz
