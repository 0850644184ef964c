#pragma once

#include "opz/measure.hpp"
#include "opz/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace opz {

enum class ZeroMethod { JacobiBisection, SturmExact };

std::string to_string(ZeroMethod method);

struct RationalBracket
{
    Rational lower;
    Rational upper;

    bool is_point() const { return lower == upper; }
    bool operator==(const RationalBracket&) const = default;
};

/// Sorted zeros of p_n. The exact path also carries a rational isolating bracket per zero.
struct ZeroSet
{
    int degree = 0;
    std::vector<double> zeros;
    std::vector<RationalBracket> brackets;
    ZeroMethod method = ZeroMethod::JacobiBisection;
    /// Upper bound on the half-width of each bracket the zero was located in.
    double certified_accuracy = 0.0;
    /// Set when the exact result was compared against the floating path.
    bool cross_checked = false;

    bool exact() const { return method == ZeroMethod::SturmExact; }
};

struct ZeroOptions
{
    EngineLimits limits;
    /// Relative bracket width at which Jacobi bisection stops.
    double bisection_width = 1e-13;
    /// Exact results up to this degree are re-derived on the floating path and compared.
    int cross_check_max_degree = 8;
    double cross_check_tolerance = 1e-10;
    /// Floating working precision used when the measure itself is exact.
    int float_bits = kExtendedBits;
};

/// Number of eigenvalues of J strictly below x (sign count of the LDL^T pivots of J - xI).
template <class S>
int sturm_count(const JacobiMatrix<S>& j, const S& x)
{
    const int n = j.order();
    int count = 0;
    S q = 1;
    const S tiny = std::numeric_limits<S>::min() / std::numeric_limits<S>::epsilon();
    for (int i = 0; i < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        S next = j.diagonal[ui] - x;
        if (i > 0) {
            const S& b = j.off_diagonal[ui - 1];
            next -= b * b / q;
        }
        if (next == 0)
            next = -tiny;
        if (next < 0)
            ++count;
        q = next;
    }
    return count;
}

/// Eigenvalues of J by bisection on Sturm counts. Each eigenvalue is bracketed to
/// width <= min(rel_width, 4 eps) * (1 + |x|); the starting interval is the Gershgorin interval,
/// shrunk to [hull.lower - 1, hull.upper + 1] where the hull is finite.
template <class S>
ZeroSet zeros_from_jacobi(const JacobiMatrix<S>& j, const Hull& hull = {}, double rel_width = 1e-13)
{
    using std::abs;
    const int n = j.order();
    ZeroSet result;
    result.degree = n;
    result.method = ZeroMethod::JacobiBisection;
    if (n == 0)
        return result;

    S lower = 0, upper = 0;
    for (int i = 0; i < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        S radius = 0;
        if (i > 0)
            radius += abs(j.off_diagonal[ui - 1]);
        if (i + 1 < n)
            radius += abs(j.off_diagonal[ui]);
        const S lo = j.diagonal[ui] - radius;
        const S hi = j.diagonal[ui] + radius;
        if (i == 0 || lo < lower)
            lower = lo;
        if (i == 0 || hi > upper)
            upper = hi;
    }
    if (hull.lower)
        lower = std::max(lower, S(to_scalar<S>(*hull.lower) - 1));
    if (hull.upper)
        upper = std::min(upper, S(to_scalar<S>(*hull.upper) + 1));
    const S pad = S(1e-12) * (S(1) + std::max(abs(lower), abs(upper)));
    lower -= pad;
    upper += pad;

    // Refine to a few ulps of the working precision; rel_width is the ceiling.
    const S width_factor = std::min(S(rel_width), S(4 * std::numeric_limits<S>::epsilon()));
    double widest = 0.0;
    for (int k = 0; k < n; ++k) {
        // smallest x with more than k eigenvalues below it
        S lo = lower, hi = upper;
        for (int iter = 0; iter < 400; ++iter) {
            const S mid = (lo + hi) / 2;
            if (hi - lo <= width_factor * (S(1) + abs(mid)) || mid == lo || mid == hi)
                break;
            if (sturm_count(j, mid) > k)
                hi = mid;
            else
                lo = mid;
        }
        result.zeros.push_back(narrow<S>((lo + hi) / 2));
        widest = std::max(widest, narrow<S>(hi - lo));
        lower = lo;
    }
    result.certified_accuracy = widest / 2;
    for (std::size_t k = 1; k < result.zeros.size(); ++k)
        if (!(result.zeros[k] > result.zeros[k - 1]))
            throw std::runtime_error("zeros_from_jacobi: zeros " + std::to_string(k) + " and " +
                                     std::to_string(k + 1) + " coincide at working precision");
    return result;
}

/// Sturm-sequence isolation of the real zeros of an exact monic polynomial, each
/// refined by bisection to width <= 2^-60 of the starting bracket.
ZeroSet zeros_exact(const MonicPolynomial<Rational>& p, const Hull& hull = {}, const EngineLimits& limits = {});

/// Zeros of the floating path: round moments, Chebyshev algorithm, Jacobi bisection.
template <class S>
ZeroSet float_path_zeros(std::span<const Rational> exact_moments, int n, const Hull& hull, const ZeroOptions& options)
{
    const std::vector<S> m = round_moments<S>(exact_moments);
    const RecurrenceCoefficients<S> rc = moments_to_recurrence<S>(std::span<const S>(m), n, options.limits);
    return zeros_from_jacobi(jacobi_matrix(rc, n), hull, options.bisection_width);
}

ZeroSet float_path_zeros(std::span<const Rational> exact_moments, int n, const Hull& hull, int precision_bits,
                         const ZeroOptions& options);

/// Dispatch: exact Hankel + Sturm path for exact measures (cross-checked against the
/// floating path up to options.cross_check_max_degree), Jacobi path otherwise.
ZeroSet zeros(const PerturbedMeasure& m, int n, const ZeroOptions& options = {});

/// The mollified family is handled on the floating path only.
ZeroSet zeros(const MollifiedMeasure& m, int n, const ZeroOptions& options = {});

} // namespace opz
