#pragma once

#include "opz/measure.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace opz::testing {

inline Rational q(const char* text)
{
    return parse_rational(text);
}

inline const std::vector<Family>& classical_families()
{
    static const std::vector<Family> families{Family::Legendre, Family::ChebyshevFirstKind, Family::Laguerre,
                                              Family::Hermite};
    return families;
}

inline std::vector<Rational> catalog_masses()
{
    return {q("1/10"), q("1"), q("10")};
}

inline std::vector<Rational> catalog_locations()
{
    return {q("-3/2"), q("-1/2"), q("0"), q("1/2"), q("3/2")};
}

/// Test catalog: each classical base alone, and with one moving atom for every
/// combination of catalog mass and location.
inline std::vector<PerturbedMeasure> catalog(Arithmetic arithmetic)
{
    std::vector<PerturbedMeasure> out;
    for (Family f : classical_families()) {
        const MomentFunctional base = MomentFunctional::classical(f, arithmetic);
        out.emplace_back(base);
        for (const Rational& mass : catalog_masses())
            for (const Rational& a : catalog_locations())
                out.emplace_back(base, std::vector<PointMass>{PointMass(a, mass)}, 0);
    }
    return out;
}

/// Adaptive Gauss-Kronrod integral of x^k N(x; a, gamma) over a window holding all but
/// e^-(40^2) of the Gaussian. Independent of the closed-form moment code.
inline long double gaussian_moment_by_quadrature(long double a, long double gamma, int k, bool absolute = false)
{
    const long double norm = 1.0L / (std::sqrt(3.14159265358979323846264338327950288L) * gamma);
    auto integrand = [&](long double x) {
        const long double t = (x - a) / gamma;
        const long double p = std::pow(x, k);
        return (absolute ? std::fabs(p) : p) * norm * std::exp(-t * t);
    };
    using boost::math::quadrature::gauss_kronrod;
    long double total = 0;
    // panel edges at the peak, its shoulders and the kink of |x|^k at 0
    std::vector<long double> cuts{a - 40 * gamma, a - 8 * gamma, a, a + 8 * gamma, a + 40 * gamma};
    if (0 > cuts.front() && 0 < cuts.back())
        cuts.push_back(0.0L);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        total += gauss_kronrod<long double, 61>::integrate(integrand, cuts[i], cuts[i + 1], 10, 1e-15L);
    return total;
}

} // namespace opz::testing
