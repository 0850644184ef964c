#pragma once

#include "opz/rational.hpp"
#include "opz/scalar.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace opz {

enum class Family { Legendre, ChebyshevFirstKind, Laguerre, Hermite, ExplicitMoments };

std::string to_string(Family family);
Family parse_family(const std::string& name);

/// Exact rational moments, or moments rounded into a floating working precision.
struct Arithmetic
{
    enum class Mode { Exact, Float };

    Mode mode = Mode::Float;
    int precision_bits = kExtendedBits;

    static Arithmetic exact() { return {Mode::Exact, 0}; }
    static Arithmetic floating(int bits = kExtendedBits);

    bool is_exact() const { return mode == Mode::Exact; }
    bool operator==(const Arithmetic&) const = default;
};

/// Closed interval with optionally infinite endpoints (nullopt = infinite).
struct Hull
{
    std::optional<Rational> lower;
    std::optional<Rational> upper;

    bool contains(double x) const;
    bool operator==(const Hull&) const = default;
};

/// Moments of a base measure. The classical weights are
///   Legendre             1                      on [-1, 1]
///   ChebyshevFirstKind   1 / (pi sqrt(1 - x^2)) on [-1, 1]
///   Laguerre             e^-x                   on [0, inf)
///   Hermite              e^-x^2 / sqrt(pi)      on (-inf, inf)
/// so every moment is rational.
class MomentFunctional
{
public:
    static MomentFunctional legendre(Arithmetic arithmetic = {});
    static MomentFunctional chebyshev_first_kind(Arithmetic arithmetic = {});
    static MomentFunctional laguerre(Arithmetic arithmetic = {});
    static MomentFunctional hermite(Arithmetic arithmetic = {});
    static MomentFunctional classical(Family family, Arithmetic arithmetic = {});

    /// Requires m_0 > 0 and a positive definite Hankel matrix over every
    /// leading block the supplied moments determine.
    static MomentFunctional explicit_moments(std::vector<Rational> moments, Hull support = {},
                                             Arithmetic arithmetic = {});

    Family family() const { return family_; }
    const Hull& support() const { return support_; }
    const Arithmetic& arithmetic() const { return arithmetic_; }
    const std::vector<Rational>& explicit_values() const { return explicit_; }

    /// Highest available moment index, or nullopt when unbounded.
    std::optional<int> max_moment_index() const;

    MomentFunctional with_arithmetic(Arithmetic arithmetic) const;

    bool operator==(const MomentFunctional&) const = default;

private:
    MomentFunctional(Family family, Hull support, Arithmetic arithmetic, std::vector<Rational> moments = {});

    Family family_;
    Hull support_;
    Arithmetic arithmetic_;
    std::vector<Rational> explicit_;
};

Rational base_moment(const MomentFunctional& f, int k);

struct PointMass
{
    Rational location;
    Rational mass;

    PointMass(Rational location, Rational mass);
    bool operator==(const PointMass&) const = default;
};

/// Base measure plus finitely many atoms; one of them may be marked as moving.
/// Atoms at the same location are merged by summing their masses.
class PerturbedMeasure
{
public:
    explicit PerturbedMeasure(MomentFunctional base, std::vector<PointMass> masses = {},
                              std::optional<std::size_t> moving_index = std::nullopt);

    const MomentFunctional& base() const { return base_; }
    const std::vector<PointMass>& masses() const { return masses_; }
    std::optional<std::size_t> moving_index() const { return moving_; }
    const Arithmetic& arithmetic() const { return base_.arithmetic(); }

    /// Same measure with the moving atom relocated to `location`.
    PerturbedMeasure with_moving_location(const Rational& location) const;

    /// Drops the moving atom, keeping the base and all fixed atoms.
    PerturbedMeasure without_moving() const;

    PerturbedMeasure with_arithmetic(Arithmetic arithmetic) const;

    /// Convex hull of the base support and all atom locations.
    Hull hull() const;

    std::string describe() const;

    bool operator==(const PerturbedMeasure&) const = default;

private:
    MomentFunctional base_;
    std::vector<PointMass> masses_;
    std::optional<std::size_t> moving_;
};

Rational perturbed_moment(const PerturbedMeasure& m, int k);

/// Parameters of M N(x; a, gamma), N(x; a, gamma) = exp(-((x - a) / gamma)^2) / (sqrt(pi) gamma).
struct GaussianMollifier
{
    Rational center;
    Rational width;
    Rational mass;

    GaussianMollifier(Rational center, Rational width, Rational mass = Rational(1));
    bool operator==(const GaussianMollifier&) const = default;
};

/// k-th moment of N(x; a, gamma) dx (unit mass):
///   sum over even j of C(k, j) (Gamma((j + 1) / 2) / sqrt(pi)) a^(k - j) gamma^j,
/// with Gamma((j + 1) / 2) / sqrt(pi) = (j - 1)!! / 2^(j / 2) from Gamma(1/2) = sqrt(pi), Gamma(z + 1) = z Gamma(z).
Rational gaussian_moment(const Rational& center, const Rational& width, int k);
Rational gaussian_moment(const GaussianMollifier& g, int k);

template <class S>
S gaussian_moment(const S& center, const S& width, int k);

/// m_k(base) + M m_k(a, gamma).
Rational mollified_moment(const MomentFunctional& f, const GaussianMollifier& g, int k);

/// A perturbed measure whose moving atom is replaced by a Gaussian of the same mass.
class MollifiedMeasure
{
public:
    MollifiedMeasure(PerturbedMeasure fixed_part, GaussianMollifier mollifier);

    const PerturbedMeasure& fixed_part() const { return fixed_; }
    const GaussianMollifier& mollifier() const { return mollifier_; }
    Hull hull() const { return {}; }
    std::string describe() const;

private:
    PerturbedMeasure fixed_;
    GaussianMollifier mollifier_;
};

Rational mollified_moment(const MollifiedMeasure& m, int k);

/// Moments m_0 .. m_{count-1}.
std::vector<Rational> moments(const PerturbedMeasure& m, int count);
std::vector<Rational> moments(const MollifiedMeasure& m, int count);

template <class S>
std::vector<S> round_moments(std::span<const Rational> exact)
{
    std::vector<S> out;
    out.reserve(exact.size());
    for (const Rational& q : exact)
        out.push_back(to_scalar<S>(q));
    return out;
}

// ---------------------------------------------------------------------------

template <class S>
S gaussian_moment(const S& center, const S& width, int k)
{
    if (!(width > 0))
        throw std::invalid_argument("gaussian_moment: width must be positive");
    if (k < 0)
        throw std::invalid_argument("gaussian_moment: negative moment index");
    S sum = 0;
    S half_gamma_ratio = 1; // Gamma((j + 1) / 2) / sqrt(pi)
    S binom = 1;            // C(k, j)
    S width_power = 1;
    for (int j = 0; j <= k; j += 2) {
        using std::pow;
        sum += binom * half_gamma_ratio * S(pow(center, k - j)) * width_power;
        // advance j -> j + 2
        binom = binom * S(k - j) * S(k - j - 1) / (S(j + 1) * S(j + 2));
        half_gamma_ratio = half_gamma_ratio * S(j + 1) / S(2);
        width_power = width_power * width * width;
    }
    return sum;
}

} // namespace opz
