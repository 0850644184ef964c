#include "opz/measure.hpp"
#include "opz/errors.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace opz {

std::string to_string(Family family)
{
    switch (family) {
    case Family::Legendre: return "legendre";
    case Family::ChebyshevFirstKind: return "chebyshev1";
    case Family::Laguerre: return "laguerre";
    case Family::Hermite: return "hermite";
    case Family::ExplicitMoments: return "explicit";
    }
    return "unknown";
}

Family parse_family(const std::string& name)
{
    for (Family f : {Family::Legendre, Family::ChebyshevFirstKind, Family::Laguerre, Family::Hermite,
                     Family::ExplicitMoments})
        if (to_string(f) == name)
            return f;
    throw std::invalid_argument("unknown base family \"" + name +
                                "\" (expected legendre, chebyshev1, laguerre, hermite or explicit)");
}

Arithmetic Arithmetic::floating(int bits)
{
    if (!is_supported_precision(bits))
        throw std::invalid_argument("unsupported float precision: " + std::to_string(bits) + " bits");
    return {Mode::Float, bits};
}

bool Hull::contains(double x) const
{
    if (lower && x < to_double(*lower))
        return false;
    if (upper && x > to_double(*upper))
        return false;
    return true;
}

// ---------------------------------------------------------------------------
// MomentFunctional

MomentFunctional::MomentFunctional(Family family, Hull support, Arithmetic arithmetic, std::vector<Rational> moments)
    : family_(family), support_(std::move(support)), arithmetic_(arithmetic), explicit_(std::move(moments))
{
    if (!arithmetic_.is_exact() && !is_supported_precision(arithmetic_.precision_bits))
        throw std::invalid_argument("unsupported float precision: " + std::to_string(arithmetic_.precision_bits) +
                                    " bits");
    if (arithmetic_.is_exact())
        arithmetic_.precision_bits = 0;
}

MomentFunctional MomentFunctional::legendre(Arithmetic arithmetic)
{
    return {Family::Legendre, Hull{Rational(-1), Rational(1)}, arithmetic};
}

MomentFunctional MomentFunctional::chebyshev_first_kind(Arithmetic arithmetic)
{
    return {Family::ChebyshevFirstKind, Hull{Rational(-1), Rational(1)}, arithmetic};
}

MomentFunctional MomentFunctional::laguerre(Arithmetic arithmetic)
{
    return {Family::Laguerre, Hull{Rational(0), std::nullopt}, arithmetic};
}

MomentFunctional MomentFunctional::hermite(Arithmetic arithmetic)
{
    return {Family::Hermite, Hull{}, arithmetic};
}

MomentFunctional MomentFunctional::classical(Family family, Arithmetic arithmetic)
{
    switch (family) {
    case Family::Legendre: return legendre(arithmetic);
    case Family::ChebyshevFirstKind: return chebyshev_first_kind(arithmetic);
    case Family::Laguerre: return laguerre(arithmetic);
    case Family::Hermite: return hermite(arithmetic);
    case Family::ExplicitMoments: break;
    }
    throw std::invalid_argument("explicit moment functionals need a moment list");
}

MomentFunctional MomentFunctional::explicit_moments(std::vector<Rational> moments, Hull support, Arithmetic arithmetic)
{
    if (moments.empty())
        throw std::invalid_argument("explicit moment list is empty");
    if (moments.front() <= 0)
        throw SingularMomentsError(1, "explicit moments: m_0 must be positive");

    // LDL^T pivots of every leading Hankel block the list determines.
    const int order = static_cast<int>((moments.size() - 1) / 2) + 1;
    std::vector<Rational> h(static_cast<std::size_t>(order * order));
    for (int i = 0; i < order; ++i)
        for (int j = 0; j < order; ++j)
            h[static_cast<std::size_t>(i * order + j)] = moments[static_cast<std::size_t>(i + j)];
    for (int k = 0; k < order; ++k) {
        const Rational pivot = h[static_cast<std::size_t>(k * order + k)];
        if (pivot <= 0)
            throw SingularMomentsError(k + 1, "explicit moments: Hankel matrix is not positive definite (leading minor " +
                                                  std::to_string(k + 1) + ")");
        for (int i = k + 1; i < order; ++i) {
            const Rational factor = h[static_cast<std::size_t>(i * order + k)] / pivot;
            for (int j = k + 1; j < order; ++j)
                h[static_cast<std::size_t>(i * order + j)] -= factor * h[static_cast<std::size_t>(k * order + j)];
        }
    }
    return {Family::ExplicitMoments, std::move(support), arithmetic, std::move(moments)};
}

std::optional<int> MomentFunctional::max_moment_index() const
{
    if (family_ == Family::ExplicitMoments)
        return static_cast<int>(explicit_.size()) - 1;
    return std::nullopt;
}

MomentFunctional MomentFunctional::with_arithmetic(Arithmetic arithmetic) const
{
    return MomentFunctional(family_, support_, arithmetic, explicit_);
}

Rational base_moment(const MomentFunctional& f, int k)
{
    if (k < 0)
        throw std::invalid_argument("base_moment: negative moment index");
    const bool odd = (k % 2) != 0;
    switch (f.family()) {
    case Family::Legendre:
        return odd ? Rational(0) : Rational(2, k + 1);
    case Family::ChebyshevFirstKind: {
        if (odd)
            return Rational(0);
        // C(2h, h) / 4^h
        Rational m(1);
        for (int i = 1; i <= k / 2; ++i)
            m *= Rational(2 * i - 1, 2 * i);
        return m;
    }
    case Family::Laguerre: {
        mpz_class factorial;
        mpz_fac_ui(factorial.get_mpz_t(), static_cast<unsigned long>(k));
        return Rational(factorial);
    }
    case Family::Hermite: {
        if (odd)
            return Rational(0);
        // (2h - 1)!! / 2^h
        Rational m(1);
        for (int i = 1; i < k; i += 2)
            m *= Rational(i, 2);
        return m;
    }
    case Family::ExplicitMoments: {
        const auto& values = f.explicit_values();
        if (k >= static_cast<int>(values.size()))
            throw std::out_of_range("moment index " + std::to_string(k) + " exceeds the " +
                                    std::to_string(values.size()) + " supplied explicit moments");
        return values[static_cast<std::size_t>(k)];
    }
    }
    throw std::logic_error("base_moment: unhandled family");
}

// ---------------------------------------------------------------------------
// Point masses

PointMass::PointMass(Rational location_, Rational mass_) : location(std::move(location_)), mass(std::move(mass_))
{
    if (mass <= 0)
        throw std::invalid_argument("point mass must be positive (got M = " + to_string(mass) + ")");
}

PerturbedMeasure::PerturbedMeasure(MomentFunctional base, std::vector<PointMass> masses,
                                   std::optional<std::size_t> moving_index)
    : base_(std::move(base))
{
    if (moving_index && *moving_index >= masses.size())
        throw std::out_of_range("moving index " + std::to_string(*moving_index) + " out of range for " +
                                std::to_string(masses.size()) + " masses");
    for (std::size_t i = 0; i < masses.size(); ++i) {
        auto it = std::find_if(masses_.begin(), masses_.end(),
                               [&](const PointMass& p) { return p.location == masses[i].location; });
        std::size_t slot;
        if (it == masses_.end()) {
            slot = masses_.size();
            masses_.push_back(masses[i]);
        } else {
            slot = static_cast<std::size_t>(it - masses_.begin());
            it->mass += masses[i].mass;
        }
        if (moving_index && *moving_index == i)
            moving_ = slot;
    }
}

PerturbedMeasure PerturbedMeasure::with_moving_location(const Rational& location) const
{
    if (!moving_)
        throw std::logic_error("measure has no moving mass");
    std::vector<PointMass> relocated = masses_;
    relocated[*moving_].location = location;
    return PerturbedMeasure(base_, std::move(relocated), moving_);
}

PerturbedMeasure PerturbedMeasure::without_moving() const
{
    std::vector<PointMass> fixed;
    for (std::size_t i = 0; i < masses_.size(); ++i)
        if (!moving_ || *moving_ != i)
            fixed.push_back(masses_[i]);
    return PerturbedMeasure(base_, std::move(fixed));
}

PerturbedMeasure PerturbedMeasure::with_arithmetic(Arithmetic arithmetic) const
{
    return PerturbedMeasure(base_.with_arithmetic(arithmetic), masses_, moving_);
}

Hull PerturbedMeasure::hull() const
{
    Hull h = base_.support();
    for (const PointMass& p : masses_) {
        if (h.lower && p.location < *h.lower)
            h.lower = p.location;
        if (h.upper && p.location > *h.upper)
            h.upper = p.location;
    }
    return h;
}

std::string PerturbedMeasure::describe() const
{
    std::ostringstream out;
    out << to_string(base_.family());
    for (std::size_t i = 0; i < masses_.size(); ++i) {
        out << " + " << to_string(masses_[i].mass) << "*delta(x-"
            << (moving_ && *moving_ == i ? std::string("a") : to_string(masses_[i].location)) << ")";
    }
    return out.str();
}

Rational perturbed_moment(const PerturbedMeasure& m, int k)
{
    Rational total = base_moment(m.base(), k);
    for (const PointMass& p : m.masses())
        total += p.mass * pow(p.location, k);
    return total;
}

// ---------------------------------------------------------------------------
// Gaussian mollifier

GaussianMollifier::GaussianMollifier(Rational center_, Rational width_, Rational mass_)
    : center(std::move(center_)), width(std::move(width_)), mass(std::move(mass_))
{
    if (width <= 0)
        throw std::invalid_argument("mollifier width gamma must be positive (got " + to_string(width) + ")");
    if (mass <= 0)
        throw std::invalid_argument("mollifier mass must be positive (got " + to_string(mass) + ")");
}

Rational gaussian_moment(const Rational& center, const Rational& width, int k)
{
    if (width <= 0)
        throw std::invalid_argument("gaussian_moment: width must be positive");
    if (k < 0)
        throw std::invalid_argument("gaussian_moment: negative moment index");
    Rational sum(0);
    Rational half_gamma_ratio(1);
    for (int j = 0; j <= k; j += 2) {
        mpz_class binom;
        mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(j));
        sum += Rational(binom) * half_gamma_ratio * pow(center, k - j) * pow(width, j);
        half_gamma_ratio *= Rational(j + 1, 2);
    }
    return sum;
}

Rational gaussian_moment(const GaussianMollifier& g, int k)
{
    return gaussian_moment(g.center, g.width, k);
}

Rational mollified_moment(const MomentFunctional& f, const GaussianMollifier& g, int k)
{
    return base_moment(f, k) + g.mass * gaussian_moment(g, k);
}

MollifiedMeasure::MollifiedMeasure(PerturbedMeasure fixed_part, GaussianMollifier mollifier)
    : fixed_(std::move(fixed_part)), mollifier_(std::move(mollifier))
{}

std::string MollifiedMeasure::describe() const
{
    return fixed_.describe() + " + " + to_string(mollifier_.mass) + "*N(x;a," + to_string(mollifier_.width) + ")";
}

Rational mollified_moment(const MollifiedMeasure& m, int k)
{
    return perturbed_moment(m.fixed_part(), k) + m.mollifier().mass * gaussian_moment(m.mollifier(), k);
}

std::vector<Rational> moments(const PerturbedMeasure& m, int count)
{
    std::vector<Rational> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k)
        out.push_back(perturbed_moment(m, k));
    return out;
}

std::vector<Rational> moments(const MollifiedMeasure& m, int count)
{
    std::vector<Rational> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k)
        out.push_back(mollified_moment(m, k));
    return out;
}

} // namespace opz
