#include "doctest.h"

#include "opz/errors.hpp"
#include "opz/measure.hpp"
#include "support.hpp"

#include <cmath>

using namespace opz;
using opz::testing::q;

TEST_CASE("base_moment: Legendre")
{
    const auto f = MomentFunctional::legendre(Arithmetic::exact());
    CHECK(base_moment(f, 0) == 2);
    CHECK(base_moment(f, 1) == 0);
    CHECK(base_moment(f, 2) == q("2/3"));
}

TEST_CASE("base_moment: other classical families")
{
    // normalized Chebyshev: C(2h, h) / 4^h
    const auto cheb = MomentFunctional::chebyshev_first_kind();
    CHECK(base_moment(cheb, 0) == 1);
    CHECK(base_moment(cheb, 2) == q("1/2"));
    CHECK(base_moment(cheb, 4) == q("3/8"));
    CHECK(base_moment(cheb, 5) == 0);
    const auto lag = MomentFunctional::laguerre();
    CHECK(base_moment(lag, 5) == 120);
    // normalized Hermite: (2h - 1)!! / 2^h
    const auto her = MomentFunctional::hermite();
    CHECK(base_moment(her, 0) == 1);
    CHECK(base_moment(her, 2) == q("1/2"));
    CHECK(base_moment(her, 4) == q("3/4"));
    CHECK(base_moment(her, 6) == q("15/8"));
    CHECK_THROWS_AS(base_moment(her, -1), std::invalid_argument);
}

TEST_CASE("classical moments match quadrature of their weights")
{
    using boost::math::quadrature::gauss_kronrod;
    const long double pi = 3.14159265358979323846264338327950288L;
    for (int k = 0; k <= 8; ++k) {
        CAPTURE(k);
        // Chebyshev via x = cos(t): (1/pi) int_0^pi cos^k t dt
        const long double cheb = gauss_kronrod<long double, 61>::integrate(
                                     [&](long double t) { return std::pow(std::cos(t), k); }, 0.0L, pi, 15, 1e-18L) /
                                 pi;
        CHECK(std::abs(cheb - to_scalar<long double>(base_moment(MomentFunctional::chebyshev_first_kind(), k))) <
              1e-15);
        const long double her = gauss_kronrod<long double, 61>::integrate(
                                    [&](long double x) { return std::pow(x, k) * std::exp(-x * x); }, -30.0L, 30.0L,
                                    15, 1e-18L) /
                                std::sqrt(pi);
        CHECK(std::abs(her - to_scalar<long double>(base_moment(MomentFunctional::hermite(), k))) < 1e-14);
    }
}

TEST_CASE("explicit moments")
{
    const auto f = MomentFunctional::explicit_moments({q("2"), q("0"), q("2/3"), q("0"), q("2/5")},
                                                      Hull{q("-1"), q("1")}, Arithmetic::exact());
    CHECK(base_moment(f, 4) == q("2/5"));
    CHECK(f.max_moment_index() == 4);
    CHECK_THROWS_AS(base_moment(f, 5), std::out_of_range);
    CHECK_THROWS_AS(MomentFunctional::explicit_moments({q("0"), q("1")}), SingularMomentsError);
    // m_0 m_2 - m_1^2 < 0
    try {
        MomentFunctional::explicit_moments({q("1"), q("2"), q("1")});
        FAIL("indefinite Hankel matrix accepted");
    } catch (const SingularMomentsError& e) {
        CHECK(e.minor_order() == 2);
    }
}

TEST_CASE("point masses and merging")
{
    CHECK_THROWS_AS(PointMass(q("1/2"), q("0")), std::invalid_argument);
    CHECK_THROWS_AS(PointMass(q("1/2"), q("-1")), std::invalid_argument);

    const PerturbedMeasure m(MomentFunctional::legendre(),
                             {PointMass(q("1/2"), q("1")), PointMass(q("-1"), q("2")), PointMass(q("1/2"), q("3"))}, 2);
    REQUIRE(m.masses().size() == 2);
    CHECK(m.masses()[0].mass == 4);
    CHECK(m.moving_index() == 0u);
    CHECK(perturbed_moment(m, 0) == 2 + 4 + 2);

    const Hull h = m.hull();
    CHECK(*h.lower == -1);
    CHECK(*h.upper == 1);
    const PerturbedMeasure outside = m.with_moving_location(q("3"));
    CHECK(*outside.hull().upper == 3);
    CHECK(outside.without_moving().masses().size() == 1);
}

TEST_CASE("perturbed_moment: Legendre + (1, 1/2)")
{
    const PerturbedMeasure m(MomentFunctional::legendre(Arithmetic::exact()), {PointMass(q("1/2"), q("1"))}, 0);
    CHECK(perturbed_moment(m, 0) == 3);
    CHECK(perturbed_moment(m, 1) == q("1/2"));
    CHECK(perturbed_moment(m, 2) == q("11/12"));
}

TEST_CASE("gaussian_moment examples")
{
    CHECK(gaussian_moment(q("0"), q("1"), 2) == q("1/2"));
    CHECK(gaussian_moment(q("7/3"), q("1/5"), 1) == q("7/3"));
    CHECK(gaussian_moment(q("-2"), q("3"), 0) == 1);
    CHECK_THROWS_AS(GaussianMollifier(q("0"), q("0")), std::invalid_argument);
    CHECK_THROWS_AS(GaussianMollifier(q("0"), q("-1/2")), std::invalid_argument);
    CHECK_THROWS_AS(gaussian_moment(q("0"), q("0"), 2), std::invalid_argument);
    CHECK_THROWS_AS(gaussian_moment(0.0, -1.0, 2), std::invalid_argument);
}

TEST_CASE("gaussian_moment: normalization is exact for every center and width")
{
    for (const char* a : {"-2", "0", "1/2", "13/7"})
        for (const char* g : {"1/1000", "1/3", "10"}) {
            CHECK(gaussian_moment(q(a), q(g), 0) == 1);
            CHECK(gaussian_moment(to_double(q(a)), to_double(q(g)), 0) == 1.0);
        }
}

TEST_CASE("gaussian_moment: floating and exact evaluations agree")
{
    for (int k = 0; k <= 12; ++k)
        for (const char* a : {"-2", "1/2", "2"})
            for (const char* g : {"1/100", "1/10", "1"}) {
                const long double exact = to_scalar<long double>(gaussian_moment(q(a), q(g), k));
                const long double floating = gaussian_moment<long double>(to_scalar<long double>(q(a)),
                                                                          to_scalar<long double>(q(g)), k);
                CHECK(std::abs(floating - exact) <= 1e-16L * std::max(1.0L, std::abs(exact)));
            }
}

TEST_CASE("gaussian_moment matches adaptive quadrature")
{
    for (int k = 0; k <= 10; ++k)
        for (const char* a : {"-2", "-1/2", "0", "1/2", "2"})
            for (const char* g : {"1/100", "1/10", "1/2", "1"}) {
                CAPTURE(k);
                CAPTURE(a);
                CAPTURE(g);
                const long double ad = to_scalar<long double>(q(a));
                const long double gd = to_scalar<long double>(q(g));
                const long double closed = to_scalar<long double>(gaussian_moment(q(a), q(g), k));
                const long double numeric = opz::testing::gaussian_moment_by_quadrature(ad, gd, k);
                const long double scale = opz::testing::gaussian_moment_by_quadrature(ad, gd, k, true);
                CHECK(std::abs(closed - numeric) <= 1e-10L * (closed != 0 ? std::abs(closed) : scale));
            }
}

TEST_CASE("gaussian_moment: delta limit is second order")
{
    for (int k = 2; k <= 12; ++k)
        for (const char* a : {"-1", "1/2", "2"}) {
            CAPTURE(k);
            CAPTURE(a);
            const Rational center = q(a);
            const Rational limit = opz::pow(center, k);
            const Rational g = q("1/100");
            const double e1 = to_double(abs(gaussian_moment(center, g, k) - limit));
            const double e2 = to_double(abs(gaussian_moment(center, g / 2, k) - limit));
            const double ratio = e1 / e2;
            CHECK(ratio >= 3.5);
            CHECK(ratio <= 4.5);
        }
    // a = 0: the leading term is exactly C(k,2) * (1/2) * 0^(k-2) gamma^2 only for k = 2
    const double ratio0 = to_double(gaussian_moment(q("0"), q("1/100"), 2) / gaussian_moment(q("0"), q("1/200"), 2));
    CHECK(ratio0 == doctest::Approx(4.0));
}

TEST_CASE("gaussian_moment: translation covariance")
{
    // moments about center a + t expand binomially in the centered moments
    const Rational g = q("3/7");
    for (const char* a : {"-1", "0", "5/4"})
        for (const char* t : {"1/3", "-2"})
            for (int k = 0; k <= 9; ++k) {
                const Rational shifted = q(a) + q(t);
                Rational expanded(0);
                for (int j = 0; j <= k; ++j) {
                    mpz_class binom;
                    mpz_bin_uiui(binom.get_mpz_t(), k, j);
                    expanded += Rational(binom) * opz::pow(shifted, k - j) * gaussian_moment(q("0"), g, j);
                }
                CHECK(gaussian_moment(shifted, g, k) == expanded);
            }
}

TEST_CASE("mollified_moment")
{
    const auto f = MomentFunctional::legendre();
    const GaussianMollifier g(q("0"), q("1"), q("1"));
    CHECK(mollified_moment(f, g, 0) == 3);
    CHECK(mollified_moment(f, g, 2) == q("7/6"));

    const PerturbedMeasure point(f, {PointMass(q("1/2"), q("1"))}, 0);
    for (int k = 0; k <= 6; ++k) {
        Rational previous = -1;
        for (int e = 1; e <= 12; ++e) {
            const GaussianMollifier narrow(q("1/2"), Rational(1, 1 << e), q("1"));
            const Rational gap = abs(mollified_moment(f, narrow, k) - perturbed_moment(point, k));
            if (k >= 2 && previous >= 0)
                CHECK(gap < previous);
            if (k < 2)
                CHECK(gap == 0);
            previous = gap;
        }
    }
    const MollifiedMeasure mm(point.without_moving(), GaussianMollifier(q("1/2"), q("1/4"), q("1")));
    CHECK(mollified_moment(mm, 3) == mollified_moment(f, GaussianMollifier(q("1/2"), q("1/4"), q("1")), 3));
}
