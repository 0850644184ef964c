#include "doctest.h"

#include "opz/lab.hpp"
#include "support.hpp"

#include <atomic>
#include <cmath>

using namespace opz;
using opz::testing::q;

namespace {

PerturbedMeasure with_mass(Family f, const Rational& mass, Arithmetic arithmetic = Arithmetic::exact())
{
    return PerturbedMeasure(MomentFunctional::classical(f, arithmetic), {PointMass(Rational(0), mass)}, 0);
}

SweepResult synthetic(std::vector<std::vector<double>> rows)
{
    SweepResult s;
    s.degree = static_cast<int>(rows.size());
    for (std::size_t i = 0; i < rows.front().size(); ++i)
        s.a_grid.push_back(Rational(static_cast<long>(i)));
    s.trajectories = std::move(rows);
    return s;
}

} // namespace

TEST_CASE("grids")
{
    const auto g = make_grid(q("-3/2"), q("3/2"), q("1/20"));
    CHECK(g.size() == 61);
    CHECK(g.front() == q("-3/2"));
    CHECK(g.back() == q("3/2"));
    CHECK_THROWS_AS(make_grid(q("0"), q("1"), q("0")), std::invalid_argument);
    const auto d = dyadic_gammas(10);
    CHECK(d.size() == 10);
    CHECK(d.back() == q("1/1024"));
}

TEST_CASE("parallel_for rethrows the lowest failing index")
{
    std::atomic<int> visited{0};
    try {
        parallel_for(100, 8, [&](std::size_t i) {
            ++visited;
            if (i == 17 || i == 60)
                throw std::runtime_error(std::to_string(i));
        });
        FAIL("no exception");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()) == "17");
    }
    CHECK(visited == 100);
}

TEST_CASE("check_monotone on synthetic trajectories")
{
    SweepResult up = synthetic({{0.0, 0.1, 0.2}, {1.0, 1.5, 2.0}});
    CHECK(check_monotone(up, 1e-11).kind == VerdictKind::StrictlyIncreasing);

    SweepResult flat = synthetic({{0.0, 0.1, 0.2}, {1.0, 1.0 + 1e-13, 2.0}});
    const Verdict v = check_monotone(flat, 1e-11);
    CHECK(v.kind == VerdictKind::Inconclusive);
    CHECK(v.zero_index == 2);
    CHECK(v.grid_index == 0);

    SweepResult down = synthetic({{0.0, 0.1, 0.05}, {1.0, 1.0 + 1e-13, 2.0}});
    const Verdict d = check_monotone(down, 1e-11);
    CHECK(d.kind == VerdictKind::Violated);
    CHECK(d.zero_index == 1);
    CHECK(d.grid_index == 1);

    SweepResult equal = synthetic({{0.3, 0.3}});
    CHECK(check_monotone(equal, 0).kind == VerdictKind::Violated);

    certify_sweep(up, 1e-11);
    REQUIRE(up.margin);
    CHECK(*up.margin == doctest::Approx(0.1));
}

TEST_CASE("degree 1 sweeps are strictly increasing on every base")
{
    const auto grid = make_grid(q("-3/2"), q("3/2"), q("1/20"));
    for (Family f : opz::testing::classical_families())
        for (const Rational& mass : opz::testing::catalog_masses()) {
            const SweepResult s = sweep_mass_location(with_mass(f, mass), grid, 1);
            CHECK(s.verdict.kind == VerdictKind::StrictlyIncreasing);
            REQUIRE(s.exact_margin);
            CHECK(*s.exact_margin > 0);
        }
}

TEST_CASE("a mass moving inside the support can push a zero backwards")
{
    // Legendre, M = 1, n = 3: from a = -3/5 to a = -9/20 the two lower zeros move left.
    const std::vector<Rational> grid{q("-3/5"), q("-9/20")};
    const SweepResult s = sweep_mass_location(with_mass(Family::Legendre, q("1")), grid, 3);
    CHECK(s.trajectories[1][0] == doctest::Approx(-0.059544221315774950778).epsilon(1e-14));
    CHECK(s.trajectories[1][1] == doctest::Approx(-0.13288985178849594265).epsilon(1e-14));
    CHECK(s.trajectories[0][0] == doctest::Approx(-0.69545701833313686575).epsilon(1e-14));
    CHECK(s.trajectories[0][1] == doctest::Approx(-0.6955290494717431644).epsilon(1e-14));
    CHECK(s.trajectories[2][1] == doctest::Approx(0.75913554096057359922).epsilon(1e-14));
    CHECK(s.verdict.kind == VerdictKind::Violated);
    CHECK(s.verdict.zero_index == 1);
    CHECK(s.verdict.grid_index == 0);
    CHECK(s.brackets[1][1].upper < s.brackets[1][0].lower);
    REQUIRE(s.exact_margin);
    CHECK(*s.exact_margin < 0);

    const SweepResult f = sweep_mass_location(with_mass(Family::Legendre, q("1"), Arithmetic::floating()), grid, 3);
    CHECK(f.verdict.kind == VerdictKind::Violated);
}

TEST_CASE("a mass moving outside the support moves every zero right")
{
    for (Family f : {Family::Legendre, Family::ChebyshevFirstKind})
        for (const Rational& mass : opz::testing::catalog_masses()) {
            const auto right = make_grid(q("21/20"), q("3"), q("1/20"));
            const auto left = make_grid(q("-3"), q("-21/20"), q("1/20"));
            for (int n = 1; n <= 6; ++n) {
                CAPTURE(n);
                CHECK(sweep_mass_location(with_mass(f, mass), right, n).verdict.kind ==
                      VerdictKind::StrictlyIncreasing);
                CHECK(sweep_mass_location(with_mass(f, mass), left, n).verdict.kind ==
                      VerdictKind::StrictlyIncreasing);
            }
        }
    const auto below = make_grid(q("-3"), q("-1/20"), q("1/20"));
    for (int n = 1; n <= 6; ++n)
        CHECK(sweep_mass_location(with_mass(Family::Laguerre, q("1")), below, n).verdict.kind ==
              VerdictKind::StrictlyIncreasing);
}

TEST_CASE("sweeps are independent of the thread count")
{
    const auto grid = make_grid(q("-3/2"), q("3/2"), q("1/10"));
    LabOptions one;
    one.threads = 1;
    LabOptions many;
    many.threads = 6;
    const auto m = with_mass(Family::Hermite, q("10"), Arithmetic::floating());
    CHECK(sweep_mass_location(m, grid, 5, one).trajectories == sweep_mass_location(m, grid, 5, many).trajectories);
}

TEST_CASE("sweep argument checks")
{
    const PerturbedMeasure no_moving(MomentFunctional::legendre());
    const std::vector<Rational> grid{q("0"), q("1")};
    CHECK_THROWS_AS(sweep_mass_location(no_moving, grid, 2), std::invalid_argument);
    const std::vector<Rational> unsorted{q("1"), q("0")};
    CHECK_THROWS_AS(sweep_mass_location(with_mass(Family::Legendre, q("1")), unsorted, 2), std::invalid_argument);
}

TEST_CASE("mollifier convergence: Legendre, M = 1, a = 1/2, n = 3")
{
    const auto gammas = dyadic_gammas(10);
    const ConvergenceTable t =
        mollifier_convergence(MomentFunctional::legendre(), q("1"), q("1/2"), gammas, 3);
    CHECK(t.reference_zeros[1] == doctest::Approx(0.11468069729807146982).epsilon(1e-15));
    CHECK(t.tail_nonincreasing);
    CHECK(t.worst_error.back() < 1e-5);
    for (std::size_t g = 0; g < gammas.size(); ++g) {
        CHECK(t.moment_errors[g][0] == 0);
        CHECK(t.moment_errors[g][1] == 0);
        CHECK(t.moment_errors[g][2] == doctest::Approx(to_double(gammas[g] * gammas[g] / 2)));
    }
    // second-order decay of the worst error once gamma is small
    const double ratio = t.worst_error[8] / t.worst_error[9];
    CHECK(ratio > 3.0);
    CHECK(ratio < 5.0);
}

TEST_CASE("mollifier convergence argument checks")
{
    const std::vector<Rational> increasing{q("1/4"), q("1/2")};
    CHECK_THROWS_AS(mollifier_convergence(MomentFunctional::legendre(), q("1"), q("0"), increasing, 2),
                    std::invalid_argument);
    const std::vector<Rational> negative{q("-1/4")};
    CHECK_THROWS_AS(mollifier_convergence(MomentFunctional::legendre(), q("1"), q("0"), negative, 2),
                    std::invalid_argument);
}

TEST_CASE("mollified sweeps with a wide Gaussian are increasing")
{
    const auto grid = make_grid(q("-3/2"), q("3/2"), q("1/20"));
    for (const char* gamma : {"10", "1"}) {
        CAPTURE(gamma);
        const SweepResult s = markov_criterion_sweep(MomentFunctional::legendre(), q("1"), q(gamma), grid, 3);
        CHECK(s.verdict.kind == VerdictKind::StrictlyIncreasing);
    }
    CHECK_THROWS_AS(markov_criterion_sweep(MomentFunctional::legendre(), q("1"), q("0"), grid, 3),
                    std::invalid_argument);
}
