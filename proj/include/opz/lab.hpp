#pragma once

#include "opz/measure.hpp"
#include "opz/zeros.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace opz {

enum class VerdictKind { StrictlyIncreasing, Violated, Inconclusive };

std::string to_string(VerdictKind kind);

struct Verdict
{
    VerdictKind kind = VerdictKind::StrictlyIncreasing;
    /// First offending pair: zero index k (1-based) between grid points i and i + 1.
    int zero_index = 0;
    int grid_index = -1;

    bool strictly_increasing() const { return kind == VerdictKind::StrictlyIncreasing; }
};

/// Zero trajectories x_{nk}(a_i) over a grid of mass locations.
struct SweepResult
{
    std::string description;
    int degree = 0;
    bool exact = false;
    std::vector<Rational> a_grid;
    /// trajectories[k][i] = x_{n,k+1}(a_i)
    std::vector<std::vector<double>> trajectories;
    /// Same shape; populated on the exact path only.
    std::vector<std::vector<RationalBracket>> brackets;
    Verdict verdict;
    /// min over (k, i) of x_{nk}(a_{i+1}) - x_{nk}(a_i); empty with fewer than two grid points.
    std::optional<double> margin;
    /// Exact path: min over (k, i) of lower(x_{nk}(a_{i+1})) - upper(x_{nk}(a_i)).
    std::optional<Rational> exact_margin;
    double strictness_margin = 0.0;
};

struct ConvergenceTable
{
    std::string description;
    Rational location;
    Rational mass;
    int degree = 0;
    std::vector<Rational> gammas;
    std::vector<double> reference_zeros;
    /// errors[g][k] = |x_{nk}(a, gamma_g) - x_{nk}(a)|
    std::vector<std::vector<double>> errors;
    std::vector<double> worst_error;
    /// moment_errors[g][k] = |m_k(a, gamma_g) - a^k| for k = 0 .. kMomentColumns - 1
    std::vector<std::vector<double>> moment_errors;
    /// worst_error is nonincreasing over the last (up to) four gammas.
    bool tail_nonincreasing = false;

    static constexpr int kMomentColumns = 5;
};

struct LabOptions
{
    ZeroOptions zeros;
    /// Float-mode differences at or below this are Inconclusive rather than increasing.
    double strictness_margin = 1e-11;
    /// Worker threads; 0 means default_thread_count().
    unsigned threads = 0;
};

/// OPZ_THREADS when set to a positive integer, else the hardware concurrency.
unsigned default_thread_count();

/// Runs body(i) for i in [0, count) on up to `threads` workers. The exception of the
/// lowest failing index is rethrown, so failures are independent of scheduling.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

/// Standard grid lo, lo + step, ... up to hi inclusive, in exact arithmetic.
std::vector<Rational> make_grid(const Rational& lo, const Rational& hi, const Rational& step);

/// Dyadic schedule 2^-1 .. 2^-count.
std::vector<Rational> dyadic_gammas(int count = 10);

SweepResult sweep_mass_location(const PerturbedMeasure& m, std::span<const Rational> a_grid, int n,
                                const LabOptions& options = {});

/// Verdict for a sweep: exact sweeps compare brackets and are never Inconclusive; float
/// sweeps call a difference in (0, strictness_margin] Inconclusive.
Verdict check_monotone(const SweepResult& s, double strictness_margin);

/// Fills margin, exact_margin and verdict from the trajectories (and brackets, when exact).
void certify_sweep(SweepResult& s, double strictness_margin);

ConvergenceTable mollifier_convergence(const PerturbedMeasure& m, std::span<const Rational> gammas, int n,
                                       const LabOptions& options = {});
ConvergenceTable mollifier_convergence(const MomentFunctional& base, const Rational& mass, const Rational& location,
                                       std::span<const Rational> gammas, int n, const LabOptions& options = {});

/// Sweep of the mollified family (moving atom replaced by M N(x; a, gamma)) at fixed gamma.
SweepResult markov_criterion_sweep(const PerturbedMeasure& m, const Rational& gamma, std::span<const Rational> a_grid,
                                   int n, const LabOptions& options = {});
SweepResult markov_criterion_sweep(const MomentFunctional& base, const Rational& mass, const Rational& gamma,
                                   std::span<const Rational> a_grid, int n, const LabOptions& options = {});

/// x_{n+1,k} < x_{n,k} < x_{n+1,k+1} for every k.
bool interlacing_check(const ZeroSet& lower_degree, const ZeroSet& higher_degree);

} // namespace opz
