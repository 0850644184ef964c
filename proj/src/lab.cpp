#include "opz/lab.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <stdexcept>
#include <thread>

namespace opz {

std::string to_string(VerdictKind kind)
{
    switch (kind) {
    case VerdictKind::StrictlyIncreasing: return "StrictlyIncreasing";
    case VerdictKind::Violated: return "Violated";
    case VerdictKind::Inconclusive: return "Inconclusive";
    }
    return "unknown";
}

unsigned default_thread_count()
{
    if (const char* env = std::getenv("OPZ_THREADS")) {
        char* end = nullptr;
        const long value = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && value > 0)
            return static_cast<unsigned>(std::min(value, 256L));
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body)
{
    if (threads == 0)
        threads = default_thread_count();
    std::vector<std::exception_ptr> failures(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                body(i);
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };
    const std::size_t workers = std::min<std::size_t>(threads, count);
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t t = 0; t < workers; ++t)
            pool.emplace_back(worker);
        for (std::thread& t : pool)
            t.join();
    }
    for (const std::exception_ptr& failure : failures)
        if (failure)
            std::rethrow_exception(failure);
}

std::vector<Rational> make_grid(const Rational& lo, const Rational& hi, const Rational& step)
{
    if (step <= 0)
        throw std::invalid_argument("grid step must be positive");
    if (hi < lo)
        throw std::invalid_argument("grid upper end lies below its lower end");
    std::vector<Rational> grid;
    for (Rational a = lo; a <= hi; a += step)
        grid.push_back(a);
    return grid;
}

std::vector<Rational> dyadic_gammas(int count)
{
    std::vector<Rational> gammas;
    Rational g(1, 2);
    for (int i = 0; i < count; ++i, g /= 2)
        gammas.push_back(g);
    return gammas;
}

namespace {

void require_increasing(std::span<const Rational> grid)
{
    if (grid.empty())
        throw std::invalid_argument("a-grid is empty");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::invalid_argument("a-grid must be strictly increasing (entry " + std::to_string(i) + ")");
}

[[noreturn]] void rethrow_at(const char* name, const Rational& value)
{
    try {
        throw;
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("at ") + name + " = " + to_string(value) + ": " + e.what());
    }
}

} // namespace

SweepResult sweep_mass_location(const PerturbedMeasure& m, std::span<const Rational> a_grid, int n,
                                const LabOptions& options)
{
    if (!m.moving_index())
        throw std::invalid_argument("sweep_mass_location: the measure has no moving mass");
    require_increasing(a_grid);

    SweepResult s;
    s.description = m.describe();
    s.degree = n;
    s.exact = m.arithmetic().is_exact();
    s.a_grid.assign(a_grid.begin(), a_grid.end());

    std::vector<ZeroSet> columns(a_grid.size());
    parallel_for(a_grid.size(), options.threads, [&](std::size_t i) {
        try {
            columns[i] = zeros(m.with_moving_location(a_grid[i]), n, options.zeros);
        } catch (...) {
            rethrow_at("a", a_grid[i]);
        }
    });

    s.trajectories.assign(static_cast<std::size_t>(n), std::vector<double>(a_grid.size()));
    if (s.exact)
        s.brackets.assign(static_cast<std::size_t>(n), std::vector<RationalBracket>(a_grid.size()));
    for (std::size_t i = 0; i < a_grid.size(); ++i)
        for (std::size_t k = 0; k < static_cast<std::size_t>(n); ++k) {
            s.trajectories[k][i] = columns[i].zeros[k];
            if (s.exact)
                s.brackets[k][i] = columns[i].brackets[k];
        }
    certify_sweep(s, options.strictness_margin);
    return s;
}

void certify_sweep(SweepResult& s, double strictness_margin)
{
    s.strictness_margin = strictness_margin;
    s.margin.reset();
    s.exact_margin.reset();
    const std::size_t points = s.a_grid.size();
    for (int k = 0; k < s.degree; ++k) {
        const auto uk = static_cast<std::size_t>(k);
        for (std::size_t i = 0; i + 1 < points; ++i) {
            const double diff = s.trajectories[uk][i + 1] - s.trajectories[uk][i];
            if (!s.margin || diff < *s.margin)
                s.margin = diff;
            if (s.exact) {
                const Rational exact_diff = s.brackets[uk][i + 1].lower - s.brackets[uk][i].upper;
                if (!s.exact_margin || exact_diff < *s.exact_margin)
                    s.exact_margin = exact_diff;
            }
        }
    }
    if (s.exact_margin)
        s.margin = to_double(*s.exact_margin);
    s.verdict = check_monotone(s, strictness_margin);
}

Verdict check_monotone(const SweepResult& s, double strictness_margin)
{
    Verdict inconclusive{VerdictKind::StrictlyIncreasing, 0, -1};
    const bool exact = s.exact && !s.brackets.empty();
    const std::size_t points = s.a_grid.empty() && !s.trajectories.empty() ? s.trajectories.front().size()
                                                                          : s.a_grid.size();
    for (std::size_t i = 0; i + 1 < points; ++i) {
        for (int k = 0; k < s.degree; ++k) {
            const auto uk = static_cast<std::size_t>(k);
            if (exact) {
                if (!(s.brackets[uk][i + 1].lower > s.brackets[uk][i].upper))
                    return {VerdictKind::Violated, k + 1, static_cast<int>(i)};
                continue;
            }
            const double diff = s.trajectories[uk][i + 1] - s.trajectories[uk][i];
            if (!(diff > 0))
                return {VerdictKind::Violated, k + 1, static_cast<int>(i)};
            if (diff <= strictness_margin && inconclusive.kind == VerdictKind::StrictlyIncreasing)
                inconclusive = {VerdictKind::Inconclusive, k + 1, static_cast<int>(i)};
        }
    }
    return inconclusive;
}

ConvergenceTable mollifier_convergence(const PerturbedMeasure& m, std::span<const Rational> gammas, int n,
                                       const LabOptions& options)
{
    if (!m.moving_index())
        throw std::invalid_argument("mollifier_convergence: the measure has no moving mass");
    if (gammas.empty())
        throw std::invalid_argument("gamma schedule is empty");
    for (std::size_t i = 0; i < gammas.size(); ++i) {
        if (gammas[i] <= 0)
            throw std::invalid_argument("gamma schedule entries must be positive");
        if (i > 0 && !(gammas[i] < gammas[i - 1]))
            throw std::invalid_argument("gamma schedule must be strictly decreasing");
    }
    const PointMass& moving = m.masses()[*m.moving_index()];

    ConvergenceTable table;
    table.location = moving.location;
    table.mass = moving.mass;
    table.degree = n;
    table.gammas.assign(gammas.begin(), gammas.end());

    // Limit object: the point-mass measure, on the exact path when the degree allows.
    const PerturbedMeasure reference_measure =
        n <= options.zeros.limits.exact_degree_cap ? m.with_arithmetic(Arithmetic::exact()) : m;
    table.description = reference_measure.describe();
    table.reference_zeros = zeros(reference_measure, n, options.zeros).zeros;

    const PerturbedMeasure fixed = m.without_moving();
    const int bits = m.arithmetic().is_exact() ? options.zeros.float_bits : m.arithmetic().precision_bits;
    const PerturbedMeasure fixed_float = fixed.with_arithmetic(Arithmetic::floating(bits));

    table.errors.assign(gammas.size(), {});
    table.worst_error.assign(gammas.size(), 0.0);
    table.moment_errors.assign(gammas.size(), {});
    parallel_for(gammas.size(), options.threads, [&](std::size_t g) {
        try {
            const MollifiedMeasure mollified(fixed_float, GaussianMollifier(moving.location, gammas[g], moving.mass));
            const ZeroSet z = zeros(mollified, n, options.zeros);
            double worst = 0.0;
            for (std::size_t k = 0; k < static_cast<std::size_t>(n); ++k) {
                const double e = std::abs(z.zeros[k] - table.reference_zeros[k]);
                table.errors[g].push_back(e);
                worst = std::max(worst, e);
            }
            table.worst_error[g] = worst;
            for (int k = 0; k < ConvergenceTable::kMomentColumns; ++k)
                table.moment_errors[g].push_back(
                    to_double(abs(gaussian_moment(moving.location, gammas[g], k) - pow(moving.location, k))));
        } catch (...) {
            rethrow_at("gamma", gammas[g]);
        }
    });

    table.tail_nonincreasing = true;
    const std::size_t first = gammas.size() > 4 ? gammas.size() - 4 : 0;
    for (std::size_t g = first + 1; g < gammas.size(); ++g)
        if (table.worst_error[g] > table.worst_error[g - 1])
            table.tail_nonincreasing = false;
    return table;
}

ConvergenceTable mollifier_convergence(const MomentFunctional& base, const Rational& mass, const Rational& location,
                                       std::span<const Rational> gammas, int n, const LabOptions& options)
{
    return mollifier_convergence(PerturbedMeasure(base, {PointMass(location, mass)}, 0), gammas, n, options);
}

SweepResult markov_criterion_sweep(const PerturbedMeasure& m, const Rational& gamma, std::span<const Rational> a_grid,
                                   int n, const LabOptions& options)
{
    if (!m.moving_index())
        throw std::invalid_argument("markov_criterion_sweep: the measure has no moving mass");
    if (gamma <= 0)
        throw std::invalid_argument("markov_criterion_sweep: gamma must be positive");
    require_increasing(a_grid);
    const PointMass& moving = m.masses()[*m.moving_index()];
    const PerturbedMeasure fixed = m.without_moving();
    const int bits = m.arithmetic().is_exact() ? options.zeros.float_bits : m.arithmetic().precision_bits;
    const PerturbedMeasure fixed_float = fixed.with_arithmetic(Arithmetic::floating(bits));

    SweepResult s;
    s.degree = n;
    s.exact = false;
    s.a_grid.assign(a_grid.begin(), a_grid.end());

    std::vector<ZeroSet> columns(a_grid.size());
    parallel_for(a_grid.size(), options.threads, [&](std::size_t i) {
        try {
            columns[i] = zeros(MollifiedMeasure(fixed_float, GaussianMollifier(a_grid[i], gamma, moving.mass)), n,
                               options.zeros);
        } catch (...) {
            rethrow_at("a", a_grid[i]);
        }
    });
    s.description = MollifiedMeasure(fixed_float, GaussianMollifier(a_grid[0], gamma, moving.mass)).describe();

    s.trajectories.assign(static_cast<std::size_t>(n), std::vector<double>(a_grid.size()));
    for (std::size_t i = 0; i < a_grid.size(); ++i)
        for (std::size_t k = 0; k < static_cast<std::size_t>(n); ++k)
            s.trajectories[k][i] = columns[i].zeros[k];
    certify_sweep(s, options.strictness_margin);
    return s;
}

SweepResult markov_criterion_sweep(const MomentFunctional& base, const Rational& mass, const Rational& gamma,
                                   std::span<const Rational> a_grid, int n, const LabOptions& options)
{
    return markov_criterion_sweep(PerturbedMeasure(base, {PointMass(Rational(0), mass)}, 0), gamma, a_grid, n,
                                  options);
}

bool interlacing_check(const ZeroSet& lower_degree, const ZeroSet& higher_degree)
{
    if (higher_degree.degree != lower_degree.degree + 1)
        throw std::invalid_argument("interlacing_check: degrees " + std::to_string(lower_degree.degree) + " and " +
                                    std::to_string(higher_degree.degree) + " are not consecutive");
    const bool exact = lower_degree.exact() && higher_degree.exact() && !lower_degree.brackets.empty() &&
                       !higher_degree.brackets.empty();
    for (std::size_t k = 0; k < lower_degree.zeros.size(); ++k) {
        if (exact) {
            const RationalBracket& mid = lower_degree.brackets[k];
            if (!(higher_degree.brackets[k].upper < mid.lower && mid.upper < higher_degree.brackets[k + 1].lower))
                return false;
        } else {
            const double x = lower_degree.zeros[k];
            if (!(higher_degree.zeros[k] < x && x < higher_degree.zeros[k + 1]))
                return false;
        }
    }
    return true;
}

} // namespace opz
