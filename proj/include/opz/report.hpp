#pragma once

#include "opz/lab.hpp"
#include "opz/zeros.hpp"

#include "json.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace opz {

/// Fixed 17 significant digits ("%.17g").
std::string format_real(double x);

// CSV output: header row, comma separated, LF line endings.

void write_moments_csv(std::ostream& out, const std::vector<Rational>& moments, bool exact);
nlohmann::json moments_to_json(const std::vector<Rational>& moments, bool exact);

void write_zeros_csv(std::ostream& out, const ZeroSet& z);
nlohmann::json zeros_to_json(const ZeroSet& z);

/// Columns a, x1 .. xn; one row per grid point.
void write_sweep_csv(std::ostream& out, const SweepResult& s);
nlohmann::json sweep_to_json(const SweepResult& s);

/// Columns gamma, err1 .. errn, worst_error, moment_err0 .. moment_err4; one row per gamma.
void write_convergence_csv(std::ostream& out, const ConvergenceTable& t);
nlohmann::json convergence_to_json(const ConvergenceTable& t);

/// Reads a sweep CSV (as written by write_sweep_csv) back into a float-mode SweepResult
/// without a verdict; used to certify precomputed trajectories.
SweepResult read_sweep_csv(std::istream& in);

} // namespace opz
