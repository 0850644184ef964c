#include "opz/report.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace opz {

using nlohmann::json;

std::string format_real(double x)
{
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.17g", x);
    return buffer;
}

namespace {

json margin_json(const SweepResult& s)
{
    if (s.exact_margin)
        return to_string(*s.exact_margin);
    if (s.margin)
        return *s.margin;
    return nullptr;
}

} // namespace

void write_moments_csv(std::ostream& out, const std::vector<Rational>& moments, bool exact)
{
    out << "k,m_k\n";
    for (std::size_t k = 0; k < moments.size(); ++k)
        out << k << ',' << (exact ? to_string(moments[k]) : format_real(to_double(moments[k]))) << '\n';
}

json moments_to_json(const std::vector<Rational>& moments, bool exact)
{
    json list = json::array();
    for (const Rational& m : moments)
        list.push_back(exact ? json(to_string(m)) : json(to_double(m)));
    return {{"moments", list}, {"arithmetic", exact ? "exact" : "float"}};
}

void write_zeros_csv(std::ostream& out, const ZeroSet& z)
{
    out << (z.exact() ? "k,x,lower,upper\n" : "k,x\n");
    for (std::size_t k = 0; k < z.zeros.size(); ++k) {
        out << (k + 1) << ',' << format_real(z.zeros[k]);
        if (z.exact())
            out << ',' << to_string(z.brackets[k].lower) << ',' << to_string(z.brackets[k].upper);
        out << '\n';
    }
}

json zeros_to_json(const ZeroSet& z)
{
    json doc;
    doc["degree"] = z.degree;
    doc["method"] = to_string(z.method);
    doc["zeros"] = z.zeros;
    doc["certified_accuracy"] = z.certified_accuracy;
    doc["cross_checked"] = z.cross_checked;
    if (z.exact()) {
        json brackets = json::array();
        for (const RationalBracket& b : z.brackets)
            brackets.push_back(json::array({to_string(b.lower), to_string(b.upper)}));
        doc["brackets"] = brackets;
    }
    return doc;
}

void write_sweep_csv(std::ostream& out, const SweepResult& s)
{
    out << 'a';
    for (int k = 1; k <= s.degree; ++k)
        out << ",x" << k;
    out << '\n';
    for (std::size_t i = 0; i < s.a_grid.size(); ++i) {
        out << format_real(to_double(s.a_grid[i]));
        for (const auto& row : s.trajectories)
            out << ',' << format_real(row[i]);
        out << '\n';
    }
}

json sweep_to_json(const SweepResult& s)
{
    json doc;
    doc["measure"] = s.description;
    doc["degree"] = s.degree;
    doc["arithmetic"] = s.exact ? "exact" : "float";
    json grid = json::array();
    for (const Rational& a : s.a_grid)
        grid.push_back(s.exact ? json(to_string(a)) : json(to_double(a)));
    doc["a_grid"] = grid;
    doc["trajectories"] = s.trajectories;
    doc["verdict"] = to_string(s.verdict.kind);
    if (!s.verdict.strictly_increasing())
        doc["offending"] = {{"k", s.verdict.zero_index}, {"i", s.verdict.grid_index}};
    doc["margin"] = margin_json(s);
    doc["strictness_margin"] = s.strictness_margin;
    return doc;
}

void write_convergence_csv(std::ostream& out, const ConvergenceTable& t)
{
    out << "gamma";
    for (int k = 1; k <= t.degree; ++k)
        out << ",err" << k;
    out << ",worst_error";
    for (int k = 0; k < ConvergenceTable::kMomentColumns; ++k)
        out << ",moment_err" << k;
    out << '\n';
    for (std::size_t g = 0; g < t.gammas.size(); ++g) {
        out << format_real(to_double(t.gammas[g]));
        for (double e : t.errors[g])
            out << ',' << format_real(e);
        out << ',' << format_real(t.worst_error[g]);
        for (double e : t.moment_errors[g])
            out << ',' << format_real(e);
        out << '\n';
    }
}

json convergence_to_json(const ConvergenceTable& t)
{
    json doc;
    doc["measure"] = t.description;
    doc["a"] = to_string(t.location);
    doc["M"] = to_string(t.mass);
    doc["degree"] = t.degree;
    json gammas = json::array();
    for (const Rational& g : t.gammas)
        gammas.push_back(to_string(g));
    doc["gammas"] = gammas;
    doc["reference_zeros"] = t.reference_zeros;
    doc["errors"] = t.errors;
    doc["worst_error"] = t.worst_error;
    doc["moment_errors"] = t.moment_errors;
    doc["tail_nonincreasing"] = t.tail_nonincreasing;
    return doc;
}

SweepResult read_sweep_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("trajectory file is empty");
    int columns = 0;
    for (char c : line)
        columns += c == ',';
    if (line.rfind('a', 0) != 0)
        throw std::invalid_argument("trajectory file header must start with column \"a\"");

    SweepResult s;
    s.degree = columns;
    s.trajectories.assign(static_cast<std::size_t>(columns), {});
    int row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty())
            continue;
        std::istringstream fields(line);
        std::string cell;
        std::getline(fields, cell, ',');
        s.a_grid.push_back(parse_rational(cell));
        for (int k = 0; k < columns; ++k) {
            if (!std::getline(fields, cell, ','))
                throw std::invalid_argument("trajectory file row " + std::to_string(row) + " has too few columns");
            std::size_t used = 0;
            const double x = std::stod(cell, &used);
            if (used != cell.size())
                throw std::invalid_argument("trajectory file row " + std::to_string(row) + ": bad number \"" + cell +
                                            "\"");
            s.trajectories[static_cast<std::size_t>(k)].push_back(x);
        }
    }
    for (std::size_t i = 0; i < s.a_grid.size(); ++i) {
        for (std::size_t k = 1; k < s.trajectories.size(); ++k)
            if (!(s.trajectories[k][i] > s.trajectories[k - 1][i]))
                throw std::invalid_argument("trajectory file: zeros in row " + std::to_string(i + 2) +
                                            " are not strictly increasing");
        if (i > 0 && !(s.a_grid[i] > s.a_grid[i - 1]))
            throw std::invalid_argument("trajectory file: a column is not strictly increasing");
    }
    return s;
}

} // namespace opz
