#include "opz/cli.hpp"
#include "opz/config.hpp"
#include "opz/lab.hpp"
#include "opz/report.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace opz::cli {

namespace {

struct RunConfig
{
    std::string command;
    std::string measure;
    int n = 1;
    std::string grid = "-3/2:3/2:1/20";
    std::string gammas;
    std::string gamma;
    std::string mode;
    std::string format = "csv";
    std::string out;
    double margin = 1e-11;
    bool dump_config = false;
    std::string trajectory;
};

std::string read_file(const std::string& path, const std::string& field)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError(field, "cannot open \"" + path + "\"");
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

PerturbedMeasure load_measure(const RunConfig& cfg)
{
    if (cfg.measure.empty())
        throw ConfigError("measure", "no measure given (use --measure <file> or inline JSON)");
    const auto first = cfg.measure.find_first_not_of(" \t\r\n");
    const bool inline_spec = first != std::string::npos && cfg.measure[first] == '{';
    PerturbedMeasure m = parse_measure(inline_spec ? cfg.measure : read_file(cfg.measure, "measure"));
    if (cfg.mode == "exact")
        m = m.with_arithmetic(Arithmetic::exact());
    else if (cfg.mode == "float" && m.arithmetic().is_exact())
        m = m.with_arithmetic(Arithmetic::floating());
    return m;
}

class Output
{
public:
    Output(const RunConfig& cfg, std::ostream& fallback) : stream_(&fallback)
    {
        if (!cfg.out.empty()) {
            file_.open(cfg.out, std::ios::binary | std::ios::trunc);
            if (!file_)
                throw ConfigError("out", "cannot write \"" + cfg.out + "\"");
            stream_ = &file_;
        }
    }

    std::ostream& stream() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

void emit_json(std::ostream& out, const nlohmann::json& doc)
{
    out << doc.dump(2) << '\n';
}

int verdict_exit(const Verdict& v)
{
    switch (v.kind) {
    case VerdictKind::StrictlyIncreasing: return kStrictlyIncreasing;
    case VerdictKind::Violated: return kViolated;
    case VerdictKind::Inconclusive: return kInconclusive;
    }
    return kEngineError;
}

void emit_sweep(const RunConfig& cfg, const SweepResult& s, std::ostream& out, std::ostream& err)
{
    Output sink(cfg, out);
    if (cfg.format == "json")
        emit_json(sink.stream(), sweep_to_json(s));
    else
        write_sweep_csv(sink.stream(), s);
    err << "verdict: " << to_string(s.verdict.kind);
    if (!s.verdict.strictly_increasing())
        err << " at k=" << s.verdict.zero_index << " between grid points " << s.verdict.grid_index << " and "
            << s.verdict.grid_index + 1;
    if (s.exact_margin)
        err << ", margin " << to_string(*s.exact_margin);
    else if (s.margin)
        err << ", margin " << format_real(*s.margin);
    err << '\n';
}

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    LabOptions lab;
    lab.strictness_margin = cfg.margin;
    lab.threads = default_thread_count();

    if (cfg.command == "sweep" && !cfg.trajectory.empty()) {
        std::istringstream text(read_file(cfg.trajectory, "trajectory"));
        SweepResult s;
        try {
            s = read_sweep_csv(text);
        } catch (const std::invalid_argument& e) {
            throw ConfigError("trajectory", e.what());
        }
        s.description = "trajectory file " + cfg.trajectory;
        certify_sweep(s, cfg.margin);
        emit_sweep(cfg, s, out, err);
        return verdict_exit(s.verdict);
    }

    const PerturbedMeasure m = load_measure(cfg);
    if (cfg.dump_config) {
        Output sink(cfg, out);
        emit_json(sink.stream(), measure_to_json(m));
        return 0;
    }
    if (cfg.n < 0)
        throw ConfigError("n", "degree must be nonnegative");

    if (cfg.command == "moments") {
        const std::vector<Rational> values = moments(m, 2 * cfg.n + 1);
        Output sink(cfg, out);
        if (cfg.format == "json")
            emit_json(sink.stream(), moments_to_json(values, m.arithmetic().is_exact()));
        else
            write_moments_csv(sink.stream(), values, m.arithmetic().is_exact());
        return 0;
    }

    if (cfg.command == "zeros") {
        const ZeroSet z = zeros(m, cfg.n, lab.zeros);
        Output sink(cfg, out);
        if (cfg.format == "json")
            emit_json(sink.stream(), zeros_to_json(z));
        else
            write_zeros_csv(sink.stream(), z);
        return 0;
    }

    if (cfg.command == "sweep") {
        if (!m.moving_index())
            throw ConfigError("moving", "sweep needs a moving mass");
        const std::vector<Rational> grid = parse_grid(cfg.grid);
        SweepResult s;
        if (!cfg.gamma.empty()) {
            Rational gamma;
            try {
                gamma = parse_rational(cfg.gamma);
            } catch (const std::invalid_argument& e) {
                throw ConfigError("gamma", e.what());
            }
            if (gamma <= 0)
                throw ConfigError("gamma", "must be positive");
            s = markov_criterion_sweep(m, gamma, grid, cfg.n, lab);
        } else {
            s = sweep_mass_location(m, grid, cfg.n, lab);
        }
        emit_sweep(cfg, s, out, err);
        return verdict_exit(s.verdict);
    }

    if (cfg.command == "mollify") {
        if (!m.moving_index())
            throw ConfigError("moving", "mollify needs a moving mass (the atom replaced by the Gaussian)");
        const std::vector<Rational> gammas = cfg.gammas.empty() ? dyadic_gammas(10) : parse_gammas(cfg.gammas);
        const ConvergenceTable t = mollifier_convergence(m, gammas, cfg.n, lab);
        Output sink(cfg, out);
        if (cfg.format == "json")
            emit_json(sink.stream(), convergence_to_json(t));
        else
            write_convergence_csv(sink.stream(), t);
        if (!t.tail_nonincreasing)
            err << "warning: worst_error increases over the last gammas\n";
        return 0;
    }
    throw ConfigError("command", "unknown command \"" + cfg.command + "\"");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    RunConfig cfg;
    CLI::App app{"Zeros of orthogonal polynomials for measures with a moving point mass"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--measure", cfg.measure, "Measure file, or inline JSON");
        sub->add_option("--n", cfg.n, "Polynomial degree");
        sub->add_option("--mode", cfg.mode, "Arithmetic override")->check(CLI::IsMember({"exact", "float"}));
        sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", cfg.out, "Output path (default stdout)");
        sub->add_flag("--dump-config", cfg.dump_config, "Print the parsed measure file and exit");
    };

    CLI::App* moments_cmd = app.add_subcommand("moments", "Moments m_0 .. m_2n");
    CLI::App* zeros_cmd = app.add_subcommand("zeros", "Zeros of p_n");
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "Zero trajectories over the moving-mass location");
    CLI::App* mollify_cmd = app.add_subcommand("mollify", "Convergence of mollified zeros as gamma -> 0");
    for (CLI::App* sub : {moments_cmd, zeros_cmd, sweep_cmd, mollify_cmd})
        add_common(sub);
    sweep_cmd->add_option("--grid", cfg.grid, "lo:hi:step or a comma-separated list");
    sweep_cmd->add_option("--margin", cfg.margin, "Float-mode strictness margin");
    sweep_cmd->add_option("--gamma", cfg.gamma, "Sweep the mollified family at this gamma");
    sweep_cmd->add_option("--trajectory", cfg.trajectory, "Certify a precomputed sweep CSV instead of computing");
    mollify_cmd->add_option("--gammas", cfg.gammas, "Comma-separated decreasing gammas (default 2^-1 .. 2^-10)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        if (!reversed.empty())
            reversed.pop_back(); // program name
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }
    for (CLI::App* sub : app.get_subcommands())
        cfg.command = sub->get_name();

    try {
        return run_command(cfg, out, err);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        err << "engine error: " << e.what() << '\n';
        return kEngineError;
    }
}

} // namespace opz::cli
