#include "opz/config.hpp"
#include "opz/lab.hpp"

#include <sstream>

namespace opz {

using nlohmann::json;

Rational rational_from_json(const json& value, const std::string& field)
{
    try {
        if (value.is_string())
            return parse_rational(value.get<std::string>());
        if (value.is_number_integer())
            return Rational(std::to_string(value.get<long long>()));
        if (value.is_number_unsigned())
            return Rational(std::to_string(value.get<unsigned long long>()));
        if (value.is_number_float())
            return from_double(value.get<double>());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(field, e.what());
    }
    throw ConfigError(field, "expected a number or a \"p/q\" string");
}

namespace {

const json& require(const json& doc, const std::string& key, const std::string& path)
{
    if (!doc.is_object())
        throw ConfigError(path.empty() ? key : path, "expected an object");
    auto it = doc.find(key);
    if (it == doc.end())
        throw ConfigError(path.empty() ? key : path + "." + key, "missing required key");
    return *it;
}

Arithmetic arithmetic_from_json(const json& doc)
{
    std::string mode = "float";
    if (auto it = doc.find("arithmetic"); it != doc.end()) {
        if (!it->is_string())
            throw ConfigError("arithmetic", "expected \"exact\" or \"float\"");
        mode = it->get<std::string>();
    }
    int bits = kExtendedBits;
    if (auto it = doc.find("precision_bits"); it != doc.end()) {
        if (!it->is_number_integer() || !is_supported_precision(it->get<int>()))
            throw ConfigError("precision_bits", "expected " + std::to_string(kDoubleBits) + ", " +
                                                    std::to_string(kExtendedBits) + " or " +
                                                    std::to_string(kQuadBits));
        bits = it->get<int>();
    }
    if (mode == "exact")
        return Arithmetic::exact();
    if (mode == "float")
        return Arithmetic::floating(bits);
    throw ConfigError("arithmetic", "expected \"exact\" or \"float\", got \"" + mode + "\"");
}

MomentFunctional base_from_json(const json& base, Arithmetic arithmetic)
{
    const json& family_value = require(base, "family", "base");
    if (!family_value.is_string())
        throw ConfigError("base.family", "expected a string");
    Family family;
    try {
        family = parse_family(family_value.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw ConfigError("base.family", e.what());
    }
    if (family != Family::ExplicitMoments)
        return MomentFunctional::classical(family, arithmetic);

    const json& list = require(base, "moments", "base");
    if (!list.is_array() || list.empty())
        throw ConfigError("base.moments", "expected a nonempty array");
    std::vector<Rational> values;
    for (std::size_t i = 0; i < list.size(); ++i)
        values.push_back(rational_from_json(list[i], "base.moments[" + std::to_string(i) + "]"));

    Hull support;
    if (auto it = base.find("support"); it != base.end() && !it->is_null()) {
        if (!it->is_array() || it->size() != 2)
            throw ConfigError("base.support", "expected [lower, upper] with null for an infinite end");
        if (!(*it)[0].is_null())
            support.lower = rational_from_json((*it)[0], "base.support[0]");
        if (!(*it)[1].is_null())
            support.upper = rational_from_json((*it)[1], "base.support[1]");
        if (support.lower && support.upper && *support.upper < *support.lower)
            throw ConfigError("base.support", "upper end lies below lower end");
    }
    try {
        return MomentFunctional::explicit_moments(std::move(values), std::move(support), arithmetic);
    } catch (const std::exception& e) {
        throw ConfigError("base.moments", e.what());
    }
}

json rational_to_json(const Rational& q)
{
    return to_string(q);
}

} // namespace

PerturbedMeasure measure_from_json(const json& doc)
{
    if (!doc.is_object())
        throw ConfigError("measure", "expected a JSON object");
    const Arithmetic arithmetic = arithmetic_from_json(doc);
    MomentFunctional base = base_from_json(require(doc, "base", ""), arithmetic);

    const json& list = require(doc, "masses", "");
    if (!list.is_array())
        throw ConfigError("masses", "expected an array");
    std::vector<PointMass> masses;
    for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string path = "masses[" + std::to_string(i) + "]";
        const Rational a = rational_from_json(require(list[i], "a", path), path + ".a");
        const Rational mass = rational_from_json(require(list[i], "M", path), path + ".M");
        if (mass <= 0)
            throw ConfigError(path + ".M", "mass must be positive");
        masses.emplace_back(a, mass);
    }

    std::optional<std::size_t> moving;
    if (auto it = doc.find("moving"); it != doc.end() && !it->is_null()) {
        if (!it->is_number_integer() || it->get<long long>() < 0 ||
            it->get<unsigned long long>() >= masses.size())
            throw ConfigError("moving", "expected an index into \"masses\"");
        moving = it->get<std::size_t>();
    }
    return PerturbedMeasure(std::move(base), std::move(masses), moving);
}

PerturbedMeasure parse_measure(const std::string& text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("measure", std::string("not valid JSON: ") + e.what());
    }
    return measure_from_json(doc);
}

json measure_to_json(const PerturbedMeasure& m)
{
    json base;
    base["family"] = to_string(m.base().family());
    if (m.base().family() == Family::ExplicitMoments) {
        json list = json::array();
        for (const Rational& q : m.base().explicit_values())
            list.push_back(rational_to_json(q));
        base["moments"] = list;
        const Hull& s = m.base().support();
        base["support"] = json::array({s.lower ? rational_to_json(*s.lower) : json(nullptr),
                                       s.upper ? rational_to_json(*s.upper) : json(nullptr)});
    }
    json masses = json::array();
    for (const PointMass& p : m.masses())
        masses.push_back({{"a", rational_to_json(p.location)}, {"M", rational_to_json(p.mass)}});

    json doc;
    doc["base"] = base;
    doc["masses"] = masses;
    doc["moving"] = m.moving_index() ? json(*m.moving_index()) : json(nullptr);
    doc["arithmetic"] = m.arithmetic().is_exact() ? "exact" : "float";
    if (!m.arithmetic().is_exact())
        doc["precision_bits"] = m.arithmetic().precision_bits;
    return doc;
}

namespace {

std::vector<std::string> split(const std::string& text, char sep)
{
    std::vector<std::string> parts;
    std::string part;
    std::istringstream in(text);
    while (std::getline(in, part, sep))
        parts.push_back(part);
    if (!text.empty() && text.back() == sep)
        parts.emplace_back();
    return parts;
}

} // namespace

std::vector<Rational> parse_grid(const std::string& spec)
{
    std::vector<Rational> grid;
    try {
        if (spec.find(':') != std::string::npos) {
            const std::vector<std::string> parts = split(spec, ':');
            if (parts.size() != 3)
                throw ConfigError("grid", "expected lo:hi:step");
            const Rational step = parse_rational(parts[2]);
            if (step <= 0)
                throw ConfigError("grid", "step must be positive");
            grid = make_grid(parse_rational(parts[0]), parse_rational(parts[1]), step);
        } else {
            for (const std::string& item : split(spec, ','))
                grid.push_back(parse_rational(item));
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ConfigError("grid", e.what());
    }
    if (grid.empty())
        throw ConfigError("grid", "no grid points");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw ConfigError("grid", "points must be strictly increasing");
    return grid;
}

std::vector<Rational> parse_gammas(const std::string& spec)
{
    std::vector<Rational> gammas;
    try {
        for (const std::string& item : split(spec, ','))
            gammas.push_back(parse_rational(item));
    } catch (const std::invalid_argument& e) {
        throw ConfigError("gammas", e.what());
    }
    if (gammas.empty())
        throw ConfigError("gammas", "no values");
    for (std::size_t i = 0; i < gammas.size(); ++i) {
        if (gammas[i] <= 0)
            throw ConfigError("gammas", "values must be positive");
        if (i > 0 && !(gammas[i] < gammas[i - 1]))
            throw ConfigError("gammas", "values must be strictly decreasing");
    }
    return gammas;
}

} // namespace opz
