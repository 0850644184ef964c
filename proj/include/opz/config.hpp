#pragma once

#include "opz/measure.hpp"

#include "json.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace opz {

/// Malformed measure file or run option; `field()` names the offending key.
class ConfigError : public std::runtime_error
{
public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error("invalid \"" + field + "\": " + message), field_(std::move(field))
    {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Measure file:
///   {"base": {"family": "legendre"}, "masses": [{"a": "1/2", "M": "1"}], "moving": 0, "arithmetic": "exact"}
/// Explicit bases carry "moments": [...] and optionally "support": [lo, hi] (null for an infinite end).
/// Rationals are "p/q" or decimal strings, or JSON numbers. "precision_bits" selects the float working precision.
PerturbedMeasure measure_from_json(const nlohmann::json& doc);
PerturbedMeasure parse_measure(const std::string& text);

/// Canonical measure file; rationals are written as "p/q" strings.
nlohmann::json measure_to_json(const PerturbedMeasure& m);

Rational rational_from_json(const nlohmann::json& value, const std::string& field);

/// "lo:hi:step" or a comma-separated explicit list; strictly increasing, at least one point.
std::vector<Rational> parse_grid(const std::string& spec);

/// Comma-separated gamma list; positive and strictly decreasing.
std::vector<Rational> parse_gammas(const std::string& spec);

} // namespace opz
