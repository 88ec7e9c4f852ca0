#pragma once

#include "bellsets/scalar.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>

namespace bellsets::report {

enum class Format { json, csv, text };

/// Accepts "json", "csv", "text".
Format parse_format(const std::string& name);

/// Stable machine-facing run record. json and csv output is a pure function
/// of the fields below minus wall_ms, so re-runs with equal config and seed
/// are byte-identical; wall-clock time appears in text output only.
struct Report {
    int schema = 1;
    std::string command;
    nlohmann::json config;
    std::string rng_generator;
    std::uint64_t seed = 0;
    nlohmann::json result;
    double wall_ms = 0;
};

/// Deterministic serialization: json with sorted keys and a trailing
/// newline; csv as sorted flattened key,value rows; text human-oriented.
std::string emit(const Report& report, Format format);

/// Exact scalars serialize as "p/q" strings, float scalars as numbers.
nlohmann::json scalar_json(const Scalar& value);
nlohmann::json rational_json(const Rational& value);

}  // namespace bellsets::report
