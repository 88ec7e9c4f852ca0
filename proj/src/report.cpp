#include "bellsets/report.hpp"

#include "bellsets/errors.hpp"

#include <algorithm>
#include <sstream>
#include <utility>
#include <vector>

namespace bellsets::report {

Format parse_format(const std::string& name) {
    if (name == "json") return Format::json;
    if (name == "csv") return Format::csv;
    if (name == "text") return Format::text;
    throw Error("unsupported output format: " + name);
}

nlohmann::json scalar_json(const Scalar& value) {
    if (value.exact()) return format_rational(value.rational());
    return value.to_double();
}

nlohmann::json rational_json(const Rational& value) {
    return format_rational(value);
}

namespace {

nlohmann::json assemble(const Report& report) {
    return nlohmann::json{
        {"schema", report.schema},
        {"command", report.command},
        {"config", report.config},
        {"rng", {{"generator", report.rng_generator}, {"seed", report.seed}}},
        {"result", report.result},
    };
}

void flatten(const nlohmann::json& node, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& rows) {
    if (node.is_object()) {
        for (const auto& [key, value] : node.items()) {
            flatten(value, prefix.empty() ? key : prefix + "." + key, rows);
        }
    } else if (node.is_array()) {
        std::size_t index = 0;
        for (const auto& value : node) {
            flatten(value, prefix + "[" + std::to_string(index) + "]", rows);
            ++index;
        }
    } else {
        rows.emplace_back(prefix, node.is_string() ? node.get<std::string>() : node.dump());
    }
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string escaped = "\"";
    for (char c : field) {
        if (c == '"') escaped += '"';
        escaped += c;
    }
    escaped += '"';
    return escaped;
}

}  // namespace

std::string emit(const Report& report, Format format) {
    nlohmann::json body = assemble(report);
    switch (format) {
        case Format::json:
            return body.dump(2) + "\n";
        case Format::csv: {
            std::vector<std::pair<std::string, std::string>> rows;
            flatten(body, "", rows);
            std::sort(rows.begin(), rows.end());
            std::ostringstream out;
            out << "key,value\n";
            for (const auto& [key, value] : rows) {
                out << csv_escape(key) << "," << csv_escape(value) << "\n";
            }
            return out.str();
        }
        case Format::text: {
            std::ostringstream out;
            out << "command: " << report.command << "\n";
            out << "seed: " << report.seed << "  rng: " << report.rng_generator << "\n";
            out << "config: " << report.config.dump() << "\n";
            out << "result:\n";
            std::vector<std::pair<std::string, std::string>> rows;
            flatten(report.result, "", rows);
            for (const auto& [key, value] : rows) {
                out << "  " << key << " = " << value << "\n";
            }
            out << "wall_ms: " << report.wall_ms << "\n";
            return out.str();
        }
    }
    throw Error("unreachable format");
}

}  // namespace bellsets::report
