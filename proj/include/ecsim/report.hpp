#pragma once

// Deterministic result serialization. Every number is printed with %.17g so
// a double round-trips exactly and identical inputs yield byte-identical
// files; timestamps are opt-in for the same reason.

#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ecsim/errors.hpp"
#include "ecsim/rng.hpp"

namespace ecsim {

inline constexpr std::string_view artifact_name = "ecsim";
inline constexpr std::string_view artifact_version = "0.1.0";

// Shortest-round-trip decimal form of a double (%.17g keeps all 53 bits).
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string format_uint(std::uint64_t v) { return std::to_string(v); }

// RFC 4180: quote fields containing comma, quote, or newline; double quotes.
inline std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (const char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

struct Report {
    nlohmann::ordered_json body;        // full structured result
    Table table;                        // tabular view for CSV / summary
    std::vector<std::string> warnings;
};

// Common JSON envelope; `timestamp` is omitted unless requested so output is
// reproducible by default.
inline nlohmann::ordered_json report_envelope(std::uint64_t master_seed, bool with_timestamp) {
    nlohmann::ordered_json j;
    j["artifact"] = {{"name", artifact_name}, {"version", artifact_version}};
    j["rng"] = {{"algorithm", SplitMix64::algorithm}, {"master_seed", master_seed}};
    if (with_timestamp) {
        char buf[32];
        const std::time_t now = std::time(nullptr);
        std::tm tm_utc{};
        gmtime_r(&now, &tm_utc);
        std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
        j["timestamp"] = buf;
    }
    return j;
}

inline std::string render_csv(const Table& table) {
    std::string out;
    auto append_row = [&out](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += csv_escape(row[i]);
        }
        out += '\n';
    };
    append_row(table.header);
    for (const auto& row : table.rows) append_row(row);
    return out;
}

inline std::string render_json(const Report& report) {
    return report.body.dump(2) + "\n";
}

// Human-readable mirror of the table for stdout.
inline void render_summary(const Report& report, std::ostream& os) {
    std::vector<std::size_t> width(report.table.header.size(), 0);
    auto widen = [&width](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) {
            width[i] = std::max(width[i], row[i].size());
        }
    };
    widen(report.table.header);
    for (const auto& row : report.table.rows) widen(row);
    auto print_row = [&](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << "  ";
            os << row[i] << std::string(width[i] - std::min(width[i], row[i].size()), ' ');
        }
        os << '\n';
    };
    print_row(report.table.header);
    for (const auto& row : report.table.rows) print_row(row);
    for (const auto& w : report.warnings) os << "warning: " << w << '\n';
}

enum class OutputFormat { csv, json };

inline OutputFormat parse_format(const std::string& name) {
    if (name == "csv") return OutputFormat::csv;
    if (name == "json") return OutputFormat::json;
    throw std::invalid_argument("unknown output format '" + name + "' (expected csv or json)");
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw io_error("cannot open '" + path + "' for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.flush();
    if (!f) throw io_error("write to '" + path + "' failed");
}

inline void emit_report(const Report& report, OutputFormat format, const std::string& path) {
    write_text_file(path, format == OutputFormat::csv ? render_csv(report.table)
                                                      : render_json(report));
}

}  // namespace ecsim
