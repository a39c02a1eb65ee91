#ifndef SECRECY_REPORT_HPP
#define SECRECY_REPORT_HPP

// Report records and their CSV / JSON renderings.
//
// CSV columns, in order:
//   experiment, channel_id, A, E, power, rate_bits, pair_with, efficiency, seed
// Absent values are empty cells. Numbers carry 12 significant digits.
//
// JSON is an array of objects with the same fields plus `metrics` (numeric
// outputs without a CSV column, e.g. the water level) and `metadata`
// (strings). Absent and non-finite numbers are written as null.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace secrecy {

struct ReportRecord {
    std::string experiment;
    std::optional<std::int64_t> channel_id;
    std::optional<double> main_snr;   ///< A column
    std::optional<double> eaves_snr;  ///< E column
    std::optional<double> power;
    std::optional<double> rate_bits;
    std::optional<std::int64_t> pair_with;
    std::optional<double> efficiency;
    std::uint64_t seed = 0;
    std::map<std::string, double> metrics;
    std::map<std::string, std::string> metadata;

    bool operator==(const ReportRecord&) const = default;
};

enum class ReportFormat { csv, json };

class ReportWriteError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::string_view csv_header = "experiment,channel_id,A,E,power,rate_bits,pair_with,efficiency,seed";

/// Shortest decimal text of `v` rounded to 12 significant digits.
inline std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

/// `v` rounded to 12 significant digits.
inline double round_12(double v) {
    if (!std::isfinite(v)) return v;
    return std::strtod(format_number(v).c_str(), nullptr);
}

namespace detail {

inline std::string csv_cell(std::string_view s) {
    if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::string csv_cell(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }
inline std::string csv_cell(const std::optional<std::int64_t>& v) { return v ? std::to_string(*v) : std::string(); }

inline nlohmann::json json_number(const std::optional<double>& v) {
    if (!v || !std::isfinite(*v)) return nullptr;
    return round_12(*v);
}

inline nlohmann::json json_int(const std::optional<std::int64_t>& v) {
    if (!v) return nullptr;
    return *v;
}

inline std::optional<double> number_from(const nlohmann::json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<double>();
}

inline std::optional<std::int64_t> int_from(const nlohmann::json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<std::int64_t>();
}

}  // namespace detail

inline std::string render_csv(const std::vector<ReportRecord>& records) {
    std::ostringstream out;
    out << csv_header << '\n';
    for (const auto& r : records) {
        out << detail::csv_cell(r.experiment) << ',' << detail::csv_cell(r.channel_id) << ','
            << detail::csv_cell(r.main_snr) << ',' << detail::csv_cell(r.eaves_snr) << ','
            << detail::csv_cell(r.power) << ',' << detail::csv_cell(r.rate_bits) << ','
            << detail::csv_cell(r.pair_with) << ',' << detail::csv_cell(r.efficiency) << ',' << r.seed << '\n';
    }
    return out.str();
}

inline nlohmann::json records_to_json(const std::vector<ReportRecord>& records) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : records) {
        nlohmann::json metrics = nlohmann::json::object();
        for (const auto& [k, v] : r.metrics) metrics[k] = detail::json_number(v);
        arr.push_back({
            {"experiment", r.experiment},
            {"channel_id", detail::json_int(r.channel_id)},
            {"A", detail::json_number(r.main_snr)},
            {"E", detail::json_number(r.eaves_snr)},
            {"power", detail::json_number(r.power)},
            {"rate_bits", detail::json_number(r.rate_bits)},
            {"pair_with", detail::json_int(r.pair_with)},
            {"efficiency", detail::json_number(r.efficiency)},
            {"seed", r.seed},
            {"metrics", std::move(metrics)},
            {"metadata", r.metadata},
        });
    }
    return arr;
}

/// Reads records back from records_to_json output. Null metrics come back as NaN.
inline std::vector<ReportRecord> records_from_json(const nlohmann::json& arr) {
    std::vector<ReportRecord> out;
    for (const auto& j : arr) {
        ReportRecord r;
        r.experiment = j.at("experiment").get<std::string>();
        r.channel_id = detail::int_from(j.at("channel_id"));
        r.main_snr = detail::number_from(j.at("A"));
        r.eaves_snr = detail::number_from(j.at("E"));
        r.power = detail::number_from(j.at("power"));
        r.rate_bits = detail::number_from(j.at("rate_bits"));
        r.pair_with = detail::int_from(j.at("pair_with"));
        r.efficiency = detail::number_from(j.at("efficiency"));
        r.seed = j.at("seed").get<std::uint64_t>();
        for (const auto& [k, v] : j.at("metrics").items())
            r.metrics[k] = v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
        r.metadata = j.at("metadata").get<std::map<std::string, std::string>>();
        out.push_back(std::move(r));
    }
    return out;
}

inline std::string render(const std::vector<ReportRecord>& records, ReportFormat format) {
    if (format == ReportFormat::csv) return render_csv(records);
    return records_to_json(records).dump(2) + "\n";
}

/// Writes the rendered records to `path`; "-" means standard output.
inline void emit(const std::vector<ReportRecord>& records, ReportFormat format, const std::filesystem::path& path) {
    const std::string text = render(records, format);
    if (path == "-") {
        std::cout << text << std::flush;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ReportWriteError("cannot write report to " + path.string());
    out << text;
    if (!out.flush()) throw ReportWriteError("failed writing report to " + path.string());
}

}  // namespace secrecy

#endif
