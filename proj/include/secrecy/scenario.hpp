#ifndef SECRECY_SCENARIO_HPP
#define SECRECY_SCENARIO_HPP

// Scenario files.
//
// A scenario is a JSON document:
//
//   {
//     "schema_version": 1,
//     "name": "two identical links",          // optional
//     "seed": 7,                               // optional, default 0
//     "budget": 4.0,                           // optional, > 0
//     "samples": 100000,                       // optional, > 0
//     "channels": [
//       {"kind": "gaussian", "id": 1, "sigma_m_sq": 1, "sigma_w_sq": 3},
//       {"kind": "fading", "a": 2, "b": 1, "sigma_m_sq": 1, "sigma_w_sq": 1, "model": "rayleigh"},
//       {"kind": "discrete", "main": [[0.9, 0.1], [0.1, 0.9]], "eaves": [[0.7, 0.3], [0.3, 0.7]]},
//       {"kind": "agent", "main_snr": 3, "eaves_snr": 1}
//     ]
//   }
//
// Channel ids default to the 1-based position in the list and must be
// unique. Unknown fields are rejected everywhere.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "channel.hpp"
#include "discrete.hpp"
#include "errors.hpp"

namespace secrecy {

inline constexpr int scenario_schema_version = 1;

/// Base of the three scenario failure modes.
class ScenarioError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// The file does not exist or cannot be read.
class ScenarioFileError : public ScenarioError {
   public:
    using ScenarioError::ScenarioError;
};

/// The text is not valid JSON. Carries the 1-based line and column.
class ScenarioSyntaxError : public ScenarioError {
   public:
    ScenarioSyntaxError(const std::string& what, std::size_t line, std::size_t column)
        : ScenarioError(what), line_(line), column_(column) {}
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

   private:
    std::size_t line_;
    std::size_t column_;
};

/// Valid JSON that breaks the schema or a channel invariant. Carries the JSON pointer of the offending field.
class ScenarioValidationError : public ScenarioError {
   public:
    ScenarioValidationError(const std::string& pointer, const std::string& message)
        : ScenarioError(pointer + ": " + message), pointer_(pointer) {}
    const std::string& pointer() const noexcept { return pointer_; }

   private:
    std::string pointer_;
};

using ChannelVariant = std::variant<GaussianWiretapChannel, FadingWiretapChannel, DiscreteWiretapChannel, AgentChannel>;

struct TaggedChannel {
    std::int64_t id;
    ChannelVariant channel;

    template <typename T>
    const T* get_if() const noexcept {
        return std::get_if<T>(&channel);
    }
};

struct Scenario {
    std::string name;
    std::vector<TaggedChannel> channels;
    std::optional<double> budget;
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> samples;
};

inline const char* channel_kind(const ChannelVariant& ch) {
    switch (ch.index()) {
        case 0: return "gaussian";
        case 1: return "fading";
        case 2: return "discrete";
        default: return "agent";
    }
}

namespace detail {

using nlohmann::json;

inline void reject_unknown(const json& obj, const std::string& at, std::initializer_list<std::string_view> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (auto k : allowed) known = known || it.key() == k;
        if (!known) throw ScenarioValidationError(at + "/" + it.key(), "unknown field");
    }
}

inline const json& field(const json& obj, const std::string& at, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ScenarioValidationError(at + "/" + key, "missing required field");
    return *it;
}

inline double number(const json& obj, const std::string& at, const char* key) {
    const json& v = field(obj, at, key);
    if (!v.is_number()) throw ScenarioValidationError(at + "/" + key, "expected a number");
    return v.get<double>();
}

inline std::vector<std::vector<double>> matrix(const json& obj, const std::string& at, const char* key) {
    const json& v = field(obj, at, key);
    const std::string where = at + "/" + key;
    if (!v.is_array() || v.empty()) throw ScenarioValidationError(where, "expected a non-empty array of rows");
    std::vector<std::vector<double>> rows;
    for (std::size_t r = 0; r < v.size(); ++r) {
        if (!v[r].is_array()) throw ScenarioValidationError(where + "/" + std::to_string(r), "expected an array");
        std::vector<double> row;
        for (std::size_t c = 0; c < v[r].size(); ++c) {
            if (!v[r][c].is_number())
                throw ScenarioValidationError(where + "/" + std::to_string(r) + "/" + std::to_string(c),
                                              "expected a number");
            row.push_back(v[r][c].get<double>());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline ChannelVariant parse_channel(const json& obj, const std::string& at) {
    if (!obj.is_object()) throw ScenarioValidationError(at, "expected an object");
    const json& kind_json = field(obj, at, "kind");
    if (!kind_json.is_string()) throw ScenarioValidationError(at + "/kind", "expected a string");
    const auto kind = kind_json.get<std::string>();

    try {
        if (kind == "gaussian") {
            reject_unknown(obj, at, {"kind", "id", "sigma_m_sq", "sigma_w_sq"});
            return GaussianWiretapChannel(number(obj, at, "sigma_m_sq"), number(obj, at, "sigma_w_sq"));
        }
        if (kind == "fading") {
            reject_unknown(obj, at, {"kind", "id", "a", "b", "sigma_m_sq", "sigma_w_sq", "model"});
            FadingModel model = FadingModel::rayleigh;
            if (auto it = obj.find("model"); it != obj.end()) {
                if (*it == "rayleigh")
                    model = FadingModel::rayleigh;
                else if (*it == "fixed")
                    model = FadingModel::fixed;
                else
                    throw ScenarioValidationError(at + "/model", "expected \"rayleigh\" or \"fixed\"");
            }
            return FadingWiretapChannel(number(obj, at, "a"), number(obj, at, "b"), number(obj, at, "sigma_m_sq"),
                                        number(obj, at, "sigma_w_sq"), model);
        }
        if (kind == "discrete") {
            reject_unknown(obj, at, {"kind", "id", "main", "eaves"});
            return DiscreteWiretapChannel(ProbMatrix::from_rows(matrix(obj, at, "main")),
                                          ProbMatrix::from_rows(matrix(obj, at, "eaves")));
        }
        if (kind == "agent") {
            reject_unknown(obj, at, {"kind", "id", "main_snr", "eaves_snr"});
            return AgentChannel(0, number(obj, at, "main_snr"), number(obj, at, "eaves_snr"));
        }
    } catch (const InvalidInput& e) {
        throw ScenarioValidationError(at, e.what());
    }
    throw ScenarioValidationError(at + "/kind", "unknown channel kind \"" + kind + "\"");
}

inline std::pair<std::size_t, std::size_t> line_and_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

}  // namespace detail

/// Parses scenario text. `source` names the input in error messages.
inline Scenario parse_scenario(std::string_view text, const std::string& source = "<scenario>") {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        // byte points one past the offending character
        const auto [line, column] = detail::line_and_column(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ScenarioSyntaxError(source + ":" + std::to_string(line) + ":" + std::to_string(column) +
                                      ": malformed scenario: " + e.what(),
                                  line, column);
    }

    if (!doc.is_object()) throw ScenarioValidationError("", "scenario must be a JSON object");
    detail::reject_unknown(doc, "", {"schema_version", "name", "seed", "budget", "samples", "channels"});

    const json& version = detail::field(doc, "", "schema_version");
    if (!version.is_number_integer() || version.get<int>() != scenario_schema_version)
        throw ScenarioValidationError("/schema_version",
                                      "unsupported schema version (expected " +
                                          std::to_string(scenario_schema_version) + ")");

    Scenario sc;
    if (auto it = doc.find("name"); it != doc.end()) {
        if (!it->is_string()) throw ScenarioValidationError("/name", "expected a string");
        sc.name = it->get<std::string>();
    }
    if (auto it = doc.find("seed"); it != doc.end()) {
        if (!it->is_number_unsigned()) throw ScenarioValidationError("/seed", "expected a non-negative integer");
        sc.seed = it->get<std::uint64_t>();
    }
    if (auto it = doc.find("budget"); it != doc.end()) {
        if (!it->is_number() || !(it->get<double>() > 0.0))
            throw ScenarioValidationError("/budget", "expected a positive number");
        sc.budget = it->get<double>();
    }
    if (auto it = doc.find("samples"); it != doc.end()) {
        if (!it->is_number_unsigned() || it->get<std::uint64_t>() == 0)
            throw ScenarioValidationError("/samples", "expected a positive integer");
        sc.samples = it->get<std::uint64_t>();
    }

    const json& channels = detail::field(doc, "", "channels");
    if (!channels.is_array() || channels.empty())
        throw ScenarioValidationError("/channels", "expected a non-empty array");

    std::set<std::int64_t> ids;
    for (std::size_t i = 0; i < channels.size(); ++i) {
        const std::string at = "/channels/" + std::to_string(i);
        auto ch = detail::parse_channel(channels[i], at);
        auto id = static_cast<std::int64_t>(i + 1);
        if (auto it = channels[i].find("id"); it != channels[i].end()) {
            if (!it->is_number_integer()) throw ScenarioValidationError(at + "/id", "expected an integer");
            id = it->get<std::int64_t>();
        }
        if (!ids.insert(id).second) throw ScenarioValidationError(at + "/id", "duplicate channel id " + std::to_string(id));
        if (auto* agent = std::get_if<AgentChannel>(&ch)) agent->id = id;
        sc.channels.push_back({id, std::move(ch)});
    }
    return sc;
}

inline Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ScenarioFileError("cannot open scenario file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), path.string());
}

/// Inverse of parse_scenario: every field is written, ids explicitly.
inline nlohmann::json scenario_to_json(const Scenario& sc) {
    using nlohmann::json;
    json doc = {{"schema_version", scenario_schema_version}, {"seed", sc.seed}};
    if (!sc.name.empty()) doc["name"] = sc.name;
    if (sc.budget) doc["budget"] = *sc.budget;
    if (sc.samples) doc["samples"] = *sc.samples;
    json channels = json::array();
    for (const auto& tc : sc.channels) {
        json c = {{"kind", channel_kind(tc.channel)}, {"id", tc.id}};
        std::visit(
            [&](const auto& ch) {
                using T = std::decay_t<decltype(ch)>;
                if constexpr (std::is_same_v<T, GaussianWiretapChannel>) {
                    c["sigma_m_sq"] = ch.sigma_m_sq();
                    c["sigma_w_sq"] = ch.sigma_w_sq();
                } else if constexpr (std::is_same_v<T, FadingWiretapChannel>) {
                    c["a"] = ch.a();
                    c["b"] = ch.b();
                    c["sigma_m_sq"] = ch.sigma_m_sq();
                    c["sigma_w_sq"] = ch.sigma_w_sq();
                    c["model"] = ch.model() == FadingModel::fixed ? "fixed" : "rayleigh";
                } else if constexpr (std::is_same_v<T, DiscreteWiretapChannel>) {
                    c["main"] = ch.main().to_rows();
                    c["eaves"] = ch.eaves().to_rows();
                } else {
                    c["main_snr"] = ch.main_snr;
                    c["eaves_snr"] = ch.eaves_snr;
                }
            },
            tc.channel);
        channels.push_back(std::move(c));
    }
    doc["channels"] = std::move(channels);
    return doc;
}

}  // namespace secrecy

#endif
