// config.hpp - scenario configuration documents (JSON) and their validation

#pragma once

#include "qbat/dynamics.hpp"
#include "qbat/model.hpp"

#include <json.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace qbat {

struct ScenarioConfig {
    ModelParams model;
    ChannelSpec channel;
    IntegratorConfig integrator;
    std::string output_dir = "out";
    std::string label = "scenario";

    // Throws ValidationError naming the offending field.
    void validate() const;

    friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

// Parses a JSON document. Missing fields take their defaults; an empty or
// whitespace-only document yields the all-default config with no channel.
// Unknown keys are rejected. Throws ParseError (with line/column) on malformed
// text and ValidationError (with a dotted field path) on bad values.
ScenarioConfig load_config(std::string_view document);
ScenarioConfig load_config_file(const std::string& path);

ScenarioConfig config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const ScenarioConfig& cfg);

// Sets a numeric field addressed by a dotted path (e.g. "channel.rate.gamma")
// and revalidates. Throws UsageError if the path does not name a numeric field.
ScenarioConfig with_field(const ScenarioConfig& cfg, const std::string& path, double value);

bool is_filesystem_safe(std::string_view label);

} // namespace qbat
