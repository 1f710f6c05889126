#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "leosim/engine.hpp"

namespace leosim {

struct SweepDirective {
    SweepParameter parameter = SweepParameter::planes;
    std::vector<int> values;
    int runs = 1;

    bool operator==(const SweepDirective&) const = default;
};

struct OutputDirective {
    std::string directory = "leosim-out";
    std::vector<std::string> formats{"csv", "json", "svg"};

    bool operator==(const OutputDirective&) const = default;
};

/// Parsed scenario document: simulation config plus optional sweep and output blocks.
struct ScenarioFile {
    ScenarioConfig config;
    std::optional<SweepDirective> sweep;
    OutputDirective output;

    bool operator==(const ScenarioFile&) const = default;
};

// Keys that must be present; everything else has a documented default.
const std::vector<std::string>& required_scenario_keys();

/**
 * Parses a scenario document (JSON, `//` comments allowed). Unknown keys,
 * missing required keys and out-of-range values are all collected and
 * reported together in one ConfigError, each with its dotted key path.
 */
ScenarioFile parse_scenario_text(const std::string& text, const std::string& origin = "<scenario>");
ScenarioFile parse_scenario(const std::filesystem::path& path);

// Canonical document with every key written out, defaults included.
std::string serialize_scenario(const ScenarioFile& file);

}  // namespace leosim
