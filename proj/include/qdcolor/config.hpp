#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qdcolor/graph.hpp"
#include "qdcolor/solver.hpp"

namespace qdcolor {

// Invalid or inconsistent configuration; maps to exit code 1.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string graph_path;
    GraphFormat format = GraphFormat::Auto;
    Hyperparameters hp;

    std::string stats_path;       // JSON, "-" for stdout
    std::string trajectory_path;  // CSV of per-step mean/std of E_Potts
    std::string histogram_path;   // CSV energy,count
    std::string coloring_path;    // best coloring, "node color" lines

    std::size_t workers = 1;
    int verbosity = 0;
    bool timing = true;  // include wall-clock fields in the JSON output

    int sweep_min = 0;  // 0: start at hp.num_colors
    int sweep_max = 0;  // 0: same as sweep_min
    bool sweep_full = false;

    std::vector<std::string> warnings;
};

using ConfigOverrides = std::vector<std::pair<std::string, std::string>>;

// Parses `key = value` lines (blank lines and `#` comments ignored) into the
// override list, preserving order. Throws ConfigError on lines without '='.
ConfigOverrides parse_config_text(const std::string& text);

// Applies file entries, then flag entries, on top of the defaults and
// validates the result. Unknown keys and unparsable values throw ConfigError;
// settings that do not apply to the chosen method produce warnings.
RunConfig load_config(const ConfigOverrides& file_entries, const ConfigOverrides& flag_entries);

// Reads the file (if non-empty path) and forwards to load_config.
RunConfig load_config_file(const std::string& path, const ConfigOverrides& flag_entries);

// Every resolved setting, enough to reproduce a run.
nlohmann::json to_json(const RunConfig& config);

const std::vector<std::string>& config_keys();

}  // namespace qdcolor
