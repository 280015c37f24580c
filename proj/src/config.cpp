#include "qdcolor/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace qdcolor {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void type_error(const std::string& key, const std::string& value, const char* expected) {
    throw ConfigError("invalid value '" + value + "' for " + key + " (expected " + expected + ")");
}

long long to_int(const std::string& key, const std::string& value) {
    long long out = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) type_error(key, value, "an integer");
    return out;
}

std::uint64_t to_uint(const std::string& key, const std::string& value) {
    std::uint64_t out = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) type_error(key, value, "a non-negative integer");
    return out;
}

double to_real(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double out = std::stod(value, &used);
        if (used != value.size()) type_error(key, value, "a number");
        return out;
    } catch (const std::logic_error&) {
        type_error(key, value, "a number");
    }
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
    if (value == "false" || value == "0" || value == "no" || value == "off") return false;
    type_error(key, value, "a boolean");
}

int to_small_int(const std::string& key, const std::string& value) {
    const long long v = to_int(key, value);
    if (v < -1'000'000'000LL || v > 1'000'000'000LL) type_error(key, value, "an integer in range");
    return static_cast<int>(v);
}

using Setter = std::function<void(RunConfig&, const std::string& key, const std::string& value)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"graph", [](RunConfig& c, const auto&, const auto& v) { c.graph_path = v; }},
        {"format",
         [](RunConfig& c, const auto& k, const auto& v) {
             try {
                 c.format = parse_format(v);
             } catch (const std::invalid_argument&) {
                 type_error(k, v, "auto, dimacs or edgelist");
             }
         }},
        {"method",
         [](RunConfig& c, const auto& k, const auto& v) {
             try {
                 c.hp.method = parse_method(v);
             } catch (const std::invalid_argument&) {
                 type_error(k, v, "qdlqa or qdgd");
             }
         }},
        {"colors", [](RunConfig& c, const auto& k, const auto& v) { c.hp.num_colors = to_small_int(k, v); }},
        {"steps", [](RunConfig& c, const auto& k, const auto& v) { c.hp.num_steps = to_small_int(k, v); }},
        {"gamma", [](RunConfig& c, const auto& k, const auto& v) { c.hp.gamma = to_real(k, v); }},
        {"alpha",
         [](RunConfig& c, const auto& k, const auto& v) {
             try {
                 c.hp.alpha = parse_alpha_schedule(v);
             } catch (const std::invalid_argument&) {
                 type_error(k, v, "a positive integer or exp:RATE:CAP");
             }
         }},
        {"eta", [](RunConfig& c, const auto& k, const auto& v) { c.hp.eta = to_real(k, v); }},
        {"f", [](RunConfig& c, const auto& k, const auto& v) { c.hp.f = to_real(k, v); }},
        {"f_tilde", [](RunConfig& c, const auto& k, const auto& v) { c.hp.f_tilde = to_real(k, v); }},
        {"h", [](RunConfig& c, const auto& k, const auto& v) { c.hp.h = to_real(k, v); }},
        {"runs", [](RunConfig& c, const auto& k, const auto& v) { c.hp.num_runs = to_small_int(k, v); }},
        {"patience", [](RunConfig& c, const auto& k, const auto& v) { c.hp.patience = to_small_int(k, v); }},
        {"fix",
         [](RunConfig& c, const auto& k, const auto& v) {
             try {
                 c.hp.fix = parse_fix_strategy(v);
             } catch (const std::invalid_argument&) {
                 type_error(k, v, "maxdegree, degreeone, none or a node index");
             }
         }},
        {"seed", [](RunConfig& c, const auto& k, const auto& v) { c.hp.master_seed = to_uint(k, v); }},
        {"inclusive_endpoint",
         [](RunConfig& c, const auto& k, const auto& v) { c.hp.inclusive_endpoint = to_bool(k, v); }},
        {"stats", [](RunConfig& c, const auto&, const auto& v) { c.stats_path = v; }},
        {"trajectory", [](RunConfig& c, const auto&, const auto& v) { c.trajectory_path = v; }},
        {"histogram", [](RunConfig& c, const auto&, const auto& v) { c.histogram_path = v; }},
        {"coloring", [](RunConfig& c, const auto&, const auto& v) { c.coloring_path = v; }},
        {"workers",
         [](RunConfig& c, const auto& k, const auto& v) {
             const auto w = to_uint(k, v);
             if (w < 1) type_error(k, v, "a positive integer");
             c.workers = static_cast<std::size_t>(w);
         }},
        {"verbosity", [](RunConfig& c, const auto& k, const auto& v) { c.verbosity = to_small_int(k, v); }},
        {"timing", [](RunConfig& c, const auto& k, const auto& v) { c.timing = to_bool(k, v); }},
        {"sweep_min", [](RunConfig& c, const auto& k, const auto& v) { c.sweep_min = to_small_int(k, v); }},
        {"sweep_max", [](RunConfig& c, const auto& k, const auto& v) { c.sweep_max = to_small_int(k, v); }},
        {"sweep_full", [](RunConfig& c, const auto& k, const auto& v) { c.sweep_full = to_bool(k, v); }},
    };
    return table;
}

}  // namespace

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> out;
        for (const auto& [k, _] : setters()) out.push_back(k);
        return out;
    }();
    return keys;
}

ConfigOverrides parse_config_text(const std::string& text) {
    ConfigOverrides out;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        }
        out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return out;
}

RunConfig load_config(const ConfigOverrides& file_entries, const ConfigOverrides& flag_entries) {
    RunConfig config;
    std::set<std::string> seen;
    auto apply = [&](const ConfigOverrides& entries) {
        for (const auto& [key, value] : entries) {
            const auto it = setters().find(key);
            if (it == setters().end()) throw ConfigError("unknown config key '" + key + "'");
            it->second(config, key, value);
            seen.insert(key);
        }
    };
    apply(file_entries);
    apply(flag_entries);

    try {
        config.hp.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (config.sweep_min != 0 && config.sweep_min < 2) throw ConfigError("sweep_min must be ≥ 2");
    if (config.sweep_max != 0 && config.sweep_max < std::max(config.sweep_min, 2)) {
        throw ConfigError("sweep_max must be ≥ sweep_min");
    }

    const bool lqa = config.hp.method == Method::QdLQA;
    const std::vector<std::string> qdgd_only = {"patience", "f_tilde"};
    const std::vector<std::string> qdlqa_only = {"alpha", "f", "inclusive_endpoint"};
    for (const auto& key : lqa ? qdgd_only : qdlqa_only) {
        if (seen.count(key)) {
            config.warnings.push_back(key + " has no effect with method " + to_string(config.hp.method) +
                                      "; ignored");
        }
    }
    return config;
}

RunConfig load_config_file(const std::string& path, const ConfigOverrides& flag_entries) {
    ConfigOverrides file_entries;
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open config file " + path);
        std::ostringstream text;
        text << in.rdbuf();
        file_entries = parse_config_text(text.str());
    }
    return load_config(file_entries, flag_entries);
}

nlohmann::json to_json(const RunConfig& config) {
    const auto& hp = config.hp;
    auto format_name = [](GraphFormat f) {
        switch (f) {
            case GraphFormat::Dimacs: return "dimacs";
            case GraphFormat::EdgeList: return "edgelist";
            case GraphFormat::Auto: break;
        }
        return "auto";
    };
    return {
        {"graph", config.graph_path},
        {"format", format_name(config.format)},
        {"method", to_string(hp.method)},
        {"colors", hp.num_colors},
        {"steps", hp.num_steps},
        {"gamma", hp.gamma},
        {"alpha", to_string(hp.alpha)},
        {"eta", hp.eta},
        {"f", hp.f},
        {"f_tilde", hp.f_tilde},
        {"h", hp.h},
        {"runs", hp.num_runs},
        {"patience", hp.patience},
        {"fix", to_string(hp.fix)},
        {"seed", hp.master_seed},
        {"inclusive_endpoint", hp.inclusive_endpoint},
        {"adam", {{"beta1", 0.9}, {"beta2", 0.999}, {"epsilon", 1e-8}}},
    };
}

}  // namespace qdcolor
