// SPDX-License-Identifier: Apache-2.0
#include "movi/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace movi {

BackendKind backend_from_string(const std::string& name) {
    if (name == "toy-dirac") return BackendKind::toy_dirac;
    if (name == "toy-attention") return BackendKind::toy_attention;
    throw ConfigError("unknown backend '" + name + "' (expected toy-dirac|toy-attention)");
}

std::string to_string(BackendKind kind) {
    return kind == BackendKind::toy_dirac ? "toy-dirac" : "toy-attention";
}

std::size_t PipelineConfig::lat_height() const { return canvas_height / latent_scale; }
std::size_t PipelineConfig::lat_width() const { return canvas_width / latent_scale; }

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    std::size_t e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

double parse_real(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0')
        throw ConfigError("config key '" + key + "': '" + value + "' is not a number");
    return v;
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& value) {
    std::uint64_t v = 0;
    const auto* first = value.data();
    const auto* last = first + value.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last)
        throw ConfigError("config key '" + key + "': '" + value + "' is not a non-negative integer");
    return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "on") return true;
    if (value == "false" || value == "0" || value == "off") return false;
    throw ConfigError("config key '" + key + "': '" + value + "' is not a boolean");
}

// "all" or "begin:end" (end exclusive; empty end = unbounded).
void parse_step_range(const std::string& key, const std::string& value, PipelineConfig& cfg) {
    if (value == "all") {
        cfg.attn_step_begin = 0;
        cfg.attn_step_end = SIZE_MAX;
        return;
    }
    const std::size_t colon = value.find(':');
    if (colon == std::string::npos)
        throw ConfigError("config key '" + key + "': expected 'all' or 'begin:end', got '" + value + "'");
    cfg.attn_step_begin = parse_unsigned(key, value.substr(0, colon));
    const std::string rest = value.substr(colon + 1);
    cfg.attn_step_end = rest.empty() ? SIZE_MAX : parse_unsigned(key, rest);
    if (cfg.attn_step_end <= cfg.attn_step_begin)
        throw ConfigError("config key '" + key + "': empty step range '" + value + "'");
}

// box.<label>.width_frac / box.<label>.height_frac
bool apply_box_override(const std::string& key, const std::string& value, PipelineConfig& cfg) {
    if (key.rfind("box.", 0) != 0) return false;
    const std::size_t last_dot = key.rfind('.');
    if (last_dot == 3) return false;  // plain box.width_frac handled elsewhere
    const std::string label = key.substr(4, last_dot - 4);
    const std::string field = key.substr(last_dot + 1);
    auto& entry = cfg.box.per_label.try_emplace(label, cfg.box.width_frac, cfg.box.height_frac)
                      .first->second;
    if (field == "width_frac")
        entry.first = parse_real(key, value);
    else if (field == "height_frac")
        entry.second = parse_real(key, value);
    else
        throw ConfigError("config key '" + key + "': unknown per-object box field '" + field + "'");
    return true;
}

void apply(PipelineConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "canvas.width") cfg.canvas_width = parse_unsigned(key, value);
    else if (key == "canvas.height") cfg.canvas_height = parse_unsigned(key, value);
    else if (key == "frames") cfg.frames = parse_unsigned(key, value);
    else if (key == "channels") cfg.channels = parse_unsigned(key, value);
    else if (key == "latent.scale") cfg.latent_scale = parse_unsigned(key, value);
    else if (key == "seed") cfg.seed = parse_unsigned(key, value);
    else if (key == "backend") cfg.backend = backend_from_string(value);
    else if (key == "flow") {
        if (value == "local") cfg.flow = FlowMode::local;
        else if (value == "global") cfg.flow = FlowMode::global;
        else throw ConfigError("config key 'flow': expected local|global, got '" + value + "'");
    }
    else if (key == "schedule.steps") cfg.schedule_steps = parse_unsigned(key, value);
    else if (key == "schedule.beta_start") cfg.beta_start = parse_real(key, value);
    else if (key == "schedule.beta_end") cfg.beta_end = parse_real(key, value);
    else if (key == "filter.family") cfg.filter_family = filter_family_from_string(value);
    else if (key == "filter.cutoff_spatial") cfg.filter_cutoff_spatial = parse_real(key, value);
    else if (key == "filter.cutoff_temporal") cfg.filter_cutoff_temporal = parse_real(key, value);
    else if (key == "filter.order") cfg.filter_order = static_cast<int>(parse_unsigned(key, value));
    else if (key == "reinit.iterations") cfg.reinit_iterations = parse_unsigned(key, value);
    else if (key == "reinit.reinject") cfg.reinit_reinject = parse_bool(key, value);
    else if (key == "noise.reinit") cfg.noise_reinit = parse_bool(key, value);
    else if (key == "attn.scale") cfg.attn_scale = parse_real(key, value);
    else if (key == "attn.renormalize") cfg.attn_renormalize = parse_bool(key, value);
    else if (key == "attn.step_range") parse_step_range(key, value, cfg);
    else if (key == "box.width_frac") cfg.box.width_frac = parse_real(key, value);
    else if (key == "box.height_frac") cfg.box.height_frac = parse_real(key, value);
    else if (key == "score.speed_weight") cfg.score.speed = parse_real(key, value);
    else if (key == "score.jerk_weight") cfg.score.jerk = parse_real(key, value);
    else if (key == "score.boundary_weight") cfg.score.boundary = parse_real(key, value);
    else if (key == "score.stationary_weight") cfg.score.stationary = parse_real(key, value);
    else if (key == "score.speed_threshold_frac") cfg.score.speed_threshold_frac = parse_real(key, value);
    else if (key == "score.jerk_threshold_frac") cfg.score.jerk_threshold_frac = parse_real(key, value);
    else if (key == "llm.base_url") cfg.llm.base_url = value;
    else if (key == "llm.model") cfg.llm.model = value;
    else if (key == "llm.api_key") cfg.llm.api_key = value;
    else if (key == "llm.temperature") cfg.llm.temperature = parse_real(key, value);
    else if (key == "llm.max_retries") cfg.llm.max_retries = static_cast<int>(parse_unsigned(key, value));
    else if (!apply_box_override(key, value, cfg))
        throw ConfigError("unknown config key '" + key + "'");
}

void validate(const PipelineConfig& cfg) {
    if (cfg.canvas_width == 0 || cfg.canvas_height == 0)
        throw ConfigError("canvas.width/canvas.height must be >= 1");
    if (cfg.frames == 0) throw ConfigError("frames must be >= 1");
    if (cfg.channels == 0) throw ConfigError("channels must be >= 1");
    if (cfg.latent_scale == 0) throw ConfigError("latent.scale must be >= 1");
    if (cfg.canvas_width % cfg.latent_scale != 0 || cfg.canvas_height % cfg.latent_scale != 0)
        throw ConfigError("latent.scale must divide canvas.width and canvas.height");
    if (cfg.schedule_steps == 0 || cfg.schedule_steps > 1000)
        throw ConfigError("schedule.steps must lie in [1, 1000]");
    if (!(cfg.beta_start > 0.0 && cfg.beta_start <= cfg.beta_end && cfg.beta_end < 1.0))
        throw ConfigError("schedule betas must satisfy 0 < beta_start <= beta_end < 1");
    if (!(cfg.filter_cutoff_spatial > 0.0 && cfg.filter_cutoff_spatial <= 1.0) ||
        !(cfg.filter_cutoff_temporal > 0.0 && cfg.filter_cutoff_temporal <= 1.0))
        throw ConfigError("filter cutoffs must lie in (0, 1]");
    if (cfg.filter_order < 1) throw ConfigError("filter.order must be >= 1");
    if (cfg.attn_scale < -2.0 || cfg.attn_scale > 2.0)
        throw ConfigError("attn.scale must lie in [-2, 2]");
    if (!(cfg.box.width_frac > 0.0 && cfg.box.width_frac <= 1.0 && cfg.box.height_frac > 0.0 &&
          cfg.box.height_frac <= 1.0))
        throw ConfigError("box fractions must lie in (0, 1]");
    if (cfg.llm.temperature < 0.0) throw ConfigError("llm.temperature must be >= 0");
    if (cfg.llm.max_retries < 0) throw ConfigError("llm.max_retries must be >= 0");
}

}  // namespace

PipelineConfig parse_config_text(const std::string& text) {
    PipelineConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
        apply(cfg, key, value);
    }
    validate(cfg);
    return cfg;
}

PipelineConfig load_config(const std::string& path) {
    PipelineConfig cfg;
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config file '" + path + "'");
        std::ostringstream buffer;
        buffer << in.rdbuf();
        cfg = parse_config_text(buffer.str());
    }
    apply_env_overrides(cfg);
    return cfg;
}

void apply_env_overrides(PipelineConfig& config) {
    if (const char* v = std::getenv("MOVI_LLM_BASE_URL")) config.llm.base_url = v;
    if (const char* v = std::getenv("MOVI_LLM_API_KEY")) config.llm.api_key = v;
    if (const char* v = std::getenv("MOVI_LLM_MODEL")) config.llm.model = v;
}

}  // namespace movi
