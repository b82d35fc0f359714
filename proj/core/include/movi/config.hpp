// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>

#include "movi/filter.hpp"
#include "movi/noise.hpp"
#include "movi/trajectory.hpp"

namespace movi {

enum class BackendKind { toy_dirac, toy_attention };

BackendKind backend_from_string(const std::string& name);
std::string to_string(BackendKind kind);

struct LlmSettings {
    std::string base_url;
    std::string model;
    std::string api_key;
    double temperature = 0.0;
    int max_retries = 2;  // retries after the first attempt
};

/// Pipeline configuration, loaded from a `key = value` text file. Every field
/// has a default; unknown keys are rejected. MOVI_LLM_BASE_URL,
/// MOVI_LLM_API_KEY and MOVI_LLM_MODEL override the endpoint settings only.
struct PipelineConfig {
    std::size_t canvas_width = 512;
    std::size_t canvas_height = 320;
    std::size_t frames = 16;
    std::size_t channels = 4;
    std::size_t latent_scale = 8;
    std::uint64_t seed = 0;
    BackendKind backend = BackendKind::toy_dirac;
    FlowMode flow = FlowMode::local;

    std::size_t schedule_steps = 50;
    double beta_start = 1e-4;
    double beta_end = 0.02;

    FilterFamily filter_family = FilterFamily::butterworth;
    double filter_cutoff_spatial = 0.25;
    double filter_cutoff_temporal = 0.25;
    int filter_order = 4;

    std::size_t reinit_iterations = 3;
    bool reinit_reinject = false;  // re-apply object patches after each re-init
    bool noise_reinit = false;     // re-init inside the `noise` stage output

    double attn_scale = 0.0;       // factor for competing tokens, in [-2, 2]
    bool attn_renormalize = false;
    std::size_t attn_step_begin = 0;
    std::size_t attn_step_end = SIZE_MAX;  // exclusive; SIZE_MAX = all steps

    BoxSizePolicy box;
    ScoreWeights score;
    LlmSettings llm;

    std::size_t lat_height() const;
    std::size_t lat_width() const;
    Canvas canvas() const {
        return {static_cast<double>(canvas_width), static_cast<double>(canvas_height)};
    }
};

/// Parses config text; unknown keys, bad values and a canvas that the latent
/// scale does not divide all throw ConfigError naming the key.
PipelineConfig parse_config_text(const std::string& text);

/// Reads the file (empty path = all defaults) and applies MOVI_LLM_* env
/// overrides.
PipelineConfig load_config(const std::string& path);

/// Applies MOVI_LLM_BASE_URL / MOVI_LLM_API_KEY / MOVI_LLM_MODEL.
void apply_env_overrides(PipelineConfig& config);

}  // namespace movi
