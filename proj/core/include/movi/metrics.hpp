// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "movi/latent.hpp"
#include "movi/trajectory.hpp"

namespace movi {

/// Per-frame fraction of signal mass inside the track's box:
/// sum of |v| over box cells / sum of |v| over the frame, using the magnitude
/// summed over `channels` (empty = every channel). An all-zero frame counts
/// as occupancy 0.
std::vector<double> metric_occupancy(const VideoLatent& video, const BoxTrack& track,
                                     const std::vector<std::size_t>& channels = {});

/// Mean absolute inter-frame difference normalized by the mean absolute value
/// of the video; 0 for single-frame or frame-constant videos.
double dynamic_degree_proxy(const VideoLatent& video);

/// Mean magnitude of the second difference of box centers, in canvas pixels.
double track_smoothness(const BoxTrack& track);

struct ObjectMetrics {
    std::string label;
    std::vector<double> occupancy;  // per frame
    double mean_occupancy = 0.0;
    double smoothness = 0.0;
};

struct MetricsReport {
    std::string prompt;
    std::size_t frames = 0;
    std::vector<std::size_t> latent_dims;  // (T, C, H, W)
    std::vector<ObjectMetrics> objects;
    double dynamic_degree = 0.0;
    double heuristic_score = 0.0;
    std::optional<double> llm_score;
    std::size_t candidates = 1;
    std::uint64_t selected_seed = 0;
    double selection_score = 0.0;  // rejection scorer value of the emitted video
};

/// Deterministic JSON rendering (sorted keys, shortest round-trip numbers).
std::string metrics_report_json(const MetricsReport& report);

}  // namespace movi
