// SPDX-License-Identifier: Apache-2.0
#include "movi/metrics.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "movi/noise.hpp"

namespace movi {

std::vector<double> metric_occupancy(const VideoLatent& video, const BoxTrack& track,
                                     const std::vector<std::size_t>& channels) {
    const Shape4& s = video.shape;
    if (track.boxes.size() != s.frames)
        throw ShapeError("metric_occupancy: track has " + std::to_string(track.boxes.size()) +
                         " boxes, video has " + std::to_string(s.frames) + " frames");
    for (std::size_t c : channels)
        if (c >= s.channels)
            throw ShapeError("metric_occupancy: channel " + std::to_string(c) + " out of range");

    const MaskVolume mask = rasterize_masks(track, s.height, s.width);
    std::vector<std::size_t> use = channels;
    if (use.empty())
        for (std::size_t c = 0; c < s.channels; ++c) use.push_back(c);

    std::vector<double> occupancy(s.frames, 0.0);
    for (std::size_t f = 0; f < s.frames; ++f) {
        double inside = 0.0, total = 0.0;
        for (std::size_t i = 0; i < s.height; ++i)
            for (std::size_t j = 0; j < s.width; ++j) {
                double magnitude = 0.0;
                for (std::size_t c : use) magnitude += std::abs(video.at(f, c, i, j));
                total += magnitude;
                if (mask.at(f, i, j)) inside += magnitude;
            }
        occupancy[f] = total > 0.0 ? inside / total : 0.0;
    }
    return occupancy;
}

double dynamic_degree_proxy(const VideoLatent& video) {
    const Shape4& s = video.shape;
    if (s.frames < 2) return 0.0;
    const std::size_t frame_size = s.channels * s.height * s.width;

    double diff_sum = 0.0;
    for (std::size_t f = 0; f + 1 < s.frames; ++f) {
        const double* cur = video.data.data() + f * frame_size;
        const double* next = cur + frame_size;
        for (std::size_t k = 0; k < frame_size; ++k) diff_sum += std::abs(next[k] - cur[k]);
    }
    const double mean_diff = diff_sum / static_cast<double>((s.frames - 1) * frame_size);

    double abs_sum = 0.0;
    for (double v : video.data) abs_sum += std::abs(v);
    const double mean_abs = abs_sum / static_cast<double>(video.data.size());
    return mean_abs > 1e-12 ? mean_diff / mean_abs : 0.0;
}

double track_smoothness(const BoxTrack& track) {
    const std::size_t n = track.boxes.size();
    if (n < 3) return 0.0;
    double sum = 0.0;
    for (std::size_t f = 1; f + 1 < n; ++f) {
        const double ax = track.boxes[f + 1].center_x() - 2.0 * track.boxes[f].center_x() +
                          track.boxes[f - 1].center_x();
        const double ay = track.boxes[f + 1].center_y() - 2.0 * track.boxes[f].center_y() +
                          track.boxes[f - 1].center_y();
        sum += std::hypot(ax, ay);
    }
    return sum / static_cast<double>(n - 2);
}

std::string metrics_report_json(const MetricsReport& report) {
    nlohmann::json objects = nlohmann::json::array();
    for (const ObjectMetrics& o : report.objects) {
        objects.push_back({{"label", o.label},
                           {"occupancy", o.occupancy},
                           {"mean_occupancy", o.mean_occupancy},
                           {"smoothness", o.smoothness}});
    }
    nlohmann::json j{
        {"prompt", report.prompt},
        {"frames", report.frames},
        {"latent", report.latent_dims},
        {"objects", objects},
        {"dynamic_degree", report.dynamic_degree},
        {"heuristic_score", report.heuristic_score},
        {"candidates", report.candidates},
        {"selected_seed", report.selected_seed},
        {"selection_score", report.selection_score},
    };
    if (report.llm_score) j["llm_score"] = *report.llm_score;
    return j.dump(2) + "\n";
}

}  // namespace movi
