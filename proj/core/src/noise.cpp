// SPDX-License-Identifier: Apache-2.0
#include "movi/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "movi/fft.hpp"

namespace movi {

std::size_t MaskVolume::active_cells() const {
    return static_cast<std::size_t>(std::count(values.begin(), values.end(), std::uint8_t{1}));
}

LatentBoxes latent_box_geometry(const BoxTrack& track, std::size_t lat_height, std::size_t lat_width) {
    if (lat_height == 0 || lat_width == 0)
        throw DimensionError("latent_box_geometry: latent extents must be >= 1");
    if (track.boxes.empty()) throw DegenerateTrackError("track '" + track.label + "' has no boxes");
    if (track.canvas.width <= 0.0 || track.canvas.height <= 0.0)
        throw ParameterError("latent_box_geometry: track canvas must have positive extent");

    const double scale_x = static_cast<double>(lat_width) / track.canvas.width;
    const double scale_y = static_cast<double>(lat_height) / track.canvas.height;

    LatentBoxes geo;
    const Box& first = track.boxes.front();
    const auto round_size = [](double v) { return static_cast<long long>(std::round(v)); };
    geo.box_width = static_cast<std::size_t>(
        std::clamp<long long>(round_size(first.width() * scale_x), 1, static_cast<long long>(lat_width)));
    geo.box_height = static_cast<std::size_t>(std::clamp<long long>(
        round_size(first.height() * scale_y), 1, static_cast<long long>(lat_height)));

    geo.corners.reserve(track.boxes.size());
    for (const Box& b : track.boxes) {
        long long left, top;
        if (round_size(b.width() * scale_x) < 1) {
            // Sub-cell box: promote to the cell nearest its center.
            left = static_cast<long long>(std::floor(b.center_x() * scale_x));
        } else {
            left = round_size(b.x0 * scale_x);
        }
        if (round_size(b.height() * scale_y) < 1) {
            top = static_cast<long long>(std::floor(b.center_y() * scale_y));
        } else {
            top = round_size(b.y0 * scale_y);
        }
        left = std::clamp<long long>(left, 0, static_cast<long long>(lat_width - geo.box_width));
        top = std::clamp<long long>(top, 0, static_cast<long long>(lat_height - geo.box_height));
        geo.corners.emplace_back(static_cast<std::size_t>(top), static_cast<std::size_t>(left));
    }
    return geo;
}

VideoLatent frequency_reinit(const VideoLatent& z_t, const VideoLatent& eta, const FrequencyFilter& filter) {
    if (!(z_t.shape == eta.shape))
        throw ShapeError("frequency_reinit: z_t " + to_string(z_t.shape) + " and eta " +
                         to_string(eta.shape) + " differ");
    const SpectrumField low = apply_filter(fft3(z_t), filter);
    const SpectrumField high = apply_filter_complement(fft3(eta), filter);
    SpectrumField sum(z_t.shape);
    for (std::size_t k = 0; k < sum.data.size(); ++k) sum.data[k] = low.data[k] + high.data[k];
    return ifft3(sum);
}

ShiftSequence trajectory_shifts(const BoxTrack& track, std::size_t lat_height, std::size_t lat_width) {
    if (lat_height == 0 || lat_width == 0)
        throw DimensionError("trajectory_shifts: latent extents must be >= 1");
    const double scale_x = static_cast<double>(lat_width) / track.canvas.width;
    const double scale_y = static_cast<double>(lat_height) / track.canvas.height;

    ShiftSequence seq;
    double rem_i = 0.0, rem_j = 0.0;
    for (std::size_t f = 1; f < track.boxes.size(); ++f) {
        const double dy = (track.boxes[f].center_y() - track.boxes[f - 1].center_y()) * scale_y + rem_i;
        const double dx = (track.boxes[f].center_x() - track.boxes[f - 1].center_x()) * scale_x + rem_j;
        const double step_i = std::trunc(dy);
        const double step_j = std::trunc(dx);
        rem_i = dy - step_i;
        rem_j = dx - step_j;
        ShiftStep step;
        step.di = static_cast<int>(static_cast<long long>(step_i) %
                                   static_cast<long long>(lat_height));
        step.dj = static_cast<int>(static_cast<long long>(step_j) %
                                   static_cast<long long>(lat_width));
        seq.steps.push_back(step);
        seq.remainders.emplace_back(rem_i, rem_j);
    }
    return seq;
}

VideoLatent noise_flow(const VideoLatent& first_frame, const ShiftSequence& shifts) {
    if (first_frame.shape.frames != 1)
        throw ShapeError("noise_flow: first_frame must have exactly one frame, got " +
                         to_string(first_frame.shape));
    const std::size_t frames = 1 + shifts.steps.size();
    const Shape4 s{frames, first_frame.shape.channels, first_frame.shape.height,
                   first_frame.shape.width};
    const auto h = static_cast<long long>(s.height);
    const auto w = static_cast<long long>(s.width);

    VideoLatent out(s);
    for (std::size_t c = 0; c < s.channels; ++c)
        for (std::size_t i = 0; i < s.height; ++i)
            for (std::size_t j = 0; j < s.width; ++j) out.at(0, c, i, j) = first_frame.at(0, c, i, j);

    for (std::size_t f = 1; f < frames; ++f) {
        const ShiftStep& step = shifts.steps[f - 1];
        for (std::size_t c = 0; c < s.channels; ++c)
            for (std::size_t i = 0; i < s.height; ++i) {
                const std::size_t src_i =
                    static_cast<std::size_t>(((static_cast<long long>(i) - step.di) % h + h) % h);
                for (std::size_t j = 0; j < s.width; ++j) {
                    const std::size_t src_j =
                        static_cast<std::size_t>(((static_cast<long long>(j) - step.dj) % w + w) % w);
                    out.at(f, c, i, j) = out.at(f - 1, c, src_i, src_j);
                }
            }
    }
    return out;
}

MaskVolume rasterize_masks(const BoxTrack& track, std::size_t lat_height, std::size_t lat_width) {
    const LatentBoxes geo = latent_box_geometry(track, lat_height, lat_width);
    MaskVolume mask(track.boxes.size(), lat_height, lat_width);
    for (std::size_t f = 0; f < geo.corners.size(); ++f) {
        const auto [top, left] = geo.corners[f];
        for (std::size_t i = top; i < top + geo.box_height; ++i)
            for (std::size_t j = left; j < left + geo.box_width; ++j) mask.at(f, i, j) = 1;
    }
    return mask;
}

VideoLatent local_noise_inject(const VideoLatent& frame_noises, const MaskVolume& mask,
                               const VideoLatent& local_patch, const BoxTrack& track) {
    const Shape4 s = frame_noises.shape;
    if (mask.frames != s.frames || mask.height != s.height || mask.width != s.width)
        throw ShapeError("local_noise_inject: mask (" + std::to_string(mask.frames) + ", " +
                         std::to_string(mask.height) + ", " + std::to_string(mask.width) +
                         ") does not match noise " + to_string(s));
    const LatentBoxes geo = latent_box_geometry(track, s.height, s.width);
    if (local_patch.shape.frames != 1 || local_patch.shape.channels != s.channels ||
        local_patch.shape.height != geo.box_height || local_patch.shape.width != geo.box_width)
        throw ShapeError("local_noise_inject: patch " + to_string(local_patch.shape) +
                         " does not match the track's latent box (1, " + std::to_string(s.channels) +
                         ", " + std::to_string(geo.box_height) + ", " + std::to_string(geo.box_width) +
                         ")");
    if (geo.corners.size() != s.frames)
        throw ShapeError("local_noise_inject: track has " + std::to_string(geo.corners.size()) +
                         " boxes, noise has " + std::to_string(s.frames) + " frames");

    VideoLatent out = frame_noises;
    std::size_t covered = 0;
    for (std::size_t f = 0; f < s.frames; ++f) {
        const auto [top, left] = geo.corners[f];
        for (std::size_t i = top; i < top + geo.box_height; ++i)
            for (std::size_t j = left; j < left + geo.box_width; ++j) {
                if (!mask.at(f, i, j)) continue;
                ++covered;
                for (std::size_t c = 0; c < s.channels; ++c)
                    out.at(f, c, i, j) = local_patch.at(0, c, i - top, j - left);
            }
    }
    if (covered != mask.active_cells())
        throw ShapeError("local_noise_inject: mask extends outside the track's box");
    return out;
}

namespace {

std::vector<std::size_t> index_order(const ScenePlan& plan) {
    std::vector<std::size_t> order(plan.tracks.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return plan.tracks[a].object_index < plan.tracks[b].object_index;
    });
    return order;
}

std::size_t count_overlap(const std::vector<MaskVolume>& masks) {
    if (masks.empty()) return 0;
    std::size_t overlap = 0;
    const std::size_t cells = masks.front().values.size();
    for (std::size_t k = 0; k < cells; ++k) {
        std::size_t claims = 0;
        for (const MaskVolume& m : masks) claims += m.values[k];
        if (claims > 1) ++overlap;
    }
    return overlap;
}

}  // namespace

SceneNoise compose_scene_noise(const ScenePlan& plan, std::size_t channels, std::size_t lat_height,
                               std::size_t lat_width, std::uint64_t seed, const FrequencyFilter* filter,
                               const ComposeOptions& options) {
    if (plan.frame_count == 0) throw ParameterError("compose_scene_noise: plan has zero frames");
    const Shape4 full{plan.frame_count, channels, lat_height, lat_width};

    SceneNoise scene;
    scene.masks.reserve(plan.tracks.size());
    for (const BoxTrack& track : plan.tracks) {
        if (track.boxes.size() != plan.frame_count)
            throw ShapeError("compose_scene_noise: track '" + track.label + "' has " +
                             std::to_string(track.boxes.size()) + " boxes, plan has " +
                             std::to_string(plan.frame_count) + " frames");
        scene.masks.push_back(rasterize_masks(track, lat_height, lat_width));
    }
    scene.overlap_cells = count_overlap(scene.masks);

    const std::vector<std::size_t> order = index_order(plan);

    if (options.flow == FlowMode::local || plan.tracks.empty()) {
        scene.noise = sample_gaussian(full, seed, "bg");
        for (std::size_t k : order) {
            const BoxTrack& track = plan.tracks[k];
            const LatentBoxes geo = latent_box_geometry(track, lat_height, lat_width);
            const Shape4 patch_shape{1, channels, geo.box_height, geo.box_width};
            const VideoLatent patch =
                sample_gaussian(patch_shape, seed, "object:" + std::to_string(track.object_index));
            scene.noise = local_noise_inject(scene.noise, scene.masks[k], patch, track);
        }
    } else {
        const VideoLatent slab = sample_gaussian(Shape4{1, channels, lat_height, lat_width}, seed, "bg");
        scene.noise = noise_flow(slab, trajectory_shifts(plan.tracks[order[0]], lat_height, lat_width));
        for (std::size_t n = 1; n < order.size(); ++n) {
            const std::size_t k = order[n];
            const VideoLatent flowed =
                noise_flow(slab, trajectory_shifts(plan.tracks[k], lat_height, lat_width));
            const MaskVolume& mask = scene.masks[k];
            for (std::size_t f = 0; f < full.frames; ++f)
                for (std::size_t i = 0; i < lat_height; ++i)
                    for (std::size_t j = 0; j < lat_width; ++j) {
                        if (!mask.at(f, i, j)) continue;
                        for (std::size_t c = 0; c < channels; ++c)
                            scene.noise.at(f, c, i, j) = flowed.at(f, c, i, j);
                    }
        }
    }

    if (options.reinit) {
        if (!filter) throw ParameterError("compose_scene_noise: reinit requested without a filter");
        const VideoLatent eta = sample_gaussian(full, seed, "eta");
        scene.noise = frequency_reinit(scene.noise, eta, *filter);
    }
    return scene;
}

}  // namespace movi
