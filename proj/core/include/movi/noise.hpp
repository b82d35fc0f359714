// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "movi/filter.hpp"
#include "movi/latent.hpp"
#include "movi/trajectory.hpp"

namespace movi {

/// Binary per-frame spatial mask on the latent grid, row-major (t, h, w).
struct MaskVolume {
    std::size_t frames = 0;
    std::size_t height = 0;
    std::size_t width = 0;
    std::vector<std::uint8_t> values;

    MaskVolume() = default;
    MaskVolume(std::size_t t, std::size_t h, std::size_t w)
        : frames(t), height(h), width(w), values(t * h * w, 0) {}

    std::size_t index(std::size_t t, std::size_t i, std::size_t j) const noexcept {
        return (t * height + i) * width + j;
    }
    std::uint8_t at(std::size_t t, std::size_t i, std::size_t j) const { return values[index(t, i, j)]; }
    std::uint8_t& at(std::size_t t, std::size_t i, std::size_t j) { return values[index(t, i, j)]; }
    std::size_t active_cells() const;
};

struct ShiftStep {
    int di = 0;  // vertical, latent cells
    int dj = 0;  // horizontal
    bool operator==(const ShiftStep&) const = default;
};

/// Integer per-frame shifts for frames 2..T plus the fractional remainder
/// carried after each step (so slow motions accumulate instead of stalling).
struct ShiftSequence {
    std::vector<ShiftStep> steps;
    std::vector<std::pair<double, double>> remainders;  // (rem_i, rem_j) after each step
};

/// The constant-size integer box of a track on the latent grid: side lengths
/// from the (constant) pixel box size, per-frame corners from the scaled,
/// half-away-from-zero-rounded pixel corners, clamped so the box always fits.
struct LatentBoxes {
    std::size_t box_height = 1;
    std::size_t box_width = 1;
    std::vector<std::pair<std::size_t, std::size_t>> corners;  // (top, left) per frame
};

LatentBoxes latent_box_geometry(const BoxTrack& track, std::size_t lat_height, std::size_t lat_width);

/// Keeps the low band of z_t and replaces the high band with eta's:
/// ifft3(fft3(z_t) * H + fft3(eta) * (1 - H)).
VideoLatent frequency_reinit(const VideoLatent& z_t, const VideoLatent& eta, const FrequencyFilter& filter);

/// Per-frame center deltas scaled from canvas pixels to latent cells and split
/// into integer shifts plus carried remainders.
ShiftSequence trajectory_shifts(const BoxTrack& track, std::size_t lat_height, std::size_t lat_width);

/// Propagates frame-1 noise through the sequence: every frame is the previous
/// one cyclically shifted by that frame's (di, dj), so each frame holds
/// exactly the multiset of frame-1 values. first_frame must have frames == 1;
/// output has 1 + steps frames.
VideoLatent noise_flow(const VideoLatent& first_frame, const ShiftSequence& shifts);

/// Rasterizes the track's boxes onto the latent grid. Every frame has at
/// least one active cell (a sub-cell box promotes to the cell nearest its
/// center).
MaskVolume rasterize_masks(const BoxTrack& track, std::size_t lat_height, std::size_t lat_width);

/// Replaces noise inside the mask with the local patch at box-relative
/// indices, so the identical patch travels with the box across frames.
/// local_patch must be (1, C, box_height, box_width) for the track's latent
/// box; the mask must lie inside the per-frame box.
VideoLatent local_noise_inject(const VideoLatent& frame_noises, const MaskVolume& mask,
                               const VideoLatent& local_patch, const BoxTrack& track);

enum class FlowMode { local, global };

struct ComposeOptions {
    FlowMode flow = FlowMode::local;
    bool reinit = false;  // frequency_reinit against the "eta" stream after injection
};

struct SceneNoise {
    VideoLatent noise;
    std::vector<MaskVolume> masks;  // one per object, plan order
    std::size_t overlap_cells = 0;  // cells claimed by more than one object
};

/// Builds structured initial noise for a plan.
///
/// local mode: background is T independent Gaussian frames (stream "bg"); each
/// object's patch (stream "object:<index>") is injected under its mask in
/// ascending object_index order, so the highest index wins where masks
/// overlap. global mode: one Gaussian slab (stream "bg") flows through the
/// whole field along object 0's shifts; further objects' flows are spliced in
/// under their masks. With reinit set, frequency_reinit runs afterwards
/// against fresh noise from stream "eta"; filter may be null otherwise.
SceneNoise compose_scene_noise(const ScenePlan& plan, std::size_t channels, std::size_t lat_height,
                               std::size_t lat_width, std::uint64_t seed, const FrequencyFilter* filter,
                               const ComposeOptions& options = {});

}  // namespace movi
