// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "movi/errors.hpp"

namespace movi {

/// One planner coordinate: (frame, x, y). Frames are whatever the planner
/// emitted; normalization sorts and resamples them.
struct TrackPoint {
    int frame = 0;
    double x = 0.0;
    double y = 0.0;
    bool operator==(const TrackPoint&) const = default;
};

/// Raw parsed track: a label ("Cat", "Dog 2", "Man 1") and its points.
struct PointTrack {
    std::string label;
    std::vector<TrackPoint> points;
    bool operator==(const PointTrack&) const = default;
};

struct Canvas {
    double width = 512.0;
    double height = 320.0;
    double diagonal() const;
    bool operator==(const Canvas&) const = default;
};

/// Axis-aligned box in canvas pixel coordinates, corners (x0, y0) inclusive
/// top-left, (x1, y1) exclusive bottom-right in the usual raster sense.
struct Box {
    double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    double center_x() const { return 0.5 * (x0 + x1); }
    double center_y() const { return 0.5 * (y0 + y1); }
    bool operator==(const Box&) const = default;
};

/// Normalized per-object trajectory: exactly frame_count boxes of constant
/// size, all inside the canvas.
struct BoxTrack {
    std::string label;
    std::size_t object_index = 0;
    std::vector<Box> boxes;
    Canvas canvas;
};

struct ScenePlan {
    std::string prompt;
    std::vector<std::string> objects;  // labels, prompt order
    std::vector<BoxTrack> tracks;      // one per object
    std::size_t frame_count = 0;
    Canvas canvas;
};

/// A (prompt, planner response) transcript used for few-shot prompting.
struct FewshotExample {
    std::string prompt;
    std::string response;
};

/// The eight canned planner transcripts shipped with the toolkit. They serve
/// as the default few-shot pool and as parser fixtures.
std::span<const FewshotExample> fewshot_pool();

/// Renders the planner instruction for `frame_count` frames and the user
/// prompt, preceded by the given few-shot transcripts (possibly none).
std::string build_plan_prompt(const std::string& prompt, std::size_t frame_count,
                              std::span<const FewshotExample> fewshot);

/// Extracts labelled point tracks from planner text.
///
/// Grammar: a header is a run of letters/digits/spaces/apostrophes followed by
/// ':' on one line; a header owns every `(int, num, num)` tuple up to the next
/// header and becomes a track when it owns at least one. Prose lines (including
/// two-number asides like "(10, 20)") are ignored; tuples may span lines;
/// coordinates are kept verbatim, negative or off-canvas values included.
/// Throws TrajectoryParseError when no track is found and TupleError when a
/// tuple's frame slot is not an integer.
std::vector<PointTrack> parse_trajectories(const std::string& text);

/// `Label: (f, x, y) (f, x, y) ...` on one line; parsing it back yields the
/// identical track.
std::string serialize_track(const PointTrack& track);

/// Shortest fixed-notation decimal that round-trips the value.
std::string format_number(double value);

/// Constant box side lengths as fractions of the canvas, with optional
/// per-label overrides.
struct BoxSizePolicy {
    double width_frac = 0.25;
    double height_frac = 0.25;
    std::map<std::string, std::pair<double, double>> per_label;  // label -> (w_frac, h_frac)
};

/// Point tracks -> validated box tracks:
///  1. sort points by frame (duplicates keep the last occurrence),
///  2. resample to exactly frame_count centers by piecewise-linear
///     interpolation over frame index (endpoints preserved),
///  3. clamp centers into the canvas,
///  4. expand to constant-size boxes, translated (never shrunk) to stay
///     inside the canvas.
std::vector<BoxTrack> normalize_tracks(const std::vector<PointTrack>& tracks, std::size_t frame_count,
                                       const Canvas& canvas, const BoxSizePolicy& policy);

/// Assembles a plan from normalized tracks; labels must be unique.
ScenePlan make_scene_plan(const std::string& prompt, std::vector<BoxTrack> tracks,
                          std::size_t frame_count, const Canvas& canvas);

/// Penalty weights for the local trajectory score. Each fraction-valued
/// component is scaled by its weight and subtracted from 10:
///   speed:      fraction of per-frame center moves longer than
///               speed_threshold_frac * canvas diagonal,
///   jerk:       fraction of adjacent acceleration pairs that flip sign on an
///               axis with both magnitudes above jerk_threshold_frac * diagonal,
///   boundary:   fraction of centers pinned to the canvas boundary, applied
///               only when it exceeds 1/2 (clamping parks out-of-canvas
///               planner points exactly on the edge),
///   stationary: flat penalty when no object moves at all.
struct ScoreWeights {
    double speed = 3.0;
    double jerk = 2.0;
    double boundary = 2.0;
    double stationary = 5.0;
    double speed_threshold_frac = 0.25;
    double jerk_threshold_frac = 0.0625;
};

/// Deterministic score in [0, 10]; see ScoreWeights for the formula.
double score_trajectory_heuristic(const ScenePlan& plan, const ScoreWeights& weights = {});

/// Serializes box-track centers in the `Label: (f, x, y) ...` form used by
/// the judge prompt, one object per paragraph.
std::string serialize_tracks_for_judge(const std::vector<BoxTrack>& tracks);

/// Renders the judge instruction around the prompt and serialized tracks.
std::string build_judge_prompt(const std::string& scene_prompt, const std::vector<BoxTrack>& tracks);

/// First number in [0, 10] found in the reply; JudgeParseError when absent.
double parse_judge_score(const std::string& reply);

}  // namespace movi
