// SPDX-License-Identifier: Apache-2.0
#include "movi/trajectory.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <regex>
#include <sstream>

namespace movi {

double Canvas::diagonal() const { return std::hypot(width, height); }

std::string format_number(double value) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed);
    if (ec != std::errc{}) {
        std::snprintf(buf, sizeof(buf), "%.17g", value);
        return buf;
    }
    return std::string(buf, end);
}

std::string build_plan_prompt(const std::string& prompt, std::size_t frame_count,
                              std::span<const FewshotExample> fewshot) {
    if (frame_count < 2) throw ParameterError("build_plan_prompt: frame_count must be >= 2");
    std::string out;
    for (const auto& example : fewshot) {
        out += "Prompt: " + example.prompt + "\n";
        out += "Response: " + example.response + "\n\n";
    }
    out += "Think of a trajectory for a " + std::to_string(frame_count) +
           "-frame video, given the prompt. Give me (x,y) coordinates of the objects over time. "
           "You should provide co-ordinates based on the number of objects. "
           "Format should be: <Object1>: (frame, x, y) … <Object 2>: (frame, x , y) "
           "The prompt is: " +
           prompt;
    return out;
}

namespace {

struct Header {
    std::size_t label_begin = 0;  // offset of the label's first character
    std::size_t colon_end = 0;    // offset just past the ':'
    std::string label;
};

bool label_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == ' ' || c == '\'';
}

// Headers are `<label>:` with the label a run of letters/digits/spaces/
// apostrophes on a single line, starting with a letter.
std::vector<Header> find_headers(const std::string& text) {
    std::vector<Header> headers;
    for (std::size_t p = 0; p < text.size(); ++p) {
        if (text[p] != ':') continue;
        std::size_t begin = p;
        while (begin > 0 && label_char(text[begin - 1])) --begin;
        while (begin < p && (text[begin] == ' ' || text[begin] == '\'' ||
                             std::isdigit(static_cast<unsigned char>(text[begin]))))
            ++begin;
        std::size_t end = p;
        while (end > begin && text[end - 1] == ' ') --end;
        if (end == begin) continue;
        if (!std::isalpha(static_cast<unsigned char>(text[begin]))) continue;
        headers.push_back({begin, p + 1, text.substr(begin, end - begin)});
    }
    return headers;
}

struct RawTuple {
    std::size_t pos = 0;
    std::string frame_text;
    double x = 0.0;
    double y = 0.0;
};

double parse_double(const std::string& s) { return std::strtod(s.c_str(), nullptr); }

std::string locate(const std::string& text, std::size_t offset) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col) + " (offset " +
           std::to_string(offset) + ")";
}

std::vector<RawTuple> find_tuples(const std::string& text) {
    // Three comma-separated numbers in parentheses; two-number asides in prose
    // ("(10, 20)") do not match. \s lets tuples span lines.
    static const std::regex tuple_re(
        R"(\(\s*(-?(?:\d+\.?\d*|\.\d+))\s*,\s*(-?(?:\d+\.?\d*|\.\d+))\s*,\s*(-?(?:\d+\.?\d*|\.\d+))\s*\))");
    std::vector<RawTuple> tuples;
    auto begin = std::sregex_iterator(text.begin(), text.end(), tuple_re);
    for (auto it = begin; it != std::sregex_iterator(); ++it) {
        const std::smatch& m = *it;
        tuples.push_back({static_cast<std::size_t>(m.position(0)), m[1].str(), parse_double(m[2].str()),
                          parse_double(m[3].str())});
    }
    return tuples;
}

int tuple_frame(const RawTuple& tuple, const std::string& text) {
    if (tuple.frame_text.find('.') != std::string::npos)
        throw TupleError("tuple frame index '" + tuple.frame_text + "' is not an integer at " +
                             locate(text, tuple.pos),
                         tuple.pos);
    long long value = 0;
    const auto* first = tuple.frame_text.data();
    const auto* last = first + tuple.frame_text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        throw TupleError("tuple frame index '" + tuple.frame_text + "' is out of range at " +
                             locate(text, tuple.pos),
                         tuple.pos);
    return static_cast<int>(value);
}

}  // namespace

std::vector<PointTrack> parse_trajectories(const std::string& text) {
    const std::vector<Header> headers = find_headers(text);
    const std::vector<RawTuple> tuples = find_tuples(text);

    std::vector<PointTrack> tracks;
    auto track_for = [&](const std::string& label) -> PointTrack& {
        for (auto& t : tracks)
            if (t.label == label) return t;
        tracks.push_back({label, {}});
        return tracks.back();
    };

    std::size_t tuple_at = 0;
    for (std::size_t h = 0; h < headers.size(); ++h) {
        const std::size_t claim_end =
            (h + 1 < headers.size()) ? headers[h + 1].label_begin : text.size();
        while (tuple_at < tuples.size() && tuples[tuple_at].pos < headers[h].colon_end) ++tuple_at;
        std::vector<TrackPoint> points;
        while (tuple_at < tuples.size() && tuples[tuple_at].pos < claim_end) {
            const RawTuple& raw = tuples[tuple_at];
            points.push_back({tuple_frame(raw, text), raw.x, raw.y});
            ++tuple_at;
        }
        if (points.empty()) continue;  // prose line that happened to end in ':'
        PointTrack& track = track_for(headers[h].label);
        track.points.insert(track.points.end(), points.begin(), points.end());
    }

    if (tracks.empty())
        throw TrajectoryParseError("no labelled trajectory found in planner output", text);
    return tracks;
}

std::string serialize_track(const PointTrack& track) {
    std::string out = track.label + ":";
    for (const TrackPoint& p : track.points)
        out += " (" + std::to_string(p.frame) + ", " + format_number(p.x) + ", " + format_number(p.y) + ")";
    return out;
}

namespace {

std::vector<TrackPoint> canonical_points(const PointTrack& track) {
    std::vector<TrackPoint> pts = track.points;
    std::stable_sort(pts.begin(), pts.end(),
                     [](const TrackPoint& a, const TrackPoint& b) { return a.frame < b.frame; });
    // Duplicate frames keep the last occurrence in the original order.
    std::vector<TrackPoint> out;
    for (const TrackPoint& p : pts) {
        if (!out.empty() && out.back().frame == p.frame)
            out.back() = p;
        else
            out.push_back(p);
    }
    return out;
}

struct Center {
    double x, y;
};

Center interpolate(const std::vector<TrackPoint>& pts, double u) {
    if (u <= pts.front().frame) return {pts.front().x, pts.front().y};
    if (u >= pts.back().frame) return {pts.back().x, pts.back().y};
    std::size_t k = 0;
    while (k + 2 < pts.size() && u > pts[k + 1].frame) ++k;
    const auto& a = pts[k];
    const auto& b = pts[k + 1];
    if (u == a.frame) return {a.x, a.y};
    if (u == b.frame) return {b.x, b.y};
    const double t = (u - a.frame) / (static_cast<double>(b.frame) - a.frame);
    return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
}

Box expand_to_box(double cx, double cy, double bw, double bh, const Canvas& canvas) {
    double x0 = cx - 0.5 * bw, x1 = cx + 0.5 * bw;
    double y0 = cy - 0.5 * bh, y1 = cy + 0.5 * bh;
    if (x0 < 0.0) {
        x0 = 0.0;
        x1 = bw;
    } else if (x1 > canvas.width) {
        x1 = canvas.width;
        x0 = canvas.width - bw;
    }
    if (y0 < 0.0) {
        y0 = 0.0;
        y1 = bh;
    } else if (y1 > canvas.height) {
        y1 = canvas.height;
        y0 = canvas.height - bh;
    }
    return {x0, y0, x1, y1};
}

}  // namespace

std::vector<BoxTrack> normalize_tracks(const std::vector<PointTrack>& tracks, std::size_t frame_count,
                                       const Canvas& canvas, const BoxSizePolicy& policy) {
    if (frame_count < 1) throw ParameterError("normalize_tracks: frame_count must be >= 1");
    if (canvas.width <= 0.0 || canvas.height <= 0.0)
        throw ParameterError("normalize_tracks: canvas must have positive extent");
    if (!(policy.width_frac > 0.0 && policy.width_frac <= 1.0 && policy.height_frac > 0.0 &&
          policy.height_frac <= 1.0))
        throw ParameterError("normalize_tracks: box size fractions must lie in (0, 1]");

    std::vector<BoxTrack> out;
    out.reserve(tracks.size());
    for (std::size_t idx = 0; idx < tracks.size(); ++idx) {
        const PointTrack& track = tracks[idx];
        const std::vector<TrackPoint> pts = canonical_points(track);
        if (pts.size() < 2)
            throw DegenerateTrackError("track '" + track.label + "' has fewer than 2 distinct frames");

        double w_frac = policy.width_frac, h_frac = policy.height_frac;
        if (auto it = policy.per_label.find(track.label); it != policy.per_label.end()) {
            w_frac = it->second.first;
            h_frac = it->second.second;
        }
        const double bw = std::min(w_frac * canvas.width, canvas.width);
        const double bh = std::min(h_frac * canvas.height, canvas.height);

        const double f_min = pts.front().frame;
        const double f_max = pts.back().frame;
        BoxTrack box_track;
        box_track.label = track.label;
        box_track.object_index = idx;
        box_track.canvas = canvas;
        box_track.boxes.reserve(frame_count);
        for (std::size_t j = 0; j < frame_count; ++j) {
            const double u = (frame_count == 1)
                                 ? f_min
                                 : f_min + (f_max - f_min) * (static_cast<double>(j) /
                                                              static_cast<double>(frame_count - 1));
            Center c = interpolate(pts, u);
            c.x = std::clamp(c.x, 0.0, canvas.width);
            c.y = std::clamp(c.y, 0.0, canvas.height);
            box_track.boxes.push_back(expand_to_box(c.x, c.y, bw, bh, canvas));
        }
        out.push_back(std::move(box_track));
    }
    return out;
}

ScenePlan make_scene_plan(const std::string& prompt, std::vector<BoxTrack> tracks,
                          std::size_t frame_count, const Canvas& canvas) {
    ScenePlan plan;
    plan.prompt = prompt;
    plan.frame_count = frame_count;
    plan.canvas = canvas;
    for (std::size_t i = 0; i < tracks.size(); ++i) {
        tracks[i].object_index = i;
        tracks[i].canvas = canvas;
        if (tracks[i].boxes.size() != frame_count)
            throw SchemaError("track '" + tracks[i].label + "' has " +
                              std::to_string(tracks[i].boxes.size()) + " boxes, expected " +
                              std::to_string(frame_count));
        for (const auto& other : plan.objects)
            if (other == tracks[i].label)
                throw SchemaError("duplicate object label '" + tracks[i].label + "'");
        plan.objects.push_back(tracks[i].label);
    }
    plan.tracks = std::move(tracks);
    return plan;
}

double score_trajectory_heuristic(const ScenePlan& plan, const ScoreWeights& weights) {
    const double diag = plan.canvas.diagonal();
    const double speed_limit = weights.speed_threshold_frac * diag;
    const double jerk_limit = weights.jerk_threshold_frac * diag;

    std::size_t speed_hits = 0, speed_total = 0;
    std::size_t jerk_hits = 0, jerk_total = 0;
    std::size_t boundary_hits = 0, center_total = 0;
    double total_motion = 0.0;

    for (const BoxTrack& track : plan.tracks) {
        const std::size_t n = track.boxes.size();
        std::vector<Center> c(n);
        for (std::size_t f = 0; f < n; ++f) c[f] = {track.boxes[f].center_x(), track.boxes[f].center_y()};

        for (std::size_t f = 0; f < n; ++f) {
            ++center_total;
            if (c[f].x <= 0.0 || c[f].x >= plan.canvas.width || c[f].y <= 0.0 ||
                c[f].y >= plan.canvas.height)
                ++boundary_hits;
        }
        for (std::size_t f = 1; f < n; ++f) {
            const double step = std::hypot(c[f].x - c[f - 1].x, c[f].y - c[f - 1].y);
            total_motion += step;
            ++speed_total;
            if (step > speed_limit) ++speed_hits;
        }
        std::vector<Center> accel;
        for (std::size_t f = 1; f + 1 < n; ++f)
            accel.push_back({c[f + 1].x - 2.0 * c[f].x + c[f - 1].x, c[f + 1].y - 2.0 * c[f].y + c[f - 1].y});
        for (std::size_t k = 1; k < accel.size(); ++k) {
            ++jerk_total;
            const bool flip_x = accel[k].x * accel[k - 1].x < 0.0 &&
                                std::min(std::abs(accel[k].x), std::abs(accel[k - 1].x)) > jerk_limit;
            const bool flip_y = accel[k].y * accel[k - 1].y < 0.0 &&
                                std::min(std::abs(accel[k].y), std::abs(accel[k - 1].y)) > jerk_limit;
            if (flip_x || flip_y) ++jerk_hits;
        }
    }

    const double speed_frac = speed_total ? static_cast<double>(speed_hits) / speed_total : 0.0;
    const double jerk_frac = jerk_total ? static_cast<double>(jerk_hits) / jerk_total : 0.0;
    const double boundary_frac = center_total ? static_cast<double>(boundary_hits) / center_total : 0.0;
    const bool all_static = !plan.tracks.empty() && total_motion == 0.0;

    double score = 10.0;
    score -= weights.speed * speed_frac;
    score -= weights.jerk * jerk_frac;
    if (boundary_frac > 0.5) score -= weights.boundary * boundary_frac;
    if (all_static) score -= weights.stationary;
    return std::clamp(score, 0.0, 10.0);
}

std::string serialize_tracks_for_judge(const std::vector<BoxTrack>& tracks) {
    std::string out;
    for (std::size_t i = 0; i < tracks.size(); ++i) {
        if (i) out += "\n\n";
        out += tracks[i].label + ":";
        for (std::size_t f = 0; f < tracks[i].boxes.size(); ++f) {
            const Box& b = tracks[i].boxes[f];
            out += " (" + std::to_string(f + 1) + ", " + format_number(b.center_x()) + ", " +
                   format_number(b.center_y()) + ")";
        }
    }
    return out;
}

std::string build_judge_prompt(const std::string& scene_prompt, const std::vector<BoxTrack>& tracks) {
    const std::size_t frames = tracks.empty() ? 0 : tracks.front().boxes.size();
    std::string out = "Here's a possible trajectory for a " + std::to_string(frames) +
                      "-frame video of <prompt:> " + scene_prompt + ":\n\n<Trajectories:>\n";
    out += serialize_tracks_for_judge(tracks);
    out +=
        "\n\nRate this trajectory, consider realisticness, physics, smoothness and consistency. "
        "Give a combined score only.";
    return out;
}

double parse_judge_score(const std::string& reply) {
    static const std::regex number_re(R"(-?(?:\d+\.?\d*|\.\d+))");
    auto begin = std::sregex_iterator(reply.begin(), reply.end(), number_re);
    for (auto it = begin; it != std::sregex_iterator(); ++it) {
        const double value = parse_double(it->str());
        if (value >= 0.0 && value <= 10.0) return value;
    }
    throw JudgeParseError("no score in [0, 10] found in judge reply: " + reply);
}

}  // namespace movi
