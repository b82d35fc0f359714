// SPDX-License-Identifier: Apache-2.0
#include "movi/io.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include <nlohmann/json.hpp>

namespace movi {

namespace {

constexpr char kMagic[8] = {'M', 'O', 'V', 'I', 'L', 'A', 'T', '1'};

void put_u32(std::string& out, std::uint32_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
    out.push_back(static_cast<char>((v >> 16) & 0xff));
    out.push_back(static_cast<char>((v >> 24) & 0xff));
}

void put_f32(std::string& out, float v) {
    const auto bits = std::bit_cast<std::uint32_t>(v);
    put_u32(out, bits);
}

class Reader {
public:
    Reader(std::string bytes, std::string path) : bytes_(std::move(bytes)), path_(std::move(path)) {}

    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int b = 3; b >= 0; --b) v = (v << 8) | static_cast<unsigned char>(bytes_[pos_ + b]);
        pos_ += 4;
        return v;
    }
    float f32() { return std::bit_cast<float>(u32()); }
    std::uint8_t u8() {
        need(1);
        return static_cast<std::uint8_t>(bytes_[pos_++]);
    }
    void expect_magic() {
        need(8);
        if (std::memcmp(bytes_.data(), kMagic, 8) != 0)
            throw SchemaError("'" + path_ + "': bad magic, not a MOVILAT1 file");
        pos_ = 8;
    }
    void expect_end() const {
        if (pos_ != bytes_.size())
            throw SchemaError("'" + path_ + "': " + std::to_string(bytes_.size() - pos_) +
                              " trailing bytes");
    }

private:
    void need(std::size_t n) const {
        if (pos_ + n > bytes_.size()) throw SchemaError("'" + path_ + "': truncated file");
    }
    std::string bytes_;
    std::string path_;
    std::size_t pos_ = 0;
};

std::string read_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SchemaError("cannot open '" + path + "'");
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return bytes;
}

void write_bytes(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw SchemaError("cannot open '" + path + "' for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw SchemaError("short write to '" + path + "'");
}

}  // namespace

void write_latent(const std::string& path, const VideoLatent& field) {
    std::string bytes;
    bytes.reserve(28 + field.data.size() * 4);
    bytes.append(kMagic, 8);
    put_u32(bytes, 4);
    put_u32(bytes, static_cast<std::uint32_t>(field.shape.frames));
    put_u32(bytes, static_cast<std::uint32_t>(field.shape.channels));
    put_u32(bytes, static_cast<std::uint32_t>(field.shape.height));
    put_u32(bytes, static_cast<std::uint32_t>(field.shape.width));
    for (double v : field.data) put_f32(bytes, static_cast<float>(v));
    write_bytes(path, bytes);
}

VideoLatent read_latent(const std::string& path) {
    Reader reader(read_bytes(path), path);
    reader.expect_magic();
    const std::uint32_t rank = reader.u32();
    if (rank != 4) throw SchemaError("'" + path + "': rank " + std::to_string(rank) + ", expected 4");
    Shape4 shape;
    shape.frames = reader.u32();
    shape.channels = reader.u32();
    shape.height = reader.u32();
    shape.width = reader.u32();
    require_valid(shape, "read_latent");
    VideoLatent field(shape);
    for (double& v : field.data) {
        const float f = reader.f32();
        if (!std::isfinite(f)) throw SchemaError("'" + path + "': non-finite cell value");
        v = static_cast<double>(f);
    }
    reader.expect_end();
    return field;
}

void write_masks(const std::string& path, const std::vector<MaskVolume>& masks) {
    if (masks.empty()) {
        std::string bytes;
        bytes.append(kMagic, 8);
        put_u32(bytes, 4);
        put_u32(bytes, 0);
        put_u32(bytes, 0);
        put_u32(bytes, 0);
        put_u32(bytes, 0);
        write_bytes(path, bytes);
        return;
    }
    const MaskVolume& first = masks.front();
    for (const MaskVolume& m : masks)
        if (m.frames != first.frames || m.height != first.height || m.width != first.width)
            throw ShapeError("write_masks: mask volumes have mixed dims");

    std::string bytes;
    bytes.reserve(28 + masks.size() * first.values.size());
    bytes.append(kMagic, 8);
    put_u32(bytes, 4);
    put_u32(bytes, static_cast<std::uint32_t>(masks.size()));
    put_u32(bytes, static_cast<std::uint32_t>(first.frames));
    put_u32(bytes, static_cast<std::uint32_t>(first.height));
    put_u32(bytes, static_cast<std::uint32_t>(first.width));
    for (const MaskVolume& m : masks)
        for (std::uint8_t v : m.values) bytes.push_back(static_cast<char>(v));
    write_bytes(path, bytes);
}

std::vector<MaskVolume> read_masks(const std::string& path) {
    Reader reader(read_bytes(path), path);
    reader.expect_magic();
    const std::uint32_t rank = reader.u32();
    if (rank != 4) throw SchemaError("'" + path + "': rank " + std::to_string(rank) + ", expected 4");
    const std::uint32_t count = reader.u32();
    const std::uint32_t frames = reader.u32();
    const std::uint32_t height = reader.u32();
    const std::uint32_t width = reader.u32();
    std::vector<MaskVolume> masks;
    masks.reserve(count);
    for (std::uint32_t n = 0; n < count; ++n) {
        MaskVolume m(frames, height, width);
        for (std::uint8_t& v : m.values) {
            v = reader.u8();
            if (v > 1) throw SchemaError("'" + path + "': mask cell not in {0, 1}");
        }
        masks.push_back(std::move(m));
    }
    reader.expect_end();
    return masks;
}

namespace {

using nlohmann::json;

double number_field(const json& j, const std::string& where) {
    if (!j.is_number()) throw SchemaError("trajectory JSON: " + where + " must be a number");
    return j.get<double>();
}

}  // namespace

std::string plan_to_json(const ScenePlan& plan) {
    json objects = json::array();
    for (const BoxTrack& track : plan.tracks) {
        json boxes = json::array();
        for (const Box& b : track.boxes) boxes.push_back({b.x0, b.y0, b.x1, b.y1});
        objects.push_back({{"label", track.label}, {"boxes", boxes}});
    }
    json j{
        {"prompt", plan.prompt},
        {"canvas", {plan.canvas.width, plan.canvas.height}},
        {"frames", plan.frame_count},
        {"objects", objects},
    };
    return j.dump(2) + "\n";
}

ScenePlan plan_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw SchemaError(std::string("trajectory JSON: not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw SchemaError("trajectory JSON: top level must be an object");
    if (!j.contains("prompt") || !j["prompt"].is_string())
        throw SchemaError("trajectory JSON: field 'prompt' must be a string");
    if (!j.contains("canvas") || !j["canvas"].is_array() || j["canvas"].size() != 2)
        throw SchemaError("trajectory JSON: field 'canvas' must be [width, height]");
    if (!j.contains("frames") || !j["frames"].is_number_unsigned() || j["frames"].get<std::size_t>() == 0)
        throw SchemaError("trajectory JSON: field 'frames' must be a positive integer");
    if (!j.contains("objects") || !j["objects"].is_array())
        throw SchemaError("trajectory JSON: field 'objects' must be an array");

    Canvas canvas{number_field(j["canvas"][0], "canvas[0]"), number_field(j["canvas"][1], "canvas[1]")};
    if (canvas.width <= 0.0 || canvas.height <= 0.0)
        throw SchemaError("trajectory JSON: canvas extents must be positive");
    const auto frames = j["frames"].get<std::size_t>();

    std::vector<BoxTrack> tracks;
    for (std::size_t o = 0; o < j["objects"].size(); ++o) {
        const json& obj = j["objects"][o];
        const std::string where = "objects[" + std::to_string(o) + "]";
        if (!obj.is_object() || !obj.contains("label") || !obj["label"].is_string())
            throw SchemaError("trajectory JSON: " + where + ".label must be a string");
        if (!obj.contains("boxes") || !obj["boxes"].is_array() || obj["boxes"].size() != frames)
            throw SchemaError("trajectory JSON: " + where + ".boxes must hold exactly " +
                              std::to_string(frames) + " boxes");
        BoxTrack track;
        track.label = obj["label"].get<std::string>();
        track.canvas = canvas;
        track.object_index = o;
        for (std::size_t f = 0; f < frames; ++f) {
            const json& jb = obj["boxes"][f];
            const std::string bwhere = where + ".boxes[" + std::to_string(f) + "]";
            if (!jb.is_array() || jb.size() != 4)
                throw SchemaError("trajectory JSON: " + bwhere + " must be [x0, y0, x1, y1]");
            Box b{number_field(jb[0], bwhere), number_field(jb[1], bwhere), number_field(jb[2], bwhere),
                  number_field(jb[3], bwhere)};
            if (!(b.x0 < b.x1) || !(b.y0 < b.y1))
                throw SchemaError("trajectory JSON: " + bwhere + " must satisfy x0 < x1 and y0 < y1");
            if (b.x0 < 0.0 || b.y0 < 0.0 || b.x1 > canvas.width || b.y1 > canvas.height)
                throw SchemaError("trajectory JSON: " + bwhere + " lies outside the canvas");
            track.boxes.push_back(b);
        }
        tracks.push_back(std::move(track));
    }
    return make_scene_plan(j["prompt"].get<std::string>(), std::move(tracks), frames, canvas);
}

void write_plan(const std::string& path, const ScenePlan& plan) {
    write_text_file(path, plan_to_json(plan));
}

ScenePlan read_plan(const std::string& path) { return plan_from_json(read_text_file(path)); }

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SchemaError("cannot open '" + path + "'");
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw SchemaError("cannot open '" + path + "' for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw SchemaError("short write to '" + path + "'");
}

}  // namespace movi
