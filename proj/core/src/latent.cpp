// SPDX-License-Identifier: Apache-2.0
#include "movi/latent.hpp"

#include <cmath>
#include <numbers>

namespace movi {

std::string to_string(const Shape4& s) {
    return "(" + std::to_string(s.frames) + ", " + std::to_string(s.channels) + ", " +
           std::to_string(s.height) + ", " + std::to_string(s.width) + ")";
}

void require_valid(const Shape4& s, const char* what) {
    if (s.frames == 0 || s.channels == 0 || s.height == 0 || s.width == 0)
        throw DimensionError(std::string(what) + ": every extent must be >= 1, got " + to_string(s));
}

bool VideoLatent::all_finite() const noexcept {
    for (double v : data)
        if (!std::isfinite(v)) return false;
    return true;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// FNV-1a over the label folded into the seed; keeps distinct labels on
// well-separated engine states.
std::uint64_t derive_state(std::uint64_t seed, const std::string& label) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : label) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return splitmix64(seed ^ splitmix64(h));
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::string label)
    : seed_(seed), label_(std::move(label)), engine_(derive_state(seed, label_)) {}

double RngStream::next_uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::next_normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = next_uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;  // keep log() finite
    const double u2 = next_uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

VideoLatent sample_gaussian(const Shape4& dims, RngStream& rng) {
    require_valid(dims, "sample_gaussian");
    VideoLatent field(dims);
    for (double& v : field.data) v = rng.next_normal();
    return field;
}

VideoLatent sample_gaussian(const Shape4& dims, std::uint64_t seed, const std::string& label) {
    RngStream rng(seed, label);
    return sample_gaussian(dims, rng);
}

}  // namespace movi
