// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "movi/errors.hpp"

namespace movi {

/// Extents of a 4D field in row-major (frames, channels, height, width) order.
struct Shape4 {
    std::size_t frames = 0;
    std::size_t channels = 0;
    std::size_t height = 0;
    std::size_t width = 0;

    std::size_t volume() const noexcept { return frames * channels * height * width; }
    std::size_t spatial_cells() const noexcept { return height * width; }
    bool operator==(const Shape4&) const = default;
};

std::string to_string(const Shape4& s);

/// Throws DimensionError unless every extent is >= 1.
void require_valid(const Shape4& s, const char* what);

/// Real-valued 4D field (noise, latents, toy videos). Data is row-major
/// (t, c, h, w); all arithmetic happens in double, the on-disk format is f32.
struct VideoLatent {
    Shape4 shape{};
    std::vector<double> data;

    VideoLatent() = default;
    explicit VideoLatent(Shape4 s) : shape(s) {
        require_valid(s, "VideoLatent");
        data.assign(s.volume(), 0.0);
    }
    VideoLatent(Shape4 s, std::vector<double> values) : shape(s), data(std::move(values)) {
        require_valid(s, "VideoLatent");
        if (data.size() != s.volume())
            throw ShapeError("VideoLatent data length " + std::to_string(data.size()) +
                             " does not match shape " + to_string(s));
    }

    std::size_t index(std::size_t t, std::size_t c, std::size_t i, std::size_t j) const noexcept {
        return ((t * shape.channels + c) * shape.height + i) * shape.width + j;
    }
    double& at(std::size_t t, std::size_t c, std::size_t i, std::size_t j) {
        return data[index(t, c, i, j)];
    }
    double at(std::size_t t, std::size_t c, std::size_t i, std::size_t j) const {
        return data[index(t, c, i, j)];
    }

    bool all_finite() const noexcept;
};

/// Complex spectrum of a VideoLatent; the DFT runs over the (T, H, W) axes
/// independently per channel. Same row-major (t, c, h, w) layout.
struct SpectrumField {
    Shape4 shape{};
    std::vector<std::complex<double>> data;

    SpectrumField() = default;
    explicit SpectrumField(Shape4 s) : shape(s) {
        require_valid(s, "SpectrumField");
        data.assign(s.volume(), {0.0, 0.0});
    }

    std::size_t index(std::size_t t, std::size_t c, std::size_t i, std::size_t j) const noexcept {
        return ((t * shape.channels + c) * shape.height + i) * shape.width + j;
    }
    std::complex<double>& at(std::size_t t, std::size_t c, std::size_t i, std::size_t j) {
        return data[index(t, c, i, j)];
    }
    const std::complex<double>& at(std::size_t t, std::size_t c, std::size_t i, std::size_t j) const {
        return data[index(t, c, i, j)];
    }
};

/// Deterministic random stream identified by (seed, label). Draw k of a given
/// stream is the same on every platform: the generator is mt19937_64 (whose
/// sequence the standard pins down) and the normal transform is an explicit
/// Box-Muller, not the implementation-defined std::normal_distribution.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::string label);

    /// Uniform in [0, 1) with 53 random bits.
    double next_uniform();
    /// Standard normal draw.
    double next_normal();

    std::uint64_t seed() const noexcept { return seed_; }
    const std::string& label() const noexcept { return label_; }

private:
    std::uint64_t seed_;
    std::string label_;
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// i.i.d. standard normal field, filled in row-major draw order.
VideoLatent sample_gaussian(const Shape4& dims, RngStream& rng);

/// Convenience overload: fresh stream from (seed, label).
VideoLatent sample_gaussian(const Shape4& dims, std::uint64_t seed, const std::string& label);

}  // namespace movi
