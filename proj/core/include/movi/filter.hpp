// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "movi/latent.hpp"

namespace movi {

enum class FilterFamily { butterworth, gaussian, ideal };

FilterFamily filter_family_from_string(const std::string& name);
std::string to_string(FilterFamily family);

/// Spatio-temporal low-pass mask over the (T, H, W) spectrum, values in [0, 1].
///
/// Values are stored in natural DFT bin order; bin k of an axis of length n
/// carries the signed index s = k for k <= n/2 and s = k - n otherwise, i.e.
/// the centered frequency f = s / n in [-0.5, 0.5]. The anisotropic distance is
///
///     d^2 = (f_t / cutoff_temporal)^2 + (f_h^2 + f_w^2) / cutoff_spatial^2
///
/// and the families evaluate
///     butterworth: 1 / (1 + d^(2*order))       (value 0.5 at d = 1)
///     gaussian:    exp(-ln2 * d^2)             (value 0.5 at d = 1)
///     ideal:       1 if d <= 1 else 0
/// so DC always passes and cutoffs of 1.0 pass the whole grid (the corner
/// distance sqrt(0.75) stays below 1).
struct FrequencyFilter {
    std::size_t frames = 0;
    std::size_t height = 0;
    std::size_t width = 0;
    FilterFamily family = FilterFamily::butterworth;
    double cutoff_spatial = 0.25;
    double cutoff_temporal = 0.25;
    int order = 4;
    std::vector<double> values;  // row-major (t, h, w), natural DFT bin order

    std::size_t index(std::size_t t, std::size_t i, std::size_t j) const noexcept {
        return (t * height + i) * width + j;
    }
    double at(std::size_t t, std::size_t i, std::size_t j) const { return values[index(t, i, j)]; }
};

/// Builds the low-pass mask; cutoffs must lie in (0, 1], order >= 1.
FrequencyFilter make_lowpass_filter(std::size_t frames, std::size_t height, std::size_t width,
                                    FilterFamily family, double cutoff_spatial, double cutoff_temporal,
                                    int order = 4);

/// Hadamard product spectrum * H per channel. Dims must match (T, H, W).
SpectrumField apply_filter(const SpectrumField& spectrum, const FrequencyFilter& filter);

/// Hadamard product spectrum * (1 - H); the high-pass side of the split.
SpectrumField apply_filter_complement(const SpectrumField& spectrum, const FrequencyFilter& filter);

}  // namespace movi
