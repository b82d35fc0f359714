// SPDX-License-Identifier: Apache-2.0
#include "movi/filter.hpp"

#include <cmath>
#include <numbers>

namespace movi {

FilterFamily filter_family_from_string(const std::string& name) {
    if (name == "butterworth") return FilterFamily::butterworth;
    if (name == "gaussian") return FilterFamily::gaussian;
    if (name == "ideal") return FilterFamily::ideal;
    throw ParameterError("unknown filter family '" + name + "' (expected butterworth|gaussian|ideal)");
}

std::string to_string(FilterFamily family) {
    switch (family) {
        case FilterFamily::butterworth: return "butterworth";
        case FilterFamily::gaussian: return "gaussian";
        case FilterFamily::ideal: return "ideal";
    }
    return "?";
}

namespace {

// Centered frequency of bin k on an axis of length n, in [-0.5, 0.5].
double bin_frequency(std::size_t k, std::size_t n) {
    const auto signed_index =
        (k <= n / 2) ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(n);
    return signed_index / static_cast<double>(n);
}

double evaluate(FilterFamily family, double d, int order) {
    switch (family) {
        case FilterFamily::butterworth:
            return 1.0 / (1.0 + std::pow(d, 2.0 * order));
        case FilterFamily::gaussian:
            return std::exp(-std::numbers::ln2 * d * d);
        case FilterFamily::ideal:
            return d <= 1.0 ? 1.0 : 0.0;
    }
    return 0.0;
}

}  // namespace

FrequencyFilter make_lowpass_filter(std::size_t frames, std::size_t height, std::size_t width,
                                    FilterFamily family, double cutoff_spatial, double cutoff_temporal,
                                    int order) {
    if (frames == 0 || height == 0 || width == 0)
        throw DimensionError("make_lowpass_filter: every extent must be >= 1");
    if (!(cutoff_spatial > 0.0 && cutoff_spatial <= 1.0))
        throw ParameterError("make_lowpass_filter: cutoff_spatial must lie in (0, 1]");
    if (!(cutoff_temporal > 0.0 && cutoff_temporal <= 1.0))
        throw ParameterError("make_lowpass_filter: cutoff_temporal must lie in (0, 1]");
    if (order < 1) throw ParameterError("make_lowpass_filter: order must be >= 1");

    FrequencyFilter filter;
    filter.frames = frames;
    filter.height = height;
    filter.width = width;
    filter.family = family;
    filter.cutoff_spatial = cutoff_spatial;
    filter.cutoff_temporal = cutoff_temporal;
    filter.order = order;
    filter.values.resize(frames * height * width);

    for (std::size_t t = 0; t < frames; ++t) {
        const double ft = bin_frequency(t, frames) / cutoff_temporal;
        for (std::size_t i = 0; i < height; ++i) {
            const double fh = bin_frequency(i, height) / cutoff_spatial;
            for (std::size_t j = 0; j < width; ++j) {
                const double fw = bin_frequency(j, width) / cutoff_spatial;
                const double d = std::sqrt(ft * ft + fh * fh + fw * fw);
                filter.values[filter.index(t, i, j)] = evaluate(family, d, order);
            }
        }
    }
    return filter;
}

namespace {

SpectrumField apply_impl(const SpectrumField& spectrum, const FrequencyFilter& filter, bool complement) {
    const Shape4 s = spectrum.shape;
    if (filter.frames != s.frames || filter.height != s.height || filter.width != s.width)
        throw ShapeError("apply_filter: filter dims (" + std::to_string(filter.frames) + ", " +
                         std::to_string(filter.height) + ", " + std::to_string(filter.width) +
                         ") do not match spectrum " + to_string(s));

    SpectrumField out(s);
    for (std::size_t t = 0; t < s.frames; ++t)
        for (std::size_t i = 0; i < s.height; ++i)
            for (std::size_t j = 0; j < s.width; ++j) {
                const double h = filter.at(t, i, j);
                const double g = complement ? 1.0 - h : h;
                for (std::size_t c = 0; c < s.channels; ++c)
                    out.at(t, c, i, j) = spectrum.at(t, c, i, j) * g;
            }
    return out;
}

}  // namespace

SpectrumField apply_filter(const SpectrumField& spectrum, const FrequencyFilter& filter) {
    return apply_impl(spectrum, filter, false);
}

SpectrumField apply_filter_complement(const SpectrumField& spectrum, const FrequencyFilter& filter) {
    return apply_impl(spectrum, filter, true);
}

}  // namespace movi
