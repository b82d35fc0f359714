// SPDX-License-Identifier: Apache-2.0
#include "movi/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

// Transforms run at desk scale, so each channel is gathered into a contiguous
// (T, H, W) buffer and pushed through a cached FFTW plan. Plans are created
// with FFTW_ESTIMATE so results are reproducible run to run; the planner is
// not thread-safe, hence the mutex. fftw_execute_dft on distinct buffers is.

namespace movi {

namespace {

struct FftwBuffer {
    fftw_complex* ptr = nullptr;
    explicit FftwBuffer(std::size_t n) : ptr(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))) {
        if (!ptr) throw InternalError("fftw_malloc failed");
    }
    ~FftwBuffer() { fftw_free(ptr); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;
};

class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    fftw_plan get(std::size_t t, std::size_t h, std::size_t w, int sign) {
        const Key key{t, h, w, sign};
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        // Plan on scratch buffers; execution later uses the new-array API with
        // buffers of identical (fftw_malloc) alignment.
        FftwBuffer in(t * h * w), out(t * h * w);
        fftw_plan plan = fftw_plan_dft_3d(static_cast<int>(t), static_cast<int>(h), static_cast<int>(w),
                                          in.ptr, out.ptr, sign, FFTW_ESTIMATE);
        if (!plan) throw InternalError("fftw_plan_dft_3d failed");
        plans_.emplace(key, plan);
        return plan;
    }

private:
    using Key = std::tuple<std::size_t, std::size_t, std::size_t, int>;
    PlanCache() = default;
    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }
    std::mutex mutex_;
    std::map<Key, fftw_plan> plans_;
};

}  // namespace

SpectrumField fft3(const VideoLatent& field) {
    require_valid(field.shape, "fft3");
    const Shape4 s = field.shape;
    const std::size_t n = s.frames * s.height * s.width;
    fftw_plan plan = PlanCache::instance().get(s.frames, s.height, s.width, FFTW_FORWARD);

    SpectrumField spectrum(s);
    FftwBuffer in(n), out(n);
    for (std::size_t c = 0; c < s.channels; ++c) {
        std::size_t k = 0;
        for (std::size_t t = 0; t < s.frames; ++t)
            for (std::size_t i = 0; i < s.height; ++i)
                for (std::size_t j = 0; j < s.width; ++j, ++k) {
                    in.ptr[k][0] = field.at(t, c, i, j);
                    in.ptr[k][1] = 0.0;
                }
        fftw_execute_dft(plan, in.ptr, out.ptr);
        k = 0;
        for (std::size_t t = 0; t < s.frames; ++t)
            for (std::size_t i = 0; i < s.height; ++i)
                for (std::size_t j = 0; j < s.width; ++j, ++k)
                    spectrum.at(t, c, i, j) = {out.ptr[k][0], out.ptr[k][1]};
    }
    return spectrum;
}

VideoLatent ifft3(const SpectrumField& spectrum) {
    require_valid(spectrum.shape, "ifft3");
    const Shape4 s = spectrum.shape;
    const std::size_t n = s.frames * s.height * s.width;
    const double scale = 1.0 / static_cast<double>(n);
    fftw_plan plan = PlanCache::instance().get(s.frames, s.height, s.width, FFTW_BACKWARD);

    VideoLatent field(s);
    FftwBuffer in(n), out(n);
    double real_sq = 0.0, imag_sq = 0.0;
    for (std::size_t c = 0; c < s.channels; ++c) {
        std::size_t k = 0;
        for (std::size_t t = 0; t < s.frames; ++t)
            for (std::size_t i = 0; i < s.height; ++i)
                for (std::size_t j = 0; j < s.width; ++j, ++k) {
                    const auto& v = spectrum.at(t, c, i, j);
                    in.ptr[k][0] = v.real();
                    in.ptr[k][1] = v.imag();
                }
        fftw_execute_dft(plan, in.ptr, out.ptr);
        k = 0;
        for (std::size_t t = 0; t < s.frames; ++t)
            for (std::size_t i = 0; i < s.height; ++i)
                for (std::size_t j = 0; j < s.width; ++j, ++k) {
                    const double re = out.ptr[k][0] * scale;
                    const double im = out.ptr[k][1] * scale;
                    real_sq += re * re;
                    imag_sq += im * im;
                    field.at(t, c, i, j) = re;
                }
    }
    if (std::sqrt(imag_sq) > 1e-6 * std::sqrt(real_sq))
        throw ConjugateSymmetryError("ifft3: imaginary residue " + std::to_string(std::sqrt(imag_sq)) +
                                     " exceeds 1e-6 of field norm " + std::to_string(std::sqrt(real_sq)));
    return field;
}

}  // namespace movi
