// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "movi/attention.hpp"
#include "movi/config.hpp"
#include "movi/noise.hpp"

namespace movi {

/// DDIM step grid: cumulative alphas subsampled from a 1000-step linear-beta
/// base schedule, ascending in noise (index 0 is the least noisy step).
struct DiffusionSchedule {
    std::vector<double> alpha_bars;
    std::vector<std::size_t> base_timesteps;  // diagnostic: base-grid index per step

    std::size_t steps() const noexcept { return alpha_bars.size(); }
    double alpha_bar(std::size_t i) const { return alpha_bars.at(i); }
    /// alpha_bar of the next-cleaner step; 1 at the clean end.
    double alpha_bar_prev(std::size_t i) const { return i == 0 ? 1.0 : alpha_bars.at(i - 1); }
};

/// steps in [1, 1000], 0 < beta_start <= beta_end < 1.
DiffusionSchedule make_schedule(std::size_t steps, double beta_start = 1e-4, double beta_end = 2e-2);

/// z_t = sqrt(abar_t) z0 + sqrt(1 - abar_t) eps. t indexes the schedule with
/// t = 0 pinned to abar = 1 (identity) and t = k >= 1 meaning alpha_bar(k-1),
/// so t = steps() is the fully-noised end.
VideoLatent forward_diffuse(const VideoLatent& z0, std::size_t t, const DiffusionSchedule& schedule,
                            const VideoLatent& eps);

struct StepInfo {
    std::size_t index = 0;  // schedule index, descending during sampling
    double alpha_bar = 1.0;
};

struct Conditioning {
    std::string prompt;
    std::vector<TokenSpan> tokens;
};

/// Everything a backend needs to run guided cross-attention.
struct GuidanceContext {
    std::vector<ObjectBinding> bindings;
    std::vector<MaskVolume> masks;  // at the attention resolution, one per object
    bool renormalize = false;
    std::size_t step_begin = 0;              // guidance active for step_begin <= index < step_end
    std::size_t step_end = SIZE_MAX;
};

class DenoiserBackend {
public:
    virtual ~DenoiserBackend() = default;
    /// Noise estimate with the same dims as z_t; deterministic in its inputs.
    virtual VideoLatent predict_noise(const VideoLatent& z_t, const StepInfo& step,
                                      const Conditioning& cond, const GuidanceContext* guidance) = 0;
    /// Whether the backend routes through cross-attention sites (and thus
    /// consumes the guidance context).
    virtual bool has_attention_sites() const noexcept { return false; }
};

/// Optimal predictor for a point-mass data distribution: the target video x*
/// holds unit-mass Gaussian blobs (sigma = box side / 6) at each object's box
/// center, object i on channel i mod C, background zero. predict_noise is
/// exactly (z_t - sqrt(abar) x*) / sqrt(1 - abar), so DDIM recovers x* from
/// any start.
class ToyDiracBackend : public DenoiserBackend {
public:
    ToyDiracBackend(const ScenePlan& plan, std::size_t channels, std::size_t lat_height,
                    std::size_t lat_width);

    VideoLatent predict_noise(const VideoLatent& z_t, const StepInfo& step, const Conditioning& cond,
                              const GuidanceContext* guidance) override;

    const VideoLatent& target() const noexcept { return target_; }
    static VideoLatent build_target(const ScenePlan& plan, std::size_t channels, std::size_t lat_height,
                                    std::size_t lat_width);

private:
    VideoLatent target_;
};

/// Dirac predictor plus one cross-attention site per step: latent channels act
/// as features, prompt tokens are embedded through a fixed seeded table, and
/// the (guided) attention output is blended into the noise estimate. With an
/// empty guidance context the blend is bit-identical to the unguided path.
class ToyAttentionBackend : public DenoiserBackend {
public:
    ToyAttentionBackend(const ScenePlan& plan, std::size_t channels, std::size_t lat_height,
                        std::size_t lat_width, double attn_blend = 0.05);

    VideoLatent predict_noise(const VideoLatent& z_t, const StepInfo& step, const Conditioning& cond,
                              const GuidanceContext* guidance) override;
    bool has_attention_sites() const noexcept override { return true; }

    const VideoLatent& target() const noexcept { return target_; }

private:
    VideoLatent target_;
    double attn_blend_;
    ProjectionSet proj_;
};

/// Deterministic (eta = 0) DDIM loop from z_T down to z_0.
VideoLatent ddim_sample(DenoiserBackend& backend, const VideoLatent& z_t,
                        const DiffusionSchedule& schedule, const Conditioning& cond,
                        const GuidanceContext* guidance = nullptr);

/// sample -> forward-diffuse with fresh noise -> frequency re-init -> sample,
/// `iterations` times (0 = plain sampling). Per iteration the stream draws the
/// forward-diffusion noise first, then the re-init noise. post_reinit, when
/// set, maps the re-initialized start noise before the next sampling pass
/// (used to re-apply object patches).
VideoLatent freeinit_iterate(DenoiserBackend& backend, const VideoLatent& initial_noise,
                             const DiffusionSchedule& schedule, const FrequencyFilter& filter,
                             std::size_t iterations, RngStream& rng, const Conditioning& cond,
                             const GuidanceContext* guidance = nullptr,
                             const std::function<VideoLatent(VideoLatent)>& post_reinit = {});

struct GenerateResult {
    VideoLatent video;
    std::vector<MaskVolume> masks;   // latent-resolution object masks, plan order
    std::size_t overlap_cells = 0;
};

/// Full pipeline for one plan: scene noise composition, guidance setup when
/// the backend exposes attention sites, FreeInit iterations, DDIM sampling.
/// Pure function of (plan, config). binding_overrides, when given, replaces
/// the automatic token binding.
GenerateResult generate(const ScenePlan& plan, const PipelineConfig& config,
                        const std::vector<ObjectBinding>* binding_overrides = nullptr);

struct RejectionResult {
    VideoLatent video;
    double score = 0.0;
    std::uint64_t seed = 0;
};

/// Generates candidates with seeds base_seed + 0..count-1, scores each, and
/// returns the argmax (ties to the lowest seed). Candidates whose scorer
/// throws are skipped; all skipped is a RejectionError. Candidates run
/// concurrently when parallel is set; the reduction order is fixed by seed
/// either way.
RejectionResult rejection_sample(const std::function<VideoLatent(std::uint64_t)>& generate_fn,
                                 const std::function<double(const VideoLatent&)>& scorer,
                                 std::size_t count, std::uint64_t base_seed, bool parallel = false);

}  // namespace movi
