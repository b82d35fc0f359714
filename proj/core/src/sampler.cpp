// SPDX-License-Identifier: Apache-2.0
#include "movi/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <future>

namespace movi {

namespace {
constexpr std::size_t kBaseSteps = 1000;
}

DiffusionSchedule make_schedule(std::size_t steps, double beta_start, double beta_end) {
    if (steps < 1 || steps > kBaseSteps)
        throw ParameterError("make_schedule: steps must lie in [1, " + std::to_string(kBaseSteps) + "]");
    if (!(beta_start > 0.0)) throw ParameterError("make_schedule: beta_start must be > 0");
    if (beta_start > beta_end) throw ParameterError("make_schedule: beta_start must be <= beta_end");
    if (!(beta_end < 1.0)) throw ParameterError("make_schedule: beta_end must be < 1");

    // Cumulative alphas on the 1000-step base grid.
    std::vector<double> base(kBaseSteps);
    double cumulative = 1.0;
    for (std::size_t k = 0; k < kBaseSteps; ++k) {
        const double beta =
            beta_start + (beta_end - beta_start) * static_cast<double>(k) /
                             static_cast<double>(kBaseSteps - 1);
        cumulative *= 1.0 - beta;
        base[k] = cumulative;
    }

    DiffusionSchedule schedule;
    schedule.alpha_bars.reserve(steps);
    schedule.base_timesteps.reserve(steps);
    for (std::size_t i = 1; i <= steps; ++i) {
        const std::size_t t = i * kBaseSteps / steps - 1;
        schedule.base_timesteps.push_back(t);
        schedule.alpha_bars.push_back(base[t]);
    }
    return schedule;
}

VideoLatent forward_diffuse(const VideoLatent& z0, std::size_t t, const DiffusionSchedule& schedule,
                            const VideoLatent& eps) {
    if (!(z0.shape == eps.shape))
        throw ShapeError("forward_diffuse: z0 " + to_string(z0.shape) + " and eps " +
                         to_string(eps.shape) + " differ");
    if (t > schedule.steps())
        throw IndexError("forward_diffuse: t = " + std::to_string(t) + " outside schedule of " +
                         std::to_string(schedule.steps()) + " steps");
    const double abar = (t == 0) ? 1.0 : schedule.alpha_bar(t - 1);
    const double a = std::sqrt(abar);
    const double b = std::sqrt(1.0 - abar);
    VideoLatent out(z0.shape);
    for (std::size_t k = 0; k < out.data.size(); ++k) out.data[k] = a * z0.data[k] + b * eps.data[k];
    return out;
}

VideoLatent ddim_sample(DenoiserBackend& backend, const VideoLatent& z_t,
                        const DiffusionSchedule& schedule, const Conditioning& cond,
                        const GuidanceContext* guidance) {
    if (schedule.steps() == 0) throw ParameterError("ddim_sample: empty schedule");
    VideoLatent z = z_t;
    for (std::size_t i = schedule.steps(); i-- > 0;) {
        const StepInfo step{i, schedule.alpha_bar(i)};
        const VideoLatent eps = backend.predict_noise(z, step, cond, guidance);
        if (!(eps.shape == z.shape))
            throw BackendError("backend returned " + to_string(eps.shape) + " for input " +
                               to_string(z.shape));
        const double abar = schedule.alpha_bar(i);
        const double abar_prev = schedule.alpha_bar_prev(i);
        const double inv_sqrt_abar = 1.0 / std::sqrt(abar);
        const double noise_scale = std::sqrt(1.0 - abar);
        const double a = std::sqrt(abar_prev);
        const double b = std::sqrt(1.0 - abar_prev);
        for (std::size_t k = 0; k < z.data.size(); ++k) {
            const double x0_hat = (z.data[k] - noise_scale * eps.data[k]) * inv_sqrt_abar;
            z.data[k] = a * x0_hat + b * eps.data[k];
        }
    }
    return z;
}

VideoLatent freeinit_iterate(DenoiserBackend& backend, const VideoLatent& initial_noise,
                             const DiffusionSchedule& schedule, const FrequencyFilter& filter,
                             std::size_t iterations, RngStream& rng, const Conditioning& cond,
                             const GuidanceContext* guidance,
                             const std::function<VideoLatent(VideoLatent)>& post_reinit) {
    VideoLatent z0 = ddim_sample(backend, initial_noise, schedule, cond, guidance);
    for (std::size_t it = 0; it < iterations; ++it) {
        const VideoLatent eps = sample_gaussian(z0.shape, rng);
        const VideoLatent z_t = forward_diffuse(z0, schedule.steps(), schedule, eps);
        const VideoLatent eta = sample_gaussian(z0.shape, rng);
        VideoLatent start = frequency_reinit(z_t, eta, filter);
        if (post_reinit) start = post_reinit(std::move(start));
        z0 = ddim_sample(backend, start, schedule, cond, guidance);
    }
    return z0;
}

namespace {

// Unit-mass Gaussian blob per object per frame, sigma = box side / 6 so the
// +-3 sigma support matches the box.
void add_blob(VideoLatent& target, std::size_t frame, std::size_t channel, double center_i,
              double center_j, double sigma_i, double sigma_j) {
    const Shape4& s = target.shape;
    std::vector<double> weights(s.height * s.width, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < s.height; ++i) {
        const double di = (static_cast<double>(i) + 0.5 - center_i) / sigma_i;
        for (std::size_t j = 0; j < s.width; ++j) {
            const double dj = (static_cast<double>(j) + 0.5 - center_j) / sigma_j;
            const double w = std::exp(-0.5 * (di * di + dj * dj));
            weights[i * s.width + j] = w;
            total += w;
        }
    }
    if (total <= 0.0) {
        // Fully underflowed; park the mass on the nearest cell.
        const auto i = static_cast<std::size_t>(
            std::clamp<double>(std::floor(center_i), 0.0, static_cast<double>(s.height - 1)));
        const auto j = static_cast<std::size_t>(
            std::clamp<double>(std::floor(center_j), 0.0, static_cast<double>(s.width - 1)));
        target.at(frame, channel, i, j) += 1.0;
        return;
    }
    for (std::size_t i = 0; i < s.height; ++i)
        for (std::size_t j = 0; j < s.width; ++j)
            target.at(frame, channel, i, j) += weights[i * s.width + j] / total;
}

}  // namespace

VideoLatent ToyDiracBackend::build_target(const ScenePlan& plan, std::size_t channels,
                                          std::size_t lat_height, std::size_t lat_width) {
    VideoLatent target(Shape4{plan.frame_count, channels, lat_height, lat_width});
    for (const BoxTrack& track : plan.tracks) {
        const LatentBoxes geo = latent_box_geometry(track, lat_height, lat_width);
        const std::size_t channel = track.object_index % channels;
        const double sigma_i = static_cast<double>(geo.box_height) / 6.0;
        const double sigma_j = static_cast<double>(geo.box_width) / 6.0;
        for (std::size_t f = 0; f < plan.frame_count; ++f) {
            const auto [top, left] = geo.corners[f];
            const double center_i = static_cast<double>(top) + static_cast<double>(geo.box_height) / 2.0;
            const double center_j = static_cast<double>(left) + static_cast<double>(geo.box_width) / 2.0;
            add_blob(target, f, channel, center_i, center_j, sigma_i, sigma_j);
        }
    }
    return target;
}

ToyDiracBackend::ToyDiracBackend(const ScenePlan& plan, std::size_t channels, std::size_t lat_height,
                                 std::size_t lat_width)
    : target_(build_target(plan, channels, lat_height, lat_width)) {}

VideoLatent ToyDiracBackend::predict_noise(const VideoLatent& z_t, const StepInfo& step,
                                           const Conditioning&, const GuidanceContext*) {
    if (!(z_t.shape == target_.shape))
        throw BackendError("ToyDiracBackend: input " + to_string(z_t.shape) + " does not match target " +
                           to_string(target_.shape));
    const double a = std::sqrt(step.alpha_bar);
    const double inv_b = 1.0 / std::sqrt(1.0 - step.alpha_bar);
    VideoLatent eps(z_t.shape);
    for (std::size_t k = 0; k < eps.data.size(); ++k)
        eps.data[k] = (z_t.data[k] - a * target_.data[k]) * inv_b;
    return eps;
}

namespace {

constexpr std::uint64_t kToyAttentionSeed = 0xA77E57ULL;

ProjectionSet seeded_projections(std::size_t dim) {
    ProjectionSet proj;
    proj.model_dim = proj.key_dim = proj.value_dim = dim;
    RngStream rq(kToyAttentionSeed, "proj:q");
    RngStream rk(kToyAttentionSeed, "proj:k");
    RngStream rv(kToyAttentionSeed, "proj:v");
    proj.w_query.resize(dim * dim);
    proj.w_key.resize(dim * dim);
    proj.w_value.resize(dim * dim);
    for (auto& v : proj.w_query) v = rq.next_normal();
    for (auto& v : proj.w_key) v = rk.next_normal();
    for (auto& v : proj.w_value) v = rv.next_normal();
    return proj;
}

TokenEmbeddings embed_tokens(const std::vector<TokenSpan>& tokens, std::size_t dim) {
    TokenEmbeddings e(tokens.size(), dim);
    for (std::size_t l = 0; l < tokens.size(); ++l) {
        RngStream stream(kToyAttentionSeed, "embed:" + tokens[l].text);
        for (std::size_t k = 0; k < dim; ++k) e.at(l, k) = stream.next_normal();
    }
    return e;
}

}  // namespace

ToyAttentionBackend::ToyAttentionBackend(const ScenePlan& plan, std::size_t channels,
                                         std::size_t lat_height, std::size_t lat_width, double attn_blend)
    : target_(ToyDiracBackend::build_target(plan, channels, lat_height, lat_width)),
      attn_blend_(attn_blend),
      proj_(seeded_projections(channels)) {}

VideoLatent ToyAttentionBackend::predict_noise(const VideoLatent& z_t, const StepInfo& step,
                                               const Conditioning& cond, const GuidanceContext* guidance) {
    if (!(z_t.shape == target_.shape))
        throw BackendError("ToyAttentionBackend: input " + to_string(z_t.shape) +
                           " does not match target " + to_string(target_.shape));
    if (cond.tokens.empty())
        throw BackendError("ToyAttentionBackend: conditioning carries no prompt tokens");
    const Shape4& s = z_t.shape;

    // Latent channels as per-cell features.
    FeatureField x(s.frames, s.height, s.width, s.channels);
    for (std::size_t t = 0; t < s.frames; ++t)
        for (std::size_t i = 0; i < s.height; ++i)
            for (std::size_t j = 0; j < s.width; ++j) {
                const std::size_t cell = (t * s.height + i) * s.width + j;
                for (std::size_t c = 0; c < s.channels; ++c) x.at(cell, c) = z_t.at(t, c, i, j);
            }
    const TokenEmbeddings e = embed_tokens(cond.tokens, s.channels);

    const bool guide = guidance != nullptr && step.index >= guidance->step_begin &&
                       step.index < guidance->step_end;
    static const std::vector<ObjectBinding> no_bindings;
    static const std::vector<MaskVolume> no_masks;
    const FeatureField attn = guided_cross_attention(x, e, proj_,
                                                     guide ? guidance->bindings : no_bindings,
                                                     guide ? guidance->masks : no_masks,
                                                     guide && guidance->renormalize);

    const double a = std::sqrt(step.alpha_bar);
    const double inv_b = 1.0 / std::sqrt(1.0 - step.alpha_bar);
    VideoLatent eps(s);
    for (std::size_t t = 0; t < s.frames; ++t)
        for (std::size_t i = 0; i < s.height; ++i)
            for (std::size_t j = 0; j < s.width; ++j) {
                const std::size_t cell = (t * s.height + i) * s.width + j;
                for (std::size_t c = 0; c < s.channels; ++c) {
                    const double base = (z_t.at(t, c, i, j) - a * target_.at(t, c, i, j)) * inv_b;
                    eps.at(t, c, i, j) = base + attn_blend_ * attn.at(cell, c);
                }
            }
    return eps;
}

GenerateResult generate(const ScenePlan& plan, const PipelineConfig& config,
                        const std::vector<ObjectBinding>* binding_overrides) {
    const std::size_t lat_h = config.lat_height();
    const std::size_t lat_w = config.lat_width();

    const FrequencyFilter filter =
        make_lowpass_filter(plan.frame_count, lat_h, lat_w, config.filter_family,
                            config.filter_cutoff_spatial, config.filter_cutoff_temporal,
                            config.filter_order);

    ComposeOptions compose_opts;
    compose_opts.flow = config.flow;
    SceneNoise scene = compose_scene_noise(plan, config.channels, lat_h, lat_w, config.seed, &filter,
                                           compose_opts);

    std::unique_ptr<DenoiserBackend> backend;
    if (config.backend == BackendKind::toy_dirac)
        backend = std::make_unique<ToyDiracBackend>(plan, config.channels, lat_h, lat_w);
    else
        backend = std::make_unique<ToyAttentionBackend>(plan, config.channels, lat_h, lat_w);

    Conditioning cond;
    cond.prompt = plan.prompt;
    cond.tokens = tokenize_prompt(plan.prompt);

    GuidanceContext guidance;
    const GuidanceContext* guidance_ptr = nullptr;
    if (backend->has_attention_sites() && !plan.tracks.empty()) {
        guidance.bindings = bind_tokens(plan.prompt, plan.objects, cond.tokens, config.attn_scale);
        guidance.masks.reserve(scene.masks.size());
        for (const MaskVolume& m : scene.masks)
            guidance.masks.push_back(resample_mask_to_attention(m, plan.frame_count, lat_h, lat_w));
        guidance.renormalize = config.attn_renormalize;
        guidance.step_begin = config.attn_step_begin;
        guidance.step_end = config.attn_step_end;
        guidance_ptr = &guidance;
    }

    const DiffusionSchedule schedule =
        make_schedule(config.schedule_steps, config.beta_start, config.beta_end);

    std::function<VideoLatent(VideoLatent)> post_reinit;
    if (config.reinit_reinject && !plan.tracks.empty()) {
        post_reinit = [&plan, &config, lat_h, lat_w, &scene](VideoLatent noise) {
            for (std::size_t k = 0; k < plan.tracks.size(); ++k) {
                const BoxTrack& track = plan.tracks[k];
                const LatentBoxes geo = latent_box_geometry(track, lat_h, lat_w);
                const VideoLatent patch =
                    sample_gaussian(Shape4{1, config.channels, geo.box_height, geo.box_width},
                                    config.seed, "object:" + std::to_string(track.object_index));
                noise = local_noise_inject(noise, scene.masks[k], patch, track);
            }
            return noise;
        };
    }

    RngStream freeinit_rng(config.seed, "freeinit");
    GenerateResult result;
    result.video = freeinit_iterate(*backend, scene.noise, schedule, filter, config.reinit_iterations,
                                    freeinit_rng, cond, guidance_ptr, post_reinit);
    result.masks = std::move(scene.masks);
    result.overlap_cells = scene.overlap_cells;
    return result;
}

std::pair<VideoLatent, double> rejection_sample(
    const std::function<VideoLatent(std::uint64_t)>& generate_fn,
    const std::function<double(const VideoLatent&)>& scorer, std::size_t count, std::uint64_t base_seed,
    bool parallel) {
    if (count < 1) throw ParameterError("rejection_sample: need at least one candidate");

    struct Candidate {
        VideoLatent video;
        double score = 0.0;
        bool ok = false;
    };
    std::vector<Candidate> candidates(count);

    auto evaluate = [&](std::size_t k) {
        Candidate c;
        c.video = generate_fn(base_seed + k);
        try {
            c.score = scorer(c.video);
            c.ok = true;
        } catch (const std::exception&) {
            c.ok = false;  // skipped candidate
        }
        return c;
    };

    if (parallel && count > 1) {
        std::vector<std::future<Candidate>> futures;
        futures.reserve(count);
        for (std::size_t k = 0; k < count; ++k)
            futures.push_back(std::async(std::launch::async, evaluate, k));
        for (std::size_t k = 0; k < count; ++k) candidates[k] = futures[k].get();
    } else {
        for (std::size_t k = 0; k < count; ++k) candidates[k] = evaluate(k);
    }

    std::size_t best = count;
    for (std::size_t k = 0; k < count; ++k) {
        if (!candidates[k].ok) continue;
        if (best == count || candidates[k].score > candidates[best].score) best = k;  // ties keep lowest seed
    }
    if (best == count) throw RejectionError("every rejection-sampling candidate was skipped");
    return {std::move(candidates[best].video), candidates[best].score};
}

}  // namespace movi
