// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "movi/noise.hpp"

namespace movi {

/// Features on an attention grid, row-major (t, h, w, dim).
struct FeatureField {
    std::size_t frames = 0, height = 0, width = 0, dim = 0;
    std::vector<double> data;

    FeatureField() = default;
    FeatureField(std::size_t t, std::size_t h, std::size_t w, std::size_t d)
        : frames(t), height(h), width(w), dim(d), data(t * h * w * d, 0.0) {}

    std::size_t cells() const noexcept { return frames * height * width; }
    std::size_t index(std::size_t cell, std::size_t k) const noexcept { return cell * dim + k; }
    double at(std::size_t cell, std::size_t k) const { return data[index(cell, k)]; }
    double& at(std::size_t cell, std::size_t k) { return data[index(cell, k)]; }
};

/// Token embeddings, row-major (token, dim).
struct TokenEmbeddings {
    std::size_t tokens = 0, dim = 0;
    std::vector<double> data;

    TokenEmbeddings() = default;
    TokenEmbeddings(std::size_t l, std::size_t d) : tokens(l), dim(d), data(l * d, 0.0) {}
    double at(std::size_t l, std::size_t k) const { return data[l * dim + k]; }
    double& at(std::size_t l, std::size_t k) { return data[l * dim + k]; }
};

/// Query/key/value projections, row-major (model_dim, out_dim).
struct ProjectionSet {
    std::size_t model_dim = 0, key_dim = 0, value_dim = 0;
    std::vector<double> w_query;  // model_dim x key_dim
    std::vector<double> w_key;    // model_dim x key_dim
    std::vector<double> w_value;  // model_dim x value_dim
};

/// Cross-attention map over (cell, token) pairs; rows sum to 1 as produced by
/// cross_attention, re-weighting may break that on purpose.
struct AttentionTensor {
    std::size_t frames = 0, height = 0, width = 0, tokens = 0;
    std::vector<double> weights;  // row-major (cell, token)

    AttentionTensor() = default;
    AttentionTensor(std::size_t t, std::size_t h, std::size_t w, std::size_t l)
        : frames(t), height(h), width(w), tokens(l), weights(t * h * w * l, 0.0) {}

    std::size_t cells() const noexcept { return frames * height * width; }
    double at(std::size_t cell, std::size_t token) const { return weights[cell * tokens + token]; }
    double& at(std::size_t cell, std::size_t token) { return weights[cell * tokens + token]; }
};

struct TokenSpan {
    std::size_t index = 0;
    std::string text;
};

/// Whitespace/punctuation tokenizer standing in for a backend tokenizer.
std::vector<TokenSpan> tokenize_prompt(const std::string& prompt);

/// Per-object token binding: the tokens naming object `object_index` and the
/// factor applied to them inside competing objects' regions.
struct ObjectBinding {
    std::size_t object_index = 0;
    std::vector<std::size_t> tokens;
    double scale = 0.0;  // in [-2, 2]
};

/// A = rowsoftmax(Q K^T / sqrt(d_k)), X' = A V with Q = X W_Q, K = E W_K,
/// V = E W_V. Returns (X', A).
std::pair<FeatureField, AttentionTensor> cross_attention(const FeatureField& x, const TokenEmbeddings& e,
                                                         const ProjectionSet& proj);

/// Token indices whose text matches the label or any of its words
/// (case-insensitive, trailing-s folded). Matched spans are marked in `taken`
/// and already-taken spans are skipped, keeping token sets disjoint.
std::vector<std::size_t> match_label_tokens(const std::string& label, const std::vector<TokenSpan>& spans,
                                            std::vector<bool>& taken);

/// Matches each object label (or any of its words, case-insensitively, with a
/// trailing-s fold) against the token spans. Tokens are assigned at most once,
/// earlier objects first; an object matching nothing throws UnboundObjectError.
std::vector<ObjectBinding> bind_tokens(const std::string& prompt, const std::vector<std::string>& objects,
                                       const std::vector<TokenSpan>& spans, double scale);

/// Scales A[cell, j] by binding.scale for every cell inside a region whose
/// owner differs from the binding's object, for each bound token j. Applied at
/// most once per entry; everything else is untouched and no row is
/// renormalized unless asked. masks[i] is object i's region at the attention
/// resolution.
AttentionTensor reweight_map(const AttentionTensor& a, const std::vector<ObjectBinding>& bindings,
                             const std::vector<MaskVolume>& masks, bool renormalize = false);

/// cross_attention, then reweight_map, then the re-weighted map times V.
/// With no bindings the output is bit-identical to cross_attention's.
FeatureField guided_cross_attention(const FeatureField& x, const TokenEmbeddings& e,
                                    const ProjectionSet& proj, const std::vector<ObjectBinding>& bindings,
                                    const std::vector<MaskVolume>& masks, bool renormalize = false);

/// Nearest-neighbor resample of a latent-space mask to the attention grid.
/// Frame count must match; a nonempty source frame never becomes empty.
MaskVolume resample_mask_to_attention(const MaskVolume& mask, std::size_t attn_frames,
                                      std::size_t attn_height, std::size_t attn_width);

}  // namespace movi
