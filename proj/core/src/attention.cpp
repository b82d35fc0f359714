// SPDX-License-Identifier: Apache-2.0
#include "movi/attention.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

namespace movi {

std::vector<TokenSpan> tokenize_prompt(const std::string& prompt) {
    std::vector<TokenSpan> spans;
    std::string current;
    auto flush = [&] {
        if (!current.empty()) {
            spans.push_back({spans.size(), current});
            current.clear();
        }
    };
    for (char ch : prompt) {
        if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '\'')
            current += ch;
        else
            flush();
    }
    flush();
    return spans;
}

namespace {

std::string fold(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char ch : s) out += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (out.size() > 1 && out.back() == 's') out.pop_back();  // cats ~ cat
    return out;
}

std::vector<std::string> words_of(const std::string& label) {
    std::vector<std::string> words;
    std::string current;
    for (char ch : label) {
        if (ch == ' ') {
            if (!current.empty()) words.push_back(current);
            current.clear();
        } else {
            current += ch;
        }
    }
    if (!current.empty()) words.push_back(current);
    return words;
}

void matrix_product(const std::vector<double>& lhs, std::size_t rows, std::size_t inner,
                    const std::vector<double>& rhs, std::size_t cols, std::vector<double>& out) {
    out.assign(rows * cols, 0.0);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t k = 0; k < inner; ++k) {
            const double v = lhs[r * inner + k];
            if (v == 0.0) continue;
            for (std::size_t c = 0; c < cols; ++c) out[r * cols + c] += v * rhs[k * cols + c];
        }
}

FeatureField attention_output(const AttentionTensor& a, const std::vector<double>& values,
                              std::size_t value_dim) {
    FeatureField out(a.frames, a.height, a.width, value_dim);
    for (std::size_t cell = 0; cell < a.cells(); ++cell)
        for (std::size_t l = 0; l < a.tokens; ++l) {
            const double w = a.at(cell, l);
            if (w == 0.0) continue;
            for (std::size_t k = 0; k < value_dim; ++k) out.at(cell, k) += w * values[l * value_dim + k];
        }
    return out;
}

}  // namespace

std::pair<FeatureField, AttentionTensor> cross_attention(const FeatureField& x, const TokenEmbeddings& e,
                                                         const ProjectionSet& proj) {
    if (x.dim != proj.model_dim)
        throw ShapeError("cross_attention: feature dim " + std::to_string(x.dim) +
                         " != projection model dim " + std::to_string(proj.model_dim));
    if (e.dim != proj.model_dim)
        throw ShapeError("cross_attention: embedding dim " + std::to_string(e.dim) +
                         " != projection model dim " + std::to_string(proj.model_dim));
    if (e.tokens == 0) throw ShapeError("cross_attention: no text tokens");
    if (proj.w_query.size() != proj.model_dim * proj.key_dim ||
        proj.w_key.size() != proj.model_dim * proj.key_dim ||
        proj.w_value.size() != proj.model_dim * proj.value_dim)
        throw ShapeError("cross_attention: projection matrices do not match declared dims");

    std::vector<double> queries, keys, values;
    matrix_product(x.data, x.cells(), x.dim, proj.w_query, proj.key_dim, queries);
    matrix_product(e.data, e.tokens, e.dim, proj.w_key, proj.key_dim, keys);
    matrix_product(e.data, e.tokens, e.dim, proj.w_value, proj.value_dim, values);

    const double inv_sqrt_dk = 1.0 / std::sqrt(static_cast<double>(proj.key_dim));
    AttentionTensor a(x.frames, x.height, x.width, e.tokens);
    std::vector<double> logits(e.tokens);
    for (std::size_t cell = 0; cell < a.cells(); ++cell) {
        double max_logit = -std::numeric_limits<double>::infinity();
        for (std::size_t l = 0; l < e.tokens; ++l) {
            double dot = 0.0;
            for (std::size_t k = 0; k < proj.key_dim; ++k)
                dot += queries[cell * proj.key_dim + k] * keys[l * proj.key_dim + k];
            logits[l] = dot * inv_sqrt_dk;
            max_logit = std::max(max_logit, logits[l]);
        }
        double denom = 0.0;
        for (std::size_t l = 0; l < e.tokens; ++l) {
            logits[l] = std::exp(logits[l] - max_logit);
            denom += logits[l];
        }
        for (std::size_t l = 0; l < e.tokens; ++l) a.at(cell, l) = logits[l] / denom;
    }
    return {attention_output(a, values, proj.value_dim), std::move(a)};
}

std::vector<std::size_t> match_label_tokens(const std::string& label, const std::vector<TokenSpan>& spans,
                                            std::vector<bool>& taken) {
    if (taken.size() != spans.size()) taken.assign(spans.size(), false);
    const std::string folded_label = fold(label);
    std::vector<std::string> folded_words;
    for (const auto& w : words_of(label)) folded_words.push_back(fold(w));

    std::vector<std::size_t> tokens;
    for (std::size_t s = 0; s < spans.size(); ++s) {
        if (taken[s]) continue;
        const std::string token = fold(spans[s].text);
        const bool hit = token == folded_label ||
                         std::find(folded_words.begin(), folded_words.end(), token) != folded_words.end();
        if (hit) {
            tokens.push_back(spans[s].index);
            taken[s] = true;
        }
    }
    return tokens;
}

std::vector<ObjectBinding> bind_tokens(const std::string& prompt, const std::vector<std::string>& objects,
                                       const std::vector<TokenSpan>& spans, double scale) {
    std::vector<ObjectBinding> bindings;
    std::vector<bool> taken(spans.size(), false);
    for (std::size_t i = 0; i < objects.size(); ++i) {
        ObjectBinding binding;
        binding.object_index = i;
        binding.scale = scale;
        binding.tokens = match_label_tokens(objects[i], spans, taken);
        if (binding.tokens.empty())
            throw UnboundObjectError("object '" + objects[i] + "' matches no token of prompt \"" +
                                     prompt + "\"");
        bindings.push_back(std::move(binding));
    }
    return bindings;
}

AttentionTensor reweight_map(const AttentionTensor& a, const std::vector<ObjectBinding>& bindings,
                             const std::vector<MaskVolume>& masks, bool renormalize) {
    for (const ObjectBinding& b : bindings) {
        if (b.object_index >= masks.size())
            throw ShapeError("reweight_map: binding for object " + std::to_string(b.object_index) +
                             " but only " + std::to_string(masks.size()) + " masks given");
        for (std::size_t token : b.tokens)
            if (token >= a.tokens)
                throw ShapeError("reweight_map: bound token " + std::to_string(token) +
                                 " out of range (L = " + std::to_string(a.tokens) + ")");
    }
    for (const MaskVolume& m : masks)
        if (m.frames != a.frames || m.height != a.height || m.width != a.width)
            throw ShapeError("reweight_map: mask (" + std::to_string(m.frames) + ", " +
                             std::to_string(m.height) + ", " + std::to_string(m.width) +
                             ") does not match attention grid (" + std::to_string(a.frames) + ", " +
                             std::to_string(a.height) + ", " + std::to_string(a.width) + ")");

    AttentionTensor out = a;
    for (std::size_t cell = 0; cell < a.cells(); ++cell) {
        for (const ObjectBinding& b : bindings) {
            // Scale b's tokens here iff some *other* object's region covers
            // this cell; one application even when several regions do.
            bool foreign = false;
            for (std::size_t m = 0; m < masks.size() && !foreign; ++m)
                foreign = m != b.object_index && masks[m].values[cell] != 0;
            if (!foreign) continue;
            for (std::size_t token : b.tokens) out.at(cell, token) = b.scale * a.at(cell, token);
        }
        if (renormalize) {
            double sum = 0.0;
            for (std::size_t l = 0; l < a.tokens; ++l) sum += out.at(cell, l);
            if (sum != 0.0)
                for (std::size_t l = 0; l < a.tokens; ++l) out.at(cell, l) /= sum;
        }
    }
    return out;
}

FeatureField guided_cross_attention(const FeatureField& x, const TokenEmbeddings& e,
                                    const ProjectionSet& proj, const std::vector<ObjectBinding>& bindings,
                                    const std::vector<MaskVolume>& masks, bool renormalize) {
    auto [plain_out, a] = cross_attention(x, e, proj);
    if (bindings.empty() && !renormalize) return std::move(plain_out);
    const AttentionTensor reweighted = reweight_map(a, bindings, masks, renormalize);
    std::vector<double> values;
    matrix_product(e.data, e.tokens, e.dim, proj.w_value, proj.value_dim, values);
    return attention_output(reweighted, values, proj.value_dim);
}

MaskVolume resample_mask_to_attention(const MaskVolume& mask, std::size_t attn_frames,
                                      std::size_t attn_height, std::size_t attn_width) {
    if (attn_height == 0 || attn_width == 0)
        throw DimensionError("resample_mask_to_attention: attention extents must be >= 1");
    if (mask.frames != attn_frames)
        throw ShapeError("resample_mask_to_attention: mask has " + std::to_string(mask.frames) +
                         " frames, attention grid has " + std::to_string(attn_frames));
    if (mask.frames == 0) throw ShapeError("resample_mask_to_attention: mask has no frames");
    if (mask.height == attn_height && mask.width == attn_width) return mask;

    MaskVolume out(mask.frames, attn_height, attn_width);
    for (std::size_t f = 0; f < mask.frames; ++f) {
        bool src_nonempty = false, dst_nonempty = false;
        double centroid_i = 0.0, centroid_j = 0.0;
        std::size_t active = 0;
        for (std::size_t i = 0; i < mask.height; ++i)
            for (std::size_t j = 0; j < mask.width; ++j)
                if (mask.at(f, i, j)) {
                    src_nonempty = true;
                    ++active;
                    centroid_i += static_cast<double>(i);
                    centroid_j += static_cast<double>(j);
                }
        for (std::size_t i = 0; i < attn_height; ++i) {
            const std::size_t src_i = std::min(
                mask.height - 1, static_cast<std::size_t>((static_cast<double>(i) + 0.5) *
                                                          static_cast<double>(mask.height) /
                                                          static_cast<double>(attn_height)));
            for (std::size_t j = 0; j < attn_width; ++j) {
                const std::size_t src_j = std::min(
                    mask.width - 1, static_cast<std::size_t>((static_cast<double>(j) + 0.5) *
                                                             static_cast<double>(mask.width) /
                                                             static_cast<double>(attn_width)));
                if (mask.at(f, src_i, src_j)) {
                    out.at(f, i, j) = 1;
                    dst_nonempty = true;
                }
            }
        }
        if (src_nonempty && !dst_nonempty) {
            // Promote the cell nearest the source-mask centroid.
            centroid_i /= static_cast<double>(active);
            centroid_j /= static_cast<double>(active);
            const auto i = static_cast<std::size_t>(std::min<double>(
                static_cast<double>(attn_height - 1),
                std::floor((centroid_i + 0.5) * static_cast<double>(attn_height) /
                           static_cast<double>(mask.height))));
            const auto j = static_cast<std::size_t>(std::min<double>(
                static_cast<double>(attn_width - 1),
                std::floor((centroid_j + 0.5) * static_cast<double>(attn_width) /
                           static_cast<double>(mask.width))));
            out.at(f, i, j) = 1;
        }
    }
    return out;
}

}  // namespace movi
