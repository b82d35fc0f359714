// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "movi/latent.hpp"
#include "movi/noise.hpp"
#include "movi/trajectory.hpp"

namespace movi {

// Binary tensor file ("MOVILAT1"): 8-byte magic, five little-endian u32
// (rank = 4, T, C, H, W), then the payload in row-major order. Latents carry
// little-endian f32 cells; mask files use the same header with dims
// (object count, T, H, W) and one u8 per cell.

void write_latent(const std::string& path, const VideoLatent& field);
VideoLatent read_latent(const std::string& path);

void write_masks(const std::string& path, const std::vector<MaskVolume>& masks);
std::vector<MaskVolume> read_masks(const std::string& path);

/// Trajectory JSON:
/// { "prompt": str, "canvas": [w, h], "frames": T,
///   "objects": [ { "label": str, "boxes": [[x0, y0, x1, y1] * T] } ] }
std::string plan_to_json(const ScenePlan& plan);
ScenePlan plan_from_json(const std::string& text);

void write_plan(const std::string& path, const ScenePlan& plan);
ScenePlan read_plan(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace movi
