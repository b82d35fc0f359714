// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "movi/latent.hpp"

namespace movi {

/// Forward 3D DFT over the (T, H, W) axes, independently per channel.
/// Unnormalized: the DC bin of a constant field v equals T*H*W*v.
SpectrumField fft3(const VideoLatent& field);

/// Inverse of fft3, carrying the 1/(T*H*W) factor. The imaginary residue of
/// the inverse must stay below 1e-6 * ||field||_2; a larger residue means the
/// spectrum was not conjugate-symmetric (malformed filter) and throws
/// ConjugateSymmetryError.
VideoLatent ifft3(const SpectrumField& spectrum);

}  // namespace movi
