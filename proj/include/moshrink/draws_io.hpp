#pragma once

#include <string>

#include "moshrink/samplers.hpp"

namespace moshrink {

// Flat binary layout for retained draws: fixed header (magic, family tag,
// dims) followed by row-major 64-bit floats per draw.
void save_draws(const std::string& path, const PosteriorSamples& samples);
PosteriorSamples load_draws(const std::string& path);

// CSV export: one retained draw per row, flattened column layout with header.
void export_draws_csv(const std::string& path, const PosteriorSamples& samples);

}  // namespace moshrink
