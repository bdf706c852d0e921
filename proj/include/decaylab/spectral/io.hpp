#pragma once
// Field records, the one on-disk form of a SpectralField:
//
//   {"format": "decaylab.field", "version": 1,
//    "grid": {"d": 2, "N": [32, 32], "L": [6.283..., 6.283...]},
//    "components": 1,
//    "coeffs": [re_0, im_0, re_1, im_1, ...]}
//
// coeffs follow the in-memory order: component-major, then modes in FFT order
// row-major with axis 0 slowest, normalized as documented in field.hpp.

#include <filesystem>

#include "json.hpp"
#include "decaylab/spectral/field.hpp"

namespace decaylab::spectral {

nlohmann::json grid_to_json(const Grid& g);
Grid grid_from_json(const nlohmann::json& j);

nlohmann::json field_to_json(const SpectralField& f);
SpectralField field_from_json(const nlohmann::json& j);

void write_field(const std::filesystem::path& path, const SpectralField& f);
SpectralField read_field(const std::filesystem::path& path);

}  // namespace decaylab::spectral
