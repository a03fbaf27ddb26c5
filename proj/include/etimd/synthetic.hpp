#pragma once

/** \file     synthetic.hpp
    \brief    deterministic synthetic luma fixtures (screen content, stripes, noise)
*/

#include "etimd/frame_io.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace etimd {

/// Names accepted by make_fixture.
const std::vector<std::string>& fixture_names();

/// Screen-content fixtures used for A/B runs: text, code, ui, table, glyph-tile.
const std::vector<std::string>& screen_content_fixtures();

/// Builds a fixture at the requested size; samples are 8-bit values scaled to `bit_depth`.
Frame make_fixture(std::string_view name, int width, int height, int bit_depth, std::uint64_t seed);

}  // namespace etimd
