#pragma once

#include "etimd/types.hpp"

#include <cstdint>
#include <filesystem>
#include <string_view>

namespace etimd {

enum class FrameFormat { YuvPlanar, Pgm };

FrameFormat parse_frame_format(std::string_view tag);
std::string_view to_string(FrameFormat format);

struct Frame {
  int width = 0;
  int height = 0;
  int bit_depth = 8;
  PelBlock samples;  // height x width

  Frame() = default;
  Frame(int w, int h, int depth) : width(w), height(h), bit_depth(depth), samples(PelBlock::Zero(h, w)) {}

  [[nodiscard]] Pel at(int x, int y) const { return samples(y, x); }
  [[nodiscard]] Pel max_value() const { return max_sample(bit_depth); }
};

/// Bytes of one 4:2:0 frame (luma plus both quarter-size chroma planes).
std::uintmax_t yuv420_frame_bytes(int width, int height, int bit_depth);

/// Loads the luma plane of one frame. Samples are masked to `bit_depth`.
/// For PGM the header's dimensions win; `width`/`height` are validated when non-zero.
Frame load_frame(const std::filesystem::path& path, FrameFormat format, int width, int height, int bit_depth,
                 int frame_index = 0);

/// Writes a binary P5 PGM; 16-bit big-endian samples when the depth exceeds 8.
void save_pgm(const Frame& frame, const std::filesystem::path& path);

}  // namespace etimd
