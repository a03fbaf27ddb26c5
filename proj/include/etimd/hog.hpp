#pragma once

/** \file     hog.hpp
    \brief    Sobel histogram of gradients over 65 angular-mode bins, used to give block-vector
              predictions a directional transform mode
*/

#include "etimd/intra_pred.hpp"
#include "etimd/mode_derivation.hpp"
#include "etimd/types.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace etimd {

struct Gradient {
  int hor = 0;  // d/dx
  int ver = 0;  // d/dy, y pointing down
};

/// 3x3 Sobel responses centred on (x, y); the full neighbourhood must lie inside `s`.
template <typename Derived>
Gradient sobel_window(const Eigen::ArrayBase<Derived>& s, int x, int y)
{
  auto p = [&](int dx, int dy) { return static_cast<int>(s(y + dy, x + dx)); };
  Gradient g;
  g.hor = (p(1, -1) + 2 * p(1, 0) + p(1, 1)) - (p(-1, -1) + 2 * p(-1, 0) + p(-1, 1));
  g.ver = (p(-1, 1) + 2 * p(0, 1) + p(1, 1)) - (p(-1, -1) + 2 * p(0, -1) + p(1, -1));
  return g;
}

/// Prediction direction (in radians, 45..225 degrees) of angular mode 2..66.
double mode_direction(int mode);

/// Nearest angular mode to the edge running perpendicular to the gradient; ties take the
/// lower mode. Empty for a zero gradient.
std::optional<IntraMode> orientation_to_mode(int g_hor, int g_ver);

enum class HogWeighting { Count, Magnitude };

struct Hog {
  std::array<std::int64_t, IntraMode::kNumAngular> bins{};

  [[nodiscard]] std::int64_t at(int mode) const { return bins[mode - IntraMode::kFirstAngular]; }
  [[nodiscard]] std::int64_t total() const;
};

/// Stride-1 3x3 windows over the block interior; blocks under 3x3 give an empty histogram.
Hog build_hog(const PelBlock& block, HogWeighting weighting = HogWeighting::Count);

std::optional<IntraMode> dominant_mode(const Hog& hog);

/// Modes that drive transform selection: the first two fused modes, each BV replaced by the
/// dominant HoG mode of its prediction (Planar when the histogram is empty).
/// `predictions` holds the per-mode predictions aligned with `fusion.modes`.
std::vector<IntraMode> transform_mode_for_block(const FusionSet& fusion, std::span<const PelBlock> predictions,
                                                HogWeighting weighting = HogWeighting::Count);

}  // namespace etimd
