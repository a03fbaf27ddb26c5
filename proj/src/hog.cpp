#include "etimd/hog.hpp"
#include "etimd/transform.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <numeric>

namespace etimd {

namespace {

struct DirectionTable {
  // boundary[i]: midpoint between modes i+2 and i+3 (directions decrease with the mode index)
  std::array<double, IntraMode::kNumAngular - 1> boundary{};

  DirectionTable()
  {
    for (int m = IntraMode::kFirstAngular; m < IntraMode::kLastAngular; ++m) {
      boundary[m - IntraMode::kFirstAngular] = 0.5 * (mode_direction(m) + mode_direction(m + 1));
    }
  }
};

const DirectionTable& direction_table()
{
  static const DirectionTable table;
  return table;
}

}  // namespace

double mode_direction(int mode)
{
  const double slope = std::atan(intra_pred_angle(mode) / 32.0);
  return mode >= IntraMode::kDiagonal ? std::numbers::pi / 2 - slope : std::numbers::pi + slope;
}

std::optional<IntraMode> orientation_to_mode(int g_hor, int g_ver)
{
  if (g_hor == 0 && g_ver == 0) {
    return std::nullopt;
  }
  // Edge direction (y up) is the gradient rotated by 90 degrees: (G_ver, G_hor).
  int ex = g_ver;
  int ey = g_hor;
  if (ey < 0 || (ey == 0 && ex < 0)) {
    ex = -ex;
    ey = -ey;
  }
  double phi = std::atan2(static_cast<double>(ey), static_cast<double>(ex));  // [0, pi)
  if (phi < std::numbers::pi / 4) {
    phi += std::numbers::pi;
  }
  const auto& b = direction_table().boundary;
  const auto it = std::partition_point(b.begin(), b.end(), [phi](double bound) { return bound > phi; });
  return IntraMode{IntraMode::kFirstAngular + static_cast<int>(it - b.begin())};
}

std::int64_t Hog::total() const
{
  return std::accumulate(bins.begin(), bins.end(), std::int64_t{0});
}

Hog build_hog(const PelBlock& block, HogWeighting weighting)
{
  Hog hog;
  for (int y = 1; y + 1 < block.rows(); ++y) {
    for (int x = 1; x + 1 < block.cols(); ++x) {
      const Gradient g = sobel_window(block, x, y);
      const auto mode = orientation_to_mode(g.hor, g.ver);
      if (!mode) {
        continue;
      }
      hog.bins[mode->index - IntraMode::kFirstAngular] +=
          weighting == HogWeighting::Count ? 1 : std::abs(g.hor) + std::abs(g.ver);
    }
  }
  return hog;
}

std::optional<IntraMode> dominant_mode(const Hog& hog)
{
  const auto it = std::max_element(hog.bins.begin(), hog.bins.end());  // first maximum = lowest mode
  if (*it == 0) {
    return std::nullopt;
  }
  return IntraMode{IntraMode::kFirstAngular + static_cast<int>(it - hog.bins.begin())};
}

std::vector<IntraMode> transform_mode_for_block(const FusionSet& fusion, std::span<const PelBlock> predictions,
                                                HogWeighting weighting)
{
  std::vector<IntraMode> out;
  const std::size_t n = std::min<std::size_t>(2, fusion.modes.size());
  for (std::size_t i = 0; i < n; ++i) {
    const ModeCandidate& m = fusion.modes[i];
    if (!m.is_bv()) {
      out.push_back(m.intra_mode());
      continue;
    }
    if (i >= predictions.size()) {
      throw ShapeMismatchError("missing prediction for a BV mode");
    }
    out.push_back(dominant_mode(build_hog(predictions[i], weighting)).value_or(IntraMode{IntraMode::kPlanar}));
  }
  return out;
}

std::string_view to_string(TransformClass cls)
{
  switch (cls) {
    case TransformClass::H:
      return "H";
    case TransformClass::D:
      return "D";
    case TransformClass::V:
      return "V";
    case TransformClass::Dc0:
      break;
  }
  return "DC0";
}

TransformClass transform_class(IntraMode mode)
{
  if (!mode.is_angular()) {
    return TransformClass::Dc0;
  }
  if (mode.index < IntraMode::kDiagonal) {
    return TransformClass::H;
  }
  return mode.index == IntraMode::kDiagonal ? TransformClass::D : TransformClass::V;
}

std::vector<std::pair<int, int>> diagonal_scan(int w, int h)
{
  std::vector<std::pair<int, int>> order;
  order.reserve(std::size_t(w) * h);
  for (int d = 0; d < w + h - 1; ++d) {
    for (int y = std::min(d, h - 1); y >= 0 && d - y < w; --y) {
      order.emplace_back(d - y, y);
    }
  }
  return order;
}

double energy_compaction(const Samples<double>& coeffs, int count)
{
  const double total = coeffs.square().sum();
  if (total == 0.0) {
    return 1.0;
  }
  const auto order = diagonal_scan(static_cast<int>(coeffs.cols()), static_cast<int>(coeffs.rows()));
  double head = 0.0;
  const int n = std::clamp(count, 0, static_cast<int>(order.size()));
  for (int i = 0; i < n; ++i) {
    const double c = coeffs(order[i].second, order[i].first);
    head += c * c;
  }
  return head / total;
}

}  // namespace etimd
