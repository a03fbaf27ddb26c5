#pragma once

#include "etimd/block_grid.hpp"
#include "etimd/types.hpp"

#include <array>
#include <string>
#include <vector>

namespace etimd {

/// Intra mode index: 0 Planar, 1 DC, 2..66 angular (18 horizontal, 34 top-left diagonal, 50 vertical).
struct IntraMode {
  static constexpr int kPlanar = 0;
  static constexpr int kDc = 1;
  static constexpr int kHorizontal = 18;
  static constexpr int kDiagonal = 34;
  static constexpr int kVertical = 50;
  static constexpr int kFirstAngular = 2;
  static constexpr int kLastAngular = 66;
  static constexpr int kNumAngular = 65;

  int index = kPlanar;

  [[nodiscard]] constexpr bool is_angular() const { return index >= kFirstAngular && index <= kLastAngular; }
  friend constexpr bool operator==(IntraMode, IntraMode) = default;
};

std::string to_string(IntraMode mode);

/// intraPredAngle for angular modes 2..66 in 1/32 sample units.
int intra_pred_angle(int mode);

/// Reference samples of a w x h block.
/// above[0] is the top-left corner, above[1 + i] the sample above column i (i < 2w).
/// left[j] is the sample left of row j (j < 2h).
struct RefSamples {
  int w = 0;
  int h = 0;
  int bit_depth = 8;
  std::vector<Pel> above;
  std::vector<Pel> left;
  bool above_available = false;  // any sample of the above row (incl. corner) was reconstructed
  bool left_available = false;
};

/// Reference samples for an arbitrary rectangle; unavailable samples are padded.
RefSamples build_reference_samples(const ReconBuffer& buf, const Rect& block);

inline RefSamples build_reference_samples(const ReconBuffer& buf, const BlockRef& block)
{
  return build_reference_samples(buf, block.rect());
}

PelBlock predict_angular(const RefSamples& refs, IntraMode mode, int w, int h);
PelBlock predict_planar(const RefSamples& refs, int w, int h);
PelBlock predict_dc(const RefSamples& refs, int w, int h);

/// Dispatches on the mode kind.
PelBlock predict_intra(const RefSamples& refs, IntraMode mode, int w, int h);

}  // namespace etimd
