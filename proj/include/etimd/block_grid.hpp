#pragma once

#include "etimd/frame_io.hpp"
#include "etimd/types.hpp"

#include <vector>

namespace etimd {

struct BlockRef {
  int x0 = 0;
  int y0 = 0;
  int w = 0;
  int h = 0;
  int scan_index = 0;

  [[nodiscard]] Rect rect() const { return {x0, y0, w, h}; }
  friend bool operator==(const BlockRef&, const BlockRef&) = default;
};

/// Raster-order fixed grid; right/bottom edge blocks are clipped to the frame.
std::vector<BlockRef> partition(int frame_w, int frame_h, int block_size);

bool is_valid_block_size(int block_size);

using ConstPelView = Eigen::Block<const PelBlock>;

/// Hook for tests that audit every read issued against the reconstruction.
class AccessObserver {
 public:
  virtual ~AccessObserver() = default;
  virtual void on_read(const Rect& region) = 0;
  virtual void on_commit(const BlockRef& block) = 0;
};

/// Causally reconstructed plane. Pixels become readable only through commit_block,
/// and blocks must be committed in scan order.
class ReconBuffer {
 public:
  ReconBuffer(int width, int height, int bit_depth, int block_size);

  [[nodiscard]] int width() const { return width_; }
  [[nodiscard]] int height() const { return height_; }
  [[nodiscard]] int bit_depth() const { return bit_depth_; }
  [[nodiscard]] int block_size() const { return block_size_; }
  [[nodiscard]] int committed_count() const { return committed_; }
  [[nodiscard]] const std::vector<BlockRef>& blocks() const { return blocks_; }

  [[nodiscard]] bool inside(const Rect& r) const;
  [[nodiscard]] bool is_available(const Rect& r) const;
  [[nodiscard]] bool is_available(int x, int y) const { return is_available(Rect{x, y, 1, 1}); }
  [[nodiscard]] bool flag(int x, int y) const { return available_(y, x) != 0; }

  /// Zero-copy view of an available region; throws CausalityError otherwise.
  [[nodiscard]] ConstPelView view(const Rect& r) const;
  [[nodiscard]] Pel sample(int x, int y) const;

  void commit(const BlockRef& block, const Eigen::Ref<const PelBlock>& recon);

  void set_observer(AccessObserver* observer) { observer_ = observer; }

  /// Whole plane including not-yet-committed (zero) pixels; for reporting only.
  [[nodiscard]] const PelBlock& plane() const { return plane_; }

 private:
  void check_readable(const Rect& r) const;

  int width_;
  int height_;
  int bit_depth_;
  int block_size_;
  int blocks_per_row_;
  int committed_ = 0;
  std::vector<BlockRef> blocks_;
  PelBlock plane_;
  Samples<std::uint8_t> available_;
  AccessObserver* observer_ = nullptr;
};

PelBlock read_region(const ReconBuffer& buf, int x, int y, int w, int h);

void commit_block(ReconBuffer& buf, const BlockRef& block, const Eigen::Ref<const PelBlock>& recon_samples);

}  // namespace etimd
