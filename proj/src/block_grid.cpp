#include "etimd/block_grid.hpp"

#include <algorithm>
#include <string>

namespace etimd {

bool is_valid_block_size(int block_size)
{
  return block_size == 4 || block_size == 8 || block_size == 16 || block_size == 32 || block_size == 64;
}

std::vector<BlockRef> partition(int frame_w, int frame_h, int block_size)
{
  if (!is_valid_block_size(block_size)) {
    throw ValidationError("block size must be one of 4, 8, 16, 32, 64");
  }
  std::vector<BlockRef> blocks;
  int index = 0;
  for (int y = 0; y < frame_h; y += block_size) {
    for (int x = 0; x < frame_w; x += block_size) {
      blocks.push_back({x, y, std::min(block_size, frame_w - x), std::min(block_size, frame_h - y), index++});
    }
  }
  return blocks;
}

ReconBuffer::ReconBuffer(int width, int height, int bit_depth, int block_size)
    : width_(width),
      height_(height),
      bit_depth_(bit_depth),
      block_size_(block_size),
      blocks_per_row_((width + block_size - 1) / block_size),
      blocks_(partition(width, height, block_size)),
      plane_(PelBlock::Zero(height, width)),
      available_(Samples<std::uint8_t>::Zero(height, width))
{
}

bool ReconBuffer::inside(const Rect& r) const
{
  return r.x >= 0 && r.y >= 0 && r.x + r.w <= width_ && r.y + r.h <= height_;
}

bool ReconBuffer::is_available(const Rect& r) const
{
  if (r.empty()) {
    return true;
  }
  if (!inside(r)) {
    return false;
  }
  // Committed blocks form a scan-order prefix, so the bottom-right touched block
  // carries the largest scan index of the region.
  const int last = ((r.y + r.h - 1) / block_size_) * blocks_per_row_ + (r.x + r.w - 1) / block_size_;
  return last < committed_;
}

void ReconBuffer::check_readable(const Rect& r) const
{
  // the observer sees every attempt, including the ones rejected below
  if (observer_ != nullptr && !r.empty()) {
    observer_->on_read(r);
  }
  if (!is_available(r)) {
    throw CausalityError("read of unavailable region (" + std::to_string(r.x) + "," + std::to_string(r.y) + " " +
                         std::to_string(r.w) + "x" + std::to_string(r.h) + ")");
  }
}

ConstPelView ReconBuffer::view(const Rect& r) const
{
  check_readable(r);
  return plane_.block(r.empty() ? 0 : r.y, r.empty() ? 0 : r.x, std::max(r.h, 0), std::max(r.w, 0));
}

Pel ReconBuffer::sample(int x, int y) const
{
  check_readable({x, y, 1, 1});
  return plane_(y, x);
}

void ReconBuffer::commit(const BlockRef& block, const Eigen::Ref<const PelBlock>& recon)
{
  if (committed_ >= static_cast<int>(blocks_.size()) || !(blocks_[committed_] == block)) {
    throw ScanOrderError("block " + std::to_string(block.scan_index) + " committed out of order (expected " +
                         std::to_string(committed_) + ")");
  }
  if (recon.rows() != block.h || recon.cols() != block.w) {
    throw ShapeMismatchError("reconstruction does not match block shape");
  }
  plane_.block(block.y0, block.x0, block.h, block.w) = recon.cwiseMax(0).cwiseMin(max_sample(bit_depth_));
  available_.block(block.y0, block.x0, block.h, block.w).setOnes();
  ++committed_;
  if (observer_ != nullptr) {
    observer_->on_commit(block);
  }
}

PelBlock read_region(const ReconBuffer& buf, int x, int y, int w, int h)
{
  const Rect r{x, y, w, h};
  if (r.empty()) {
    return PelBlock(0, 0);
  }
  PelBlock out = buf.view(r);
  for (int yy = y; yy < y + h; ++yy) {
    for (int xx = x; xx < x + w; ++xx) {
      if (!buf.flag(xx, yy)) {
        throw CausalityError("pixel flag not set inside an available region");
      }
    }
  }
  return out;
}

void commit_block(ReconBuffer& buf, const BlockRef& block, const Eigen::Ref<const PelBlock>& recon_samples)
{
  buf.commit(block, recon_samples);
}

}  // namespace etimd
