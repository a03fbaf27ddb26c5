#include "etimd/bv_list.hpp"

#include "etimd/template_match.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace etimd {

std::string_view to_string(RecordTool tool)
{
  switch (tool) {
    case RecordTool::IntraTmp:
      return "intratmp";
    case RecordTool::Etimd:
      return "etimd";
    case RecordTool::Other:
      break;
  }
  return "other";
}

BvStore::BvStore(int width, int height, int block_size)
    : width_(width), height_(height), block_size_(block_size), blocks_per_row_((width + block_size - 1) / block_size)
{
}

void BvStore::put(CodingRecord record)
{
  if (record.block.scan_index != committed_count()) {
    throw ScanOrderError("coding record for block " + std::to_string(record.block.scan_index) +
                         " stored out of order");
  }
  records_.push_back(std::move(record));
}

const CodingRecord* BvStore::lookup(int x, int y) const
{
  if (x < 0 || y < 0 || x >= width_ || y >= height_) {
    return nullptr;
  }
  const int index = (y / block_size_) * blocks_per_row_ + x / block_size_;
  return index < committed_count() ? &records_[index] : nullptr;
}

BlockVector normalize_bv(BlockVector raw, BvPrecision precision)
{
  if (precision == BvPrecision::Sixteenth) {
    return {raw.dx >> 4, raw.dy >> 4};
  }
  return raw;
}

std::vector<std::pair<int, int>> spatial_sampling_points(const BlockRef& block)
{
  const int w = block.w;
  const int h = block.h;
  std::vector<std::pair<int, int>> points;
  points.reserve(15);
  for (int k = 0; k <= 2; ++k) {
    const int ox = k * w;
    const int oy = k * h;
    points.emplace_back(block.x0 - 1 - ox, block.y0 + h - 1);       // left
    points.emplace_back(block.x0 + w - 1, block.y0 - 1 - oy);       // above
    points.emplace_back(block.x0 + w + ox, block.y0 - 1 - oy);      // above-right
    points.emplace_back(block.x0 - 1 - ox, block.y0 + h + oy);      // below-left
    points.emplace_back(block.x0 - 1 - ox, block.y0 - 1 - oy);      // above-left
  }
  return points;
}

std::vector<BlockVector> sample_spatial_bvs(const BvStore& store, const BlockRef& block)
{
  std::vector<BlockVector> out;
  std::set<int> visited;
  for (const auto& [x, y] : spatial_sampling_points(block)) {
    const CodingRecord* rec = store.lookup(x, y);
    if (rec == nullptr || !rec->carries_bvs() || !visited.insert(rec->block.scan_index).second) {
      continue;
    }
    for (const BlockVector& raw : rec->bvs) {
      out.push_back(normalize_bv(raw, rec->precision));
    }
  }
  return out;
}

std::vector<BlockVector> derive_ar_bvs(const BvStore& store, const std::vector<BlockVector>& primaries,
                                       const BlockRef& block)
{
  std::vector<BlockVector> out;
  for (const BlockVector& pri : primaries) {
    const CodingRecord* rec = store.lookup(block.x0 + pri.dx, block.y0 + pri.dy);
    if (rec == nullptr || !rec->carries_bvs()) {
      continue;
    }
    for (const BlockVector& raw : rec->bvs) {
      out.push_back(pri + normalize_bv(raw, rec->precision));
    }
  }
  return out;
}

BvList build_bv_list(const BvStore& store, const ReconBuffer& buf, const BlockRef& block, const BvListParams& params)
{
  std::vector<BlockVector> primaries;
  for (const BlockVector& bv : sample_spatial_bvs(store, block)) {
    if (std::find(primaries.begin(), primaries.end(), bv) == primaries.end()) {
      primaries.push_back(bv);
    }
  }

  BvList list;
  auto append = [&list](BlockVector bv, BvProvenance provenance) {
    const bool seen = std::any_of(list.begin(), list.end(), [bv](const BvCandidate& c) { return c.bv == bv; });
    if (!seen) {
      list.push_back({bv, provenance});
    }
  };
  for (const BlockVector& bv : primaries) {
    append(bv, BvProvenance::Primary);
  }
  if (params.auto_relocate) {
    for (const BlockVector& bv : derive_ar_bvs(store, primaries, block)) {
      append(bv, BvProvenance::AutoRelocated);
    }
  }

  const TemplateGeometry geometry = template_geometry(buf, block, params.thickness);
  std::erase_if(list, [&](const BvCandidate& c) { return !bv_is_valid(buf, block, geometry, c.bv); });
  if (static_cast<int>(list.size()) > params.max_candidates) {
    list.resize(std::max(params.max_candidates, 0));
  }
  return list;
}

}  // namespace etimd
