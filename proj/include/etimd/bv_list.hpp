#pragma once

#include "etimd/block_grid.hpp"
#include "etimd/types.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace etimd {

enum class RecordTool { IntraTmp, Etimd, Other };

std::string_view to_string(RecordTool tool);

/// Units of the vectors stored in a record. Sub-pel sources keep 1/16-sample precision.
enum class BvPrecision { Integer, Sixteenth };

struct CodingRecord {
  BlockRef block;
  RecordTool tool = RecordTool::Other;
  std::vector<BlockVector> bvs;  // raw, in `precision` units
  BvPrecision precision = BvPrecision::Integer;

  [[nodiscard]] bool carries_bvs() const { return tool != RecordTool::Other && !bvs.empty(); }
};

/// Per-block coding records, addressable by any pixel of a committed block.
class BvStore {
 public:
  BvStore(int width, int height, int block_size);

  /// Records must arrive in scan order, one per block.
  void put(CodingRecord record);

  [[nodiscard]] const CodingRecord* lookup(int x, int y) const;
  [[nodiscard]] int committed_count() const { return static_cast<int>(records_.size()); }

 private:
  int width_;
  int height_;
  int block_size_;
  int blocks_per_row_;
  std::vector<CodingRecord> records_;
};

BlockVector normalize_bv(BlockVector raw, BvPrecision precision);

/// Absolute sampling positions in visiting order: the five adjacent points, then
/// the same five pushed outward by k*w / k*h for k = 1, 2.
std::vector<std::pair<int, int>> spatial_sampling_points(const BlockRef& block);

/// Integer-pel BVs of the records covering the sampling points; each record contributes once.
std::vector<BlockVector> sample_spatial_bvs(const BvStore& store, const BlockRef& block);

/// Single-level auto-relocation: primary + every BV of the record at the primary's referenced block.
std::vector<BlockVector> derive_ar_bvs(const BvStore& store, const std::vector<BlockVector>& primaries,
                                       const BlockRef& block);

enum class BvProvenance { Primary, AutoRelocated };

struct BvCandidate {
  BlockVector bv;
  BvProvenance provenance = BvProvenance::Primary;
  friend bool operator==(const BvCandidate&, const BvCandidate&) = default;
};

struct BvListParams {
  int thickness = 4;
  int max_candidates = 20;
  bool auto_relocate = true;
};

using BvList = std::vector<BvCandidate>;

/// Primaries then AR-BVs, first occurrence wins, causally invalid entries dropped, capped.
BvList build_bv_list(const BvStore& store, const ReconBuffer& buf, const BlockRef& block, const BvListParams& params);

}  // namespace etimd
