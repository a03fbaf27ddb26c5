#pragma once

#include "etimd/block_grid.hpp"
#include "etimd/bv_list.hpp"
#include "etimd/frame_io.hpp"
#include "etimd/hog.hpp"
#include "etimd/mode_derivation.hpp"
#include "etimd/transform.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace etimd {

enum class ToolSet { Timd, Etimd, IntraTmp, DcOnly };

ToolSet parse_tool_set(std::string_view tag);
std::string_view to_string(ToolSet tool);

struct EncoderConfig {
  ToolSet tool = ToolSet::Etimd;
  bool bv_list = true;
  bool ar_bv = true;
  bool hog_transform = true;
  HogWeighting hog_weighting = HogWeighting::Count;
  int closed_loop_step = 0;  // 0 = open loop (recon = original)
  CostMetric metric = CostMetric::Satd;
  int search_range = 64;
  bool full_causal_search = false;
  int template_size = 4;
  int max_bv_candidates = 20;
  // In TIMD/E-TIMD runs every N-th block (scan order) is coded with IntraTMP; 0 disables.
  int intratmp_stride = 4;
};

/// Tool that actually produced a block's prediction.
enum class BlockTool { DcFallback, DcOnly, Timd, Etimd, IntraTmp };

std::string_view to_string(BlockTool tool);

struct BlockResult {
  BlockRef block;
  BlockTool tool = BlockTool::DcFallback;
  FusionSet fusion;
  PelBlock prediction;
  PelBlock recon;
  std::vector<IntraMode> transform_modes;
  TransformClass transform_class = TransformClass::Dc0;
  int hog_substitutions = 0;          // BV entries replaced by a HoG mode for transform selection
  std::optional<double> compaction;  // 25% diagonal-scan energy share of the residual
  Cost pred_sad = 0;
  Cost pred_satd = 0;
  std::int64_t pred_sse = 0;
  int bv_list_size = 0;
  int bv_primary = 0;
  int bv_relocated = 0;
};

/// Mutable state of one frame encode: the causal reconstruction and the coding records.
struct FrameContext {
  FrameContext(const Frame& frame, int block_size);

  const Frame& original;
  ReconBuffer recon;
  BvStore store;
};

/// Mode derivation outcome shared by the encoder and the replay pass.
struct Derivation {
  FusionSet fusion;
  BvList bv_list;
};

/// TIMD or E-TIMD derivation for a block with a template.
Derivation derive_modes(const ReconBuffer& buf, const BvStore& store, const BlockRef& block,
                        const EncoderConfig& config, BlockTool tool);

/// Predicts, reconstructs and commits one block (which must be next in scan order).
BlockResult encode_block(FrameContext& ctx, const BlockRef& block, const EncoderConfig& config);

CodingRecord make_record(const BlockResult& result);

struct FrameEncodeResult {
  std::vector<BlockResult> blocks;
  PelBlock recon;
  double encode_seconds = 0.0;
};

FrameEncodeResult encode_frame(const Frame& frame, int block_size, const EncoderConfig& config,
                               AccessObserver* observer = nullptr);

/// Decoder-side replay: re-derives every fused mode set from the reconstruction, using
/// signaled BVs for IntraTMP blocks instead of searching. Throws Error if a derivation
/// disagrees with the encoder. Returns the elapsed seconds.
double replay_frame(const FrameEncodeResult& encoded, int width, int height, int bit_depth, int block_size,
                    const EncoderConfig& config, AccessObserver* observer = nullptr);

}  // namespace etimd
