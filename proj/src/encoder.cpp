#include "etimd/encoder.hpp"

#include "etimd/cost.hpp"
#include "etimd/template_match.hpp"

#include <chrono>
#include <cstdlib>
#include <string>

namespace etimd {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
  return std::chrono::duration<double>(Clock::now() - start).count();
}

TmpSearchParams tmp_params(const ReconBuffer& buf, const EncoderConfig& config)
{
  TmpSearchParams p;
  p.range = config.full_causal_search ? std::max(buf.width(), buf.height()) : config.search_range;
  p.thickness = config.template_size;
  p.metric = config.metric;
  return p;
}

FusionSet single(ModeCandidate mode)
{
  FusionSet set;
  set.modes = {mode};
  set.weights = {1.0};
  return set;
}

PelBlock quantize_residual(const PelBlock& residual, int step)
{
  PelBlock out(residual.rows(), residual.cols());
  for (Eigen::Index i = 0; i < residual.size(); ++i) {
    const Pel r = residual(i);
    const Pel q = (std::abs(r) + step / 2) / step;
    out(i) = (r < 0 ? -q : q) * step;
  }
  return out;
}

bool same_fusion(const FusionSet& a, const FusionSet& b)
{
  if (a.modes.size() != b.modes.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.modes.size(); ++i) {
    if (!same_candidate(a.modes[i], b.modes[i]) || a.modes[i].cost != b.modes[i].cost ||
        a.weights[i] != b.weights[i]) {
      return false;
    }
  }
  return true;
}

std::vector<PelBlock> predict_all(const ReconBuffer& buf, const BlockRef& block, const FusionSet& fusion)
{
  std::vector<PelBlock> preds;
  preds.reserve(fusion.modes.size());
  for (const ModeCandidate& m : fusion.modes) {
    preds.push_back(predict_candidate(buf, block, m));
  }
  return preds;
}

}  // namespace

ToolSet parse_tool_set(std::string_view tag)
{
  if (tag == "timd") {
    return ToolSet::Timd;
  }
  if (tag == "etimd") {
    return ToolSet::Etimd;
  }
  if (tag == "intratmp") {
    return ToolSet::IntraTmp;
  }
  if (tag == "dc-only") {
    return ToolSet::DcOnly;
  }
  throw ValidationError("unknown tool '" + std::string(tag) + "'");
}

std::string_view to_string(ToolSet tool)
{
  switch (tool) {
    case ToolSet::Timd:
      return "timd";
    case ToolSet::Etimd:
      return "etimd";
    case ToolSet::IntraTmp:
      return "intratmp";
    case ToolSet::DcOnly:
      break;
  }
  return "dc-only";
}

std::string_view to_string(BlockTool tool)
{
  switch (tool) {
    case BlockTool::DcFallback:
      return "dc-fallback";
    case BlockTool::DcOnly:
      return "dc";
    case BlockTool::Timd:
      return "timd";
    case BlockTool::Etimd:
      return "etimd";
    case BlockTool::IntraTmp:
      break;
  }
  return "intratmp";
}

FrameContext::FrameContext(const Frame& frame, int block_size)
    : original(frame),
      recon(frame.width, frame.height, frame.bit_depth, block_size),
      store(frame.width, frame.height, block_size)
{
}

Derivation derive_modes(const ReconBuffer& buf, const BvStore& store, const BlockRef& block,
                        const EncoderConfig& config, BlockTool tool)
{
  Derivation d;
  if (tool == BlockTool::Etimd && config.bv_list) {
    d.bv_list = build_bv_list(store, buf, block, {config.template_size, config.max_bv_candidates, config.ar_bv});
  }
  const auto candidates = evaluate_candidates(buf, block, d.bv_list, {config.template_size, config.metric});
  d.fusion = tool == BlockTool::Etimd ? select_modes_etimd(candidates) : select_modes_timd(candidates);
  return d;
}

CodingRecord make_record(const BlockResult& result)
{
  CodingRecord rec;
  rec.block = result.block;
  if (result.tool == BlockTool::IntraTmp) {
    rec.tool = RecordTool::IntraTmp;
  } else if (result.tool == BlockTool::Etimd) {
    rec.tool = RecordTool::Etimd;
  }
  if (rec.tool != RecordTool::Other) {
    for (const ModeCandidate& m : result.fusion.modes) {
      if (m.is_bv()) {
        rec.bvs.push_back(m.bv);
      }
    }
  }
  return rec;
}

BlockResult encode_block(FrameContext& ctx, const BlockRef& block, const EncoderConfig& config)
{
  const ReconBuffer& buf = ctx.recon;
  BlockResult res;
  res.block = block;

  const bool derivation_tool = config.tool == ToolSet::Timd || config.tool == ToolSet::Etimd;
  const bool anchor = derivation_tool && config.intratmp_stride > 0 && block.scan_index % config.intratmp_stride == 0;
  bool decided = false;

  if (config.tool == ToolSet::IntraTmp || anchor) {
    if (const auto match = tmp_search(buf, block, tmp_params(buf, config))) {
      res.tool = BlockTool::IntraTmp;
      res.fusion = single(ModeCandidate::block_vector({match->bv, BvProvenance::Primary}, 0, match->cost));
      decided = true;
    }
  }
  if (!decided && derivation_tool && template_geometry(buf, block, config.template_size).any()) {
    res.tool = config.tool == ToolSet::Etimd ? BlockTool::Etimd : BlockTool::Timd;
    Derivation d = derive_modes(buf, ctx.store, block, config, res.tool);
    res.fusion = std::move(d.fusion);
    res.bv_list_size = static_cast<int>(d.bv_list.size());
    for (const BvCandidate& c : d.bv_list) {
      (c.provenance == BvProvenance::Primary ? res.bv_primary : res.bv_relocated)++;
    }
    decided = true;
  }
  if (!decided) {
    res.tool = config.tool == ToolSet::DcOnly ? BlockTool::DcOnly : BlockTool::DcFallback;
    res.fusion = single(ModeCandidate::intra(IntraMode{IntraMode::kDc}, 0));
  }

  const std::vector<PelBlock> preds = predict_all(buf, block, res.fusion);
  res.prediction = preds.size() == 1 ? preds[0] : fuse(preds, res.fusion.weights, buf.bit_depth());

  const auto orig = ctx.original.samples.block(block.y0, block.x0, block.h, block.w);
  res.pred_sad = sad(orig, res.prediction);
  res.pred_satd = satd(orig, res.prediction);
  const PelBlock residual = orig - res.prediction;
  res.pred_sse = residual.cast<std::int64_t>().square().sum();

  // Transform selection: BV entries take the HoG mode of their prediction, or Planar when disabled.
  if (res.tool == BlockTool::Timd || res.tool == BlockTool::Etimd) {
    if (config.hog_transform) {
      res.transform_modes = transform_mode_for_block(res.fusion, preds, config.hog_weighting);
    } else {
      for (std::size_t i = 0; i < std::min<std::size_t>(2, res.fusion.modes.size()); ++i) {
        const ModeCandidate& m = res.fusion.modes[i];
        res.transform_modes.push_back(m.is_bv() ? IntraMode{IntraMode::kPlanar} : m.intra_mode());
      }
    }
    for (std::size_t i = 0; i < res.transform_modes.size(); ++i) {
      res.hog_substitutions += (res.fusion.modes[i].is_bv() && config.hog_transform) ? 1 : 0;
    }
  } else if (res.tool == BlockTool::IntraTmp) {
    res.transform_modes = {IntraMode{IntraMode::kPlanar}};
  } else {
    res.transform_modes = {IntraMode{IntraMode::kDc}};
  }
  res.transform_class = transform_class(res.transform_modes.front());
  if (is_transform_size(block.w) && is_transform_size(block.h)) {
    const Samples<double> coeffs = apply_transform(residual, res.transform_class);
    res.compaction = energy_compaction(coeffs, block.w * block.h / 4);
  }

  if (config.closed_loop_step > 0) {
    res.recon = (res.prediction + quantize_residual(residual, config.closed_loop_step))
                    .cwiseMax(0)
                    .cwiseMin(ctx.original.max_value());
  } else {
    res.recon = orig;
  }

  ctx.recon.commit(block, res.recon);
  ctx.store.put(make_record(res));
  return res;
}

FrameEncodeResult encode_frame(const Frame& frame, int block_size, const EncoderConfig& config,
                               AccessObserver* observer)
{
  const auto start = Clock::now();
  FrameContext ctx(frame, block_size);
  ctx.recon.set_observer(observer);
  FrameEncodeResult out;
  for (const BlockRef& block : ctx.recon.blocks()) {
    out.blocks.push_back(encode_block(ctx, block, config));
  }
  out.recon = ctx.recon.plane();
  out.encode_seconds = seconds_since(start);
  return out;
}

double replay_frame(const FrameEncodeResult& encoded, int width, int height, int bit_depth, int block_size,
                    const EncoderConfig& config, AccessObserver* observer)
{
  const auto start = Clock::now();
  ReconBuffer buf(width, height, bit_depth, block_size);
  buf.set_observer(observer);
  BvStore store(width, height, block_size);
  if (encoded.blocks.size() != buf.blocks().size()) {
    throw ValidationError("replay: block count differs from the grid");
  }

  for (const BlockResult& enc : encoded.blocks) {
    const BlockRef& block = enc.block;
    FusionSet fusion;
    switch (enc.tool) {
      case BlockTool::IntraTmp:
        fusion = enc.fusion;  // signaled vector, no search
        break;
      case BlockTool::Timd:
      case BlockTool::Etimd:
        fusion = derive_modes(buf, store, block, config, enc.tool).fusion;
        if (!same_fusion(fusion, enc.fusion)) {
          throw Error("replay: derived modes differ from the encoder at block " + std::to_string(block.scan_index));
        }
        break;
      case BlockTool::DcFallback:
      case BlockTool::DcOnly:
        fusion = enc.fusion;
        break;
    }
    const auto preds = predict_all(buf, block, fusion);
    const PelBlock pred = preds.size() == 1 ? preds[0] : fuse(preds, fusion.weights, bit_depth);
    if (!(pred == enc.prediction).all()) {
      throw Error("replay: prediction mismatch at block " + std::to_string(block.scan_index));
    }
    buf.commit(block, encoded.recon.block(block.y0, block.x0, block.h, block.w));
    store.put(make_record(enc));
  }
  return seconds_since(start);
}

}  // namespace etimd
