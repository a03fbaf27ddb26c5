#include "etimd/mode_derivation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

namespace etimd {

namespace {

int kind_rank(CandidateKind kind)
{
  switch (kind) {
    case CandidateKind::Angular:
      return 0;
    case CandidateKind::Planar:
      return 1;
    case CandidateKind::Dc:
      return 2;
    case CandidateKind::Bv:
      break;
  }
  return 3;
}

FusionSet make_fusion(std::vector<ModeCandidate> modes)
{
  std::stable_sort(modes.begin(), modes.end(), candidate_precedes);
  FusionSet set;
  std::vector<Cost> losses;
  for (const ModeCandidate& m : modes) {
    losses.push_back(m.cost);
  }
  set.weights = compute_weights(losses);
  set.modes = std::move(modes);
  return set;
}

}  // namespace

ModeCandidate ModeCandidate::intra(IntraMode m, Cost cost)
{
  ModeCandidate c;
  c.kind = m.index == IntraMode::kPlanar ? CandidateKind::Planar
           : m.index == IntraMode::kDc   ? CandidateKind::Dc
                                         : CandidateKind::Angular;
  c.mode = m.index;
  c.cost = cost;
  return c;
}

ModeCandidate ModeCandidate::block_vector(const BvCandidate& bv, int list_index, Cost cost)
{
  ModeCandidate c;
  c.kind = CandidateKind::Bv;
  c.mode = -1;
  c.bv = bv.bv;
  c.list_index = list_index;
  c.provenance = bv.provenance;
  c.cost = cost;
  return c;
}

std::string ModeCandidate::label() const
{
  return is_bv() ? "BV" + to_string(bv) : to_string(intra_mode());
}

bool same_candidate(const ModeCandidate& a, const ModeCandidate& b)
{
  return a.kind == b.kind && (a.is_bv() ? a.bv == b.bv : a.mode == b.mode);
}

bool candidate_precedes(const ModeCandidate& a, const ModeCandidate& b)
{
  const int sa = a.is_bv() ? a.list_index : a.mode;
  const int sb = b.is_bv() ? b.list_index : b.mode;
  return std::make_tuple(a.cost, kind_rank(a.kind), sa) < std::make_tuple(b.cost, kind_rank(b.kind), sb);
}

bool FusionSet::has_bv() const
{
  return std::any_of(modes.begin(), modes.end(), [](const ModeCandidate& m) { return m.is_bv(); });
}

std::vector<ModeCandidate> evaluate_candidates(const ReconBuffer& buf, const BlockRef& block, const BvList& bv_list,
                                               const DerivationParams& params)
{
  const GammaTemplate tpl = extract_template(buf, block, params.thickness);
  const TemplateGeometry& g = tpl.geometry;
  if (!g.any()) {
    throw ValidationError("evaluate_candidates needs a template");
  }

  // Angular candidates predict the template from an enlarged block covering template + block.
  const int tl = g.has_left ? params.thickness : 0;
  const int ta = g.has_above ? params.thickness : 0;
  const Rect extended{block.x0 - tl, block.y0 - ta, block.w + tl, block.h + ta};
  const RefSamples refs = build_reference_samples(buf, extended);

  std::vector<ModeCandidate> out;
  out.reserve(2 + IntraMode::kNumAngular + bv_list.size());
  for (int m = IntraMode::kPlanar; m <= IntraMode::kLastAngular; ++m) {
    const PelBlock pred = predict_intra(refs, IntraMode{m}, extended.w, extended.h);
    Cost cost = 0;
    if (g.has_above) {
      cost += distortion(params.metric, pred.topRows(ta), tpl.above);
    }
    if (g.has_left) {
      cost += distortion(params.metric, pred.block(ta, 0, block.h, tl), tpl.left);
    }
    out.push_back(ModeCandidate::intra(IntraMode{m}, cost));
  }

  for (std::size_t i = 0; i < bv_list.size(); ++i) {
    const auto displaced = template_at_bv(buf, block, bv_list[i].bv, params.thickness);
    if (!displaced) {
      continue;  // list entries are pre-validated; keep the guard for hand-built lists
    }
    out.push_back(ModeCandidate::block_vector(bv_list[i], static_cast<int>(i), template_cost(params.metric, tpl, *displaced)));
  }
  return out;
}

std::vector<double> compute_weights(std::span<const Cost> losses)
{
  const std::size_t n = losses.size();
  if (n == 0) {
    return {};
  }
  if (n == 1) {
    return {1.0};
  }
  const double total = std::accumulate(losses.begin(), losses.end(), 0.0,
                                       [](double acc, Cost c) { return acc + static_cast<double>(c); });
  if (total == 0.0) {
    return std::vector<double>(n, 1.0 / static_cast<double>(n));
  }
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = (total - static_cast<double>(losses[i])) / (static_cast<double>(n - 1) * total);
  }
  return w;
}

FusionSet select_modes_etimd(std::span<const ModeCandidate> candidates)
{
  if (candidates.empty()) {
    throw ValidationError("select_modes_etimd needs at least one candidate");
  }
  std::vector<ModeCandidate> sorted(candidates.begin(), candidates.end());
  std::stable_sort(sorted.begin(), sorted.end(), candidate_precedes);

  std::vector<ModeCandidate> chosen{sorted[0]};
  // L_sec < 1.5 * L_fir, in integers
  if (sorted.size() > 1 && 2 * sorted[1].cost < 3 * sorted[0].cost) {
    chosen.push_back(sorted[1]);
    const auto third = std::find_if(sorted.begin() + 2, sorted.end(),
                                    [](const ModeCandidate& c) { return c.kind != CandidateKind::Angular; });
    if (third != sorted.end()) {
      chosen.push_back(*third);
    }
  }
  return make_fusion(std::move(chosen));
}

FusionSet select_modes_timd(std::span<const ModeCandidate> candidates)
{
  std::vector<ModeCandidate> angular;
  std::vector<ModeCandidate> extra;
  for (const ModeCandidate& c : candidates) {
    if (c.kind == CandidateKind::Angular) {
      angular.push_back(c);
    } else if (c.kind != CandidateKind::Bv) {
      extra.push_back(c);
    }
  }
  std::stable_sort(angular.begin(), angular.end(), candidate_precedes);
  std::stable_sort(extra.begin(), extra.end(), candidate_precedes);
  if (angular.empty()) {
    if (extra.empty()) {
      throw ValidationError("select_modes_timd needs an intra candidate");
    }
    return make_fusion({extra.front()});
  }

  const Cost best = angular[0].cost;
  std::vector<ModeCandidate> chosen{angular[0]};
  if (angular.size() > 1 && angular[1].cost < 2 * best) {
    chosen.push_back(angular[1]);
  }
  if (!extra.empty() && extra.front().cost < 2 * best) {
    chosen.push_back(extra.front());
  }
  return make_fusion(std::move(chosen));
}

PelBlock fuse(std::span<const PelBlock> predictions, std::span<const double> weights, int bit_depth)
{
  if (predictions.empty() || predictions.size() != weights.size()) {
    throw ShapeMismatchError("fuse needs one weight per prediction");
  }
  const auto rows = predictions[0].rows();
  const auto cols = predictions[0].cols();
  Samples<double> acc = Samples<double>::Zero(rows, cols);
  for (std::size_t m = 0; m < predictions.size(); ++m) {
    if (predictions[m].rows() != rows || predictions[m].cols() != cols) {
      throw ShapeMismatchError("fused predictions differ in shape");
    }
    acc += predictions[m].cast<double>() * weights[m];
  }
  return (acc + 0.5).floor().cast<Pel>().cwiseMax(0).cwiseMin(max_sample(bit_depth));
}

PelBlock predict_candidate(const ReconBuffer& buf, const BlockRef& block, const ModeCandidate& candidate)
{
  if (candidate.is_bv()) {
    return bv_predict(buf, block, candidate.bv);
  }
  return predict_intra(build_reference_samples(buf, block), candidate.intra_mode(), block.w, block.h);
}

}  // namespace etimd
