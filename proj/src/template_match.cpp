#include "etimd/template_match.hpp"

#include <cstdlib>
#include <limits>
#include <string>
#include <tuple>

namespace etimd {

CostMetric parse_cost_metric(std::string_view tag)
{
  if (tag == "sad") {
    return CostMetric::Sad;
  }
  if (tag == "satd") {
    return CostMetric::Satd;
  }
  throw ValidationError("unknown cost metric '" + std::string(tag) + "'");
}

std::string_view to_string(CostMetric metric)
{
  return metric == CostMetric::Sad ? "sad" : "satd";
}

TemplateGeometry template_geometry(const ReconBuffer& buf, const BlockRef& block, int thickness)
{
  TemplateGeometry g;
  const Rect left{block.x0 - thickness, block.y0, thickness, block.h};
  g.has_left = thickness > 0 && buf.is_available(left);
  const int corner = g.has_left ? thickness : 0;
  const Rect above{block.x0 - corner, block.y0 - thickness, block.w + corner, thickness};
  g.has_above = thickness > 0 && buf.is_available(above);
  if (g.has_left) {
    g.left = left;
  }
  if (g.has_above) {
    g.above = above;
  }
  return g;
}

GammaTemplate extract_template(const ReconBuffer& buf, const BlockRef& block, int thickness)
{
  GammaTemplate tpl;
  tpl.thickness = thickness;
  tpl.geometry = template_geometry(buf, block, thickness);
  if (tpl.geometry.has_above) {
    tpl.above = buf.view(tpl.geometry.above);
  }
  if (tpl.geometry.has_left) {
    tpl.left = buf.view(tpl.geometry.left);
  }
  return tpl;
}

bool bv_is_valid(const ReconBuffer& buf, const BlockRef& block, const TemplateGeometry& geometry, BlockVector bv)
{
  if (!buf.is_available(block.rect().shifted(bv.dx, bv.dy))) {
    return false;
  }
  if (geometry.has_above && !buf.is_available(geometry.above.shifted(bv.dx, bv.dy))) {
    return false;
  }
  if (geometry.has_left && !buf.is_available(geometry.left.shifted(bv.dx, bv.dy))) {
    return false;
  }
  return true;
}

std::optional<GammaTemplate> template_at_bv(const ReconBuffer& buf, const BlockRef& block, BlockVector bv,
                                            int thickness)
{
  const TemplateGeometry own = template_geometry(buf, block, thickness);
  if (!bv_is_valid(buf, block, own, bv)) {
    return std::nullopt;
  }
  GammaTemplate tpl;
  tpl.thickness = thickness;
  tpl.geometry = own;
  if (own.has_above) {
    tpl.geometry.above = own.above.shifted(bv.dx, bv.dy);
    tpl.above = buf.view(tpl.geometry.above);
  }
  if (own.has_left) {
    tpl.geometry.left = own.left.shifted(bv.dx, bv.dy);
    tpl.left = buf.view(tpl.geometry.left);
  }
  return tpl;
}

Cost template_cost(CostMetric metric, const GammaTemplate& a, const GammaTemplate& b)
{
  Cost cost = 0;
  if (a.geometry.has_above) {
    cost += distortion(metric, a.above, b.above);
  }
  if (a.geometry.has_left) {
    cost += distortion(metric, a.left, b.left);
  }
  return cost;
}

bool bv_precedes(BlockVector a, BlockVector b)
{
  return std::make_tuple(std::abs(a.dx) + std::abs(a.dy), a.dy, a.dx) <
         std::make_tuple(std::abs(b.dx) + std::abs(b.dy), b.dy, b.dx);
}

std::optional<TmpMatch> tmp_search(const ReconBuffer& buf, const BlockRef& block, const TmpSearchParams& params)
{
  const GammaTemplate cur = extract_template(buf, block, params.thickness);
  const TemplateGeometry& g = cur.geometry;
  if (!g.any()) {
    return std::nullopt;
  }

  std::optional<TmpMatch> best;
  for (int dy = -params.range; dy <= params.range; ++dy) {
    for (int dx = -params.range; dx <= params.range; ++dx) {
      const BlockVector bv{dx, dy};
      if (!bv_is_valid(buf, block, g, bv)) {
        continue;
      }
      Cost cost = 0;
      if (g.has_above) {
        cost += distortion(params.metric, buf.view(g.above.shifted(dx, dy)), cur.above);
      }
      if (best && cost > best->cost) {
        continue;
      }
      if (g.has_left) {
        cost += distortion(params.metric, buf.view(g.left.shifted(dx, dy)), cur.left);
      }
      if (!best || cost < best->cost || (cost == best->cost && bv_precedes(bv, best->bv))) {
        best = TmpMatch{bv, cost};
      }
    }
  }
  return best;
}

PelBlock bv_predict(const ReconBuffer& buf, const BlockRef& block, BlockVector bv)
{
  return buf.view(block.rect().shifted(bv.dx, bv.dy));
}

}  // namespace etimd
