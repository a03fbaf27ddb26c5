#pragma once

/** \file     template_match.hpp
    \brief    Gamma-shaped templates, block-vector template fetch and the IntraTMP window search
*/

#include "etimd/block_grid.hpp"
#include "etimd/cost.hpp"
#include "etimd/types.hpp"

#include <optional>

namespace etimd {

/// Strip layout of the template around a block. The above strip includes the
/// top-left corner extension only when the left strip exists.
struct TemplateGeometry {
  Rect above;
  Rect left;
  bool has_above = false;
  bool has_left = false;

  [[nodiscard]] bool any() const { return has_above || has_left; }
};

TemplateGeometry template_geometry(const ReconBuffer& buf, const BlockRef& block, int thickness);

struct GammaTemplate {
  TemplateGeometry geometry;
  PelBlock above;  // empty when !geometry.has_above
  PelBlock left;
  int thickness = 0;
};

GammaTemplate extract_template(const ReconBuffer& buf, const BlockRef& block, int thickness);

/// True when the displaced block and the displaced copy of every present template strip are reconstructed.
bool bv_is_valid(const ReconBuffer& buf, const BlockRef& block, const TemplateGeometry& geometry, BlockVector bv);

/// Template of the block displaced by `bv`, laid out like the current block's template.
/// Empty when the candidate fails the causality check.
std::optional<GammaTemplate> template_at_bv(const ReconBuffer& buf, const BlockRef& block, BlockVector bv,
                                            int thickness);

/// Sum of per-strip distortions over the strips present in `a`.
Cost template_cost(CostMetric metric, const GammaTemplate& a, const GammaTemplate& b);

struct TmpMatch {
  BlockVector bv;
  Cost cost = 0;
};

struct TmpSearchParams {
  int range = 64;
  int thickness = 4;
  CostMetric metric = CostMetric::Satd;
};

/// Total order used to break cost ties: |dx|+|dy|, then dy, then dx.
bool bv_precedes(BlockVector a, BlockVector b);

/// Exhaustive template matching over |dx|,|dy| <= range. Empty when no candidate is valid.
std::optional<TmpMatch> tmp_search(const ReconBuffer& buf, const BlockRef& block, const TmpSearchParams& params);

/// Copies the displaced block; throws CausalityError when it is not reconstructed.
PelBlock bv_predict(const ReconBuffer& buf, const BlockRef& block, BlockVector bv);

}  // namespace etimd
