#pragma once

/** \file     mode_derivation.hpp
    \brief    template-based mode derivation (TIMD) and its block-vector extension (E-TIMD)

    Every candidate, angular or block vector, is costed on the same Gamma-template
    geometry so costs are directly comparable. Fusion weights are inversely
    proportional to template cost.
*/

#include "etimd/bv_list.hpp"
#include "etimd/cost.hpp"
#include "etimd/intra_pred.hpp"
#include "etimd/template_match.hpp"

#include <span>
#include <string>
#include <vector>

namespace etimd {

enum class CandidateKind { Angular, Planar, Dc, Bv };

struct ModeCandidate {
  CandidateKind kind = CandidateKind::Planar;
  int mode = IntraMode::kPlanar;  // intra mode index for non-BV kinds
  BlockVector bv;                 // Bv kind only
  int list_index = -1;            // position in the BV list, Bv kind only
  BvProvenance provenance = BvProvenance::Primary;
  Cost cost = 0;

  static ModeCandidate intra(IntraMode m, Cost cost);
  static ModeCandidate block_vector(const BvCandidate& c, int list_index, Cost cost);

  [[nodiscard]] bool is_bv() const { return kind == CandidateKind::Bv; }
  [[nodiscard]] IntraMode intra_mode() const { return {mode}; }
  [[nodiscard]] std::string label() const;
};

bool same_candidate(const ModeCandidate& a, const ModeCandidate& b);

/// Ascending cost; ties: Angular (by index) < Planar < DC < BV (by list order).
bool candidate_precedes(const ModeCandidate& a, const ModeCandidate& b);

struct FusionSet {
  std::vector<ModeCandidate> modes;  // ascending template cost
  std::vector<double> weights;

  [[nodiscard]] bool has_bv() const;
};

struct DerivationParams {
  int thickness = 4;
  CostMetric metric = CostMetric::Satd;
};

/// Template cost of Planar, DC, 2..66 (in that order), then every listed BV.
/// The block must have at least one template strip.
std::vector<ModeCandidate> evaluate_candidates(const ReconBuffer& buf, const BlockRef& block, const BvList& bv_list,
                                               const DerivationParams& params);

/// Weights of the selected modes: 1 for a single mode, uniform when every loss is zero,
/// otherwise w_i = (sum of the other losses) / ((n - 1) * sum of all losses).
std::vector<double> compute_weights(std::span<const Cost> losses);

/// E-TIMD: best overall candidate; the runner-up joins iff L2 < 1.5 * L1; with two modes a
/// third is the cheapest remaining Planar, DC or BV candidate.
FusionSet select_modes_etimd(std::span<const ModeCandidate> candidates);

/// Baseline TIMD over angular, Planar and DC: best angular; second angular iff L2 < 2 * L1;
/// the cheaper of Planar/DC joins iff its cost < 2 * L1.
FusionSet select_modes_timd(std::span<const ModeCandidate> candidates);

/// Per-pixel round(sum p_m * w_m), clipped to the sample range.
PelBlock fuse(std::span<const PelBlock> predictions, std::span<const double> weights, int bit_depth);

PelBlock predict_candidate(const ReconBuffer& buf, const BlockRef& block, const ModeCandidate& candidate);

}  // namespace etimd
