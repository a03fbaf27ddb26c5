#pragma once

#include "etimd/report.hpp"

#include <optional>
#include <vector>

namespace etimd {

/// Loads (or synthesizes) the frames named by the input settings.
std::vector<Frame> load_input(const RunConfig& config);

/// Encodes every frame, replays the decoder-side derivation, and aggregates the results.
/// Deterministic apart from the timing fields.
Report run_experiment(const RunConfig& config, AccessObserver* observer = nullptr);

struct Delta {
  std::vector<Cost> sad_delta;  // per block, b - a
  double mean_sad_a = 0.0;
  double mean_sad_b = 0.0;
  std::optional<double> sad_change_pct;   // 100 * (b - a) / a; empty when a is zero and b is not
  std::optional<double> satd_change_pct;
  std::optional<double> enc_time_ratio;   // 100 * T_b / T_a
  std::optional<double> dec_time_ratio;
  double win_rate = 0.0;   // % of blocks where b's prediction SAD < a's
  double lose_rate = 0.0;
  double tie_rate = 0.0;
};

/// Throws ValidationError when the two reports do not share input and block grid.
Delta compare_runs(const Report& a, const Report& b);

nlohmann::ordered_json to_json(const Delta& delta);

}  // namespace etimd
