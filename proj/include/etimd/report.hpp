#pragma once

/** \file     report.hpp
    \brief    run configuration and experiment report, with JSON / CSV serialization
*/

#include "etimd/encoder.hpp"
#include "etimd/frame_io.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace etimd {

inline constexpr int kReportSchema = 1;

struct InputSpec {
  std::string path;            // file path, or fixture name for the synthetic source
  std::string format = "pgm";  // yuv | pgm | synthetic
  int width = 0;
  int height = 0;
  int bit_depth = 8;
  int frame_start = 0;
  int frame_count = 1;

  friend bool operator==(const InputSpec&, const InputSpec&) = default;
};

struct RunConfig {
  InputSpec input;
  int block_size = 8;
  EncoderConfig encoder;
  std::uint64_t seed = 0;
  int threads = 1;
};

/// Throws ValidationError naming the first offending field.
void validate(const RunConfig& config);

nlohmann::ordered_json to_json(const RunConfig& config);
RunConfig run_config_from_json(const nlohmann::json& j);

struct BlockRecord {
  int frame = 0;
  int index = 0;
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;
  std::string tool;
  std::vector<std::string> modes;
  std::vector<double> weights;
  std::vector<Cost> costs;
  std::vector<std::string> transform_modes;
  std::string transform_class;
  int hog_substitutions = 0;
  std::optional<double> compaction;
  Cost pred_sad = 0;
  Cost pred_satd = 0;
  std::int64_t pred_sse = 0;
  int bv_list_size = 0;
  int bv_primary = 0;
  int bv_relocated = 0;

  friend bool operator==(const BlockRecord&, const BlockRecord&) = default;
};

BlockRecord to_record(int frame, const BlockResult& result);

struct Aggregates {
  int block_count = 0;
  double mean_template_cost = 0.0;  // cost of the first fused mode
  double mean_pred_sad = 0.0;
  double mean_pred_satd = 0.0;
  double psnr = 0.0;  // prediction PSNR at 8-bit scale; +inf when exact
  std::optional<double> mean_compaction;
  double bv_replacement_rate = 0.0;  // share of E-TIMD blocks whose fusion holds a BV
  std::map<std::string, int> tool_usage;
  std::map<std::string, int> mode_usage;  // every fused mode; block vectors pooled under "BV"

  friend bool operator==(const Aggregates&, const Aggregates&) = default;
};

Aggregates compute_aggregates(const std::vector<BlockRecord>& blocks, int bit_depth);

struct Timing {
  double encode_seconds = 0.0;
  double decode_seconds = 0.0;
};

struct Report {
  RunConfig config;
  std::vector<BlockRecord> blocks;
  Aggregates aggregates;
  Timing timing;
};

nlohmann::ordered_json to_json(const Report& report);
Report report_from_json(const nlohmann::json& j);
Report load_report(const std::filesystem::path& path);

enum class ReportFormat { Json, Csv };

/// JSON: the full report. CSV: one row per block after a fixed header.
void write_report(const Report& report, const std::filesystem::path& path, ReportFormat format);

std::string report_csv(const Report& report);

}  // namespace etimd
