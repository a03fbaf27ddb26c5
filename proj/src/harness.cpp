#include "etimd/harness.hpp"

#include "etimd/synthetic.hpp"

#include <future>
#include <numeric>

namespace etimd {

namespace {

struct FrameOutcome {
  std::vector<BlockRecord> records;
  double encode_seconds = 0.0;
  double decode_seconds = 0.0;
};

FrameOutcome process_frame(const Frame& frame, int frame_number, const RunConfig& config, AccessObserver* observer)
{
  const FrameEncodeResult enc = encode_frame(frame, config.block_size, config.encoder, observer);
  FrameOutcome out;
  out.encode_seconds = enc.encode_seconds;
  out.decode_seconds =
      replay_frame(enc, frame.width, frame.height, frame.bit_depth, config.block_size, config.encoder, observer);
  out.records.reserve(enc.blocks.size());
  for (const BlockResult& b : enc.blocks) {
    out.records.push_back(to_record(frame_number, b));
  }
  return out;
}

std::optional<double> percent_change(double a, double b)
{
  if (a == 0.0) {
    return b == 0.0 ? std::optional<double>(0.0) : std::nullopt;
  }
  return 100.0 * (b - a) / a;
}

std::optional<double> ratio_pct(double a, double b)
{
  if (a == 0.0) {
    return b == 0.0 ? std::optional<double>(100.0) : std::nullopt;
  }
  return 100.0 * b / a;
}

nlohmann::ordered_json optional_json(const std::optional<double>& v)
{
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

}  // namespace

std::vector<Frame> load_input(const RunConfig& config)
{
  const InputSpec& in = config.input;
  std::vector<Frame> frames;
  if (in.format == "synthetic") {
    frames.push_back(make_fixture(in.path, in.width, in.height, in.bit_depth, config.seed));
    return frames;
  }
  const FrameFormat format = parse_frame_format(in.format);
  for (int i = 0; i < in.frame_count; ++i) {
    frames.push_back(load_frame(in.path, format, in.width, in.height, in.bit_depth, in.frame_start + i));
  }
  return frames;
}

Report run_experiment(const RunConfig& config, AccessObserver* observer)
{
  validate(config);
  const std::vector<Frame> frames = load_input(config);

  std::vector<FrameOutcome> outcomes(frames.size());
  if (config.threads > 1 && observer == nullptr && frames.size() > 1) {
    // frame contexts are independent; results are gathered in frame order
    for (std::size_t base = 0; base < frames.size(); base += config.threads) {
      std::vector<std::future<FrameOutcome>> jobs;
      for (std::size_t i = base; i < std::min(frames.size(), base + config.threads); ++i) {
        jobs.push_back(std::async(std::launch::async, process_frame, std::cref(frames[i]),
                                  config.input.frame_start + static_cast<int>(i), std::cref(config), nullptr));
      }
      for (std::size_t k = 0; k < jobs.size(); ++k) {
        outcomes[base + k] = jobs[k].get();
      }
    }
  } else {
    for (std::size_t i = 0; i < frames.size(); ++i) {
      outcomes[i] = process_frame(frames[i], config.input.frame_start + static_cast<int>(i), config, observer);
    }
  }

  Report report;
  report.config = config;
  for (FrameOutcome& o : outcomes) {
    report.blocks.insert(report.blocks.end(), o.records.begin(), o.records.end());
    report.timing.encode_seconds += o.encode_seconds;
    report.timing.decode_seconds += o.decode_seconds;
  }
  report.aggregates = compute_aggregates(report.blocks, config.input.bit_depth);
  return report;
}

Delta compare_runs(const Report& a, const Report& b)
{
  if (!(a.config.input == b.config.input) || a.config.block_size != b.config.block_size ||
      a.blocks.size() != b.blocks.size()) {
    throw ValidationError("reports do not share input and block grid");
  }
  Delta d;
  int wins = 0;
  int losses = 0;
  double satd_a = 0.0;
  double satd_b = 0.0;
  for (std::size_t i = 0; i < a.blocks.size(); ++i) {
    const BlockRecord& ra = a.blocks[i];
    const BlockRecord& rb = b.blocks[i];
    if (ra.frame != rb.frame || ra.x != rb.x || ra.y != rb.y || ra.w != rb.w || ra.h != rb.h) {
      throw ValidationError("reports do not share input and block grid");
    }
    d.sad_delta.push_back(rb.pred_sad - ra.pred_sad);
    d.mean_sad_a += static_cast<double>(ra.pred_sad);
    d.mean_sad_b += static_cast<double>(rb.pred_sad);
    satd_a += static_cast<double>(ra.pred_satd);
    satd_b += static_cast<double>(rb.pred_satd);
    wins += rb.pred_sad < ra.pred_sad ? 1 : 0;
    losses += rb.pred_sad > ra.pred_sad ? 1 : 0;
  }
  const std::size_t n = a.blocks.size();
  if (n > 0) {
    d.mean_sad_a /= static_cast<double>(n);
    d.mean_sad_b /= static_cast<double>(n);
    d.win_rate = 100.0 * wins / static_cast<double>(n);
    d.lose_rate = 100.0 * losses / static_cast<double>(n);
    d.tie_rate = 100.0 * static_cast<double>(n - wins - losses) / static_cast<double>(n);
  }
  d.sad_change_pct = percent_change(d.mean_sad_a, d.mean_sad_b);
  d.satd_change_pct = percent_change(satd_a, satd_b);
  d.enc_time_ratio = ratio_pct(a.timing.encode_seconds, b.timing.encode_seconds);
  d.dec_time_ratio = ratio_pct(a.timing.decode_seconds, b.timing.decode_seconds);
  return d;
}

nlohmann::ordered_json to_json(const Delta& d)
{
  nlohmann::ordered_json j;
  j["schema"] = kReportSchema;
  j["blocks"] = d.sad_delta.size();
  j["mean_sad_a"] = d.mean_sad_a;
  j["mean_sad_b"] = d.mean_sad_b;
  j["sad_change_pct"] = optional_json(d.sad_change_pct);
  j["satd_change_pct"] = optional_json(d.satd_change_pct);
  j["enc_time_ratio"] = optional_json(d.enc_time_ratio);
  j["dec_time_ratio"] = optional_json(d.dec_time_ratio);
  j["win_rate"] = d.win_rate;
  j["lose_rate"] = d.lose_rate;
  j["tie_rate"] = d.tie_rate;
  j["sad_delta"] = d.sad_delta;
  return j;
}

}  // namespace etimd
