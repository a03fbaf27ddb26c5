#include "etimd/harness.hpp"
#include "etimd/synthetic.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

using namespace etimd;
namespace fs = std::filesystem;

namespace {

RunConfig synthetic(const std::string& name, int w, int h, ToolSet tool)
{
  RunConfig c;
  c.input = {name, "synthetic", w, h, 8, 0, 1};
  c.encoder.tool = tool;
  c.encoder.search_range = 24;
  return c;
}

}  // namespace

TEST_CASE("corner block falls back to DC")
{
  const Frame f = make_fixture("text", 32, 32, 8, 1);
  const FrameEncodeResult r = encode_frame(f, 8, EncoderConfig{});
  CHECK(r.blocks[0].tool == BlockTool::DcFallback);
  REQUIRE(r.blocks[0].fusion.modes.size() == 1);
  CHECK(r.blocks[0].fusion.weights[0] == 1.0);
}

TEST_CASE("open loop reconstruction equals the original")
{
  const Frame f = make_fixture("noise", 32, 32, 10, 2);
  const FrameEncodeResult r = encode_frame(f, 8, EncoderConfig{});
  CHECK((r.recon == f.samples).all());
}

TEST_CASE("closed loop reconstruction stays within half a step")
{
  const Frame f = make_fixture("ui", 32, 32, 8, 3);
  EncoderConfig cfg;
  cfg.closed_loop_step = 8;
  const FrameEncodeResult r = encode_frame(f, 8, cfg);
  CHECK(((r.recon - f.samples).abs() <= 4).all());
  CHECK_FALSE((r.recon == f.samples).all());
}

TEST_CASE("etimd records carry their fused block vectors")
{
  const Frame f = make_fixture("glyph-tile", 64, 64, 8, 4);
  const FrameEncodeResult r = encode_frame(f, 8, EncoderConfig{});
  int with_bv = 0;
  for (const BlockResult& b : r.blocks) {
    const CodingRecord rec = make_record(b);
    if (b.tool == BlockTool::Etimd && b.fusion.has_bv()) {
      ++with_bv;
      CHECK(rec.tool == RecordTool::Etimd);
      CHECK(rec.carries_bvs());
    }
    if (b.tool == BlockTool::IntraTmp) {
      CHECK(rec.bvs.size() == 1);
    }
  }
  CHECK(with_bv > 0);
}

TEST_CASE("replay rejects a tampered derivation")
{
  const Frame f = make_fixture("code", 32, 32, 8, 5);
  EncoderConfig cfg;
  FrameEncodeResult r = encode_frame(f, 8, cfg);
  CHECK_NOTHROW(replay_frame(r, 32, 32, 8, 8, cfg));
  for (BlockResult& b : r.blocks) {
    if (b.tool == BlockTool::Etimd) {
      b.fusion.modes[0].cost += 1;
      break;
    }
  }
  CHECK_THROWS_AS(replay_frame(r, 32, 32, 8, 8, cfg), Error);
}

TEST_CASE("dc-only on a constant frame is exact")
{
  const Report r = run_experiment(synthetic("constant", 32, 32, ToolSet::DcOnly));
  CHECK(std::isinf(r.aggregates.psnr));
  for (const BlockRecord& b : r.blocks) {
    CHECK(b.pred_sad == 0);
    CHECK(b.costs == std::vector<Cost>{0});
  }
  CHECK(to_json(r)["aggregates"]["psnr"] == "inf");
}

TEST_CASE("runs are deterministic and configs round trip")
{
  const RunConfig cfg = synthetic("table", 48, 40, ToolSet::Etimd);
  const Report a = run_experiment(cfg);
  const Report b = run_experiment(cfg);
  CHECK(a.blocks == b.blocks);
  CHECK(a.aggregates == b.aggregates);

  const RunConfig back = run_config_from_json(nlohmann::json::parse(to_json(a).dump())["config"]);
  const Report c = run_experiment(back);
  CHECK(c.blocks == a.blocks);
}

TEST_CASE("aggregates agree with the block records")
{
  const Report r = run_experiment(synthetic("code", 48, 48, ToolSet::Etimd));
  double sad = 0;
  double sse = 0;
  int etimd = 0;
  int etimd_bv = 0;
  int modes = 0;
  for (const BlockRecord& b : r.blocks) {
    sad += static_cast<double>(b.pred_sad);
    sse += static_cast<double>(b.pred_sse);
    modes += static_cast<int>(b.modes.size());
    if (b.tool == "etimd") {
      ++etimd;
      etimd_bv += std::any_of(b.modes.begin(), b.modes.end(), [](const std::string& m) { return m.rfind("BV", 0) == 0; });
    }
  }
  const double n = static_cast<double>(r.blocks.size());
  CHECK(r.aggregates.block_count == static_cast<int>(r.blocks.size()));
  CHECK(r.aggregates.mean_pred_sad == doctest::Approx(sad / n));
  CHECK(r.aggregates.psnr == doctest::Approx(10.0 * std::log10(255.0 * 255.0 / (sse / (48.0 * 48.0)))));
  CHECK(r.aggregates.bv_replacement_rate == doctest::Approx(static_cast<double>(etimd_bv) / etimd));
  int pooled = 0;
  for (const auto& [mode, count] : r.aggregates.mode_usage) {
    pooled += count;
  }
  CHECK(pooled == modes);
}

TEST_CASE("compare")
{
  const Report a = run_experiment(synthetic("text", 32, 32, ToolSet::Timd));
  const Delta same = compare_runs(a, a);
  CHECK(same.sad_change_pct.value() == 0.0);
  CHECK(same.enc_time_ratio.value() == doctest::Approx(100.0));
  CHECK(same.tie_rate == 100.0);
  for (Cost d : same.sad_delta) {
    CHECK(d == 0);
  }

  const Report b = run_experiment(synthetic("text", 32, 32, ToolSet::Etimd));
  const Delta d = compare_runs(a, b);
  CHECK(d.win_rate + d.lose_rate + d.tie_rate == doctest::Approx(100.0));
  CHECK(d.sad_delta.size() == a.blocks.size());

  const Report other = run_experiment(synthetic("text", 40, 32, ToolSet::Etimd));
  CHECK_THROWS_AS(compare_runs(a, other), ValidationError);
}

TEST_CASE("validation")
{
  RunConfig c = synthetic("text", 32, 32, ToolSet::Etimd);
  c.block_size = 12;
  CHECK_THROWS_AS(run_experiment(c), ValidationError);
  c = synthetic("text", 32, 32, ToolSet::Etimd);
  c.input.format = "bmp";
  CHECK_THROWS_AS(run_experiment(c), ValidationError);
  c = synthetic("text", 32, 32, ToolSet::Etimd);
  c.input.frame_count = 2;
  CHECK_THROWS_AS(run_experiment(c), ValidationError);
  c = synthetic("nope", 32, 32, ToolSet::Etimd);
  CHECK_THROWS_AS(run_experiment(c), ValidationError);
  CHECK_THROWS_AS(parse_tool_set("vvc"), ValidationError);
}

TEST_CASE("frame-parallel runs match the sequential report")
{
  const fs::path path = fs::temp_directory_path() / "etimd_harness_frames.yuv";
  {
    std::ofstream out(path, std::ios::binary);
    for (const char* name : {"text", "ui", "table"}) {
      const Frame f = make_fixture(name, 32, 32, 8, 6);
      std::string bytes(yuv420_frame_bytes(32, 32, 8), '\x80');
      for (int i = 0; i < 32 * 32; ++i) {
        bytes[i] = static_cast<char>(f.samples(i));
      }
      out << bytes;
    }
  }
  RunConfig c;
  c.input = {path.string(), "yuv", 32, 32, 8, 0, 3};
  const Report seq = run_experiment(c);
  c.threads = 3;
  const Report par = run_experiment(c);
  CHECK(par.blocks == seq.blocks);
  CHECK(seq.blocks.back().frame == 2);
  fs::remove(path);
}
