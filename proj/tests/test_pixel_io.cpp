#include "etimd/frame_io.hpp"
#include "etimd/harness.hpp"
#include "etimd/report.hpp"
#include "etimd/synthetic.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>

using namespace etimd;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir()
  {
    path = fs::temp_directory_path() / ("etimd_io_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  [[nodiscard]] fs::path operator/(const std::string& name) const { return path / name; }
};

void write_bytes(const fs::path& p, const std::string& bytes)
{
  std::ofstream out(p, std::ios::binary);
  out << bytes;
}

std::string read_bytes(const fs::path& p)
{
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("pgm 2x2 bytes load verbatim")
{
  TempDir dir;
  write_bytes(dir / "a.pgm", std::string("P5\n2 2\n255\n") + std::string("\x00\xff\x0a\x14", 4));
  const Frame f = load_frame(dir / "a.pgm", FrameFormat::Pgm, 2, 2, 8);
  CHECK(f.width == 2);
  CHECK(f.height == 2);
  CHECK(f.bit_depth == 8);
  CHECK(f.at(0, 0) == 0);
  CHECK(f.at(1, 0) == 255);
  CHECK(f.at(0, 1) == 10);
  CHECK(f.at(1, 1) == 20);
}

TEST_CASE("pgm header comments are skipped")
{
  TempDir dir;
  write_bytes(dir / "c.pgm", std::string("P5\n# made by hand\n1 1\n# max\n255\n") + std::string("\x07", 1));
  CHECK(load_frame(dir / "c.pgm", FrameFormat::Pgm, 0, 0, 8).at(0, 0) == 7);
}

TEST_CASE("pgm round trip is sample exact at 8 and 10 bits")
{
  TempDir dir;
  for (int depth : {8, 10}) {
    const Frame f = make_fixture("noise", 13, 7, depth, 3);
    save_pgm(f, dir / "r.pgm");
    const Frame g = load_frame(dir / "r.pgm", FrameFormat::Pgm, 13, 7, depth);
    CHECK((g.samples == f.samples).all());
  }
}

TEST_CASE("pgm errors")
{
  TempDir dir;
  write_bytes(dir / "short.pgm", std::string("P5\n4 4\n255\n") + std::string(5, '\x01'));
  CHECK_THROWS_AS(load_frame(dir / "short.pgm", FrameFormat::Pgm, 4, 4, 8), TruncatedInputError);
  write_bytes(dir / "p2.pgm", "P2\n1 1\n255\n0\n");
  CHECK_THROWS_AS(load_frame(dir / "p2.pgm", FrameFormat::Pgm, 1, 1, 8), FormatError);
  CHECK_THROWS_AS(load_frame(dir / "missing.pgm", FrameFormat::Pgm, 1, 1, 8), IoError);
}

TEST_CASE("frame format tags")
{
  CHECK(parse_frame_format("pgm") == FrameFormat::Pgm);
  CHECK(parse_frame_format("yuv") == FrameFormat::YuvPlanar);
  CHECK(parse_frame_format("yuv-planar") == FrameFormat::YuvPlanar);
  CHECK_THROWS_AS(parse_frame_format("png"), FormatError);
}

TEST_CASE("yuv420 luma offset of frame 1 at 16x16 8-bit is 384")
{
  // layout: Y 256 bytes, U 64, V 64 per frame
  CHECK(yuv420_frame_bytes(16, 16, 8) == 384);
  TempDir dir;
  std::string bytes(2 * 384, '\0');
  for (int i = 0; i < 256; ++i) {
    bytes[384 + i] = static_cast<char>(i);
    bytes[i] = static_cast<char>(255 - i);
  }
  write_bytes(dir / "v.yuv", bytes);
  const Frame f1 = load_frame(dir / "v.yuv", FrameFormat::YuvPlanar, 16, 16, 8, 1);
  CHECK(f1.at(0, 0) == 0);
  CHECK(f1.at(15, 15) == 255);
  CHECK(f1.at(3, 2) == 35);
  const Frame f0 = load_frame(dir / "v.yuv", FrameFormat::YuvPlanar, 16, 16, 8, 0);
  CHECK(f0.at(0, 0) == 255);
  CHECK_THROWS_AS(load_frame(dir / "v.yuv", FrameFormat::YuvPlanar, 16, 16, 8, 2), TruncatedInputError);
}

TEST_CASE("10-bit yuv is little endian and masked")
{
  CHECK(yuv420_frame_bytes(4, 4, 10) == 48);
  TempDir dir;
  std::string bytes(48, '\0');
  bytes[0] = '\x34';
  bytes[1] = '\x12';  // 0x1234 -> masked to 0x234
  bytes[2] = '\xff';
  bytes[3] = '\x03';  // 1023
  write_bytes(dir / "t.yuv", bytes);
  const Frame f = load_frame(dir / "t.yuv", FrameFormat::YuvPlanar, 4, 4, 10);
  CHECK(f.at(0, 0) == 0x234);
  CHECK(f.at(1, 0) == 1023);
  CHECK((f.samples <= f.max_value()).all());
}

TEST_CASE("property: masked samples for arbitrary high bytes")
{
  std::mt19937_64 rng(11);
  TempDir dir;
  for (int trial = 0; trial < 20; ++trial) {
    std::string bytes(yuv420_frame_bytes(8, 8, 10), '\0');
    for (char& c : bytes) {
      c = static_cast<char>(rng() & 0xff);
    }
    write_bytes(dir / "m.yuv", bytes);
    const Frame f = load_frame(dir / "m.yuv", FrameFormat::YuvPlanar, 8, 8, 10);
    CHECK(f.samples.size() == 64);
    CHECK((f.samples >= 0).all());
    CHECK((f.samples < 1024).all());
  }
}

TEST_CASE("bit depth outside 8/10 is rejected")
{
  TempDir dir;
  write_bytes(dir / "z.yuv", std::string(384, '\0'));
  CHECK_THROWS_AS(load_frame(dir / "z.yuv", FrameFormat::YuvPlanar, 16, 16, 12), ValidationError);
}

TEST_CASE("csv report: header only when empty, one row per block")
{
  Report empty;
  const std::string csv = report_csv(empty);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1);

  RunConfig cfg;
  cfg.input = {"constant", "synthetic", 24, 8, 8, 0, 1};
  const Report r = run_experiment(cfg);
  REQUIRE(r.blocks.size() == 3);
  const std::string csv3 = report_csv(r);
  CHECK(std::count(csv3.begin(), csv3.end(), '\n') == 4);
}

TEST_CASE("report writing is byte deterministic")
{
  TempDir dir;
  RunConfig cfg;
  cfg.input = {"text", "synthetic", 32, 32, 8, 0, 1};
  const Report a = run_experiment(cfg);
  write_report(a, dir / "a.json", ReportFormat::Json);
  write_report(a, dir / "b.json", ReportFormat::Json);
  CHECK(read_bytes(dir / "a.json") == read_bytes(dir / "b.json"));

  // a second run differs only in wall-clock fields
  Report b = run_experiment(cfg);
  b.timing = a.timing;
  write_report(b, dir / "c.json", ReportFormat::Json);
  CHECK(read_bytes(dir / "a.json") == read_bytes(dir / "c.json"));
  write_report(a, dir / "a.csv", ReportFormat::Csv);
  write_report(b, dir / "b.csv", ReportFormat::Csv);
  CHECK(read_bytes(dir / "a.csv") == read_bytes(dir / "b.csv"));
}

TEST_CASE("report json round trip")
{
  RunConfig cfg;
  cfg.input = {"ui", "synthetic", 32, 24, 10, 0, 1};
  cfg.encoder.closed_loop_step = 6;
  cfg.encoder.metric = CostMetric::Sad;
  const Report a = run_experiment(cfg);
  const Report b = report_from_json(nlohmann::json::parse(to_json(a).dump()));
  CHECK(b.blocks == a.blocks);
  CHECK(b.aggregates == a.aggregates);
  CHECK(to_json(b.config) == to_json(a.config));
}

TEST_CASE("write to unwritable path is an io error")
{
  CHECK_THROWS_AS(write_report(Report{}, "/nonexistent-dir/x/r.json", ReportFormat::Json), IoError);
}
