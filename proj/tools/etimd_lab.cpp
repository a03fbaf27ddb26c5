// Command-line front end: run experiments, compare reports, synthesize fixtures.

#include "etimd/harness.hpp"
#include "etimd/synthetic.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

struct RunOptions {
  std::string config_file;
  std::string input;
  std::string format;
  int width = 0;
  int height = 0;
  int bit_depth = 8;
  int frame_start = 0;
  int frame_count = 1;
  int block_size = 8;
  std::string tool;
  bool bv_list = true;
  bool ar_bv = true;
  bool hog_transform = true;
  std::string hog_weighting = "count";
  int closed_loop_step = 0;
  std::string metric = "satd";
  int search_range = 64;
  bool full_causal = false;
  int template_size = 4;
  int max_bv = 20;
  int intratmp_stride = 4;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string out;
  std::string csv;
};

etimd::RunConfig build_config(const CLI::App& cmd, const RunOptions& o)
{
  etimd::RunConfig c;
  if (!o.config_file.empty()) {
    std::ifstream in(o.config_file);
    if (!in) {
      throw etimd::IoError("cannot open " + o.config_file);
    }
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& ex) {
      throw etimd::ValidationError(o.config_file + ": " + ex.what());
    }
    c = etimd::run_config_from_json(j.contains("config") ? j.at("config") : j);
  }
  auto given = [&cmd](const char* name) { return cmd.get_option(name)->count() > 0; };
  if (given("--input")) c.input.path = o.input;
  if (given("--format")) c.input.format = o.format;
  if (given("--width")) c.input.width = o.width;
  if (given("--height")) c.input.height = o.height;
  if (given("--bit-depth")) c.input.bit_depth = o.bit_depth;
  if (given("--frame-start")) c.input.frame_start = o.frame_start;
  if (given("--frame-count")) c.input.frame_count = o.frame_count;
  if (given("--block-size")) c.block_size = o.block_size;
  if (given("--tool")) c.encoder.tool = etimd::parse_tool_set(o.tool);
  if (given("--bv-list")) c.encoder.bv_list = o.bv_list;
  if (given("--ar-bv")) c.encoder.ar_bv = o.ar_bv;
  if (given("--hog-transform")) c.encoder.hog_transform = o.hog_transform;
  if (given("--hog-weighting")) {
    c.encoder.hog_weighting =
        o.hog_weighting == "magnitude" ? etimd::HogWeighting::Magnitude : etimd::HogWeighting::Count;
  }
  if (given("--closed-loop-step")) c.encoder.closed_loop_step = o.closed_loop_step;
  if (given("--metric")) c.encoder.metric = etimd::parse_cost_metric(o.metric);
  if (given("--search-range")) c.encoder.search_range = o.search_range;
  if (given("--full-causal-search")) c.encoder.full_causal_search = o.full_causal;
  if (given("--template-size")) c.encoder.template_size = o.template_size;
  if (given("--max-bv")) c.encoder.max_bv_candidates = o.max_bv;
  if (given("--intratmp-stride")) c.encoder.intratmp_stride = o.intratmp_stride;
  if (given("--seed")) c.seed = o.seed;
  if (given("--threads")) c.threads = o.threads;
  return c;
}

void print_summary(const etimd::Report& r)
{
  const auto& a = r.aggregates;
  std::cout << "blocks            " << a.block_count << '\n'
            << "mean pred SAD     " << a.mean_pred_sad << '\n'
            << "mean pred SATD    " << a.mean_pred_satd << '\n'
            << "pred PSNR (8-bit) " << a.psnr << '\n'
            << "BV replacement    " << a.bv_replacement_rate << '\n'
            << "encode / replay s " << r.timing.encode_seconds << " / " << r.timing.decode_seconds << '\n';
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Template-based intra mode derivation lab"};
  app.require_subcommand(1);

  RunOptions o;
  CLI::App* run = app.add_subcommand("run", "encode frames with a tool set and write a report");
  run->add_option("--config", o.config_file, "JSON run configuration (a report's config block also works)");
  run->add_option("--input", o.input, "input file, or fixture name with --format synthetic");
  run->add_option("--format", o.format, "yuv | pgm | synthetic")->check(CLI::IsMember({"yuv", "pgm", "synthetic"}));
  run->add_option("--width", o.width);
  run->add_option("--height", o.height);
  run->add_option("--bit-depth", o.bit_depth);
  run->add_option("--frame-start", o.frame_start);
  run->add_option("--frame-count", o.frame_count);
  run->add_option("--block-size", o.block_size);
  run->add_option("--tool", o.tool, "timd | etimd | intratmp | dc-only")
      ->check(CLI::IsMember({"timd", "etimd", "intratmp", "dc-only"}));
  run->add_option("--bv-list", o.bv_list);
  run->add_option("--ar-bv", o.ar_bv);
  run->add_option("--hog-transform", o.hog_transform);
  run->add_option("--hog-weighting", o.hog_weighting)->check(CLI::IsMember({"count", "magnitude"}));
  run->add_option("--closed-loop-step", o.closed_loop_step, "residual quantizer step; 0 = open loop");
  run->add_option("--metric", o.metric)->check(CLI::IsMember({"sad", "satd"}));
  run->add_option("--search-range", o.search_range);
  run->add_option("--full-causal-search", o.full_causal);
  run->add_option("--template-size", o.template_size);
  run->add_option("--max-bv", o.max_bv);
  run->add_option("--intratmp-stride", o.intratmp_stride);
  run->add_option("--seed", o.seed);
  run->add_option("--threads", o.threads);
  run->add_option("--out", o.out, "report path (JSON)");
  run->add_option("--csv", o.csv, "per-block CSV path");

  std::string report_a;
  std::string report_b;
  std::string delta_out;
  CLI::App* compare = app.add_subcommand("compare", "A/B compare two reports (b relative to a)");
  compare->add_option("a", report_a)->required();
  compare->add_option("b", report_b)->required();
  compare->add_option("--out", delta_out, "delta JSON path");

  std::string fixture;
  std::string synth_out;
  int synth_w = 256;
  int synth_h = 256;
  int synth_depth = 8;
  std::uint64_t synth_seed = 0;
  CLI::App* synth = app.add_subcommand("synth", "write a synthetic fixture as PGM");
  synth->add_option("fixture", fixture)->required()->check(CLI::IsMember(etimd::fixture_names()));
  synth->add_option("out", synth_out)->required();
  synth->add_option("--width", synth_w);
  synth->add_option("--height", synth_h);
  synth->add_option("--bit-depth", synth_depth);
  synth->add_option("--seed", synth_seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*run) {
      const etimd::RunConfig config = build_config(*run, o);
      const etimd::Report report = etimd::run_experiment(config);
      if (!o.out.empty()) {
        etimd::write_report(report, o.out, etimd::ReportFormat::Json);
      }
      if (!o.csv.empty()) {
        etimd::write_report(report, o.csv, etimd::ReportFormat::Csv);
      }
      print_summary(report);
    } else if (*compare) {
      const etimd::Delta d = etimd::compare_runs(etimd::load_report(report_a), etimd::load_report(report_b));
      const auto j = etimd::to_json(d);
      if (!delta_out.empty()) {
        std::ofstream out(delta_out);
        if (!out) {
          throw etimd::IoError("cannot write " + delta_out);
        }
        out << j.dump(2) << '\n';
      }
      auto summary = j;
      summary.erase("sad_delta");
      std::cout << summary.dump(2) << '\n';
    } else if (*synth) {
      etimd::save_pgm(etimd::make_fixture(fixture, synth_w, synth_h, synth_depth, synth_seed), synth_out);
    }
  } catch (const etimd::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const etimd::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const etimd::TruncatedInputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const etimd::FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
