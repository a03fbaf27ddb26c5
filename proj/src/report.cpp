#include "etimd/report.hpp"

#include "etimd/block_grid.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

namespace etimd {

namespace {

using ojson = nlohmann::ordered_json;

std::string format_double(double v)
{
  if (std::isinf(v)) {
    return v > 0 ? "inf" : "-inf";
  }
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

ojson double_or_inf(double v)
{
  return std::isinf(v) ? ojson(format_double(v)) : ojson(v);
}

double read_double(const nlohmann::json& j)
{
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") {
      return std::numeric_limits<double>::infinity();
    }
    if (s == "-inf") {
      return -std::numeric_limits<double>::infinity();
    }
    throw FormatError("unexpected numeric string '" + s + "'");
  }
  return j.get<double>();
}

template <typename T, typename F>
std::string join(const std::vector<T>& items, F&& fmt)
{
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i != 0) {
      out += ';';
    }
    out += fmt(items[i]);
  }
  return out;
}

void require(bool ok, const std::string& field)
{
  if (!ok) {
    throw ValidationError("invalid configuration field: " + field);
  }
}

template <typename T>
T get_or(const nlohmann::json& j, const char* key, T fallback)
{
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

}  // namespace

void validate(const RunConfig& c)
{
  require(c.input.format == "yuv" || c.input.format == "pgm" || c.input.format == "synthetic", "input.format");
  require(!c.input.path.empty(), "input.path");
  // pgm carries its own dimensions
  require(c.input.format == "pgm" ? c.input.width >= 0 && c.input.height >= 0 : c.input.width > 0 && c.input.height > 0,
          "input.width/height");
  require(c.input.bit_depth == 8 || c.input.bit_depth == 10, "input.bit_depth");
  require(c.input.frame_start >= 0, "input.frame_start");
  require(c.input.frame_count >= 1, "input.frame_count");
  require(c.input.format == "yuv" || c.input.frame_count == 1, "input.frame_count");
  require(is_valid_block_size(c.block_size), "block_size");
  require(c.encoder.closed_loop_step >= 0, "closed_loop_step");
  require(c.encoder.search_range >= 0, "search_range");
  require(c.encoder.template_size >= 1 && c.encoder.template_size <= 64, "template_size");
  require(c.encoder.max_bv_candidates >= 0, "max_bv_candidates");
  require(c.encoder.intratmp_stride >= 0, "intratmp_stride");
  require(c.threads >= 1, "threads");
}

ojson to_json(const RunConfig& c)
{
  const EncoderConfig& e = c.encoder;
  ojson j;
  j["input"] = {{"path", c.input.path},
                {"format", c.input.format},
                {"width", c.input.width},
                {"height", c.input.height},
                {"bit_depth", c.input.bit_depth},
                {"frame_start", c.input.frame_start},
                {"frame_count", c.input.frame_count}};
  j["block_size"] = c.block_size;
  j["tool"] = std::string(to_string(e.tool));
  j["bv_list"] = e.bv_list;
  j["ar_bv"] = e.ar_bv;
  j["hog_transform"] = e.hog_transform;
  j["hog_weighting"] = e.hog_weighting == HogWeighting::Count ? "count" : "magnitude";
  j["closed_loop_step"] = e.closed_loop_step;
  j["metric"] = std::string(to_string(e.metric));
  j["search_range"] = e.search_range;
  j["full_causal_search"] = e.full_causal_search;
  j["template_size"] = e.template_size;
  j["max_bv_candidates"] = e.max_bv_candidates;
  j["intratmp_stride"] = e.intratmp_stride;
  j["seed"] = c.seed;
  j["threads"] = c.threads;
  return j;
}

RunConfig run_config_from_json(const nlohmann::json& j)
{
  try {
    RunConfig c;
    const auto& in = j.at("input");
    c.input.path = in.at("path").get<std::string>();
    c.input.format = get_or<std::string>(in, "format", c.input.format);
    c.input.width = get_or(in, "width", c.input.width);
    c.input.height = get_or(in, "height", c.input.height);
    c.input.bit_depth = get_or(in, "bit_depth", c.input.bit_depth);
    c.input.frame_start = get_or(in, "frame_start", c.input.frame_start);
    c.input.frame_count = get_or(in, "frame_count", c.input.frame_count);
    c.block_size = get_or(j, "block_size", c.block_size);
    EncoderConfig& e = c.encoder;
    e.tool = parse_tool_set(get_or<std::string>(j, "tool", std::string(to_string(e.tool))));
    e.bv_list = get_or(j, "bv_list", e.bv_list);
    e.ar_bv = get_or(j, "ar_bv", e.ar_bv);
    e.hog_transform = get_or(j, "hog_transform", e.hog_transform);
    const auto weighting = get_or<std::string>(j, "hog_weighting", "count");
    require(weighting == "count" || weighting == "magnitude", "hog_weighting");
    e.hog_weighting = weighting == "count" ? HogWeighting::Count : HogWeighting::Magnitude;
    e.closed_loop_step = get_or(j, "closed_loop_step", e.closed_loop_step);
    e.metric = parse_cost_metric(get_or<std::string>(j, "metric", std::string(to_string(e.metric))));
    e.search_range = get_or(j, "search_range", e.search_range);
    e.full_causal_search = get_or(j, "full_causal_search", e.full_causal_search);
    e.template_size = get_or(j, "template_size", e.template_size);
    e.max_bv_candidates = get_or(j, "max_bv_candidates", e.max_bv_candidates);
    e.intratmp_stride = get_or(j, "intratmp_stride", e.intratmp_stride);
    c.seed = get_or<std::uint64_t>(j, "seed", c.seed);
    c.threads = get_or(j, "threads", c.threads);
    return c;
  } catch (const nlohmann::json::exception& ex) {
    throw ValidationError(std::string("configuration: ") + ex.what());
  }
}

BlockRecord to_record(int frame, const BlockResult& r)
{
  BlockRecord rec;
  rec.frame = frame;
  rec.index = r.block.scan_index;
  rec.x = r.block.x0;
  rec.y = r.block.y0;
  rec.w = r.block.w;
  rec.h = r.block.h;
  rec.tool = std::string(to_string(r.tool));
  for (std::size_t i = 0; i < r.fusion.modes.size(); ++i) {
    rec.modes.push_back(r.fusion.modes[i].label());
    rec.costs.push_back(r.fusion.modes[i].cost);
    rec.weights.push_back(r.fusion.weights[i]);
  }
  for (IntraMode m : r.transform_modes) {
    rec.transform_modes.push_back(to_string(m));
  }
  rec.transform_class = std::string(to_string(r.transform_class));
  rec.hog_substitutions = r.hog_substitutions;
  rec.compaction = r.compaction;
  rec.pred_sad = r.pred_sad;
  rec.pred_satd = r.pred_satd;
  rec.pred_sse = r.pred_sse;
  rec.bv_list_size = r.bv_list_size;
  rec.bv_primary = r.bv_primary;
  rec.bv_relocated = r.bv_relocated;
  return rec;
}

Aggregates compute_aggregates(const std::vector<BlockRecord>& blocks, int bit_depth)
{
  Aggregates a;
  a.block_count = static_cast<int>(blocks.size());
  if (blocks.empty()) {
    a.psnr = std::numeric_limits<double>::infinity();
    return a;
  }
  double cost = 0.0;
  double sad_sum = 0.0;
  double satd_sum = 0.0;
  double sse = 0.0;
  double pixels = 0.0;
  double compaction = 0.0;
  int compaction_n = 0;
  int etimd_blocks = 0;
  int etimd_with_bv = 0;
  for (const BlockRecord& b : blocks) {
    cost += b.costs.empty() ? 0.0 : static_cast<double>(b.costs.front());
    sad_sum += static_cast<double>(b.pred_sad);
    satd_sum += static_cast<double>(b.pred_satd);
    sse += static_cast<double>(b.pred_sse);
    pixels += static_cast<double>(b.w) * b.h;
    if (b.compaction) {
      compaction += *b.compaction;
      ++compaction_n;
    }
    ++a.tool_usage[b.tool];
    bool has_bv = false;
    for (const std::string& m : b.modes) {
      const bool bv = m.rfind("BV", 0) == 0;
      has_bv = has_bv || bv;
      ++a.mode_usage[bv ? "BV" : m];
    }
    if (b.tool == "etimd") {
      ++etimd_blocks;
      etimd_with_bv += has_bv ? 1 : 0;
    }
  }
  const double n = static_cast<double>(blocks.size());
  a.mean_template_cost = cost / n;
  a.mean_pred_sad = sad_sum / n;
  a.mean_pred_satd = satd_sum / n;
  const double scale = std::ldexp(1.0, bit_depth - 8);
  const double mse8 = sse / pixels / (scale * scale);
  a.psnr = mse8 == 0.0 ? std::numeric_limits<double>::infinity() : 10.0 * std::log10(255.0 * 255.0 / mse8);
  if (compaction_n > 0) {
    a.mean_compaction = compaction / compaction_n;
  }
  a.bv_replacement_rate = etimd_blocks == 0 ? 0.0 : static_cast<double>(etimd_with_bv) / etimd_blocks;
  return a;
}

ojson to_json(const Report& r)
{
  ojson j;
  j["schema"] = kReportSchema;
  j["config"] = to_json(r.config);
  ojson blocks = ojson::array();
  for (const BlockRecord& b : r.blocks) {
    ojson o;
    o["frame"] = b.frame;
    o["index"] = b.index;
    o["x"] = b.x;
    o["y"] = b.y;
    o["w"] = b.w;
    o["h"] = b.h;
    o["tool"] = b.tool;
    o["modes"] = b.modes;
    o["weights"] = b.weights;
    o["costs"] = b.costs;
    o["transform_modes"] = b.transform_modes;
    o["transform_class"] = b.transform_class;
    o["hog_substitutions"] = b.hog_substitutions;
    o["compaction"] = b.compaction ? ojson(*b.compaction) : ojson(nullptr);
    o["pred_sad"] = b.pred_sad;
    o["pred_satd"] = b.pred_satd;
    o["pred_sse"] = b.pred_sse;
    o["bv_list_size"] = b.bv_list_size;
    o["bv_primary"] = b.bv_primary;
    o["bv_relocated"] = b.bv_relocated;
    blocks.push_back(std::move(o));
  }
  j["blocks"] = std::move(blocks);
  const Aggregates& a = r.aggregates;
  j["aggregates"] = {{"block_count", a.block_count},
                     {"mean_template_cost", a.mean_template_cost},
                     {"mean_pred_sad", a.mean_pred_sad},
                     {"mean_pred_satd", a.mean_pred_satd},
                     {"psnr", double_or_inf(a.psnr)},
                     {"mean_compaction", a.mean_compaction ? ojson(*a.mean_compaction) : ojson(nullptr)},
                     {"bv_replacement_rate", a.bv_replacement_rate},
                     {"tool_usage", a.tool_usage},
                     {"mode_usage", a.mode_usage}};
  j["timing"] = {{"encode_seconds", r.timing.encode_seconds}, {"decode_seconds", r.timing.decode_seconds}};
  return j;
}

Report report_from_json(const nlohmann::json& j)
{
  try {
    if (j.at("schema").get<int>() != kReportSchema) {
      throw FormatError("unsupported report schema");
    }
    Report r;
    r.config = run_config_from_json(j.at("config"));
    for (const auto& o : j.at("blocks")) {
      BlockRecord b;
      b.frame = o.at("frame").get<int>();
      b.index = o.at("index").get<int>();
      b.x = o.at("x").get<int>();
      b.y = o.at("y").get<int>();
      b.w = o.at("w").get<int>();
      b.h = o.at("h").get<int>();
      b.tool = o.at("tool").get<std::string>();
      b.modes = o.at("modes").get<std::vector<std::string>>();
      b.weights = o.at("weights").get<std::vector<double>>();
      b.costs = o.at("costs").get<std::vector<Cost>>();
      b.transform_modes = o.at("transform_modes").get<std::vector<std::string>>();
      b.transform_class = o.at("transform_class").get<std::string>();
      b.hog_substitutions = o.at("hog_substitutions").get<int>();
      if (!o.at("compaction").is_null()) {
        b.compaction = o.at("compaction").get<double>();
      }
      b.pred_sad = o.at("pred_sad").get<Cost>();
      b.pred_satd = o.at("pred_satd").get<Cost>();
      b.pred_sse = o.at("pred_sse").get<std::int64_t>();
      b.bv_list_size = o.at("bv_list_size").get<int>();
      b.bv_primary = o.at("bv_primary").get<int>();
      b.bv_relocated = o.at("bv_relocated").get<int>();
      r.blocks.push_back(std::move(b));
    }
    const auto& a = j.at("aggregates");
    r.aggregates.block_count = a.at("block_count").get<int>();
    r.aggregates.mean_template_cost = a.at("mean_template_cost").get<double>();
    r.aggregates.mean_pred_sad = a.at("mean_pred_sad").get<double>();
    r.aggregates.mean_pred_satd = a.at("mean_pred_satd").get<double>();
    r.aggregates.psnr = read_double(a.at("psnr"));
    if (!a.at("mean_compaction").is_null()) {
      r.aggregates.mean_compaction = a.at("mean_compaction").get<double>();
    }
    r.aggregates.bv_replacement_rate = a.at("bv_replacement_rate").get<double>();
    r.aggregates.tool_usage = a.at("tool_usage").get<std::map<std::string, int>>();
    r.aggregates.mode_usage = a.at("mode_usage").get<std::map<std::string, int>>();
    r.timing.encode_seconds = j.at("timing").at("encode_seconds").get<double>();
    r.timing.decode_seconds = j.at("timing").at("decode_seconds").get<double>();
    return r;
  } catch (const nlohmann::json::exception& ex) {
    throw FormatError(std::string("malformed report: ") + ex.what());
  }
}

Report load_report(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& ex) {
    throw FormatError(path.string() + ": " + ex.what());
  }
  return report_from_json(j);
}

std::string report_csv(const Report& report)
{
  std::ostringstream out;
  out << "frame,index,x,y,w,h,tool,modes,weights,costs,transform_modes,transform_class,hog_substitutions,"
         "compaction,pred_sad,pred_satd,pred_sse,bv_list_size,bv_primary,bv_relocated\n";
  for (const BlockRecord& b : report.blocks) {
    out << b.frame << ',' << b.index << ',' << b.x << ',' << b.y << ',' << b.w << ',' << b.h << ',' << b.tool << ','
        << '"' << join(b.modes, [](const std::string& s) { return s; }) << "\","  // BV labels hold commas
        << join(b.weights, [](double v) { return format_double(v); }) << ','
        << join(b.costs, [](Cost c) { return std::to_string(c); }) << ','
        << join(b.transform_modes, [](const std::string& s) { return s; }) << ',' << b.transform_class << ','
        << b.hog_substitutions << ',' << (b.compaction ? format_double(*b.compaction) : std::string()) << ','
        << b.pred_sad << ',' << b.pred_satd << ',' << b.pred_sse << ',' << b.bv_list_size << ',' << b.bv_primary
        << ',' << b.bv_relocated << '\n';
  }
  return out.str();
}

void write_report(const Report& report, const std::filesystem::path& path, ReportFormat format)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot write " + path.string());
  }
  if (format == ReportFormat::Json) {
    out << to_json(report).dump(2) << '\n';
  } else {
    out << report_csv(report);
  }
  if (!out) {
    throw IoError("short write to " + path.string());
  }
}

}  // namespace etimd
