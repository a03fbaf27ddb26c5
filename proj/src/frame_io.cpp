#include "etimd/frame_io.hpp"

#include <cctype>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

namespace etimd {

namespace {

std::vector<unsigned char> read_all(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void check_depth(int bit_depth)
{
  if (bit_depth != 8 && bit_depth != 10) {
    throw ValidationError("bit depth must be 8 or 10, got " + std::to_string(bit_depth));
  }
}

// Minimal netpbm header tokenizer: whitespace separated integers, '#' comments.
class PgmHeader {
 public:
  explicit PgmHeader(const std::vector<unsigned char>& bytes) : bytes_(bytes) {}

  int next_int()
  {
    skip_space();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
      throw FormatError("malformed PGM header");
    }
    long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_++] - '0');
      if (value > (1L << 20)) {
        throw FormatError("PGM header value out of range");
      }
    }
    return static_cast<int>(value);
  }

  // Exactly one whitespace byte separates maxval from the raster.
  std::size_t raster_offset()
  {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw FormatError("malformed PGM header");
    }
    return pos_ + 1;
  }

 private:
  void skip_space()
  {
    while (pos_ < bytes_.size()) {
      if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') {
          ++pos_;
        }
      } else if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  const std::vector<unsigned char>& bytes_;
  std::size_t pos_ = 2;
};

Frame load_pgm(const std::filesystem::path& path, int width, int height, int bit_depth)
{
  const auto bytes = read_all(path);
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
    throw FormatError(path.string() + " is not a binary PGM (P5)");
  }
  PgmHeader header(bytes);
  const int w = header.next_int();
  const int h = header.next_int();
  const int maxval = header.next_int();
  const std::size_t offset = header.raster_offset();
  if (w <= 0 || h <= 0 || maxval <= 0 || maxval > 65535) {
    throw FormatError("unsupported PGM geometry or maxval");
  }
  if ((width != 0 && width != w) || (height != 0 && height != h)) {
    throw ValidationError("PGM is " + std::to_string(w) + "x" + std::to_string(h) + ", expected " +
                          std::to_string(width) + "x" + std::to_string(height));
  }
  const std::size_t bytes_per_sample = maxval > 255 ? 2 : 1;
  const std::size_t needed = offset + std::size_t(w) * std::size_t(h) * bytes_per_sample;
  if (bytes.size() < needed) {
    throw TruncatedInputError(path.string() + ": raster shorter than header promises");
  }

  Frame frame(w, h, bit_depth);
  const Pel mask = max_sample(bit_depth);
  const unsigned char* raster = bytes.data() + offset;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t i = std::size_t(y) * w + x;
      Pel v = bytes_per_sample == 1 ? raster[i] : Pel(raster[2 * i] << 8 | raster[2 * i + 1]);
      frame.samples(y, x) = v & mask;
    }
  }
  return frame;
}

Frame load_yuv(const std::filesystem::path& path, int width, int height, int bit_depth, int frame_index)
{
  if (width <= 0 || height <= 0 || frame_index < 0) {
    throw ValidationError("YUV input needs positive dimensions and a non-negative frame index");
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  const std::uintmax_t frame_bytes = yuv420_frame_bytes(width, height, bit_depth);
  const std::uintmax_t size = std::filesystem::file_size(path);
  if (size < (std::uintmax_t(frame_index) + 1) * frame_bytes) {
    throw TruncatedInputError(path.string() + ": frame " + std::to_string(frame_index) + " past end of file");
  }

  const int bytes_per_sample = bit_depth > 8 ? 2 : 1;
  std::vector<unsigned char> luma(std::size_t(width) * height * bytes_per_sample);
  in.seekg(static_cast<std::streamoff>(std::uintmax_t(frame_index) * frame_bytes));
  in.read(reinterpret_cast<char*>(luma.data()), static_cast<std::streamsize>(luma.size()));
  if (!in) {
    throw TruncatedInputError(path.string() + ": short read");
  }

  Frame frame(width, height, bit_depth);
  const Pel mask = max_sample(bit_depth);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const std::size_t i = std::size_t(y) * width + x;
      // little-endian 16-bit container for high bit depths
      Pel v = bytes_per_sample == 1 ? luma[i] : Pel(luma[2 * i] | luma[2 * i + 1] << 8);
      frame.samples(y, x) = v & mask;
    }
  }
  return frame;
}

}  // namespace

FrameFormat parse_frame_format(std::string_view tag)
{
  if (tag == "yuv" || tag == "yuv-planar" || tag == "yuv420") {
    return FrameFormat::YuvPlanar;
  }
  if (tag == "pgm") {
    return FrameFormat::Pgm;
  }
  throw FormatError("unsupported frame format '" + std::string(tag) + "'");
}

std::string_view to_string(FrameFormat format)
{
  return format == FrameFormat::Pgm ? "pgm" : "yuv";
}

std::uintmax_t yuv420_frame_bytes(int width, int height, int bit_depth)
{
  const std::uintmax_t luma = std::uintmax_t(width) * height;
  const std::uintmax_t chroma = 2 * (std::uintmax_t(width + 1) / 2) * ((height + 1) / 2);
  return (luma + chroma) * (bit_depth > 8 ? 2 : 1);
}

Frame load_frame(const std::filesystem::path& path, FrameFormat format, int width, int height, int bit_depth,
                 int frame_index)
{
  check_depth(bit_depth);
  if (!std::filesystem::exists(path)) {
    throw IoError(path.string() + " does not exist");
  }
  switch (format) {
    case FrameFormat::Pgm:
      if (frame_index != 0) {
        throw ValidationError("PGM input holds a single frame");
      }
      return load_pgm(path, width, height, bit_depth);
    case FrameFormat::YuvPlanar:
      return load_yuv(path, width, height, bit_depth, frame_index);
  }
  throw FormatError("unsupported frame format");
}

void save_pgm(const Frame& frame, const std::filesystem::path& path)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot write " + path.string());
  }
  const int maxval = frame.max_value();
  out << "P5\n" << frame.width << ' ' << frame.height << '\n' << maxval << '\n';
  std::vector<unsigned char> raster;
  raster.reserve(std::size_t(frame.width) * frame.height * (maxval > 255 ? 2 : 1));
  for (int y = 0; y < frame.height; ++y) {
    for (int x = 0; x < frame.width; ++x) {
      const Pel v = frame.samples(y, x);
      if (maxval > 255) {
        raster.push_back(static_cast<unsigned char>(v >> 8));
      }
      raster.push_back(static_cast<unsigned char>(v & 0xff));
    }
  }
  out.write(reinterpret_cast<const char*>(raster.data()), static_cast<std::streamsize>(raster.size()));
  if (!out) {
    throw IoError("short write to " + path.string());
  }
}

}  // namespace etimd
