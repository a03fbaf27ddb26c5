#include "etimd/synthetic.hpp"

#include <array>
#include <functional>
#include <map>
#include <random>

namespace etimd {

namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  int uniform(int n) { return static_cast<int>(engine_() % static_cast<std::uint64_t>(n)); }
  bool chance(int percent) { return uniform(100) < percent; }

 private:
  std::mt19937_64 engine_;
};

using Canvas = Samples<int>;  // 8-bit values

// Two-tone bitmap glyphs; 1 = ink.
struct Font {
  int w = 5;
  int h = 7;
  std::vector<Samples<std::uint8_t>> glyphs;

  Font(Rng& rng, int count, int gw, int gh) : w(gw), h(gh)
  {
    for (int i = 0; i < count; ++i) {
      Samples<std::uint8_t> g(gh, gw);
      for (int y = 0; y < gh; ++y) {
        for (int x = 0; x < gw; ++x) {
          g(y, x) = rng.chance(45) ? 1 : 0;
        }
      }
      glyphs.push_back(g);
    }
  }

  void draw(Canvas& c, int glyph, int x0, int y0, int ink, int background) const
  {
    const auto& g = glyphs[glyph];
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const int px = x0 + x;
        const int py = y0 + y;
        if (px >= 0 && py >= 0 && px < c.cols() && py < c.rows()) {
          c(py, px) = g(y, x) ? ink : background;
        }
      }
    }
  }
};

using Word = std::vector<int>;

std::vector<Word> make_vocabulary(Rng& rng, int words, int glyph_count)
{
  std::vector<Word> vocab;
  for (int i = 0; i < words; ++i) {
    Word word(3 + rng.uniform(4));
    for (int& g : word) {
      g = rng.uniform(glyph_count);
    }
    vocab.push_back(word);
  }
  return vocab;
}

Canvas text(int w, int h, Rng& rng)
{
  const Font font(rng, 16, 5, 7);
  const auto vocab = make_vocabulary(rng, 6, 16);
  Canvas c = Canvas::Constant(h, w, 230);
  constexpr int pitch = 6;
  constexpr int line = 9;
  for (int y = 1; y + font.h <= h; y += line) {
    int x = 1;
    while (x < w) {
      const Word& word = vocab[rng.uniform(static_cast<int>(vocab.size()))];
      for (int g : word) {
        font.draw(c, g, x, y, 30, 230);
        x += pitch;
      }
      x += pitch;  // space
    }
  }
  return c;
}

Canvas code(int w, int h, Rng& rng)
{
  const Font font(rng, 20, 5, 7);
  const auto vocab = make_vocabulary(rng, 8, 20);
  constexpr std::array<int, 3> token_ink = {40, 90, 150};
  // a handful of source lines, repeated with varying indentation
  struct Token {
    int word;
    int ink;
  };
  std::vector<std::vector<Token>> lines;
  for (int i = 0; i < 5; ++i) {
    std::vector<Token> tokens(2 + rng.uniform(4));
    for (Token& t : tokens) {
      t = {rng.uniform(static_cast<int>(vocab.size())), token_ink[rng.uniform(3)]};
    }
    lines.push_back(tokens);
  }
  Canvas c = Canvas::Constant(h, w, 245);
  constexpr int pitch = 6;
  for (int y = 1; y + font.h <= h; y += 9) {
    const auto& tokens = lines[rng.uniform(static_cast<int>(lines.size()))];
    int x = 1 + pitch * 2 * rng.uniform(3);
    while (x < w) {
      for (const Token& t : tokens) {
        for (int g : vocab[t.word]) {
          font.draw(c, g, x, y, t.ink, 245);
          x += pitch;
        }
        x += pitch;
      }
    }
  }
  return c;
}

Canvas ui(int w, int h, Rng& rng)
{
  Canvas c(h, w);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      c(y, x) = ((x + y) & 1) ? 200 : 214;  // dithered fill
    }
  }
  constexpr int icon = 16;
  std::vector<Canvas> icons;
  for (int i = 0; i < 3; ++i) {
    const std::array<int, 3> palette = {20 + rng.uniform(60), 90 + rng.uniform(60), 160 + rng.uniform(60)};
    Canvas ic(icon, icon);
    for (int y = 0; y < icon; ++y) {
      for (int x = 0; x < icon; ++x) {
        const bool border = x == 0 || y == 0 || x == icon - 1 || y == icon - 1;
        ic(y, x) = border ? 10 : palette[rng.uniform(3)];
      }
    }
    icons.push_back(ic);
  }
  for (int y = 2, row = 0; y + icon <= h; y += 20, ++row) {
    for (int x = 4, col = 0; x + icon <= w; x += 24, ++col) {
      c.block(y, x, icon, icon) = icons[(row + col) % icons.size()];
    }
  }
  return c;
}

Canvas table(int w, int h, Rng& rng)
{
  const Font digits(rng, 10, 5, 7);
  Canvas c = Canvas::Constant(h, w, 250);
  constexpr int cell_w = 36;
  constexpr int cell_h = 12;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (y % cell_h == 0 || x % cell_w == 0) {
        c(y, x) = 120;
      }
    }
  }
  const std::array<int, 4> number = {rng.uniform(10), rng.uniform(10), rng.uniform(10), rng.uniform(10)};
  for (int y = 0; y + cell_h <= h; y += cell_h) {
    for (int x = 0; x + cell_w <= w; x += cell_w) {
      // most cells repeat a common value, the rest get fresh digits
      const bool common = rng.chance(60);
      for (int d = 0; d < 4; ++d) {
        const int glyph = common ? number[d] : rng.uniform(10);
        digits.draw(c, glyph, x + 4 + d * 7, y + 3, 20, 250);
      }
    }
  }
  return c;
}

Canvas glyph_tile(int w, int h, Rng& rng)
{
  Canvas glyph(8, 8);
  for (int i = 0; i < glyph.size(); ++i) {
    glyph(i) = rng.uniform(256);
  }
  Canvas c(h, w);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      c(y, x) = glyph(y % 8, x % 8);
    }
  }
  return c;
}

Canvas noise(int w, int h, Rng& rng)
{
  Canvas c(h, w);
  for (int i = 0; i < c.size(); ++i) {
    c(i) = rng.uniform(256);
  }
  return c;
}

Canvas stripes(int w, int h, Rng& rng, bool horizontal)
{
  const int period = 2 + rng.uniform(5);
  const int lo = 20 + rng.uniform(60);
  const int hi = 160 + rng.uniform(80);
  Canvas c(h, w);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int t = horizontal ? y : x;
      c(y, x) = (t / period) % 2 ? hi : lo;
    }
  }
  return c;
}

using Generator = std::function<Canvas(int, int, Rng&)>;

const std::map<std::string, Generator, std::less<>>& generators()
{
  static const std::map<std::string, Generator, std::less<>> table_of_generators = {
      {"constant", [](int w, int h, Rng&) { return Canvas(Canvas::Constant(h, w, 128)); }},
      {"noise", noise},
      {"stripes-h", [](int w, int h, Rng& r) { return stripes(w, h, r, true); }},
      {"stripes-v", [](int w, int h, Rng& r) { return stripes(w, h, r, false); }},
      {"glyph-tile", glyph_tile},
      {"text", text},
      {"code", code},
      {"ui", ui},
      {"table", table},
  };
  return table_of_generators;
}

}  // namespace

const std::vector<std::string>& fixture_names()
{
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, gen] : generators()) {
      out.push_back(name);
    }
    return out;
  }();
  return names;
}

const std::vector<std::string>& screen_content_fixtures()
{
  static const std::vector<std::string> names = {"text", "code", "ui", "table", "glyph-tile"};
  return names;
}

Frame make_fixture(std::string_view name, int width, int height, int bit_depth, std::uint64_t seed)
{
  const auto it = generators().find(name);
  if (it == generators().end()) {
    throw ValidationError("unknown fixture '" + std::string(name) + "'");
  }
  if (width <= 0 || height <= 0 || (bit_depth != 8 && bit_depth != 10)) {
    throw ValidationError("fixture needs positive dimensions and bit depth 8 or 10");
  }
  Rng rng(seed);
  const Canvas canvas = it->second(width, height, rng);
  Frame frame(width, height, bit_depth);
  frame.samples = canvas * (1 << (bit_depth - 8));
  return frame;
}

}  // namespace etimd
