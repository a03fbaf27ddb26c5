#include "etimd/intra_pred.hpp"

#include <algorithm>
#include <cstdlib>

namespace etimd {

namespace {

constexpr std::array<int, 65> kIntraPredAngle = {
    32,  29,  26,  23,  21,  19,  17,  15,  13,  11,  9,   7,   5,   3,   2,   1,   0,    // 2..18
    -1,  -2,  -3,  -5,  -7,  -9,  -11, -13, -15, -17, -19, -21, -23, -26, -29, -32,    // 19..34
    -29, -26, -23, -21, -19, -17, -15, -13, -11, -9,  -7,  -5,  -3,  -2,  -1,  0,      // 35..50
    1,   2,   3,   5,   7,   9,   11,  13,  15,  17,  19,  21,  23,  26,  29,  32};    // 51..66

}  // namespace

std::string to_string(IntraMode mode)
{
  switch (mode.index) {
    case IntraMode::kPlanar:
      return "PLANAR";
    case IntraMode::kDc:
      return "DC";
    default:
      return "A" + std::to_string(mode.index);
  }
}

int intra_pred_angle(int mode)
{
  if (mode < IntraMode::kFirstAngular || mode > IntraMode::kLastAngular) {
    throw ValidationError("mode " + std::to_string(mode) + " is not angular");
  }
  return kIntraPredAngle[mode - IntraMode::kFirstAngular];
}

RefSamples build_reference_samples(const ReconBuffer& buf, const Rect& block)
{
  RefSamples refs;
  refs.w = block.w;
  refs.h = block.h;
  refs.bit_depth = buf.bit_depth();

  // Walk order: left column bottom-up, corner, then the above row left to right.
  const int num_left = 2 * block.h;
  const int num_above = 2 * block.w;
  const int total = num_left + 1 + num_above;
  std::vector<Pel> line(total, Pel{1} << (buf.bit_depth() - 1));
  std::vector<bool> avail(total, false);

  auto position = [&](int i) -> std::pair<int, int> {
    if (i < num_left) {
      return {block.x - 1, block.y + num_left - 1 - i};
    }
    if (i == num_left) {
      return {block.x - 1, block.y - 1};
    }
    return {block.x + (i - num_left - 1), block.y - 1};
  };

  int first_available = -1;
  for (int i = 0; i < total; ++i) {
    const auto [x, y] = position(i);
    if (buf.is_available(x, y)) {
      avail[i] = true;
      line[i] = buf.sample(x, y);
      if (first_available < 0) {
        first_available = i;
      }
      if (i < num_left) {
        refs.left_available = true;
      } else {
        refs.above_available = true;
      }
    }
  }

  if (first_available >= 0) {
    for (int i = 0; i < first_available; ++i) {
      line[i] = line[first_available];
    }
    for (int i = first_available + 1; i < total; ++i) {
      if (!avail[i]) {
        line[i] = line[i - 1];
      }
    }
  }

  refs.left.resize(num_left);
  for (int j = 0; j < num_left; ++j) {
    refs.left[j] = line[num_left - 1 - j];
  }
  refs.above.assign(line.begin() + num_left, line.end());
  return refs;
}

PelBlock predict_angular(const RefSamples& refs, IntraMode mode, int w, int h)
{
  if (!mode.is_angular()) {
    throw ValidationError("predict_angular called with non-angular mode " + to_string(mode));
  }
  const int angle = intra_pred_angle(mode.index);
  const bool vertical = mode.index >= IntraMode::kDiagonal;

  // Predict in a frame where the main reference is the row above; horizontal modes are transposed.
  const int main_w = vertical ? w : h;
  const int main_h = vertical ? h : w;
  std::vector<Pel> main_ref(1 + 2 * main_w);
  std::vector<Pel> side_ref(1 + 2 * main_h);
  if (vertical) {
    std::copy(refs.above.begin(), refs.above.end(), main_ref.begin());
    side_ref[0] = refs.above[0];
    std::copy(refs.left.begin(), refs.left.end(), side_ref.begin() + 1);
  } else {
    main_ref[0] = refs.above[0];
    std::copy(refs.left.begin(), refs.left.end(), main_ref.begin() + 1);
    std::copy(refs.above.begin(), refs.above.end(), side_ref.begin());
  }

  // Indices below zero project onto the side reference.
  const int neg_extent = angle < 0 ? -((main_h * angle) >> 5) + 1 : 0;
  std::vector<Pel> ext(neg_extent);
  if (angle < 0) {
    const int inv_angle = (16384 + std::abs(angle) / 2) / std::abs(angle);
    for (int k = 1; k <= neg_extent; ++k) {
      const int side = std::min((k * inv_angle + 256) >> 9, static_cast<int>(side_ref.size()) - 1);
      ext[k - 1] = side_ref[side];
    }
  }
  auto ref = [&](int i) -> Pel {
    if (i < 0) {
      return ext[std::min(-i, neg_extent) - 1];
    }
    return main_ref[std::min(i, static_cast<int>(main_ref.size()) - 1)];
  };

  PelBlock pred(h, w);
  for (int y = 0; y < main_h; ++y) {
    const int offset = (y + 1) * angle;
    const int idx = offset >> 5;
    const int fact = offset & 31;
    for (int x = 0; x < main_w; ++x) {
      Pel v = ref(x + idx + 1);
      if (fact != 0) {
        v = ((32 - fact) * v + fact * ref(x + idx + 2) + 16) >> 5;
      }
      if (vertical) {
        pred(y, x) = v;
      } else {
        pred(x, y) = v;
      }
    }
  }
  return pred.cwiseMax(0).cwiseMin(max_sample(refs.bit_depth));
}

PelBlock predict_planar(const RefSamples& refs, int w, int h)
{
  const Pel top_right = refs.above[1 + w];
  const Pel bottom_left = refs.left[h];
  const std::int64_t denom = 2LL * w * h;
  PelBlock pred(h, w);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::int64_t ver = std::int64_t(h - 1 - y) * refs.above[1 + x] + std::int64_t(y + 1) * bottom_left;
      const std::int64_t hor = std::int64_t(w - 1 - x) * refs.left[y] + std::int64_t(x + 1) * top_right;
      pred(y, x) = static_cast<Pel>((ver * w + hor * h + std::int64_t(w) * h) / denom);
    }
  }
  return pred;
}

PelBlock predict_dc(const RefSamples& refs, int w, int h)
{
  std::int64_t sum = 0;
  for (int x = 0; x < w; ++x) {
    sum += refs.above[1 + x];
  }
  for (int y = 0; y < h; ++y) {
    sum += refs.left[y];
  }
  const int count = w + h;
  return PelBlock::Constant(h, w, static_cast<Pel>((sum + count / 2) / count));
}

PelBlock predict_intra(const RefSamples& refs, IntraMode mode, int w, int h)
{
  switch (mode.index) {
    case IntraMode::kPlanar:
      return predict_planar(refs, w, h);
    case IntraMode::kDc:
      return predict_dc(refs, w, h);
    default:
      return predict_angular(refs, mode, w, h);
  }
}

}  // namespace etimd
