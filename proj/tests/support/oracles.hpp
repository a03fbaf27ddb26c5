#pragma once

// Reference implementations used by the tests. Each one is written independently of the
// library code it checks: plain loops, dense matrices and linear scans.

#include "etimd/cost.hpp"
#include "etimd/mode_derivation.hpp"
#include "etimd/types.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

namespace oracle {

using etimd::BlockVector;
using etimd::Cost;
using etimd::Pel;
using etimd::PelBlock;
using etimd::Rect;

/// Per-pixel availability from a committed block count, by brute force.
struct Availability {
  int width = 0;
  int height = 0;
  int block_size = 8;
  int committed = 0;

  [[nodiscard]] bool pixel(int x, int y) const
  {
    if (x < 0 || y < 0 || x >= width || y >= height) {
      return false;
    }
    const int per_row = (width + block_size - 1) / block_size;
    return (y / block_size) * per_row + x / block_size < committed;
  }

  [[nodiscard]] bool rect(const Rect& r) const
  {
    for (int y = r.y; y < r.y + r.h; ++y) {
      for (int x = r.x; x < r.x + r.w; ++x) {
        if (!pixel(x, y)) {
          return false;
        }
      }
    }
    return true;
  }
};

inline Cost naive_sad(const PelBlock& a, const PelBlock& b)
{
  Cost s = 0;
  for (Eigen::Index y = 0; y < a.rows(); ++y) {
    for (Eigen::Index x = 0; x < a.cols(); ++x) {
      s += std::abs(Cost{a(y, x)} - Cost{b(y, x)});
    }
  }
  return s;
}

/// Sylvester-ordered Hadamard matrix.
inline Eigen::MatrixXd sylvester(int n)
{
  Eigen::MatrixXd h(1, 1);
  h(0, 0) = 1.0;
  while (h.rows() < n) {
    const auto k = h.rows();
    Eigen::MatrixXd next(2 * k, 2 * k);
    next << h, h, h, -h;
    h = next;
  }
  return h;
}

inline Cost dense_tile(const Eigen::MatrixXd& d)
{
  const int n = static_cast<int>(d.rows());
  const Eigen::MatrixXd hm = sylvester(n);
  const Eigen::MatrixXd c = hm * d * hm.transpose();
  const auto s = static_cast<Cost>(std::llround(c.cwiseAbs().sum()));
  return n == 4 ? (s + 1) / 2 : (s + 2) / 4;
}

/// SATD through dense H * D * H^T per tile, with an explicit region worklist.
inline Cost dense_satd(const PelBlock& a, const PelBlock& b)
{
  const Eigen::MatrixXd diff = (a.cast<double>() - b.cast<double>()).matrix();
  struct Region {
    Eigen::Index r, c, h, w;
  };
  std::vector<Region> work{{0, 0, diff.rows(), diff.cols()}};
  Cost total = 0;
  while (!work.empty()) {
    const Region g = work.back();
    work.pop_back();
    if (g.h <= 0 || g.w <= 0) {
      continue;
    }
    if (g.h < 4 || g.w < 4) {
      total += static_cast<Cost>(std::llround(diff.block(g.r, g.c, g.h, g.w).cwiseAbs().sum()));
      continue;
    }
    const Eigen::Index n = (g.h >= 8 && g.w >= 8) ? 8 : 4;
    const Eigen::Index rows = g.h - g.h % n;
    const Eigen::Index cols = g.w - g.w % n;
    for (Eigen::Index y = 0; y < rows; y += n) {
      for (Eigen::Index x = 0; x < cols; x += n) {
        total += dense_tile(diff.block(g.r + y, g.c + x, n, n));
      }
    }
    work.push_back({g.r, g.c + cols, rows, g.w - cols});
    work.push_back({g.r + rows, g.c, g.h - rows, g.w});
  }
  return total;
}

inline Cost metric_cost(etimd::CostMetric m, const PelBlock& a, const PelBlock& b)
{
  return m == etimd::CostMetric::Sad ? naive_sad(a, b) : dense_satd(a, b);
}

struct TmpResult {
  BlockVector bv;
  Cost cost = 0;
};

/// Exhaustive template matching over the full window with pixel-level availability.
inline std::optional<TmpResult> exhaustive_tmp(const PelBlock& plane, const Availability& avail, int x0, int y0,
                                               int w, int h, int range, int t, etimd::CostMetric metric)
{
  const Rect left{x0 - t, y0, t, h};
  const bool has_left = avail.rect(left);
  const Rect above = has_left ? Rect{x0 - t, y0 - t, w + t, t} : Rect{x0, y0 - t, w, t};
  const bool has_above = avail.rect(above);
  if (!has_left && !has_above) {
    return std::nullopt;
  }
  auto grab = [&plane](const Rect& r) -> PelBlock { return plane.block(r.y, r.x, r.h, r.w); };

  std::optional<TmpResult> best;
  for (int dy = -range; dy <= range; ++dy) {
    for (int dx = -range; dx <= range; ++dx) {
      if (!avail.rect({x0 + dx, y0 + dy, w, h})) {
        continue;
      }
      const Rect la = left.shifted(dx, dy);
      const Rect aa = above.shifted(dx, dy);
      if ((has_left && !avail.rect(la)) || (has_above && !avail.rect(aa))) {
        continue;
      }
      Cost c = 0;
      if (has_left) {
        c += metric_cost(metric, grab(la), grab(left));
      }
      if (has_above) {
        c += metric_cost(metric, grab(aa), grab(above));
      }
      bool better = !best || c < best->cost;
      if (best && c == best->cost) {
        const int n_new = std::abs(dx) + std::abs(dy);
        const int n_old = std::abs(best->bv.dx) + std::abs(best->bv.dy);
        if (n_new != n_old) {
          better = n_new < n_old;
        } else if (dy != best->bv.dy) {
          better = dy < best->bv.dy;
        } else {
          better = dx < best->bv.dx;
        }
      }
      if (better) {
        best = TmpResult{{dx, dy}, c};
      }
    }
  }
  return best;
}

// Selection --------------------------------------------------------------------------------

inline int kind_order(etimd::CandidateKind k)
{
  switch (k) {
    case etimd::CandidateKind::Angular:
      return 0;
    case etimd::CandidateKind::Planar:
      return 1;
    case etimd::CandidateKind::Dc:
      return 2;
    default:
      return 3;
  }
}

inline bool comes_first(const etimd::ModeCandidate& a, const etimd::ModeCandidate& b)
{
  if (a.cost != b.cost) {
    return a.cost < b.cost;
  }
  if (kind_order(a.kind) != kind_order(b.kind)) {
    return kind_order(a.kind) < kind_order(b.kind);
  }
  return a.is_bv() ? a.list_index < b.list_index : a.mode < b.mode;
}

/// Index of the minimum candidate accepted by `keep`, or -1.
template <typename Pred>
int argmin(const std::vector<etimd::ModeCandidate>& c, const std::vector<bool>& taken, Pred keep)
{
  int best = -1;
  for (int i = 0; i < static_cast<int>(c.size()); ++i) {
    if (taken[i] || !keep(c[i])) {
      continue;
    }
    if (best < 0 || comes_first(c[i], c[best])) {
      best = i;
    }
  }
  return best;
}

struct Selection {
  std::vector<etimd::ModeCandidate> modes;
  std::vector<double> weights;
};

inline std::vector<double> closed_form_weights(const std::vector<Cost>& l)
{
  if (l.size() == 1) {
    return {1.0};
  }
  double sum = 0.0;
  for (Cost c : l) {
    sum += static_cast<double>(c);
  }
  if (sum == 0.0) {
    return std::vector<double>(l.size(), 1.0 / static_cast<double>(l.size()));
  }
  if (l.size() == 2) {
    return {double(l[1]) / sum, double(l[0]) / sum};
  }
  std::vector<double> w;
  for (Cost c : l) {
    w.push_back((sum - double(c)) / (2.0 * sum));
  }
  return w;
}

/// Primary by linear scan; secondary when L2 < 1.5 L1; then the cheapest non-angular leftover.
inline Selection etimd_select(const std::vector<etimd::ModeCandidate>& c)
{
  std::vector<bool> taken(c.size(), false);
  auto any = [](const etimd::ModeCandidate&) { return true; };
  Selection s;
  const int first = argmin(c, taken, any);
  taken[first] = true;
  s.modes.push_back(c[first]);
  const int second = argmin(c, taken, any);
  if (second >= 0 && static_cast<double>(c[second].cost) < 1.5 * static_cast<double>(c[first].cost)) {
    taken[second] = true;
    s.modes.push_back(c[second]);
    const int third = argmin(c, taken, [](const etimd::ModeCandidate& m) { return m.kind != etimd::CandidateKind::Angular; });
    if (third >= 0) {
      s.modes.push_back(c[third]);
    }
  }
  // order the chosen set by insertion into an empty list
  std::vector<etimd::ModeCandidate> sorted;
  for (const auto& m : s.modes) {
    auto pos = sorted.begin();
    while (pos != sorted.end() && comes_first(*pos, m)) {
      ++pos;
    }
    sorted.insert(pos, m);
  }
  s.modes = sorted;
  std::vector<Cost> losses;
  for (const auto& m : s.modes) {
    losses.push_back(m.cost);
  }
  s.weights = closed_form_weights(losses);
  return s;
}

// Orientation ------------------------------------------------------------------------------

/// Direction of angular mode m (y up) from its displacement vector, in [0, 2 pi).
inline double displacement_direction(int mode, int angle)
{
  const double a = static_cast<double>(angle);
  double d = mode >= 34 ? std::atan2(32.0, a) : std::atan2(-a, -32.0);
  if (d < 0) {
    d += 2 * std::numbers::pi;
  }
  return d;
}

/// Nearest mode by scanning all 65 angular modes; strict improvement keeps the lower index on ties.
inline std::optional<int> nearest_mode(int g_hor, int g_ver)
{
  if (g_hor == 0 && g_ver == 0) {
    return std::nullopt;
  }
  // edge line through the gradient rotated by 90 degrees, as an angle in [pi/4, 5pi/4)
  double theta = std::atan2(static_cast<double>(g_hor), static_cast<double>(g_ver));
  while (theta < std::numbers::pi / 4) {
    theta += std::numbers::pi;
  }
  while (theta >= 5 * std::numbers::pi / 4) {
    theta -= std::numbers::pi;
  }
  int best = -1;
  double best_err = 0.0;
  for (int m = 2; m <= 66; ++m) {
    const double err = std::abs(displacement_direction(m, etimd::intra_pred_angle(m)) - theta);
    if (best < 0 || err < best_err - 1e-12) {
      best = m;
      best_err = err;
    }
  }
  return best;
}

/// 3x3 Sobel by explicit kernel correlation.
inline std::pair<int, int> dense_sobel(const PelBlock& s, int x, int y)
{
  static const int kx[3][3] = {{-1, 0, 1}, {-2, 0, 2}, {-1, 0, 1}};
  static const int ky[3][3] = {{-1, -2, -1}, {0, 0, 0}, {1, 2, 1}};
  int gx = 0;
  int gy = 0;
  for (int j = 0; j < 3; ++j) {
    for (int i = 0; i < 3; ++i) {
      gx += kx[j][i] * s(y + j - 1, x + i - 1);
      gy += ky[j][i] * s(y + j - 1, x + i - 1);
    }
  }
  return {gx, gy};
}

// Fixtures ---------------------------------------------------------------------------------

inline PelBlock random_block(std::mt19937_64& rng, int h, int w, int lo, int hi)
{
  std::uniform_int_distribution<int> d(lo, hi);
  PelBlock b(h, w);
  for (Eigen::Index i = 0; i < b.size(); ++i) {
    b(i) = d(rng);
  }
  return b;
}

}  // namespace oracle
