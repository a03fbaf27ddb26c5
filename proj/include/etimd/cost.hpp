#pragma once

/** \file     cost.hpp
    \brief    SAD / Hadamard SATD distortion kernels over Eigen array expressions
*/

#include "etimd/types.hpp"

#include <array>
#include <cstdlib>
#include <string_view>

namespace etimd {

enum class CostMetric { Sad, Satd };

CostMetric parse_cost_metric(std::string_view tag);
std::string_view to_string(CostMetric metric);

namespace detail {

template <typename DA, typename DB>
void check_same_shape(const Eigen::ArrayBase<DA>& a, const Eigen::ArrayBase<DB>& b)
{
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeMismatchError("cost operands differ in shape");
  }
}

// In-place unnormalized Walsh-Hadamard butterflies over n (4 or 8) values with stride.
template <int N>
inline void hadamard_1d(Cost* v, int stride)
{
  for (int len = 1; len < N; len <<= 1) {
    for (int i = 0; i < N; i += len << 1) {
      for (int j = i; j < i + len; ++j) {
        const Cost a = v[j * stride];
        const Cost b = v[(j + len) * stride];
        v[j * stride] = a + b;
        v[(j + len) * stride] = a - b;
      }
    }
  }
}

template <int N, typename Derived>
Cost hadamard_tile(const Eigen::ArrayBase<Derived>& diff, Eigen::Index row, Eigen::Index col)
{
  std::array<Cost, N * N> t;
  for (int y = 0; y < N; ++y) {
    for (int x = 0; x < N; ++x) {
      t[y * N + x] = diff(row + y, col + x);
    }
  }
  for (int y = 0; y < N; ++y) {
    hadamard_1d<N>(t.data() + y * N, 1);
  }
  for (int x = 0; x < N; ++x) {
    hadamard_1d<N>(t.data() + x, N);
  }
  Cost sum = 0;
  for (Cost c : t) {
    sum += std::abs(c);
  }
  // 4x4: (sum+1)>>1, 8x8: (sum+2)>>2
  return N == 4 ? (sum + 1) >> 1 : (sum + 2) >> 2;
}

template <typename Derived>
Cost satd_region(const Eigen::ArrayBase<Derived>& diff, Eigen::Index row, Eigen::Index col, Eigen::Index h,
                 Eigen::Index w)
{
  if (h <= 0 || w <= 0) {
    return 0;
  }
  if (h < 4 || w < 4) {
    return diff.block(row, col, h, w).abs().sum();
  }
  const int tile = (h >= 8 && w >= 8) ? 8 : 4;
  const Eigen::Index th = h / tile * tile;
  const Eigen::Index tw = w / tile * tile;
  Cost sum = 0;
  for (Eigen::Index y = 0; y < th; y += tile) {
    for (Eigen::Index x = 0; x < tw; x += tile) {
      sum += tile == 8 ? hadamard_tile<8>(diff, row + y, col + x) : hadamard_tile<4>(diff, row + y, col + x);
    }
  }
  // leftover columns beside the tiled area, then leftover rows across the full width
  sum += satd_region(diff, row, col + tw, th, w - tw);
  sum += satd_region(diff, row + th, col, h - th, w);
  return sum;
}

}  // namespace detail

template <typename DA, typename DB>
Cost sad(const Eigen::ArrayBase<DA>& a, const Eigen::ArrayBase<DB>& b)
{
  detail::check_same_shape(a, b);
  return (a.template cast<Cost>() - b.template cast<Cost>()).abs().sum();
}

/// Hadamard SATD. Tiles of 8x8 when both dimensions allow, else 4x4; remainders
/// narrower than 4 samples fall back to SAD.
template <typename DA, typename DB>
Cost satd(const Eigen::ArrayBase<DA>& a, const Eigen::ArrayBase<DB>& b)
{
  detail::check_same_shape(a, b);
  const Samples<Cost> diff = a.template cast<Cost>() - b.template cast<Cost>();
  return detail::satd_region(diff, 0, 0, diff.rows(), diff.cols());
}

template <typename DA, typename DB>
Cost distortion(CostMetric metric, const Eigen::ArrayBase<DA>& a, const Eigen::ArrayBase<DB>& b)
{
  return metric == CostMetric::Sad ? sad(a, b) : satd(a, b);
}

}  // namespace etimd
