#pragma once

/** \file     transform.hpp
    \brief    orthonormal DCT-II / DST-VII kernels, mode-class separable transform and energy compaction
*/

#include "etimd/intra_pred.hpp"
#include "etimd/types.hpp"

#include <cmath>
#include <numbers>
#include <string_view>
#include <utility>
#include <vector>

namespace etimd {

enum class Kernel { Dct2, Dst7 };

/// Simplified mode-indexed transform sets: DC0 for Planar/DC, H for 2..33, D for 34, V for 35..66.
enum class TransformClass { Dc0, H, D, V };

std::string_view to_string(TransformClass cls);

struct KernelPair {
  Kernel horizontal;
  Kernel vertical;
};

constexpr KernelPair kernels_of(TransformClass cls)
{
  switch (cls) {
    case TransformClass::H:
      return {Kernel::Dst7, Kernel::Dct2};
    case TransformClass::D:
      return {Kernel::Dst7, Kernel::Dst7};
    case TransformClass::V:
      return {Kernel::Dct2, Kernel::Dst7};
    case TransformClass::Dc0:
      break;
  }
  return {Kernel::Dct2, Kernel::Dct2};
}

TransformClass transform_class(IntraMode mode);

inline bool is_transform_size(Eigen::Index n)
{
  return n == 4 || n == 8 || n == 16 || n == 32;
}

template <typename Scalar = double>
using KernelMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Row k holds basis function k.
template <typename Scalar = double>
KernelMatrix<Scalar> dct2_matrix(int n)
{
  KernelMatrix<Scalar> m(n, n);
  const Scalar pi = std::numbers::pi_v<Scalar>;
  for (int k = 0; k < n; ++k) {
    const Scalar alpha = std::sqrt(Scalar(k == 0 ? 1 : 2) / Scalar(n));
    for (int i = 0; i < n; ++i) {
      m(k, i) = alpha * std::cos(pi * Scalar(2 * i + 1) * Scalar(k) / Scalar(2 * n));
    }
  }
  return m;
}

template <typename Scalar = double>
KernelMatrix<Scalar> dst7_matrix(int n)
{
  KernelMatrix<Scalar> m(n, n);
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar scale = std::sqrt(Scalar(4) / Scalar(2 * n + 1));
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      m(k, i) = scale * std::sin(pi * Scalar(2 * i + 1) * Scalar(k + 1) / Scalar(2 * n + 1));
    }
  }
  return m;
}

template <typename Scalar = double>
KernelMatrix<Scalar> kernel_matrix(Kernel kernel, int n)
{
  return kernel == Kernel::Dct2 ? dct2_matrix<Scalar>(n) : dst7_matrix<Scalar>(n);
}

/// coefficients = V * R * H^T with the class's vertical/horizontal kernels.
template <typename Derived>
Samples<double> apply_transform(const Eigen::ArrayBase<Derived>& residual, TransformClass cls)
{
  const auto h = residual.rows();
  const auto w = residual.cols();
  if (!is_transform_size(w) || !is_transform_size(h)) {
    throw ValidationError("transform dimensions must be 4, 8, 16 or 32");
  }
  const KernelPair k = kernels_of(cls);
  const KernelMatrix<double> ver = kernel_matrix<double>(k.vertical, static_cast<int>(h));
  const KernelMatrix<double> hor = kernel_matrix<double>(k.horizontal, static_cast<int>(w));
  const KernelMatrix<double> r = residual.template cast<double>().matrix();
  return (ver * r * hor.transpose()).array();
}

/// Up-right diagonal scan: anti-diagonals from the DC corner, bottom-left to top-right within each.
std::vector<std::pair<int, int>> diagonal_scan(int w, int h);

/// Energy share of the first `count` coefficients in diagonal scan; 1 for an all-zero block.
double energy_compaction(const Samples<double>& coeffs, int count);

}  // namespace etimd
