#pragma once

/** \file     types.hpp
    \brief    dense sample containers, block vectors and error types shared by every module
*/

#include <Eigen/Dense>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace etimd {

using Pel = std::int32_t;
using Cost = std::int64_t;

/// Row-major 2-D sample array; rows index y, columns index x.
template <typename Scalar>
using Samples = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using PelBlock = Samples<Pel>;

struct Rect {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  [[nodiscard]] constexpr int area() const { return w * h; }
  [[nodiscard]] constexpr bool empty() const { return w <= 0 || h <= 0; }
  [[nodiscard]] constexpr Rect shifted(int dx, int dy) const { return {x + dx, y + dy, w, h}; }
  friend constexpr bool operator==(const Rect&, const Rect&) = default;
};

/// Integer-pel displacement into the reconstructed region (negative = left/up).
struct BlockVector {
  int dx = 0;
  int dy = 0;

  friend constexpr bool operator==(const BlockVector&, const BlockVector&) = default;
  friend constexpr BlockVector operator+(BlockVector a, BlockVector b) { return {a.dx + b.dx, a.dy + b.dy}; }
};

inline std::string to_string(const BlockVector& bv)
{
  return "(" + std::to_string(bv.dx) + "," + std::to_string(bv.dy) + ")";
}

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TruncatedInputError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class ShapeMismatchError : public Error {
 public:
  using Error::Error;
};

/// A read touched a pixel that is not yet reconstructed.
class CausalityError : public Error {
 public:
  using Error::Error;
};

class ScanOrderError : public Error {
 public:
  using Error::Error;
};

inline Pel max_sample(int bit_depth) { return (Pel{1} << bit_depth) - 1; }

}  // namespace etimd
