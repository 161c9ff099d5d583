// SPDX-License-Identifier: Apache-2.0
//
// Minimal dense complex linear algebra. The matrices in this problem are
// small (a few hundred rows at most), so plain row-major storage and
// straightforward loops are all that is needed.

#pragma once

#include <cstddef>
#include <stdexcept>

#include "hrisim/common.hpp"

namespace hrisim {

class CMat {
 public:
  CMat() = default;
  CMat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::vector<cplx>& data() { return data_; }
  const std::vector<cplx>& data() const { return data_; }

  bool operator==(const CMat&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

// y = A x
inline CVec matvec(const CMat& a, const CVec& x) {
  if (x.size() != a.cols()) throw std::invalid_argument("matvec: dimension mismatch");
  CVec y(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    cplx acc{0.0, 0.0};
    for (std::size_t c = 0; c < a.cols(); ++c) acc += a(r, c) * x[c];
    y[r] = acc;
  }
  return y;
}

// a^H b
inline cplx hdot(const CVec& a, const CVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("hdot: dimension mismatch");
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

inline double norm2(const CVec& v) {
  double s = 0.0;
  for (const cplx& z : v) s += std::norm(z);
  return std::sqrt(s);
}

}  // namespace hrisim
