#pragma once

#include <cstdint>
#include <vector>

#include "error.hpp"
#include "fq.hpp"

namespace uorb {

// Dense integer matrix (entries stay tiny: structure constants and their
// divided-power combinations).
struct IMat {
  int rows = 0, cols = 0;
  std::vector<long long> a;

  IMat() = default;
  IMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}

  long long& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  long long at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

  static IMat identity(int n) {
    IMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }
  bool is_zero() const {
    for (long long v : a)
      if (v != 0) return false;
    return true;
  }
};

inline IMat mul(const IMat& x, const IMat& y) {
  check_internal(x.cols == y.rows, "integer matrix shape mismatch");
  IMat z(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      long long v = x.at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < y.cols; ++j) z.at(i, j) += v * y.at(k, j);
    }
  return z;
}

// Dense matrix over F_q.
struct FMat {
  int rows = 0, cols = 0;
  std::vector<uint32_t> a;

  FMat() = default;
  FMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}

  uint32_t& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  uint32_t at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

  static FMat identity(int n) {
    FMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }
  bool operator==(const FMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

inline FMat mul(const Fq& F, const FMat& x, const FMat& y) {
  check_internal(x.cols == y.rows, "F_q matrix shape mismatch");
  FMat z(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      uint32_t v = x.at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < y.cols; ++j) {
        uint32_t w = y.at(k, j);
        if (w) z.at(i, j) = F.add(z.at(i, j), F.mul(v, w));
      }
    }
  return z;
}

inline std::vector<uint32_t> mul_vec(const Fq& F, const FMat& m, const std::vector<uint32_t>& x) {
  check_internal(m.cols == static_cast<int>(x.size()), "F_q matvec shape mismatch");
  std::vector<uint32_t> y(m.rows, 0);
  for (int i = 0; i < m.rows; ++i) {
    uint32_t s = 0;
    for (int j = 0; j < m.cols; ++j)
      if (x[j]) s = F.add(s, F.mul(m.at(i, j), x[j]));
    y[i] = s;
  }
  return y;
}

}  // namespace uorb
