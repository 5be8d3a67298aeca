#pragma once

#include <cstdio>
#include <string>

#include "entcap/matrix.hpp"

// Formatting helpers shared by the implementation files; not installed.
namespace entcap::internal {

inline std::string num_str(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string complex_str(const Complex& z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gj", z.real(), z.imag());
  return buf;
}

// Row-major [[re+imj, ...], ...] rendering at full precision, for
// reproducer strings.
inline std::string matrix_str(const Matrix& m) {
  std::string out = "[";
  for (Index i = 0; i < m.rows(); ++i) {
    out += i == 0 ? "[" : ", [";
    for (Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ", ";
      out += complex_str(m(i, j));
    }
    out += "]";
  }
  out += "]";
  return out;
}

}  // namespace entcap::internal
