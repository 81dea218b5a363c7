#pragma once

#include <algorithm>
#include <cassert>
#include <complex>
#include <cstddef>
#include <vector>

#include "hyperop/compensated.hpp"
#include "hyperop/errors.hpp"

namespace hyperop {

using Complex = std::complex<double>;

// 1-based lower-triangular complex matrix, packed row-major:
// entry (b, l) with 1 <= l <= b <= order lives at b(b-1)/2 + (l-1).
class TriMatrix {
 public:
  explicit TriMatrix(int order)
      : order_(order),
        data_(static_cast<std::size_t>(order) * (static_cast<std::size_t>(order) + 1) / 2) {
    if (order < 1) throw std::invalid_argument("TriMatrix: order must be positive");
  }

  int order() const { return order_; }

  Complex operator()(int b, int ell) const {
    assert(1 <= ell && ell <= b && b <= order_);
    return data_[index(b, ell)];
  }
  Complex& operator()(int b, int ell) {
    assert(1 <= ell && ell <= b && b <= order_);
    return data_[index(b, ell)];
  }

  const std::vector<Complex>& packed() const { return data_; }
  std::vector<Complex>& packed() { return data_; }

  // Lower-triangular matrix-vector product; v is 0-based storage of v_1..v_n.
  std::vector<Complex> apply(const std::vector<Complex>& v) const {
    assert(static_cast<int>(v.size()) == order_);
    std::vector<Complex> out(v.size());
    for (int b = 1; b <= order_; ++b) {
      detail::CompensatedSum acc;
      for (int ell = 1; ell <= b; ++ell)
        acc.add(data_[index(b, ell)] * v[static_cast<std::size_t>(ell - 1)]);
      out[static_cast<std::size_t>(b - 1)] = acc.value();
    }
    return out;
  }

  // C = this * other (both lower triangular, same order).
  TriMatrix multiply(const TriMatrix& other) const {
    assert(order_ == other.order_);
    TriMatrix c(order_);
    for (int b = 1; b <= order_; ++b)
      for (int ell = 1; ell <= b; ++ell) {
        detail::CompensatedSum acc;
        for (int k = ell; k <= b; ++k) acc.add((*this)(b, k) * other(k, ell));
        c(b, ell) = acc.value();
      }
    return c;
  }

  // max |entry - identity| over the stored triangle.
  double identity_residual() const {
    double worst = 0.0;
    for (int b = 1; b <= order_; ++b)
      for (int ell = 1; ell <= b; ++ell) {
        const Complex expected = (b == ell) ? Complex{1.0, 0.0} : Complex{};
        worst = std::max(worst, std::abs((*this)(b, ell) - expected));
      }
    return worst;
  }

 private:
  static std::size_t index(int b, int ell) {
    return static_cast<std::size_t>(b) * (static_cast<std::size_t>(b) - 1) / 2 +
           static_cast<std::size_t>(ell - 1);
  }

  int order_;
  std::vector<Complex> data_;
};

}  // namespace hyperop
