#pragma once

#include <cstddef>
#include <vector>

namespace socassoc {

/// Dense row-major square matrix of doubles.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t order, double fill = 0.0)
      : order_(order), data_(order * order, fill) {}

  std::size_t order() const { return order_; }

  double& operator()(std::size_t row, std::size_t col) { return data_[row * order_ + col]; }
  double operator()(std::size_t row, std::size_t col) const { return data_[row * order_ + col]; }

  double row_sum(std::size_t row) const {
    double sum = 0.0;
    for (std::size_t c = 0; c < order_; ++c) sum += (*this)(row, c);
    return sum;
  }

  bool operator==(const SquareMatrix&) const = default;

 private:
  std::size_t order_ = 0;
  std::vector<double> data_;
};

}  // namespace socassoc
