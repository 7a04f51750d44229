#pragma once

#include <algorithm>
#include <compare>
#include <span>
#include <vector>

#include "vpart/common.hpp"

namespace vpart {

// Dense row-major integer matrix. Used for attribute matrices (d x n),
// per-part sum matrices (d x p) and type count matrices (t x p).
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(int rows, int cols, Value fill = 0)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}
  Matrix(int rows, int cols, std::vector<Value> row_major)
      : rows_(rows), cols_(cols), data_(std::move(row_major)) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  Value& at(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  Value at(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

  std::span<const Value> row(int r) const {
    return {data_.data() + static_cast<std::size_t>(r) * cols_, static_cast<std::size_t>(cols_)};
  }
  std::vector<Value> column(int c) const {
    std::vector<Value> out(rows_);
    for (int r = 0; r < rows_; ++r) out[r] = at(r, c);
    return out;
  }

  const std::vector<Value>& data() const { return data_; }
  void fill(Value v) { std::fill(data_.begin(), data_.end(), v); }

  friend bool operator==(const Matrix& a, const Matrix& b) = default;
  // Row-major lexicographic order; ties in content broken by shape.
  friend std::strong_ordering operator<=>(const Matrix& a, const Matrix& b) {
    if (auto c = a.data_ <=> b.data_; c != 0) return c;
    if (auto c = a.rows_ <=> b.rows_; c != 0) return c;
    return a.cols_ <=> b.cols_;
  }

 private:
  int rows_, cols_;
  std::vector<Value> data_;
};

}  // namespace vpart
