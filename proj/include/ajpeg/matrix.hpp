#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

namespace ajpeg {

/// Dense row-major matrix with value semantics.
template <typename T>
class Matrix {
public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] std::size_t size() const noexcept { return data_.size(); }
  [[nodiscard]] bool empty() const noexcept { return data_.empty(); }

  T& operator()(std::size_t r, std::size_t c) noexcept {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }
  const T& operator()(std::size_t r, std::size_t c) const noexcept {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }

  std::span<T> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }

  T* data() noexcept { return data_.data(); }
  const T* data() const noexcept { return data_.data(); }
  std::span<T> values() noexcept { return data_; }
  std::span<const T> values() const noexcept { return data_; }

  void fill(T v) { std::fill(data_.begin(), data_.end(), v); }

  friend bool operator==(const Matrix&, const Matrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Non-owning read-only window into a row-major buffer.
template <typename T>
struct MatrixView {
  const T* data = nullptr;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t stride = 0;

  MatrixView() = default;
  MatrixView(const T* d, std::size_t r, std::size_t c, std::size_t s)
      : data(d), rows(r), cols(c), stride(s) {}
  MatrixView(const Matrix<T>& m) // NOLINT: implicit view of a whole matrix
      : data(m.data()), rows(m.rows()), cols(m.cols()), stride(m.cols()) {}

  const T& operator()(std::size_t r, std::size_t c) const noexcept {
    assert(r < rows && c < cols);
    return data[r * stride + c];
  }

  [[nodiscard]] MatrixView sub(std::size_t r0, std::size_t c0, std::size_t nr,
                               std::size_t nc) const noexcept {
    assert(r0 + nr <= rows && c0 + nc <= cols);
    return {data + r0 * stride + c0, nr, nc, stride};
  }
};

template <typename T>
Matrix<T> copy_of(MatrixView<T> v) {
  Matrix<T> out(v.rows, v.cols);
  for (std::size_t r = 0; r < v.rows; ++r)
    std::copy_n(v.data + r * v.stride, v.cols, out.row(r).begin());
  return out;
}

template <typename T>
void paste(Matrix<T>& dst, std::size_t r0, std::size_t c0, MatrixView<T> src) {
  assert(r0 + src.rows <= dst.rows() && c0 + src.cols <= dst.cols());
  for (std::size_t r = 0; r < src.rows; ++r)
    std::copy_n(src.data + r * src.stride, src.cols, dst.row(r0 + r).begin() + c0);
}

} // namespace ajpeg
