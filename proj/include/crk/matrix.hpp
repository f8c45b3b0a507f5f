#pragma once

// Dense row-major matrices over an exact ring (Rational, UniPoly, MultiPoly).

#include "crk/rational.hpp"

#include <algorithm>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace crk {

template <typename T>
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw std::invalid_argument("Matrix: ragged initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n, const T& zero = T(0), const T& one = T(1)) {
    Matrix m(n, n, zero);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return data_.empty(); }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  T& at(std::size_t i, std::size_t j) {
    if (i >= rows_ || j >= cols_) throw std::out_of_range("Matrix: index out of range");
    return (*this)(i, j);
  }
  const T& at(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw std::out_of_range("Matrix: index out of range");
    return (*this)(i, j);
  }

  const std::vector<T>& data() const { return data_; }

  Matrix transpose() const {
    Matrix t(cols_, rows_, zero_like());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Copies `block` into this matrix with its top-left corner at (r0, c0).
  Matrix& set_block(std::size_t r0, std::size_t c0, const Matrix& block) {
    if (r0 + block.rows_ > rows_ || c0 + block.cols_ > cols_) throw std::out_of_range("Matrix: block does not fit");
    for (std::size_t i = 0; i < block.rows_; ++i)
      for (std::size_t j = 0; j < block.cols_; ++j) (*this)(r0 + i, c0 + j) = block(i, j);
    return *this;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("Matrix: block out of range");
    Matrix b(nr, nc, zero_like());
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  bool is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if (!((*this)(i, j) == (*this)(j, i))) return false;
    return true;
  }

  bool is_skew() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i; j < cols_; ++j)
        if (!((*this)(i, j) == -(*this)(j, i))) return false;
    return true;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!x.is_zero()) return false;
    return true;
  }

  Matrix& operator+=(const Matrix& o) {
    same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  template <typename S>
  Matrix& scale(const S& c) {
    for (auto& x : data_) x *= c;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const T& c) { return a.scale(c); }
  friend Matrix operator*(const T& c, Matrix a) { return a.scale(c); }
  friend Matrix operator-(Matrix a) {
    for (auto& x : a.data_) x = -x;
    return a;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix: product shape mismatch");
    Matrix out(a.rows_, b.cols_, a.zero_like());
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  template <typename F>
  auto map(F&& f) const {
    using U = decltype(f(std::declval<const T&>()));
    std::vector<U> d;
    d.reserve(data_.size());
    for (const auto& x : data_) d.push_back(f(x));
    return Matrix<U>::from_data(rows_, cols_, std::move(d));
  }

  static Matrix from_data(std::size_t rows, std::size_t cols, std::vector<T> data) {
    if (data.size() != rows * cols) throw std::invalid_argument("Matrix: data size mismatch");
    Matrix m;
    m.rows_ = rows;
    m.cols_ = cols;
    m.data_ = std::move(data);
    return m;
  }

  std::string str() const {
    std::vector<std::string> cells;
    std::size_t width = 1;
    for (const auto& x : data_) {
      cells.push_back(x.str());
      width = std::max(width, cells.back().size());
    }
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        const auto& c = cells[i * cols_ + j];
        os << (j ? "  " : "") << std::string(width - c.size(), ' ') << c;
      }
      os << "\n";
    }
    return os.str();
  }

private:
  T zero_like() const {
    if (data_.empty()) return T{};
    T z = data_.front();
    z -= data_.front();
    return z;
  }
  void same_shape(const Matrix& o) const {
    if (o.rows_ != rows_ || o.cols_ != cols_) throw std::invalid_argument("Matrix: shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using MatrixQ = Matrix<Rational>;

inline MatrixQ zeros(std::size_t rows, std::size_t cols) { return MatrixQ(rows, cols, Rational(0)); }
inline MatrixQ identity(std::size_t n) { return MatrixQ::identity(n); }

inline MatrixQ direct_sum(const MatrixQ& a, const MatrixQ& b) {
  MatrixQ out = zeros(a.rows() + b.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(a.rows(), a.cols(), b);
  return out;
}

/// Integer-literal matrix, handy in tests and builders.
inline MatrixQ matrix_of(std::initializer_list<std::initializer_list<long>> rows) {
  std::size_t nr = rows.size(), nc = nr ? rows.begin()->size() : 0;
  MatrixQ m = zeros(nr, nc);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != nc) throw std::invalid_argument("matrix_of: ragged rows");
    std::size_t j = 0;
    for (long v : row) m(i, j++) = Rational(v);
    ++i;
  }
  return m;
}

/// Row-major flattening, used for linear-independence checks on matrix lists.
inline std::vector<Rational> vectorize(const MatrixQ& m) { return m.data(); }

/// Validated antisymmetric matrix.
class SkewMatrixQ {
public:
  explicit SkewMatrixQ(MatrixQ m) : m_(std::move(m)) {
    if (!m_.is_skew()) throw std::invalid_argument("SkewMatrixQ: matrix is not antisymmetric");
  }
  const MatrixQ& matrix() const { return m_; }
  std::size_t size() const { return m_.rows(); }

private:
  MatrixQ m_;
};

}  // namespace crk
