#pragma once

#include "lefmod/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <vector>

namespace lefmod {

using Vec = std::vector<Rat>;

/// Dense row-major rational matrix.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Mat(std::initializer_list<std::initializer_list<Rat>> rows);

  static Mat zero(std::size_t rows, std::size_t cols) { return Mat(rows, cols); }
  static Mat identity(std::size_t n);
  static Mat from_columns(std::size_t rows, const std::vector<Vec>& columns);
  static Mat from_rows(std::size_t cols, const std::vector<Vec>& rows);
  static Mat diagonal(const Vec& diag);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }
  bool is_square() const { return rows_ == cols_; }

  Rat& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vec row(std::size_t i) const;
  Vec col(std::size_t j) const;
  void set_col(std::size_t j, const Vec& v);

  Mat transpose() const;
  /// Submatrix of `r` rows and `c` columns starting at (r0, c0).
  Mat block(std::size_t r0, std::size_t c0, std::size_t r, std::size_t c) const;
  Mat columns(const std::vector<std::size_t>& which) const;
  bool is_zero() const;
  bool is_symmetric() const;
  Rat trace() const;

  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat operator-() const;
  Mat operator*(const Mat& o) const;
  Vec operator*(const Vec& v) const;
  Mat& operator+=(const Mat& o);
  friend Mat operator*(const Rat& s, const Mat& m);
  bool operator==(const Mat& o) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rat> data_;
};

Mat hcat(const Mat& a, const Mat& b);
Mat vcat(const Mat& a, const Mat& b);
/// Block-diagonal matrix.
Mat direct_sum(const Mat& a, const Mat& b);
Mat power(const Mat& m, unsigned k);

Rat dot(const Vec& a, const Vec& b);
Vec add(const Vec& a, const Vec& b);
Vec scale(const Rat& s, const Vec& v);
bool is_zero(const Vec& v);
Vec unit_vector(std::size_t n, std::size_t i);
/// x^T m y
Rat bilinear(const Vec& x, const Mat& m, const Vec& y);

std::ostream& operator<<(std::ostream& os, const Mat& m);

}  // namespace lefmod
