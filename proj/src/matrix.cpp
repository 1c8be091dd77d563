#include "lefmod/matrix.hpp"

#include <ostream>
#include <stdexcept>

namespace lefmod {

Mat::Mat(std::initializer_list<std::initializer_list<Rat>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    for (const auto& x : r) data_.push_back(x);
  }
}

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Mat Mat::from_columns(std::size_t rows, const std::vector<Vec>& columns) {
  Mat m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) throw std::invalid_argument("column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

Mat Mat::from_rows(std::size_t cols, const std::vector<Vec>& rows) {
  Mat m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("row length mismatch");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Mat Mat::diagonal(const Vec& diag) {
  Mat m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

Vec Mat::row(std::size_t i) const { return Vec(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }

Vec Mat::col(std::size_t j) const {
  Vec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void Mat::set_col(std::size_t j, const Vec& v) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Mat Mat::transpose() const {
  Mat t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Mat Mat::block(std::size_t r0, std::size_t c0, std::size_t r, std::size_t c) const {
  if (r0 + r > rows_ || c0 + c > cols_) throw std::out_of_range("block outside matrix");
  Mat b(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

Mat Mat::columns(const std::vector<std::size_t>& which) const {
  Mat b(rows_, which.size());
  for (std::size_t j = 0; j < which.size(); ++j)
    for (std::size_t i = 0; i < rows_; ++i) b(i, j) = (*this)(i, which[j]);
  return b;
}

bool Mat::is_zero() const {
  for (const auto& x : data_)
    if (x != 0) return false;
  return true;
}

bool Mat::is_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

Rat Mat::trace() const {
  Rat t = 0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

Mat Mat::operator+(const Mat& o) const {
  Mat r = *this;
  r += o;
  return r;
}

Mat& Mat::operator+=(const Mat& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch in +");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

Mat Mat::operator-(const Mat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch in -");
  Mat r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
  return r;
}

Mat Mat::operator-() const {
  Mat r = *this;
  for (auto& x : r.data_) x = -x;
  return r;
}

Mat Mat::operator*(const Mat& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch in *");
  Mat r(rows_, o.cols_);
  Rat t;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rat& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        const Rat& b = o(k, j);
        if (b == 0) continue;
        t = a * b;
        r(i, j) += t;
      }
    }
  return r;
}

Vec Mat::operator*(const Vec& v) const {
  if (cols_ != v.size()) throw std::invalid_argument("matrix-vector shape mismatch");
  Vec r(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k)
      if ((*this)(i, k) != 0 && v[k] != 0) r[i] += (*this)(i, k) * v[k];
  return r;
}

Mat operator*(const Rat& s, const Mat& m) {
  Mat r = m;
  for (auto& x : r.data_) x *= s;
  return r;
}

Mat hcat(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hcat row mismatch");
  Mat r(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) r(i, a.cols() + j) = b(i, j);
  }
  return r;
}

Mat vcat(const Mat& a, const Mat& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("vcat column mismatch");
  Mat r(a.rows() + b.rows(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) r(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i) r(a.rows() + i, j) = b(i, j);
  }
  return r;
}

Mat direct_sum(const Mat& a, const Mat& b) {
  Mat r(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) r(a.rows() + i, a.cols() + j) = b(i, j);
  return r;
}

Mat power(const Mat& m, unsigned k) {
  if (!m.is_square()) throw std::invalid_argument("power of non-square matrix");
  Mat r = Mat::identity(m.rows());
  for (unsigned i = 0; i < k; ++i) r = r * m;
  return r;
}

Rat dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot length mismatch");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
  return s;
}

Vec add(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("add length mismatch");
  Vec r = a;
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += b[i];
  return r;
}

Vec scale(const Rat& s, const Vec& v) {
  Vec r = v;
  for (auto& x : r) x *= s;
  return r;
}

bool is_zero(const Vec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

Vec unit_vector(std::size_t n, std::size_t i) {
  Vec v(n);
  v[i] = 1;
  return v;
}

Rat bilinear(const Vec& x, const Mat& m, const Vec& y) { return dot(x, m * y); }

std::ostream& operator<<(std::ostream& os, const Mat& m) {
  os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << to_string(m(i, j));
  }
  return os << "]";
}

}  // namespace lefmod
