#pragma once

#include <cstddef>
#include <vector>

#include "tanaka/errors.hpp"
#include "tanaka/rational.hpp"

namespace tanaka {

using Vec = std::vector<Rational>;

bool is_zero(const Vec& v);
Vec zero_vec(std::size_t n);
void add_scaled(Vec& dst, const Rational& c, const Vec& src);
Vec scaled(const Vec& v, const Rational& c);
Vec vec_sum(const Vec& a, const Vec& b);

// Dense matrix over Q, row major.
class Matrix {
public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, Rational(0)) {}

  static Matrix from_rows(const std::vector<Vec>& rows, std::size_t cols);
  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const Rational& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  Vec row(std::size_t r) const;
  Vec col(std::size_t c) const;
  void set_row(std::size_t r, const Vec& v);

  Matrix transposed() const;
  Vec apply(const Vec& x) const;  // M x
  Matrix operator*(const Matrix& rhs) const;
  Matrix operator+(const Matrix& rhs) const;
  Matrix operator-(const Matrix& rhs) const;
  Matrix scaled_by(const Rational& c) const;
  bool operator==(const Matrix& rhs) const = default;

  bool is_zero_matrix() const;

  // In-place Gauss-Jordan reduction; returns the pivot columns.
  std::vector<std::size_t> rref();
  std::size_t rank() const;

  Vec flattened() const { return a_; }
  static Matrix from_flat(const Vec& data, std::size_t rows, std::size_t cols);

private:
  std::size_t rows_, cols_;
  std::vector<Rational> a_;
};

}  // namespace tanaka
