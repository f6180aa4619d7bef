#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace philyap {

/// Operand shapes do not agree, or a square matrix was required.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation produced a non-finite value or could not reach its target.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Call-local tally of dense matrix-matrix products. Passed explicitly so
/// concurrent computations never share a count.
class ProductCounter {
 public:
  void add(std::int64_t n = 1) { count_ += n; }
  std::int64_t count() const { return count_; }
  void reset() { count_ = 0; }

 private:
  std::int64_t count_ = 0;
};

/// Real dense matrix, row-major, IEEE double. All entries are finite on
/// construction; arithmetic that would produce Inf/NaN throws NumericalError.
class DenseMatrix {
 public:
  /// rows x cols of zeros.
  DenseMatrix(std::size_t rows, std::size_t cols);
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);
  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static DenseMatrix diagonal(std::span<const double> entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool is_square() const { return rows_ == cols_; }

  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }

  DenseMatrix transposed() const;

  /// Bitwise symmetry, M(i,j) == M(j,i) for all entries.
  bool is_exactly_symmetric() const;
  bool is_zero() const;

  DenseMatrix& operator+=(const DenseMatrix& other);
  DenseMatrix& operator-=(const DenseMatrix& other);
  DenseMatrix& operator*=(double alpha);
  /// this += alpha * other
  DenseMatrix& add_scaled(double alpha, const DenseMatrix& other);

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

DenseMatrix operator+(DenseMatrix lhs, const DenseMatrix& rhs);
DenseMatrix operator-(DenseMatrix lhs, const DenseMatrix& rhs);
DenseMatrix operator*(double alpha, DenseMatrix m);
DenseMatrix operator*(DenseMatrix m, double alpha);

/// Matrix product. Ticks `counter` once when given.
DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b, ProductCounter* counter = nullptr);
/// a * b^T. Ticks `counter` once when given.
DenseMatrix multiply_transposed(const DenseMatrix& a, const DenseMatrix& b,
                                ProductCounter* counter = nullptr);

/// E * X * E^T. When X is exactly symmetric the result is assembled from its
/// upper triangle and is exactly symmetric. Always two products.
DenseMatrix congruence(const DenseMatrix& e, const DenseMatrix& x, ProductCounter* counter = nullptr);

/// Throws NumericalError naming `what` if any entry is Inf or NaN.
void ensure_finite(const DenseMatrix& m, std::string_view what);

/// Maximum absolute column sum.
double one_norm(const DenseMatrix& m);
double frobenius_norm(const DenseMatrix& m);
double max_abs(const DenseMatrix& m);

/// ||y - yhat||_1 / ||y||_1. Throws std::domain_error("zero reference") if y == 0.
double relative_error(const DenseMatrix& y, const DenseMatrix& yhat);

/// ||m - m^T||_1 / ||m||_1 (0 for the zero matrix).
double symmetry_defect(const DenseMatrix& m);

void require_same_shape(const DenseMatrix& a, const DenseMatrix& b, std::string_view what);
void require_square(const DenseMatrix& a, std::string_view what);

}  // namespace philyap
