#include "philyap/dense_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "philyap/kernels.hpp"

namespace philyap {
namespace {

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

std::string shape_string(const DenseMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {
  if (rows == 0 || cols == 0) throw ShapeError("matrix dimensions must be positive");
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (rows == 0 || cols == 0) throw ShapeError("matrix dimensions must be positive");
  if (data_.size() != rows * cols)
    throw ShapeError("data length " + std::to_string(data_.size()) + " does not match " +
                     std::to_string(rows) + "x" + std::to_string(cols));
  if (!all_finite(data_)) throw NumericalError("non-finite entry in matrix data");
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  if (rows_ == 0 || cols_ == 0) throw ShapeError("matrix dimensions must be positive");
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw ShapeError("ragged initializer list");
    data_.insert(data_.end(), r.begin(), r.end());
  }
  if (!all_finite(data_)) throw NumericalError("non-finite entry in matrix data");
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> entries) {
  DenseMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  if (!all_finite(m.data_)) throw NumericalError("non-finite entry in matrix data");
  return m;
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool DenseMatrix::is_exactly_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

bool DenseMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](double x) { return x == 0.0; });
}

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& other) { return add_scaled(1.0, other); }

DenseMatrix& DenseMatrix::operator-=(const DenseMatrix& other) { return add_scaled(-1.0, other); }

DenseMatrix& DenseMatrix::operator*=(double alpha) {
  for (double& x : data_) x *= alpha;
  ensure_finite(*this, "scaling");
  return *this;
}

DenseMatrix& DenseMatrix::add_scaled(double alpha, const DenseMatrix& other) {
  require_same_shape(*this, other, "matrix addition");
  kernels::axpy(alpha, other.data_, data_);
  ensure_finite(*this, "matrix addition");
  return *this;
}

DenseMatrix operator+(DenseMatrix lhs, const DenseMatrix& rhs) { return lhs += rhs; }
DenseMatrix operator-(DenseMatrix lhs, const DenseMatrix& rhs) { return lhs -= rhs; }
DenseMatrix operator*(double alpha, DenseMatrix m) { return m *= alpha; }
DenseMatrix operator*(DenseMatrix m, double alpha) { return m *= alpha; }

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b, ProductCounter* counter) {
  if (a.cols() != b.rows())
    throw ShapeError("cannot multiply " + shape_string(a) + " by " + shape_string(b));
  DenseMatrix c(a.rows(), b.cols());
  kernels::gemm(a.rows(), a.cols(), b.cols(), a.data(), b.data(), c.data());
  if (counter) counter->add();
  ensure_finite(c, "matrix product");
  return c;
}

DenseMatrix multiply_transposed(const DenseMatrix& a, const DenseMatrix& b, ProductCounter* counter) {
  if (a.cols() != b.cols())
    throw ShapeError("cannot multiply " + shape_string(a) + " by transpose of " + shape_string(b));
  DenseMatrix c(a.rows(), b.rows());
  kernels::gemm_nt(a.rows(), a.cols(), b.rows(), a.data(), b.data(), c.data());
  if (counter) counter->add();
  ensure_finite(c, "matrix product");
  return c;
}

DenseMatrix congruence(const DenseMatrix& e, const DenseMatrix& x, ProductCounter* counter) {
  require_square(e, "congruence factor");
  require_same_shape(e, x, "congruence");
  const DenseMatrix w = multiply(e, x, counter);
  if (!x.is_exactly_symmetric()) return multiply_transposed(w, e, counter);
  DenseMatrix c(e.rows(), e.rows());
  kernels::gemm_nt_symmetric(e.rows(), e.cols(), w.data(), e.data(), c.data());
  if (counter) counter->add();
  ensure_finite(c, "matrix product");
  return c;
}

void ensure_finite(const DenseMatrix& m, std::string_view what) {
  if (!all_finite(m.data())) throw NumericalError("non-finite value produced by " + std::string(what));
}

double one_norm(const DenseMatrix& m) {
  std::vector<double> sums(m.cols(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) sums[j] += std::abs(m(i, j));
  return *std::max_element(sums.begin(), sums.end());
}

double frobenius_norm(const DenseMatrix& m) {
  // Scaled sum of squares so large entries do not overflow.
  const double scale = max_abs(m);
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  for (double x : m.data()) {
    const double r = x / scale;
    sum += r * r;
  }
  return scale * std::sqrt(sum);
}

double max_abs(const DenseMatrix& m) {
  double v = 0.0;
  for (double x : m.data()) v = std::max(v, std::abs(x));
  return v;
}

double relative_error(const DenseMatrix& y, const DenseMatrix& yhat) {
  require_same_shape(y, yhat, "relative_error");
  const double ref = one_norm(y);
  if (ref == 0.0) throw std::domain_error("zero reference");
  DenseMatrix diff = y;
  for (std::size_t i = 0; i < diff.size(); ++i) diff.data()[i] -= yhat.data()[i];
  return one_norm(diff) / ref;
}

double symmetry_defect(const DenseMatrix& m) {
  require_square(m, "symmetry_defect");
  const double nrm = one_norm(m);
  if (nrm == 0.0) return 0.0;
  DenseMatrix diff(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) diff(i, j) = m(i, j) - m(j, i);
  return one_norm(diff) / nrm;
}

void require_same_shape(const DenseMatrix& a, const DenseMatrix& b, std::string_view what) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeError(std::string(what) + ": shape mismatch " + shape_string(a) + " vs " +
                     shape_string(b));
}

void require_square(const DenseMatrix& a, std::string_view what) {
  if (!a.is_square()) throw ShapeError(std::string(what) + ": expected a square matrix, got " +
                                       shape_string(a));
}

}  // namespace philyap
