#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "kbl/numbers.hpp"

namespace kbl {

/// Dense matrix over an exact field (Rational or GaussianRational).
template <class F>
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, F(0)) {}

  static Mat identity(size_t n) {
    Mat m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = F(1);
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  F& operator()(size_t i, size_t j) { return a_[i * cols_ + j]; }
  const F& operator()(size_t i, size_t j) const { return a_[i * cols_ + j]; }

  friend bool operator==(const Mat& x, const Mat& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }

  Mat transpose() const {
    Mat t(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  void swap_rows(size_t i, size_t j) {
    if (i == j) return;
    for (size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
  }

 private:
  size_t rows_, cols_;
  std::vector<F> a_;
};

template <class F>
using Vec = std::vector<F>;

template <class F>
Mat<F> mat_mul(const Mat<F>& a, const Mat<F>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("mat_mul: shape mismatch");
  Mat<F> c(a.rows(), b.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == F(0)) continue;
      for (size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

template <class F>
Vec<F> mat_vec(const Mat<F>& a, const Vec<F>& x) {
  if (a.cols() != x.size()) throw std::invalid_argument("mat_vec: shape mismatch");
  Vec<F> y(a.rows(), F(0));
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

/// Reduced row echelon form in place.  Returns the rank; records the pivot
/// column of each nonzero row, and optionally the original row index that
/// provided each pivot (for rank certificates).
template <class F>
size_t rref(Mat<F>& m, std::vector<size_t>* pivot_cols = nullptr,
            std::vector<size_t>* pivot_src_rows = nullptr) {
  std::vector<size_t> origin(m.rows());
  for (size_t i = 0; i < m.rows(); ++i) origin[i] = i;
  size_t rank = 0;
  for (size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    size_t piv = rank;
    while (piv < m.rows() && m(piv, col) == F(0)) ++piv;
    if (piv == m.rows()) continue;
    m.swap_rows(rank, piv);
    std::swap(origin[rank], origin[piv]);
    F inv = F(1) / m(rank, col);
    for (size_t j = col; j < m.cols(); ++j) m(rank, j) = m(rank, j) * inv;
    for (size_t i = 0; i < m.rows(); ++i) {
      if (i == rank || m(i, col) == F(0)) continue;
      F f = m(i, col);
      for (size_t j = col; j < m.cols(); ++j) m(i, j) = m(i, j) - f * m(rank, j);
    }
    if (pivot_cols) pivot_cols->push_back(col);
    if (pivot_src_rows) pivot_src_rows->push_back(origin[rank]);
    ++rank;
  }
  return rank;
}

template <class F>
size_t rank(Mat<F> m) {
  return rref(m);
}

/// Basis of the null space {x : Mx = 0}; one canonical vector per free column.
template <class F>
std::vector<Vec<F>> kernel_basis(Mat<F> m) {
  std::vector<size_t> pivots;
  rref(m, &pivots);
  std::vector<bool> is_pivot(m.cols(), false);
  for (size_t p : pivots) is_pivot[p] = true;
  std::vector<Vec<F>> basis;
  for (size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec<F> v(m.cols(), F(0));
    v[free] = F(1);
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// One particular solution of Mx = b, if consistent.
template <class F>
std::optional<Vec<F>> solve(const Mat<F>& a, const Vec<F>& b) {
  if (a.rows() != b.size()) throw std::invalid_argument("solve: shape mismatch");
  Mat<F> aug(a.rows(), a.cols() + 1);
  for (size_t i = 0; i < a.rows(); ++i) {
    for (size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  std::vector<size_t> pivots;
  rref(aug, &pivots);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;  // 0 = 1 row
  Vec<F> x(a.cols(), F(0));
  for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, a.cols());
  return x;
}

template <class F>
std::optional<Mat<F>> inverse(const Mat<F>& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse: not square");
  size_t n = a.rows();
  Mat<F> aug(n, 2 * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = F(1);
  }
  std::vector<size_t> pivots;
  rref(aug, &pivots);
  if (pivots.size() != n || pivots.back() != n - 1) return std::nullopt;
  Mat<F> inv(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

template <class F>
F determinant(Mat<F> m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: not square");
  F det(1);
  size_t n = m.rows();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && m(piv, col) == F(0)) ++piv;
    if (piv == n) return F(0);
    if (piv != col) {
      m.swap_rows(col, piv);
      det = -det;
    }
    det = det * m(col, col);
    F inv = F(1) / m(col, col);
    for (size_t i = col + 1; i < n; ++i) {
      if (m(i, col) == F(0)) continue;
      F f = m(i, col) * inv;
      for (size_t j = col; j < n; ++j) m(i, j) = m(i, j) - f * m(col, j);
    }
  }
  return det;
}

struct Inertia {
  size_t positive = 0;
  size_t negative = 0;
  size_t zero = 0;
};

/// Signature of a symmetric rational matrix via congruent diagonalization.
Inertia inertia(Mat<Rational> s);

/// Scale a rational vector to a primitive integer vector (gcd 1), preserving
/// direction; the zero vector stays zero.
std::vector<Integer> primitive_integer_vector(const Vec<Rational>& v);

}  // namespace kbl
