#pragma once

// Dense complex matrices with tensor-factor bookkeeping, Kronecker products,
// factor flips, the partial transpose in the first factor, symmetric-subspace
// embedding/restriction, and the uniform residual metric.

#include <algorithm>
#include <vector>

#include "ellfuse/core.hpp"

namespace ellfuse {

template <class T = double>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}

  Matrix(int rows, int cols)
      : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {
    if (rows < 0 || cols < 0)
      throw argument_error("Matrix: negative dimensions");
    if (rows > 0) row_factors_ = {rows};
    if (cols > 0) col_factors_ = {cols};
  }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = cx<T>(T(1));
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  // Tensor-factor shape metadata; kron() concatenates it so that
  // partial_transpose_first() can infer factor dimensions.
  const std::vector<int>& row_factors() const { return row_factors_; }
  const std::vector<int>& col_factors() const { return col_factors_; }
  void set_factors(std::vector<int> row_f, std::vector<int> col_f) {
    row_factors_ = std::move(row_f);
    col_factors_ = std::move(col_f);
  }

  cx<T>& operator()(int i, int j) {
    check_index(i, j);
    return a_[static_cast<size_t>(i) * cols_ + j];
  }
  const cx<T>& operator()(int i, int j) const {
    check_index(i, j);
    return a_[static_cast<size_t>(i) * cols_ + j];
  }

  // Row-major flattening and its inverse.
  std::vector<cx<T>> flatten() const { return a_; }
  static Matrix from_flat(int rows, int cols, const std::vector<cx<T>>& flat) {
    if (flat.size() != static_cast<size_t>(rows) * cols)
      throw argument_error("Matrix::from_flat: size mismatch");
    Matrix m(rows, cols);
    m.a_ = flat;
    return m;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_)
      throw argument_error("Matrix multiply: inner dimensions differ");
    Matrix out(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const cx<T> aik = (*this)(i, k);
        if (aik == cx<T>(T(0))) continue;
        for (int j = 0; j < o.cols_; ++j) out(i, j) += aik * o(k, j);
      }
    return out;
  }

  Matrix operator+(const Matrix& o) const {
    check_same_shape(o, "add");
    Matrix out = *this;
    for (size_t k = 0; k < a_.size(); ++k) out.a_[k] += o.a_[k];
    return out;
  }

  Matrix operator-(const Matrix& o) const {
    check_same_shape(o, "subtract");
    Matrix out = *this;
    for (size_t k = 0; k < a_.size(); ++k) out.a_[k] -= o.a_[k];
    return out;
  }

  Matrix operator-() const { return cx<T>(T(-1)) * (*this); }

  friend Matrix operator*(cx<T> s, const Matrix& m) {
    Matrix out = m;
    for (auto& v : out.a_) v *= s;
    return out;
  }
  friend Matrix operator*(T s, const Matrix& m) { return cx<T>(s) * m; }

  Matrix transpose() const {
    Matrix out(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    out.set_factors(col_factors_, row_factors_);
    return out;
  }

  T max_abs() const {
    T m(0);
    for (const auto& v : a_) m = std::max(m, std::abs(v));
    return m;
  }

 private:
  void check_index(int i, int j) const {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
      throw argument_error("Matrix: index out of range");
  }
  void check_same_shape(const Matrix& o, const char* op) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw argument_error(std::string("Matrix ") + op + ": shape mismatch");
  }

  int rows_, cols_;
  std::vector<cx<T>> a_;
  std::vector<int> row_factors_, col_factors_;
};

template <class T>
Matrix<T> kron(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      const cx<T> aij = a(i, j);
      if (aij == cx<T>(T(0))) continue;
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  std::vector<int> rf = a.row_factors(), cf = a.col_factors();
  rf.insert(rf.end(), b.row_factors().begin(), b.row_factors().end());
  cf.insert(cf.end(), b.col_factors().begin(), b.col_factors().end());
  out.set_factors(std::move(rf), std::move(cf));
  return out;
}

// Flip of tensor factors: maps V_A (x) V_B -> V_B (x) V_A.
template <class T>
Matrix<T> flip_matrix(int dim_a, int dim_b) {
  Matrix<T> out(dim_a * dim_b, dim_a * dim_b);
  for (int i = 0; i < dim_a; ++i)
    for (int j = 0; j < dim_b; ++j)
      out(j * dim_a + i, i * dim_b + j) = cx<T>(T(1));
  out.set_factors({dim_b, dim_a}, {dim_a, dim_b});
  return out;
}

// Partial transpose in the first tensor factor of a map on V_{d1} (x) V_{d2}:
// out[(i',k),(i,l)] = in[(i,k),(i',l)].
template <class T>
Matrix<T> partial_transpose_first(const Matrix<T>& m, int d1, int d2) {
  if (m.rows() != d1 * d2 || m.cols() != d1 * d2)
    throw argument_error("partial_transpose_first: dimension mismatch");
  Matrix<T> out(d1 * d2, d1 * d2);
  for (int i = 0; i < d1; ++i)
    for (int ip = 0; ip < d1; ++ip)
      for (int k = 0; k < d2; ++k)
        for (int l = 0; l < d2; ++l)
          out(ip * d2 + k, i * d2 + l) = m(i * d2 + k, ip * d2 + l);
  out.set_factors(m.row_factors(), m.col_factors());
  return out;
}

// Overload inferring (d1, d2) from the stored factor metadata.
template <class T>
Matrix<T> partial_transpose_first(const Matrix<T>& m) {
  const auto& f = m.row_factors();
  if (f.size() != 2 || f != m.col_factors())
    throw argument_error(
        "partial_transpose_first: need two equal tensor factors");
  return partial_transpose_first(m, f[0], f[1]);
}

template <class T>
T residual(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw argument_error("residual: shape mismatch");
  T diff(0);
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      diff = std::max(diff, std::abs(a(i, j) - b(i, j)));
  return diff / std::max(T(1), std::max(a.max_abs(), b.max_abs()));
}

// Gauss-Jordan inverse with partial pivoting.
template <class T>
Matrix<T> inverse(const Matrix<T>& m) {
  if (m.rows() != m.cols()) throw argument_error("inverse: matrix not square");
  const int n = m.rows();
  Matrix<T> a = m;
  Matrix<T> inv = Matrix<T>::identity(n);
  const T scale = std::max(T(1), m.max_abs());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int row = col + 1; row < n; ++row)
      if (std::abs(a(row, col)) > std::abs(a(piv, col))) piv = row;
    if (std::abs(a(piv, col)) < T(pole_threshold) * scale)
      throw pole_error("inverse: matrix is numerically singular");
    if (piv != col)
      for (int j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    const cx<T> d = a(col, col);
    for (int j = 0; j < n; ++j) {
      a(col, j) /= d;
      inv(col, j) /= d;
    }
    for (int row = 0; row < n; ++row) {
      if (row == col) continue;
      const cx<T> f = a(row, col);
      if (f == cx<T>(T(0))) continue;
      for (int j = 0; j < n; ++j) {
        a(row, j) -= f * a(col, j);
        inv(row, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

// ---------------------------------------------------------------------------
// Fixed structural operators.
//
// Two-dimensional factor basis (v_+, v_-); V (x) V basis (++, +-, -+, --);
// symmetric subspace basis (v_2, v_0, v_-2) with v_0 = (+- & -+)/2 on
// embedding and unit coefficients on restriction, so that
// sym_embed * sym_restrict = (P + 1)/2.
// ---------------------------------------------------------------------------

template <class T = double>
Matrix<T> sigma_y() {
  Matrix<T> s(2, 2);
  s(0, 1) = cx<T>(T(0), T(-1));
  s(1, 0) = cx<T>(T(0), T(1));
  return s;
}

// iota: V^(2) -> V (x) V.
template <class T = double>
Matrix<T> sym_embed_matrix() {
  Matrix<T> m(4, 3);
  m(0, 0) = cx<T>(T(1));
  m(1, 1) = cx<T>(T(0.5));
  m(2, 1) = cx<T>(T(0.5));
  m(3, 2) = cx<T>(T(1));
  return m;
}

// pi: V (x) V -> V^(2).
template <class T = double>
Matrix<T> sym_restrict_matrix() {
  Matrix<T> m(3, 4);
  m(0, 0) = cx<T>(T(1));
  m(1, 1) = cx<T>(T(1));
  m(1, 2) = cx<T>(T(1));
  m(2, 3) = cx<T>(T(1));
  return m;
}

// Symmetrizer Pi = iota * pi = (P + 1)/2 on V (x) V.
template <class T = double>
Matrix<T> symmetrizer() {
  return sym_embed_matrix<T>() * sym_restrict_matrix<T>();
}

// ---------------------------------------------------------------------------
// Vector helpers.
// ---------------------------------------------------------------------------

template <class T>
using Vector = std::vector<cx<T>>;

template <class T>
Vector<T> mat_vec(const Matrix<T>& m, const Vector<T>& v) {
  if (m.cols() != static_cast<int>(v.size()))
    throw argument_error("mat_vec: shape mismatch");
  Vector<T> out(m.rows(), cx<T>(T(0)));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

// v^t M, i.e. the action of M^t on v.
template <class T>
Vector<T> mat_tvec(const Matrix<T>& m, const Vector<T>& v) {
  if (m.rows() != static_cast<int>(v.size()))
    throw argument_error("mat_tvec: shape mismatch");
  Vector<T> out(m.cols(), cx<T>(T(0)));
  for (int j = 0; j < m.cols(); ++j)
    for (int i = 0; i < m.rows(); ++i) out[j] += m(i, j) * v[i];
  return out;
}

template <class T>
T vec_residual(const Vector<T>& a, const Vector<T>& b) {
  if (a.size() != b.size()) throw argument_error("vec_residual: size mismatch");
  T diff(0), scale(1);
  for (size_t k = 0; k < a.size(); ++k) {
    diff = std::max(diff, std::abs(a[k] - b[k]));
    scale = std::max(scale, std::max(std::abs(a[k]), std::abs(b[k])));
  }
  return diff / scale;
}

}  // namespace ellfuse
