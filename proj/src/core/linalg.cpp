#include "core/linalg.hpp"

#include <algorithm>

#include "core/error.hpp"

namespace svf {

bool is_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
}

Vector zero_vector(std::size_t n) { return Vector(n); }

Vector unit_vector(std::size_t n, std::size_t i) {
  Vector v(n);
  v[i] = 1;
  return v;
}

Vector operator+(const Vector& a, const Vector& b) {
  Vector out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

Vector operator-(const Vector& a, const Vector& b) {
  Vector out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] -= b[i];
  return out;
}

Vector operator*(const Rational& s, const Vector& v) {
  Vector out(v);
  for (auto& x : out) x *= s;
  return out;
}

void axpy(Vector& a, const Rational& s, const Vector& b) {
  if (sgn(s) == 0) return;
  Rational t;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(b[i]) == 0) continue;
    mpq_mul(t.get_mpq_t(), s.get_mpq_t(), b[i].get_mpq_t());
    a[i] += t;
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& columns, std::size_t rows) {
  Matrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) m.set_column(j, columns[j]);
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) fail(ErrorKind::Internal, "row length mismatch");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Vector Matrix::row(std::size_t i) const {
  return Vector(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
}

Vector Matrix::column(std::size_t j) const {
  Vector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void Matrix::set_column(std::size_t j, const Vector& v) {
  if (v.size() != rows_) fail(ErrorKind::Internal, "column length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

bool Matrix::is_zero() const { return svf::is_zero(data_); }

bool Matrix::is_identity() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) fail(ErrorKind::Internal, "shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) fail(ErrorKind::Internal, "shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(const Rational& s) {
  for (auto& x : data_) x *= s;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) fail(ErrorKind::Internal, "shape mismatch in product");
  Matrix c(a.rows(), b.cols());
  // Nonzero column pattern of each row of b, computed once.
  std::vector<std::vector<std::size_t>> b_nonzero(b.rows());
  for (std::size_t k = 0; k < b.rows(); ++k)
    for (std::size_t j = 0; j < b.cols(); ++j)
      if (sgn(b(k, j)) != 0) b_nonzero[k].push_back(j);
  Rational t;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Rational& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j : b_nonzero[k]) {
        mpq_mul(t.get_mpq_t(), aik.get_mpq_t(), b(k, j).get_mpq_t());
        c(i, j) += t;
      }
    }
  return c;
}

Vector operator*(const Matrix& a, const Vector& v) {
  if (a.cols() != v.size()) fail(ErrorKind::Internal, "shape mismatch in matrix-vector product");
  Vector out(a.rows());
  Rational t;
  for (std::size_t k = 0; k < a.cols(); ++k) {
    if (sgn(v[k]) == 0) continue;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (sgn(a(i, k)) == 0) continue;
      mpq_mul(t.get_mpq_t(), a(i, k).get_mpq_t(), v[k].get_mpq_t());
      out[i] += t;
    }
  }
  return out;
}

std::vector<std::size_t> rref_in_place(Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t lead_row = 0;
  Rational factor, t;
  for (std::size_t col = 0; col < m.cols() && lead_row < m.rows(); ++col) {
    std::size_t pivot = lead_row;
    while (pivot < m.rows() && sgn(m(pivot, col)) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != lead_row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pivot, j), m(lead_row, j));
    const Rational inv = 1 / m(lead_row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(lead_row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == lead_row || sgn(m(i, col)) == 0) continue;
      factor = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) {
        if (sgn(m(lead_row, j)) == 0) continue;
        mpq_mul(t.get_mpq_t(), factor.get_mpq_t(), m(lead_row, j).get_mpq_t());
        m(i, j) -= t;
      }
    }
    pivots.push_back(col);
    ++lead_row;
  }
  return pivots;
}

std::size_t rank(Matrix m) { return rref_in_place(m).size(); }

std::optional<Matrix> inverse(const Matrix& m) {
  if (!m.is_square()) return std::nullopt;
  const std::size_t n = m.rows();
  if (n == 0) return Matrix();
  Matrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  const auto pivots = rref_in_place(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

std::vector<Vector> nullspace(const Matrix& m) {
  Matrix r = m;
  const auto pivots = rref_in_place(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(m.cols());
    v[free] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -r(k, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vector> solve(const Matrix& m, const Vector& b) {
  if (b.size() != m.rows()) fail(ErrorKind::Internal, "shape mismatch in solve");
  Matrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  const auto pivots = rref_in_place(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  Vector x(m.cols());
  for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = aug(k, m.cols());
  return x;
}

Subspace Subspace::span(std::size_t ambient, const std::vector<Vector>& vectors) {
  Subspace s(ambient);
  for (const auto& v : vectors) s.add(v);
  return s;
}

Subspace Subspace::whole(std::size_t ambient) {
  Subspace s(ambient);
  for (std::size_t i = 0; i < ambient; ++i) {
    s.rows_.push_back(unit_vector(ambient, i));
    s.pivots_.push_back(i);
  }
  return s;
}

Subspace Subspace::coordinate(std::size_t ambient, const std::vector<std::size_t>& indices) {
  Subspace s(ambient);
  for (std::size_t i : indices) s.add(unit_vector(ambient, i));
  return s;
}

Vector Subspace::reduce(Vector v) const {
  if (v.size() != ambient_) fail(ErrorKind::Internal, "vector length does not match subspace");
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const Rational c = v[pivots_[k]];
    if (sgn(c) != 0) axpy(v, -c, rows_[k]);
  }
  return v;
}

bool Subspace::contains(const Vector& v) const { return svf::is_zero(reduce(v)); }

bool Subspace::contains(const Subspace& other) const {
  return std::all_of(other.rows_.begin(), other.rows_.end(),
                     [this](const Vector& v) { return contains(v); });
}

Vector Subspace::coordinates(const Vector& v) const {
  if (!contains(v)) fail(ErrorKind::Internal, "vector is not in the subspace");
  Vector c(rows_.size());
  for (std::size_t k = 0; k < rows_.size(); ++k) c[k] = v[pivots_[k]];
  return c;
}

bool Subspace::add(const Vector& v) {
  Vector r = reduce(v);
  std::size_t pivot = 0;
  while (pivot < ambient_ && sgn(r[pivot]) == 0) ++pivot;
  if (pivot == ambient_) return false;
  const Rational inv = 1 / r[pivot];
  for (auto& x : r) x *= inv;
  // Clear the new pivot column from the existing rows to keep the form reduced.
  for (auto& row : rows_) {
    const Rational c = row[pivot];
    if (sgn(c) != 0) axpy(row, -c, r);
  }
  const auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), pivot) - pivots_.begin();
  pivots_.insert(pivots_.begin() + pos, pivot);
  rows_.insert(rows_.begin() + pos, std::move(r));
  return true;
}

Subspace sum(const Subspace& a, const Subspace& b) {
  Subspace out = a;
  for (const auto& v : b.basis()) out.add(v);
  return out;
}

Subspace intersection(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) fail(ErrorKind::Internal, "ambient mismatch");
  const std::size_t n = a.ambient(), da = a.dim(), db = b.dim();
  // Solve sum_i s_i a_i - sum_j t_j b_j = 0.
  Matrix m(n, da + db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t k = 0; k < n; ++k) m(k, i) = a.basis()[i][k];
  for (std::size_t j = 0; j < db; ++j)
    for (std::size_t k = 0; k < n; ++k) m(k, da + j) = -b.basis()[j][k];
  std::vector<Vector> common;
  for (const auto& sol : nullspace(m)) {
    Vector v(n);
    for (std::size_t i = 0; i < da; ++i) axpy(v, sol[i], a.basis()[i]);
    common.push_back(std::move(v));
  }
  return Subspace::span(n, common);
}

}  // namespace svf
