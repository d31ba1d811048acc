#include "gmalie/linalg.hpp"

#include <algorithm>

namespace gmalie {

Vec zero_vec(Field f, std::size_t n) { return Vec(n, Scalar(f)); }

Vec unit_vec(Field f, std::size_t n, std::size_t i) {
  Vec v = zero_vec(f, n);
  v.at(i) = Scalar::one(f);
  return v;
}

bool is_zero(std::span<const Scalar> v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

Vec add(std::span<const Scalar> a, std::span<const Scalar> b) {
  if (a.size() != b.size()) throw Error("vector length mismatch");
  Vec out(a.begin(), a.end());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

Vec sub(std::span<const Scalar> a, std::span<const Scalar> b) {
  if (a.size() != b.size()) throw Error("vector length mismatch");
  Vec out(a.begin(), a.end());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  return out;
}

Vec scale(const Scalar& s, std::span<const Scalar> v) {
  Vec out(v.begin(), v.end());
  for (auto& x : out) x *= s;
  return out;
}

void axpy(Vec& y, const Scalar& s, std::span<const Scalar> x) {
  if (y.size() != x.size()) throw Error("vector length mismatch");
  if (s.is_zero()) return;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) y[i].add_product(s, x[i]);
}

// ---------------------------------------------------------------------------

Matrix Matrix::identity(Field f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(f);
  return m;
}

Matrix Matrix::from_rows(Field f, std::size_t cols, std::span<const Vec> rows) {
  Matrix m(f, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error("row length mismatch");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Matrix Matrix::from_columns(Field f, std::size_t rows, std::span<const Vec> cols) {
  Matrix m(f, rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) m.set_column(c, cols[c]);
  return m;
}

Vec Matrix::column(std::size_t c) const {
  Vec v;
  v.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v.push_back((*this)(r, c));
  return v;
}

void Matrix::set_column(std::size_t c, std::span<const Scalar> v) {
  if (v.size() != rows_) throw Error("column length mismatch");
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

Vec Matrix::apply(std::span<const Scalar> v) const {
  if (v.size() != cols_) throw Error("matrix/vector dimension mismatch");
  Vec out = zero_vec(field_, rows_);
  for (std::size_t c = 0; c < cols_; ++c) {
    if (v[c].is_zero()) continue;
    for (std::size_t r = 0; r < rows_; ++r) {
      const Scalar& a = (*this)(r, c);
      if (!a.is_zero()) out[r].add_product(a, v[c]);
    }
  }
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool Matrix::is_zero() const { return gmalie::is_zero(data_); }

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw Error("block out of range");
  Matrix b(field_, nr, nc);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
  return b;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& m) {
  if (r0 + m.rows_ > rows_ || c0 + m.cols_ > cols_) throw Error("block out of range");
  for (std::size_t r = 0; r < m.rows_; ++r)
    for (std::size_t c = 0; c < m.cols_; ++c) (*this)(r0 + r, c0 + c) = m(r, c);
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw Error("matrix product shape mismatch");
  Matrix out(a.field_, a.rows_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& x = a(r, k);
      if (x.is_zero()) continue;
      for (std::size_t c = 0; c < b.cols_; ++c) {
        const Scalar& y = b(k, c);
        if (!y.is_zero()) out(r, c).add_product(x, y);
      }
    }
  return out;
}

Matrix operator*(const Scalar& s, Matrix m) {
  for (auto& x : m.data_) x *= s;
  return m;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

// ---------------------------------------------------------------------------

RowEchelon rref(Matrix m) {
  RowEchelon out;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < cols && pivot_row < rows; ++c) {
    std::size_t sel = rows;
    for (std::size_t r = pivot_row; r < rows; ++r)
      if (!m(r, c).is_zero()) {
        sel = r;
        break;
      }
    if (sel == rows) continue;
    if (sel != pivot_row)
      for (std::size_t j = c; j < cols; ++j) std::swap(m(sel, j), m(pivot_row, j));
    Scalar inv = m(pivot_row, c).inverse();
    for (std::size_t j = c; j < cols; ++j) m(pivot_row, j) *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == pivot_row || m(r, c).is_zero()) continue;
      Scalar factor = -m(r, c);
      for (std::size_t j = c; j < cols; ++j)
        if (!m(pivot_row, j).is_zero()) m(r, j).add_product(factor, m(pivot_row, j));
    }
    out.pivots.push_back(c);
    ++pivot_row;
  }
  out.reduced = std::move(m);
  return out;
}

std::size_t rank(const Matrix& m) { return rref(m).rank(); }

// ---------------------------------------------------------------------------

Subspace::Subspace(Field f, std::size_t ambient) : field_(f), ambient_(ambient) {}

Subspace Subspace::span(Field f, std::size_t ambient, std::span<const Vec> vectors) {
  Subspace s(f, ambient);
  if (vectors.empty()) return s;
  RowEchelon e = rref(Matrix::from_rows(f, ambient, vectors));
  for (std::size_t i = 0; i < e.rank(); ++i) {
    auto row = e.reduced.row(i);
    s.basis_.emplace_back(row.begin(), row.end());
  }
  s.pivots_ = e.pivots;
  return s;
}

Subspace Subspace::full(Field f, std::size_t ambient) {
  Subspace s(f, ambient);
  for (std::size_t i = 0; i < ambient; ++i) {
    s.basis_.push_back(unit_vec(f, ambient, i));
    s.pivots_.push_back(i);
  }
  return s;
}

std::optional<Vec> Subspace::coordinates(std::span<const Scalar> v) const {
  if (v.size() != ambient_) throw Error("subspace ambient mismatch");
  Vec rest(v.begin(), v.end());
  Vec coords = zero_vec(field_, basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const Scalar c = rest[pivots_[i]];
    if (c.is_zero()) continue;
    coords[i] = c;
    axpy(rest, -c, basis_[i]);
  }
  if (!gmalie::is_zero(rest)) return std::nullopt;
  return coords;
}

bool Subspace::contains(std::span<const Scalar> v) const { return coordinates(v).has_value(); }

bool Subspace::contains(const Subspace& other) const {
  return std::all_of(other.basis_.begin(), other.basis_.end(),
                     [&](const Vec& b) { return contains(b); });
}

bool operator==(const Subspace& a, const Subspace& b) {
  return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
}

Subspace kernel(const Matrix& a) {
  const Field f = a.field();
  RowEchelon e = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vec> vecs;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec v = unit_vec(f, a.cols(), free);
    for (std::size_t i = 0; i < e.rank(); ++i) v[e.pivots[i]] = -e.reduced(i, free);
    vecs.push_back(std::move(v));
  }
  return Subspace::span(f, a.cols(), vecs);
}

Subspace image(const Matrix& a) {
  std::vector<Vec> cols;
  for (std::size_t c = 0; c < a.cols(); ++c) cols.push_back(a.column(c));
  return Subspace::span(a.field(), a.rows(), cols);
}

Subspace intersect(const Subspace& u, const Subspace& v) {
  if (u.ambient() != v.ambient()) throw Error("subspace ambient mismatch");
  const Field f = u.field();
  const std::size_t n = u.ambient();
  if (u.is_zero() || v.is_zero()) return Subspace(f, n);
  // Solve sum x_i u_i - sum y_j v_j = 0, then map x back into the ambient space.
  Matrix sys(f, n, u.dim() + v.dim());
  for (std::size_t i = 0; i < u.dim(); ++i)
    for (std::size_t r = 0; r < n; ++r) sys(r, i) = u.basis()[i][r];
  for (std::size_t j = 0; j < v.dim(); ++j)
    for (std::size_t r = 0; r < n; ++r) sys(r, u.dim() + j) = -v.basis()[j][r];
  std::vector<Vec> out;
  const Subspace ker = kernel(sys);
  for (const Vec& k : ker.basis()) {
    Vec w = zero_vec(f, n);
    for (std::size_t i = 0; i < u.dim(); ++i) axpy(w, k[i], u.basis()[i]);
    out.push_back(std::move(w));
  }
  return Subspace::span(f, n, out);
}

Subspace sum(const Subspace& u, const Subspace& v) {
  if (u.ambient() != v.ambient()) throw Error("subspace ambient mismatch");
  std::vector<Vec> all = u.basis();
  all.insert(all.end(), v.basis().begin(), v.basis().end());
  return Subspace::span(u.field(), u.ambient(), all);
}

std::optional<AffineSolution> solve(const Matrix& a, std::span<const Scalar> b) {
  if (b.size() != a.rows()) throw Error("solve: right-hand side length mismatch");
  const Field f = a.field();
  Matrix aug(f, a.rows(), a.cols() + 1);
  aug.set_block(0, 0, a);
  for (std::size_t r = 0; r < a.rows(); ++r) aug(r, a.cols()) = b[r];
  RowEchelon e = rref(std::move(aug));
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
  Vec x = zero_vec(f, a.cols());
  for (std::size_t i = 0; i < e.rank(); ++i) x[e.pivots[i]] = e.reduced(i, a.cols());
  return AffineSolution{std::move(x), kernel(a)};
}

}  // namespace gmalie
