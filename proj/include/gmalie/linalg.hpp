#pragma once
// Dense exact linear algebra over a Field.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "gmalie/scalar.hpp"

namespace gmalie {

using Vec = std::vector<Scalar>;

Vec zero_vec(Field f, std::size_t n);
Vec unit_vec(Field f, std::size_t n, std::size_t i);
bool is_zero(std::span<const Scalar> v);
Vec add(std::span<const Scalar> a, std::span<const Scalar> b);
Vec sub(std::span<const Scalar> a, std::span<const Scalar> b);
Vec scale(const Scalar& s, std::span<const Scalar> v);
/// y += s * x
void axpy(Vec& y, const Scalar& s, std::span<const Scalar> x);

class Matrix {
 public:
  Matrix() = default;
  Matrix(Field f, std::size_t rows, std::size_t cols)
      : field_(f), rows_(rows), cols_(cols), data_(rows * cols, Scalar(f)) {}

  static Matrix identity(Field f, std::size_t n);
  static Matrix from_rows(Field f, std::size_t cols, std::span<const Vec> rows);
  static Matrix from_columns(Field f, std::size_t rows, std::span<const Vec> cols);

  [[nodiscard]] Field field() const { return field_; }
  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  [[nodiscard]] std::span<const Scalar> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  [[nodiscard]] Vec column(std::size_t c) const;
  void set_column(std::size_t c, std::span<const Scalar> v);

  [[nodiscard]] Vec apply(std::span<const Scalar> v) const;
  [[nodiscard]] Matrix transpose() const;
  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& m);

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Scalar& s, Matrix m);

  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  Field field_{};
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// Reduced row echelon form; pivots lists the pivot column of each nonzero row.
struct RowEchelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;
  [[nodiscard]] std::size_t rank() const { return pivots.size(); }
};

RowEchelon rref(Matrix m);
std::size_t rank(const Matrix& m);

/// A linear subspace of F^n carried by a reduced-echelon basis.
class Subspace {
 public:
  Subspace() = default;
  Subspace(Field f, std::size_t ambient);  // zero subspace

  static Subspace span(Field f, std::size_t ambient, std::span<const Vec> vectors);
  static Subspace full(Field f, std::size_t ambient);

  [[nodiscard]] Field field() const { return field_; }
  [[nodiscard]] std::size_t ambient() const { return ambient_; }
  [[nodiscard]] std::size_t dim() const { return basis_.size(); }
  [[nodiscard]] const std::vector<Vec>& basis() const { return basis_; }
  [[nodiscard]] bool is_zero() const { return basis_.empty(); }

  [[nodiscard]] bool contains(std::span<const Scalar> v) const;
  /// Coordinates of v in basis(), or nullopt when v is outside.
  [[nodiscard]] std::optional<Vec> coordinates(std::span<const Scalar> v) const;
  [[nodiscard]] bool contains(const Subspace& other) const;

  friend bool operator==(const Subspace& a, const Subspace& b);

 private:
  Field field_{};
  std::size_t ambient_ = 0;
  std::vector<Vec> basis_;
  std::vector<std::size_t> pivots_;
};

Subspace kernel(const Matrix& a);
Subspace image(const Matrix& a);
Subspace intersect(const Subspace& u, const Subspace& v);
Subspace sum(const Subspace& u, const Subspace& v);

/// x0 + span(kernel) is the full solution set of A x = b.
struct AffineSolution {
  Vec particular;
  Subspace homogeneous;
};

/// nullopt means the system is inconsistent.
std::optional<AffineSolution> solve(const Matrix& a, std::span<const Scalar> b);

}  // namespace gmalie
