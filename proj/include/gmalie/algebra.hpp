#pragma once
// Finite-dimensional unital associative algebras given by structure constants.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gmalie/linalg.hpp"

namespace gmalie {

/// e_i * e_j = sum_m c[i][j][m] e_m, with a distinguished unit vector.
class FinDimAlgebra {
 public:
  FinDimAlgebra() = default;
  /// products[i * dim + j] is the coordinate vector of e_i * e_j.
  FinDimAlgebra(Field f, std::vector<std::string> labels, Vec unit, std::vector<Vec> products);

  [[nodiscard]] Field field() const { return field_; }
  [[nodiscard]] std::size_t dim() const { return labels_.size(); }
  [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
  [[nodiscard]] const Vec& unit() const { return unit_; }
  [[nodiscard]] const Vec& product(std::size_t i, std::size_t j) const { return products_[i * dim() + j]; }
  [[nodiscard]] Vec basis(std::size_t i) const { return unit_vec(field_, dim(), i); }
  [[nodiscard]] Vec zero() const { return zero_vec(field_, dim()); }

  [[nodiscard]] Vec multiply(std::span<const Scalar> x, std::span<const Scalar> y) const;
  [[nodiscard]] Vec commutator(std::span<const Scalar> x, std::span<const Scalar> y) const;
  /// Matrix of y -> x y.
  [[nodiscard]] Matrix left_mult(std::span<const Scalar> x) const;
  /// Matrix of y -> y x.
  [[nodiscard]] Matrix right_mult(std::span<const Scalar> x) const;
  [[nodiscard]] bool is_commutative() const;

 private:
  void check(std::span<const Scalar> x) const;

  Field field_{};
  std::vector<std::string> labels_;
  Vec unit_;
  std::vector<Vec> products_;
};

struct ValidationIssue {
  std::string kind;                  // "associativity", "unit", "shape", ...
  std::vector<std::size_t> indices;  // failing basis indices
  std::string detail;
};

/// Empty iff the algebra is associative with a two-sided unit.
std::vector<ValidationIssue> validate(const FinDimAlgebra& alg);

Vec multiply(const FinDimAlgebra& alg, std::span<const Scalar> x, std::span<const Scalar> y);
Vec commutator(const FinDimAlgebra& alg, std::span<const Scalar> x, std::span<const Scalar> y);

/// Kernel of the stacked maps z -> [z, e_i].
Subspace center(const FinDimAlgebra& alg);

/// S = { z in Z : e_i z in Z for every i }; nonzero iff a nonzero central ideal exists.
Subspace central_ideal_core(const FinDimAlgebra& alg);
bool has_nonzero_central_ideal(const FinDimAlgebra& alg);

enum class Tri { yes, no, unknown };
const char* to_string(Tri t);

struct DomainResult {
  Tri status = Tri::unknown;
  std::optional<std::pair<Vec, Vec>> witness;  // x y = 0 with x, y nonzero
  std::string reason;
};

/// Largest projective-point count that exhaustive searches will enumerate.
inline constexpr std::uint64_t kExhaustiveLimit = 2'000'000;

DomainResult is_domain(const FinDimAlgebra& alg);

bool is_idempotent(const FinDimAlgebra& alg, std::span<const Scalar> e);
bool is_nontrivial_idempotent(const FinDimAlgebra& alg, std::span<const Scalar> e);

/// Calls fn(v) on one representative of every projective point of F_p^n
/// (first nonzero coordinate equal to 1); stops early when fn returns true.
/// Returns false if the count exceeds kExhaustiveLimit or the field is Q.
bool for_each_projective_point(Field f, std::size_t n, const std::function<bool(const Vec&)>& fn);

// Named algebras -------------------------------------------------------------

FinDimAlgebra field_algebra(Field f);
/// Full matrix algebra with basis e_ij in row-major order.
FinDimAlgebra matrix_algebra(Field f, std::size_t n);
/// Upper-triangular n x n matrices, basis e_ij (i <= j) row-major.
FinDimAlgebra upper_triangular_algebra(Field f, std::size_t n);
/// F[x]/(x^n), basis 1, x, ..., x^{n-1}.
FinDimAlgebra truncated_polynomial_algebra(Field f, std::size_t n);
/// Subalgebra of M_n spanned by the given matrices (must contain the identity
/// and be closed under products; violations throw).
FinDimAlgebra matrix_subalgebra(Field f, std::size_t n, const std::vector<Matrix>& basis,
                                std::vector<std::string> labels);
FinDimAlgebra direct_product(const FinDimAlgebra& a, const FinDimAlgebra& b);

}  // namespace gmalie
