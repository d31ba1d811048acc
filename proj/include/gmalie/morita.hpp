#pragma once
// Morita contexts, generalized matrix algebras and their structural predicates.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gmalie/algebra.hpp"

namespace gmalie {

/// A (L, R)-bimodule over two algebras given by action matrices.
/// left[i] is the matrix of m -> e_i m, right[j] the matrix of m -> m f_j.
class Bimodule {
 public:
  Bimodule() = default;
  Bimodule(Field f, std::vector<std::string> labels, std::vector<Matrix> left, std::vector<Matrix> right);
  static Bimodule zero(Field f, std::size_t left_dim, std::size_t right_dim);

  [[nodiscard]] Field field() const { return field_; }
  [[nodiscard]] std::size_t dim() const { return labels_.size(); }
  [[nodiscard]] std::size_t left_dim() const { return left_.size(); }
  [[nodiscard]] std::size_t right_dim() const { return right_.size(); }
  [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
  [[nodiscard]] const std::vector<Matrix>& left() const { return left_; }
  [[nodiscard]] const std::vector<Matrix>& right() const { return right_; }

  /// Matrix of m -> x m for x in the left algebra.
  [[nodiscard]] Matrix left_matrix(std::span<const Scalar> x) const;
  /// Matrix of m -> m y for y in the right algebra.
  [[nodiscard]] Matrix right_matrix(std::span<const Scalar> y) const;
  [[nodiscard]] Vec act_left(std::span<const Scalar> x, std::span<const Scalar> m) const;
  [[nodiscard]] Vec act_right(std::span<const Scalar> m, std::span<const Scalar> y) const;

 private:
  Field field_{};
  std::vector<std::string> labels_;
  std::vector<Matrix> left_;
  std::vector<Matrix> right_;
};

/// Issues with the bimodule axioms, empty when valid.
std::vector<ValidationIssue> validate_bimodule(const FinDimAlgebra& left, const FinDimAlgebra& right,
                                               const Bimodule& mod);

/// (A, B, M, N, Phi, Psi). N is a (B, A)-bimodule.
/// phi[i * dim N + j] = Phi(m_i (x) n_j) in A; psi[j * dim M + i] = Psi(n_j (x) m_i) in B.
struct MoritaContext {
  FinDimAlgebra a;
  FinDimAlgebra b;
  Bimodule m;
  Bimodule n;
  std::vector<Vec> phi;
  std::vector<Vec> psi;

  [[nodiscard]] Field field() const { return a.field(); }
  [[nodiscard]] Vec pair_mn(std::span<const Scalar> mv, std::span<const Scalar> nv) const;
  [[nodiscard]] Vec pair_nm(std::span<const Scalar> nv, std::span<const Scalar> mv) const;
};

/// Checks algebras, bimodules, balancedness of the pairings and the two
/// associativity compatibilities; also that M or N is nonzero.
std::vector<ValidationIssue> validate_context(const MoritaContext& ctx);

enum class Block { A = 0, M = 1, N = 2, B = 3 };
const char* to_string(Block b);

/// The 2x2 block algebra on basis(A) + basis(M) + basis(N) + basis(B).
class Gma {
 public:
  Gma() = default;

  [[nodiscard]] const MoritaContext& context() const { return ctx_; }
  [[nodiscard]] const FinDimAlgebra& algebra() const { return alg_; }
  [[nodiscard]] Field field() const { return alg_.field(); }
  [[nodiscard]] std::size_t dim() const { return alg_.dim(); }
  [[nodiscard]] std::size_t offset(Block b) const { return offsets_[static_cast<int>(b)]; }
  [[nodiscard]] std::size_t size(Block b) const { return sizes_[static_cast<int>(b)]; }
  [[nodiscard]] Block block_of(std::size_t index) const;

  [[nodiscard]] Vec embed(Block b, std::span<const Scalar> v) const;
  [[nodiscard]] Vec project(Block b, std::span<const Scalar> g) const;
  [[nodiscard]] Vec multiply(std::span<const Scalar> x, std::span<const Scalar> y) const {
    return alg_.multiply(x, y);
  }
  [[nodiscard]] Vec commutator(std::span<const Scalar> x, std::span<const Scalar> y) const {
    return alg_.commutator(x, y);
  }
  /// Basis element i of the given block, embedded in the GMA.
  [[nodiscard]] Vec basis(Block b, std::size_t i) const;

  friend Gma build_gma(MoritaContext ctx);

 private:
  MoritaContext ctx_;
  FinDimAlgebra alg_;
  std::array<std::size_t, 4> offsets_{};
  std::array<std::size_t, 4> sizes_{};
};

/// Throws Error naming the first failing check when the context is invalid.
Gma build_gma(MoritaContext ctx);

Vec project_a(const Gma& g, std::span<const Scalar> x);
Vec project_b(const Gma& g, std::span<const Scalar> x);

struct GmaCenter {
  Subspace center;     // in GMA coordinates
  Subspace center_a;   // pi_A(Z)
  Subspace center_b;   // pi_B(Z)
  bool diagonal_form_ok = true;  // every basis vector is a + b with am = mb, na = bn
  std::vector<std::string> issues;
};

GmaCenter center_gma(const Gma& g);

struct FaithfulnessClause {
  Tri status = Tri::unknown;
  std::string reason;
};

struct FaithfulnessReport {
  bool m_left = false, m_right = false, n_left = false, n_right = false;
  bool m_faithful = false, n_faithful = false;
  bool weakly_a = false;  // aM = 0 = Na implies a = 0
  bool weakly_b = false;  // Mb = 0 = bN implies b = 0
  bool weakly_faithful = false;
  // Strong faithfulness: clause (a) uses right faithfulness plus no annihilating
  // pairs a m = 0; clause (b) uses left faithfulness plus m b = 0.
  FaithfulnessClause strong_m_a, strong_m_b, strong_n_a, strong_n_b;
  Tri strongly_faithful_m = Tri::unknown;
  Tri strongly_faithful_n = Tri::unknown;
};

FaithfulnessReport faithfulness(const Gma& g);

/// The isomorphism pi_A(Z) -> pi_B(Z) with a + phi(a) central.
class CenterIsomorphism {
 public:
  CenterIsomorphism(Field f, std::vector<Vec> domain_basis, std::vector<Vec> image_basis);
  [[nodiscard]] const Subspace& domain() const { return domain_; }
  [[nodiscard]] const Subspace& codomain() const { return codomain_; }
  [[nodiscard]] const std::vector<Vec>& domain_basis() const { return dom_; }
  [[nodiscard]] const std::vector<Vec>& image_basis() const { return img_; }
  /// nullopt when a is outside pi_A(Z).
  [[nodiscard]] std::optional<Vec> apply(std::span<const Scalar> a) const;
  [[nodiscard]] std::optional<Vec> apply_inverse(std::span<const Scalar> b) const;

 private:
  Field field_{};
  std::vector<Vec> dom_, img_;
  Subspace domain_, codomain_;
  Matrix dom_cols_, img_cols_;
};

/// Throws Error when g is not weakly faithful or the projection is inconsistent.
CenterIsomorphism compute_phi(const Gma& g);

bool is_trivial(const Gma& g);

// Peirce decomposition ---------------------------------------------------------

struct PeirceDecomposition {
  MoritaContext context;
  /// Bases of eAe, eAf, fAe, fAf in the coordinates of the source algebra.
  std::array<std::vector<Vec>, 4> corner_bases;
};

/// Throws Error unless e is a nontrivial idempotent.
PeirceDecomposition peirce_decompose(const FinDimAlgebra& alg, std::span<const Scalar> e);

// Fixtures ---------------------------------------------------------------------

/// Tri(A, M, B): N = 0, both pairings zero.
Gma triangular(const FinDimAlgebra& a, const Bimodule& m, const FinDimAlgebra& b);
/// F^d as an (F, F)-bimodule with scalar actions.
Bimodule scalar_bimodule(Field f, std::size_t d);
/// The algebra itself as an (A, A)-bimodule.
Bimodule regular_bimodule(const FinDimAlgebra& a);
/// Peirce decomposition of M_n(F) at e_11: A = F, B = M_{n-1}(F).
Gma full_matrix(Field f, std::size_t n);
/// The ten-dimensional trivial GMA built from the commutative algebra
/// span{1, m, m'} with m^2 = m'^2 = mm' = 0 (A = span{1,m}, B = span{1,m'}).
Gma benkovic(Field f);
/// The improper Lie derivation on benkovic(f), as a matrix in the block basis.
Matrix benkovic_lie_derivation(const Gma& g);
/// Incidence algebra of a preorder on {0..n-1} (related[i*n+j] means i <= j),
/// split at the idempotent e_00 + ... + e_{p-1,p-1}.
Gma incidence_gma(Field f, std::size_t n, const std::vector<bool>& related, std::size_t p);

}  // namespace gmalie
