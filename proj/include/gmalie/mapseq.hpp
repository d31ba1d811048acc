#pragma once
// Truncated sequences of linear endomaps and the (Lie) higher derivation identities.

#include <array>
#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gmalie/morita.hpp"

namespace gmalie {

/// maps[0..K]. A full sequence has maps[0] = id; a tau sequence ignores maps[0].
struct MapSequence {
  std::vector<Matrix> maps;
  bool tau = false;

  [[nodiscard]] std::size_t order() const { return maps.empty() ? 0 : maps.size() - 1; }
  [[nodiscard]] const Matrix& operator[](std::size_t k) const { return maps.at(k); }
};

/// L_0 = id, L_1..L_K zero.
MapSequence zero_sequence(Field f, std::size_t dim, std::size_t order);
/// Builds {id, higher[0], higher[1], ...}.
MapSequence make_sequence(Field f, std::size_t dim, std::vector<Matrix> higher);
/// A tau sequence with tau_1..tau_K = higher.
MapSequence make_tau(Field f, std::size_t dim, std::vector<Matrix> higher);
/// Truncation to order K.
MapSequence truncate(const MapSequence& s, std::size_t order);

/// Throws unless L_0 is the identity (full sequences) and all maps are dim x dim.
void check_shape(const MapSequence& s, std::size_t dim);

struct Witness {
  std::size_t k = 0;
  std::size_t x = 0, y = 0;
  Vec lhs, rhs;
};

struct CheckResult {
  bool ok = true;
  std::optional<Witness> witness;
  explicit operator bool() const { return ok; }
};

/// D_k(xy) = sum_{i+j=k} D_i(x) D_j(y) on all basis pairs, k = 1..K.
CheckResult verify_hd(const FinDimAlgebra& alg, const MapSequence& s, std::size_t order);
/// L_k([x,y]) = sum_{i+j=k} [L_i(x), L_j(y)] on all basis pairs, k = 1..K.
CheckResult verify_lhd(const FinDimAlgebra& alg, const MapSequence& s, std::size_t order);
/// tau_k(e_x) central (witness y = x, rhs empty) and tau_k([e_x, e_y]) = 0.
CheckResult is_center_valued_vanishing(const FinDimAlgebra& alg, const MapSequence& tau, std::size_t order);

// Entry maps ----------------------------------------------------------------------

/// blocks[k][target][source], indexed by Block. m[k] = f_1k(1), n[k] = g_1k(1).
struct EntryMaps {
  std::vector<std::array<std::array<Matrix, 4>, 4>> blocks;
  std::vector<Vec> m, n;

  [[nodiscard]] std::size_t order() const { return blocks.empty() ? 0 : blocks.size() - 1; }
  [[nodiscard]] const Matrix& get(std::size_t k, Block target, Block source) const {
    return blocks.at(k)[static_cast<int>(target)][static_cast<int>(source)];
  }
  Matrix& get(std::size_t k, Block target, Block source) {
    return blocks.at(k)[static_cast<int>(target)][static_cast<int>(source)];
  }
};

EntryMaps extract_entries(const Gma& g, const MapSequence& s);
/// Assembles each L_k from its blocks; m, n are ignored.
MapSequence reconstruct(const Gma& g, const EntryMaps& e, bool tau = false);
/// Recomputes m[k], n[k] from the f_1k, g_1k blocks.
void refresh_elements(const Gma& g, EntryMaps& e);

// Generators and arithmetic -----------------------------------------------------

Matrix inner_derivation(const FinDimAlgebra& alg, std::span<const Scalar> x);
/// {d^k / k!}; throws unless d is a derivation and K! is invertible.
MapSequence ordinary_from_derivation(const FinDimAlgebra& alg, const Matrix& d, std::size_t order);
/// Same construction for a Lie derivation, giving a Lie higher derivation.
MapSequence ordinary_from_lie_derivation(const FinDimAlgebra& alg, const Matrix& d, std::size_t order);

/// Pointwise sum; L_0 is taken from whichever operand is a full sequence.
MapSequence sum(const MapSequence& a, const MapSequence& b);
/// s * L_k for k >= 1.
MapSequence scale(const Scalar& s, const MapSequence& a);
MapSequence difference(const MapSequence& a, const MapSequence& b);

// Linear systems ---------------------------------------------------------------------

enum class Identity { associative, lie };

/// Rows in the entries X(r, c) (variable r * dim + c) expressing
/// X(op(x, y)) - op(X x, y) - op(x, X y) for all basis pairs (x < y for the bracket).
Matrix identity_system(const FinDimAlgebra& alg, Identity kind);
/// sum_{i+j=k, i,j>=1} op(L_i x, L_j y), stacked in the row order of identity_system.
Vec identity_rhs(const FinDimAlgebra& alg, Identity kind, const std::vector<Matrix>& lower, std::size_t k);

// Random sampling -------------------------------------------------------------------

class Sampler {
 public:
  Sampler(Field f, std::uint64_t seed) : field_(f), rng_(seed) {}
  [[nodiscard]] Field field() const { return field_; }
  std::mt19937_64& rng() { return rng_; }

  /// Uniform residue over F_p; small integers or halves over Q.
  Scalar scalar();
  Vec vec(std::size_t n);
  Matrix matrix(std::size_t rows, std::size_t cols);
  std::size_t index(std::size_t bound);
  bool coin(double p = 0.5);
  /// x0 + random combination of the homogeneous basis.
  Vec point(const AffineSolution& s);

 private:
  Field field_;
  std::mt19937_64 rng_;
};

/// A random element of the space of derivations (or Lie derivations) of alg.
Matrix random_derivation(const FinDimAlgebra& alg, Sampler& rnd);
Matrix random_lie_derivation(const FinDimAlgebra& alg, Sampler& rnd);

/// Random tau with tau_k center valued and vanishing on commutators.
MapSequence random_tau(const FinDimAlgebra& alg, std::size_t order, Sampler& rnd);

/// Order-by-order random solution of the Lie higher derivation identities.
/// nullopt when an order is obstructed for every attempt.
std::optional<MapSequence> random_lhd(const FinDimAlgebra& alg, std::size_t order, Sampler& rnd,
                                      int attempts = 8);
/// Same for higher derivations.
std::optional<MapSequence> random_hd(const FinDimAlgebra& alg, std::size_t order, Sampler& rnd,
                                     int attempts = 8);

}  // namespace gmalie
