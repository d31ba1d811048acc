#pragma once
// Word sums over the module elements m_k, n_k, the auxiliary map families they
// induce, and block-level characterizations of (Lie) higher derivations on a GMA.

#include <cstddef>
#include <string>
#include <vector>

#include "gmalie/mapseq.hpp"

namespace gmalie {

/// (k-1)/2 for odd k, k/2 for even k.
int eta(int k);
/// (k-1)/2 for odd k, k/2 - 1 for even k.
int nu(int k);

/// One summand of an alternating word sum: r = alpha.size() = beta.size().
struct WordIndex {
  std::size_t lead = 0;  // the index i of the family term, or gamma for word sums
  std::vector<std::size_t> alpha, beta;
  [[nodiscard]] std::size_t weight() const;
};

/// Summands n_{a1} m_{b1} ... n_{ar} m_{br} n_gamma of the N-valued word sum of order k
/// (the bare n_k term excluded).
std::vector<WordIndex> word_indices(std::size_t k);
/// Summands with lead + (alpha+beta)_r = k, lead <= k - 2, r = 1..eta(k).
std::vector<WordIndex> family_indices(std::size_t k);

/// N-valued and M-valued word sums of orders 0..K (order 0 is zero), in block coordinates.
struct WordSums {
  std::vector<Vec> n, m;
};
/// m[j], n[j] for j = 1..K in block coordinates; index 0 is ignored.
WordSums word_sums(const Gma& g, const std::vector<Vec>& m, const std::vector<Vec>& n, std::size_t order);

/// Diagonal parts of a Lie higher derivation after removing word contributions.
/// For each k: a_left = (A<-A block) + a_left_word, a_right = (A<-A) + a_right_word,
/// b_to_a = (A<-B) - b_to_a_word, b_left = (B<-B) + b_left_word,
/// b_right = (B<-B) + b_right_word, a_to_b = (B<-A) - a_to_b_word.
/// The *_alt words are the second expressions that should coincide with the first.
struct LhdFamilies {
  std::vector<Matrix> a_left, a_right, b_to_a, b_left, b_right, a_to_b;
  std::vector<Matrix> a_left_word, a_right_word, b_to_a_word, b_to_a_word_alt;
  std::vector<Matrix> b_left_word, b_right_word, a_to_b_word, a_to_b_word_alt;
  WordSums words;
};

LhdFamilies lhd_families(const Gma& g, const EntryMaps& e, std::size_t order);

/// The higher derivation analogue: a_left = (A<-A) + a_left_word, etc.
struct HdFamilies {
  std::vector<Matrix> a_left, a_right, b_left, b_right;
  std::vector<Matrix> a_left_word, a_right_word, b_left_word, b_right_word;
  WordSums words;
};

HdFamilies hd_families(const Gma& g, const EntryMaps& e, std::size_t order);

// Condition reports ---------------------------------------------------------------

struct Violation {
  std::string condition;
  std::size_t k = 0;
  std::vector<std::size_t> indices;
  std::string detail;
};

struct ConditionReport {
  std::vector<std::string> conditions;  // every condition id evaluated, in order
  std::vector<Violation> violations;
  std::vector<Violation> diagnostics;   // disagreements that are not part of the characterization

  [[nodiscard]] bool ok() const { return violations.empty(); }
  [[nodiscard]] bool holds(const std::string& id) const;
  [[nodiscard]] std::size_t count(const std::string& id) const;
};

/// Condition ids: "1.lhd", "1.center", "1.commutator", "2" .. "12".
ConditionReport check_lhd_conditions(const Gma& g, const EntryMaps& e, std::size_t order);
/// Condition ids: "a" .. "n".
ConditionReport check_hd_conditions(const Gma& g, const EntryMaps& e, std::size_t order);
/// Condition ids: "shape", "center", "commutator", "i", "ii". Evaluation stops after "shape" fails.
ConditionReport check_tau_form(const Gma& g, const MapSequence& tau, std::size_t order);

// Synthesis ---------------------------------------------------------------------------

/// Free data of a Lie higher derivation; index 0 of every vector is ignored.
struct Ingredients {
  std::vector<Matrix> a_a, b_a, a_b, b_b;  // A<-A, A<-B, B<-A, B<-B blocks
  std::vector<Matrix> m_m, n_n;            // M<-M and N<-N blocks
  std::vector<Vec> m, n;

  [[nodiscard]] std::size_t order() const { return a_a.empty() ? 0 : a_a.size() - 1; }
};

Ingredients ingredients_of(const EntryMaps& e);
Ingredients zero_ingredients(const Gma& g, std::size_t order);

/// Fills the remaining blocks from the ingredients and checks the result is a Lie higher
/// derivation; throws Error naming the first violated condition otherwise.
MapSequence synthesize_lhd(const Gma& g, std::size_t order, const Ingredients& ing);
/// Same for higher derivations (HD families with the HD characterization).
MapSequence synthesize_hd(const Gma& g, std::size_t order, const Ingredients& ing);

/// Random ingredient sets that are consistent by construction: either the free blocks of a
/// random Lie higher derivation, or of D + tau with D ordinary from a random derivation.
enum class IngredientSource { generic, ordinary_plus_tau, inner_plus_tau };
std::optional<Ingredients> random_ingredients(const Gma& g, std::size_t order, Sampler& rnd,
                                              IngredientSource source);

}  // namespace gmalie
