#pragma once
// Deciding whether a truncated Lie higher derivation on a GMA splits as D + tau,
// with certificates that are checked independently of how they were built.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gmalie/structure.hpp"

namespace gmalie {

/// Failure of one of the two necessary conditions. condition is "A'" or "B'".
/// For "A'": indices = {side, basis index} with side 0 for B->A values, 1 for A->B values.
/// For "B'": indices = {m basis index, n basis index}.
struct PrimeWitness {
  std::string condition;
  std::size_t k = 0;
  std::vector<std::size_t> indices;
  std::string detail;
};

struct PrimeCheck {
  bool ok = true;
  std::optional<PrimeWitness> witness;
  explicit operator bool() const { return ok; }
};

/// Values of the B->A and A->B families lie in the projections of Z(G).
PrimeCheck check_A_prime(const Gma& g, const LhdFamilies& f, std::size_t order);
/// P''_k(nm) + Q''_k(mn) is central in G for all module basis pairs.
PrimeCheck check_B_prime(const Gma& g, const LhdFamilies& f, std::size_t order);
/// Re-evaluates the named condition at the witness; true iff it is genuinely violated.
bool witness_reproduces(const Gma& g, const LhdFamilies& f, const PrimeWitness& w);

struct Certificate {
  MapSequence d, tau;
  /// Central corrections on the diagonal: A->Z(A) and B->Z(B), index 0 unused.
  std::vector<Matrix> ell_a, ell_b;
  std::string method;  // "center-isomorphism" or "affine-search"
};

enum class VerdictKind { proper, improper, unknown };
const char* to_string(VerdictKind v);

struct Verdict {
  VerdictKind kind = VerdictKind::unknown;
  std::optional<Certificate> certificate;
  std::optional<PrimeWitness> witness;
  std::string reason;
  bool a_prime = false, b_prime = false, weakly_faithful = false;
  std::vector<std::string> notes;
};

/// Throws Error when seq is not a Lie higher derivation up to order.
Verdict decide_proper(const Gma& g, const MapSequence& seq, std::size_t order);

/// Order-by-order search for tau_k with L_k - tau_k extending the higher derivation built so
/// far, keeping the particular solution at each order. nullopt when some order is infeasible
/// along that path; results still need verify_certificate.
std::optional<Certificate> search_certificate(const Gma& g, const MapSequence& seq, std::size_t order);

struct CertificateCheck {
  bool ok = true;
  std::string part;  // "sum", "hd", "tau", "shape"
  std::optional<Witness> witness;
  explicit operator bool() const { return ok; }
};

/// L_k = D_k + tau_k, D a higher derivation, tau central valued and zero on commutators.
CertificateCheck verify_certificate(const FinDimAlgebra& alg, const MapSequence& seq, const MapSequence& d,
                                    const MapSequence& tau, std::size_t order);

/// gamma_k(a, b) = ell_k(a) + P''_k(b) and gamma'_k(a, b) = Q''_k(a) + ell'_k(b), as block matrices
/// [A <- A | A <- B] and [B <- A | B <- B].
struct GammaMaps {
  std::vector<Matrix> a_side, b_side;
};
GammaMaps gamma_maps(const Gma& g, const LhdFamilies& f, const Certificate& c, std::size_t order);

struct PairingReport {
  bool ok = true;                 // the identity with word corrections, on all module basis pairs
  bool bare_form_holds = true;    // the form without word corrections
  bool gamma_vanishes = true;     // gamma_k(mn, -nm) = gamma'_k(mn, -nm) = 0
  std::optional<PrimeWitness> failure;
};

/// Evaluates, for all k and module basis pairs (m, n),
///   Pd_k(mn) = pw_k(mn) + sum_{i+j=k} (A<-M_i(m) A<-N_j(n) + M<-M_i(m) N<-N_j(n)) - gamma_k(mn, -nm)
/// and its B-side analogue, where Pd, Qd are the diagonal HD families of the certificate's D and
/// pw, qw their word parts.
PairingReport pairing_crosscheck(const Gma& g, const EntryMaps& e, const LhdFamilies& f, const Certificate& c,
                                 std::size_t order);

struct SufficiencyReport {
  bool center_a_full = false, center_b_full = false;  // pi_A(Z) = Z(A), pi_B(Z) = Z(B)
  bool no_central_ideal_a = false, no_central_ideal_b = false;
  Tri domain_a = Tri::unknown, domain_b = Tri::unknown;
  Tri strongly_faithful_m = Tri::unknown, strongly_faithful_n = Tri::unknown;
  bool weakly_faithful = false;
  bool via_central_ideals = false, via_domains = false, via_strong_faithfulness = false;
  bool guaranteed = false;
};

SufficiencyReport check_sufficient(const Gma& g);

// Center-valued sequences ---------------------------------------------------------

/// Basis of the maps G -> G with diagonal block form whose blocks satisfy the centrality,
/// commutator, joint-centrality and mn/nm compatibility conditions.
std::vector<Matrix> diagonal_tau_basis(const Gma& g);
/// Random tau_1..tau_K drawn from diagonal_tau_basis.
MapSequence random_diagonal_tau(const Gma& g, std::size_t order, Sampler& rnd);

}  // namespace gmalie
