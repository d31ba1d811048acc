#pragma once
// Shared fixtures for the unit tests and the acceptance runner: instance pools, perturbations
// and block arithmetic written directly against the Morita context (not through Gma::multiply).

#include <functional>
#include <string>
#include <vector>

#include "gmalie/io.hpp"

namespace testkit {

using namespace gmalie;

struct Named {
  std::string name;
  Gma g;
};

/// Products between block elements, computed from the context actions and pairings.
struct Blocks {
  const MoritaContext& c;
  explicit Blocks(const Gma& g) : c(g.context()) {}

  Vec aa(const Vec& x, const Vec& y) const { return c.a.multiply(x, y); }
  Vec bb(const Vec& x, const Vec& y) const { return c.b.multiply(x, y); }
  Vec am(const Vec& a, const Vec& m) const { return c.m.act_left(a, m); }
  Vec mb(const Vec& m, const Vec& b) const { return c.m.act_right(m, b); }
  Vec bn(const Vec& b, const Vec& n) const { return c.n.act_left(b, n); }
  Vec na(const Vec& n, const Vec& a) const { return c.n.act_right(n, a); }
  Vec mn(const Vec& m, const Vec& n) const { return c.pair_mn(m, n); }
  Vec nm(const Vec& n, const Vec& m) const { return c.pair_nm(n, m); }
};

/// Block `target <- source` of a full GMA map, read off the matrix directly.
Matrix block(const Gma& g, const Matrix& map, Block target, Block source);
/// L_k(1_A) projected to M, and to N.
Vec m_elem(const Gma& g, const MapSequence& s, std::size_t k);
Vec n_elem(const Gma& g, const MapSequence& s, std::size_t k);

/// Matrix with columns fn(e_0), ..., fn(e_{cols-1}).
Matrix tabulate(Field f, std::size_t rows, std::size_t cols, const std::function<Vec(const Vec&)>& fn);

/// Small GMAs with both modules nonzero (dim <= 12).
std::vector<Named> mixed_pool(Field f, std::uint64_t seed);
/// Weakly faithful GMAs, including triangular ones with faithful M.
std::vector<Named> weakly_faithful_pool(Field f, std::uint64_t seed);
/// Incidence GMA of a random preorder on n points; retries until both corners are proper.
Named random_incidence(Field f, std::size_t n, Sampler& rnd);

/// A one-entry change of L_k for a random k in 1..order.
MapSequence perturb(const MapSequence& s, Sampler& rnd);
/// Changes one random entry of the given block of L_k.
MapSequence perturb_block(const Gma& g, const MapSequence& s, std::size_t k, Block target, Block source,
                          Sampler& rnd);

/// Tri(A, V (x) W, B) with V a left A-module and W a right B-module, each given by action matrices
/// on the basis of A (resp. B); faithful records whether both representations are injective.
struct TriangularCase {
  std::string name;
  Gma g;
  bool m_faithful = false;
};
TriangularCase random_triangular(Field f, Sampler& rnd);

/// The algebras used for random triangular instances.
std::vector<std::pair<std::string, FinDimAlgebra>> small_algebras(Field f);
/// One-dimensional representations by enumeration: all of F_p when small, else values in {-1, 0, 1}.
std::vector<Vec> characters(const FinDimAlgebra& a);

}  // namespace testkit
