#include "gmalie/mapseq.hpp"

namespace gmalie {

MapSequence zero_sequence(Field f, std::size_t dim, std::size_t order) {
  MapSequence s;
  s.maps.push_back(Matrix::identity(f, dim));
  for (std::size_t k = 1; k <= order; ++k) s.maps.emplace_back(f, dim, dim);
  return s;
}

MapSequence make_sequence(Field f, std::size_t dim, std::vector<Matrix> higher) {
  MapSequence s;
  s.maps.push_back(Matrix::identity(f, dim));
  for (auto& m : higher) s.maps.push_back(std::move(m));
  check_shape(s, dim);
  return s;
}

MapSequence make_tau(Field f, std::size_t dim, std::vector<Matrix> higher) {
  MapSequence s;
  s.tau = true;
  s.maps.emplace_back(f, dim, dim);
  for (auto& m : higher) s.maps.push_back(std::move(m));
  check_shape(s, dim);
  return s;
}

MapSequence truncate(const MapSequence& s, std::size_t order) {
  if (order > s.order()) throw Error("cannot truncate to an order above the sequence order");
  MapSequence out;
  out.tau = s.tau;
  out.maps.assign(s.maps.begin(), s.maps.begin() + static_cast<std::ptrdiff_t>(order + 1));
  return out;
}

void check_shape(const MapSequence& s, std::size_t dim) {
  if (s.maps.empty()) throw Error("empty map sequence");
  for (const auto& m : s.maps)
    if (m.rows() != dim || m.cols() != dim) throw Error("map sequence entry has wrong shape");
  if (!s.tau && s.maps[0] != Matrix::identity(s.maps[0].field(), dim))
    throw Error("L_0 must be the identity map");
}

namespace {

std::vector<std::vector<Vec>> images(const FinDimAlgebra& alg, const MapSequence& s, std::size_t order) {
  std::vector<std::vector<Vec>> img(order + 1);
  for (std::size_t k = 0; k <= order; ++k)
    for (std::size_t x = 0; x < alg.dim(); ++x) img[k].push_back(s.maps[k].column(x));
  return img;
}

void require_order(const FinDimAlgebra& alg, const MapSequence& s, std::size_t order) {
  if (order > s.order()) throw Error("verification order exceeds the sequence order");
  check_shape(s, alg.dim());
}

}  // namespace

CheckResult verify_hd(const FinDimAlgebra& alg, const MapSequence& s, std::size_t order) {
  require_order(alg, s, order);
  auto img = images(alg, s, order);
  const std::size_t n = alg.dim();
  for (std::size_t k = 1; k <= order; ++k)
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        Vec lhs = s.maps[k].apply(alg.product(x, y));
        Vec rhs = alg.zero();
        for (std::size_t i = 0; i <= k; ++i) {
          if (is_zero(img[i][x]) || is_zero(img[k - i][y])) continue;
          axpy(rhs, Scalar::one(alg.field()), alg.multiply(img[i][x], img[k - i][y]));
        }
        if (lhs != rhs) return {false, Witness{k, x, y, std::move(lhs), std::move(rhs)}};
      }
  return {};
}

CheckResult verify_lhd(const FinDimAlgebra& alg, const MapSequence& s, std::size_t order) {
  require_order(alg, s, order);
  auto img = images(alg, s, order);
  const std::size_t n = alg.dim();
  for (std::size_t k = 1; k <= order; ++k)
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        Vec lhs = s.maps[k].apply(alg.commutator(alg.basis(x), alg.basis(y)));
        Vec rhs = alg.zero();
        for (std::size_t i = 0; i <= k; ++i) {
          if (is_zero(img[i][x]) || is_zero(img[k - i][y])) continue;
          axpy(rhs, Scalar::one(alg.field()), alg.commutator(img[i][x], img[k - i][y]));
        }
        if (lhs != rhs) return {false, Witness{k, x, y, std::move(lhs), std::move(rhs)}};
      }
  return {};
}

CheckResult is_center_valued_vanishing(const FinDimAlgebra& alg, const MapSequence& tau, std::size_t order) {
  if (order > tau.order()) throw Error("verification order exceeds the sequence order");
  for (std::size_t k = 1; k <= order; ++k)
    if (tau.maps[k].rows() != alg.dim() || tau.maps[k].cols() != alg.dim())
      throw Error("tau entry has wrong shape");
  const Subspace z = center(alg);
  const std::size_t n = alg.dim();
  for (std::size_t k = 1; k <= order; ++k) {
    for (std::size_t x = 0; x < n; ++x) {
      Vec v = tau.maps[k].column(x);
      if (!z.contains(v)) return {false, Witness{k, x, x, std::move(v), {}}};
    }
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = x + 1; y < n; ++y) {
        Vec v = tau.maps[k].apply(alg.commutator(alg.basis(x), alg.basis(y)));
        if (!is_zero(v)) return {false, Witness{k, x, y, std::move(v), alg.zero()}};
      }
  }
  return {};
}

// ---------------------------------------------------------------------------

EntryMaps extract_entries(const Gma& g, const MapSequence& s) {
  check_shape(s, g.dim());
  EntryMaps e;
  const Field f = g.field();
  for (std::size_t k = 0; k <= s.order(); ++k) {
    std::array<std::array<Matrix, 4>, 4> blk;
    for (int t = 0; t < 4; ++t)
      for (int u = 0; u < 4; ++u) {
        Block bt = static_cast<Block>(t), bu = static_cast<Block>(u);
        blk[t][u] = s.maps[k].block(g.offset(bt), g.offset(bu), g.size(bt), g.size(bu));
      }
    e.blocks.push_back(std::move(blk));
    e.m.push_back(zero_vec(f, g.size(Block::M)));
    e.n.push_back(zero_vec(f, g.size(Block::N)));
  }
  refresh_elements(g, e);
  return e;
}

void refresh_elements(const Gma& g, EntryMaps& e) {
  const auto& unit = g.context().a.unit();
  e.m.resize(e.blocks.size());
  e.n.resize(e.blocks.size());
  e.m[0] = zero_vec(g.field(), g.size(Block::M));
  e.n[0] = zero_vec(g.field(), g.size(Block::N));
  for (std::size_t k = 1; k < e.blocks.size(); ++k) {
    e.m[k] = e.get(k, Block::M, Block::A).apply(unit);
    e.n[k] = e.get(k, Block::N, Block::A).apply(unit);
  }
}

MapSequence reconstruct(const Gma& g, const EntryMaps& e, bool tau) {
  MapSequence s;
  s.tau = tau;
  for (std::size_t k = 0; k < e.blocks.size(); ++k) {
    Matrix l(g.field(), g.dim(), g.dim());
    for (int t = 0; t < 4; ++t)
      for (int u = 0; u < 4; ++u) {
        Block bt = static_cast<Block>(t), bu = static_cast<Block>(u);
        const Matrix& b = e.blocks[k][t][u];
        if (b.rows() != g.size(bt) || b.cols() != g.size(bu)) throw Error("entry map has wrong shape");
        l.set_block(g.offset(bt), g.offset(bu), b);
      }
    s.maps.push_back(std::move(l));
  }
  check_shape(s, g.dim());
  return s;
}

// ---------------------------------------------------------------------------

Matrix inner_derivation(const FinDimAlgebra& alg, std::span<const Scalar> x) {
  return alg.left_mult(x) - alg.right_mult(x);
}

namespace {

MapSequence powers_over_factorials(Field f, std::size_t dim, const Matrix& d, std::size_t order) {
  if (!f.factorial_invertible(static_cast<int>(order)))
    throw Error("characteristic too small: " + std::to_string(order) + "! is not invertible");
  std::vector<Matrix> higher;
  Matrix power = Matrix::identity(f, dim);
  Scalar fact = Scalar::one(f);
  for (std::size_t k = 1; k <= order; ++k) {
    power = power * d;
    fact *= Scalar(f, static_cast<long>(k));
    higher.push_back(fact.inverse() * power);
  }
  return make_sequence(f, dim, std::move(higher));
}

}  // namespace

MapSequence ordinary_from_derivation(const FinDimAlgebra& alg, const Matrix& d, std::size_t order) {
  if (!verify_hd(alg, make_sequence(alg.field(), alg.dim(), {d}), 1)) throw Error("map is not a derivation");
  return powers_over_factorials(alg.field(), alg.dim(), d, order);
}

MapSequence ordinary_from_lie_derivation(const FinDimAlgebra& alg, const Matrix& d, std::size_t order) {
  if (!verify_lhd(alg, make_sequence(alg.field(), alg.dim(), {d}), 1))
    throw Error("map is not a Lie derivation");
  return powers_over_factorials(alg.field(), alg.dim(), d, order);
}

MapSequence sum(const MapSequence& a, const MapSequence& b) {
  if (a.order() != b.order()) throw Error("sequence orders differ");
  if (!a.tau && !b.tau) throw Error("sum of two full sequences would double L_0");
  MapSequence out;
  out.tau = a.tau && b.tau;
  out.maps.push_back(a.tau ? b.maps[0] : a.maps[0]);
  for (std::size_t k = 1; k <= a.order(); ++k) out.maps.push_back(a.maps[k] + b.maps[k]);
  return out;
}

MapSequence scale(const Scalar& s, const MapSequence& a) {
  MapSequence out = a;
  for (std::size_t k = 1; k <= a.order(); ++k) out.maps[k] = s * a.maps[k];
  return out;
}

MapSequence difference(const MapSequence& a, const MapSequence& b) {
  if (a.order() != b.order()) throw Error("sequence orders differ");
  MapSequence out;
  out.tau = true;
  out.maps.emplace_back(a.maps[0].field(), a.maps[0].rows(), a.maps[0].cols());
  for (std::size_t k = 1; k <= a.order(); ++k) out.maps.push_back(a.maps[k] - b.maps[k]);
  return out;
}

// ---------------------------------------------------------------------------

Scalar Sampler::scalar() {
  if (!field_.is_rational()) {
    std::uniform_int_distribution<std::uint64_t> d(0, field_.prime() - 1);
    return Scalar(field_, static_cast<long>(d(rng_)));
  }
  std::uniform_int_distribution<int> d(-3, 3);
  Scalar s(field_, static_cast<long>(d(rng_)));
  if (coin(0.15)) s /= Scalar(field_, 2L);
  return s;
}

Vec Sampler::vec(std::size_t n) {
  Vec v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(scalar());
  return v;
}

Matrix Sampler::matrix(std::size_t rows, std::size_t cols) {
  Matrix m(field_, rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = scalar();
  return m;
}

std::size_t Sampler::index(std::size_t bound) {
  if (bound == 0) throw Error("empty index range");
  return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng_);
}

bool Sampler::coin(double p) { return std::bernoulli_distribution(p)(rng_); }

Vec Sampler::point(const AffineSolution& s) {
  Vec v = s.particular;
  for (const auto& b : s.homogeneous.basis()) axpy(v, scalar(), b);
  return v;
}

Matrix identity_system(const FinDimAlgebra& alg, Identity kind) {
  const std::size_t n = alg.dim();
  const Field f = alg.field();
  auto op = [&](std::size_t x, std::size_t y) {
    return kind == Identity::lie ? alg.commutator(alg.basis(x), alg.basis(y)) : alg.product(x, y);
  };
  std::vector<Vec> table(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) table[x * n + y] = op(x, y);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = kind == Identity::lie ? x + 1 : 0; y < n; ++y) pairs.emplace_back(x, y);
  Matrix sys(f, pairs.size() * n, n * n);
  std::size_t row = 0;
  for (auto [x, y] : pairs) {
    const Vec& xy = table[x * n + y];
    for (std::size_t s = 0; s < n; ++s, ++row) {
      for (std::size_t t = 0; t < n; ++t)
        if (!xy[t].is_zero()) sys(row, s * n + t) += xy[t];
      for (std::size_t r = 0; r < n; ++r) {
        const Scalar& a = table[r * n + y][s];  // op(e_r, e_y)
        if (!a.is_zero()) sys(row, r * n + x) -= a;
        const Scalar& b = table[x * n + r][s];  // op(e_x, e_r)
        if (!b.is_zero()) sys(row, r * n + y) -= b;
      }
    }
  }
  return sys;
}

Vec identity_rhs(const FinDimAlgebra& alg, Identity kind, const std::vector<Matrix>& lower, std::size_t k) {
  // sum_{i+j=k, i,j>=1} op(L_i x, L_j y)
  const std::size_t n = alg.dim();
  Vec rhs;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = kind == Identity::lie ? x + 1 : 0; y < n; ++y) {
      Vec v = alg.zero();
      for (std::size_t i = 1; i < k; ++i) {
        Vec lx = lower[i].column(x), ly = lower[k - i].column(y);
        if (is_zero(lx) || is_zero(ly)) continue;
        axpy(v, Scalar::one(alg.field()),
             kind == Identity::lie ? alg.commutator(lx, ly) : alg.multiply(lx, ly));
      }
      rhs.insert(rhs.end(), v.begin(), v.end());
    }
  return rhs;
}

namespace {

Matrix unflatten(Field f, std::size_t n, const Vec& v) {
  Matrix m(f, n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = v[r * n + c];
  return m;
}

std::optional<MapSequence> random_sequence(const FinDimAlgebra& alg, std::size_t order, Sampler& rnd,
                                           int attempts, Identity kind) {
  const Field f = alg.field();
  const std::size_t n = alg.dim();
  const Matrix sys = identity_system(alg, kind);
  for (int attempt = 0; attempt < attempts; ++attempt) {
    std::vector<Matrix> maps{Matrix::identity(f, n)};
    bool ok = true;
    for (std::size_t k = 1; k <= order && ok; ++k) {
      auto sol = solve(sys, identity_rhs(alg, kind, maps, k));
      if (!sol) {
        ok = false;
        break;
      }
      maps.push_back(unflatten(f, n, rnd.point(*sol)));
    }
    if (ok) {
      MapSequence s;
      s.maps = std::move(maps);
      return s;
    }
  }
  return std::nullopt;
}

}  // namespace

Matrix random_derivation(const FinDimAlgebra& alg, Sampler& rnd) {
  auto s = random_sequence(alg, 1, rnd, 1, Identity::associative);
  return s->maps[1];
}

Matrix random_lie_derivation(const FinDimAlgebra& alg, Sampler& rnd) {
  auto s = random_sequence(alg, 1, rnd, 1, Identity::lie);
  return s->maps[1];
}

std::optional<MapSequence> random_lhd(const FinDimAlgebra& alg, std::size_t order, Sampler& rnd, int attempts) {
  return random_sequence(alg, order, rnd, attempts, Identity::lie);
}

std::optional<MapSequence> random_hd(const FinDimAlgebra& alg, std::size_t order, Sampler& rnd, int attempts) {
  return random_sequence(alg, order, rnd, attempts, Identity::associative);
}

MapSequence random_tau(const FinDimAlgebra& alg, std::size_t order, Sampler& rnd) {
  const Field f = alg.field();
  const std::size_t n = alg.dim();
  std::vector<Vec> comms;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) comms.push_back(alg.commutator(alg.basis(x), alg.basis(y)));
  // Functionals vanishing on [G, G].
  Subspace ann = comms.empty() ? Subspace::full(f, n) : kernel(Matrix::from_rows(f, n, comms));
  Subspace z = center(alg);
  std::vector<Matrix> higher;
  for (std::size_t k = 1; k <= order; ++k) {
    Matrix t(f, n, n);
    for (const auto& zb : z.basis()) {
      Vec fn = zero_vec(f, n);
      for (const auto& a : ann.basis()) axpy(fn, rnd.scalar(), a);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
          if (!zb[r].is_zero() && !fn[c].is_zero()) t(r, c).add_product(zb[r], fn[c]);
    }
    higher.push_back(std::move(t));
  }
  return make_tau(f, n, std::move(higher));
}

}  // namespace gmalie
