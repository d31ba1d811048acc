#include "gmalie/algebra.hpp"

#include <sstream>

namespace gmalie {

FinDimAlgebra::FinDimAlgebra(Field f, std::vector<std::string> labels, Vec unit, std::vector<Vec> products)
    : field_(f), labels_(std::move(labels)), unit_(std::move(unit)), products_(std::move(products)) {
  const std::size_t n = labels_.size();
  if (unit_.size() != n) throw Error("algebra unit has wrong length");
  if (products_.size() != n * n) throw Error("algebra structure tensor has wrong size");
  for (const Vec& p : products_)
    if (p.size() != n) throw Error("algebra structure tensor entry has wrong length");
  for (const Scalar& s : unit_)
    if (s.field() != f) throw Error("algebra unit over wrong field");
}

void FinDimAlgebra::check(std::span<const Scalar> x) const {
  if (x.size() != dim()) throw Error("algebra element does not belong to this algebra");
}

Vec FinDimAlgebra::multiply(std::span<const Scalar> x, std::span<const Scalar> y) const {
  check(x);
  check(y);
  const std::size_t n = dim();
  Vec out = zero();
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (y[j].is_zero()) continue;
      Scalar c = x[i] * y[j];
      const Vec& p = products_[i * n + j];
      for (std::size_t m = 0; m < n; ++m)
        if (!p[m].is_zero()) out[m].add_product(c, p[m]);
    }
  }
  return out;
}

Vec FinDimAlgebra::commutator(std::span<const Scalar> x, std::span<const Scalar> y) const {
  return sub(multiply(x, y), multiply(y, x));
}

Matrix FinDimAlgebra::left_mult(std::span<const Scalar> x) const {
  Matrix m(field_, dim(), dim());
  for (std::size_t j = 0; j < dim(); ++j) m.set_column(j, multiply(x, basis(j)));
  return m;
}

Matrix FinDimAlgebra::right_mult(std::span<const Scalar> x) const {
  Matrix m(field_, dim(), dim());
  for (std::size_t j = 0; j < dim(); ++j) m.set_column(j, multiply(basis(j), x));
  return m;
}

bool FinDimAlgebra::is_commutative() const {
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = i + 1; j < dim(); ++j)
      if (product(i, j) != product(j, i)) return false;
  return true;
}

std::vector<ValidationIssue> validate(const FinDimAlgebra& alg) {
  std::vector<ValidationIssue> issues;
  const std::size_t n = alg.dim();
  for (std::size_t i = 0; i < n; ++i) {
    Vec e = alg.basis(i);
    if (alg.multiply(alg.unit(), e) != e)
      issues.push_back({"unit", {i}, "1 * " + alg.labels()[i] + " != " + alg.labels()[i]});
    if (alg.multiply(e, alg.unit()) != e)
      issues.push_back({"unit", {i}, alg.labels()[i] + " * 1 != " + alg.labels()[i]});
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Vec lhs = alg.multiply(alg.product(i, j), alg.basis(k));
        Vec rhs = alg.multiply(alg.basis(i), alg.product(j, k));
        if (lhs != rhs) {
          const auto& l = alg.labels();
          issues.push_back({"associativity", {i, j, k}, "(" + l[i] + l[j] + ")" + l[k] + " != " + l[i] + "(" + l[j] + l[k] + ")"});
        }
      }
  return issues;
}

Vec multiply(const FinDimAlgebra& alg, std::span<const Scalar> x, std::span<const Scalar> y) {
  return alg.multiply(x, y);
}

Vec commutator(const FinDimAlgebra& alg, std::span<const Scalar> x, std::span<const Scalar> y) {
  return alg.commutator(x, y);
}

namespace {

// Rows: for each basis e_i the block of z -> [z, e_i].
Matrix commutation_matrix(const FinDimAlgebra& alg) {
  const std::size_t n = alg.dim();
  Matrix c(alg.field(), n * n, n);
  for (std::size_t i = 0; i < n; ++i) {
    Vec e = alg.basis(i);
    c.set_block(i * n, 0, alg.right_mult(e) - alg.left_mult(e));
  }
  return c;
}

}  // namespace

Subspace center(const FinDimAlgebra& alg) { return kernel(commutation_matrix(alg)); }

Subspace central_ideal_core(const FinDimAlgebra& alg) {
  const std::size_t n = alg.dim();
  Matrix c = commutation_matrix(alg);
  Matrix stacked(alg.field(), n * n * (n + 1), n);
  stacked.set_block(0, 0, c);
  for (std::size_t i = 0; i < n; ++i) stacked.set_block(n * n * (i + 1), 0, c * alg.left_mult(alg.basis(i)));
  return kernel(stacked);
}

bool has_nonzero_central_ideal(const FinDimAlgebra& alg) { return !central_ideal_core(alg).is_zero(); }

const char* to_string(Tri t) {
  switch (t) {
    case Tri::yes: return "yes";
    case Tri::no: return "no";
    case Tri::unknown: return "unknown";
  }
  return "unknown";
}

bool for_each_projective_point(Field f, std::size_t n, const std::function<bool(const Vec&)>& fn) {
  if (f.is_rational() || n == 0) return false;
  const std::uint64_t p = f.prime();
  // (p^n - 1) / (p - 1) points.
  std::uint64_t count = 0;
  std::uint64_t pow = 1;
  for (std::size_t i = 0; i < n; ++i) {
    count += pow;
    if (count > kExhaustiveLimit) return false;
    pow *= p;
    if (pow > kExhaustiveLimit * p) return false;
  }
  // Leading 1 at position lead, arbitrary residues after it.
  for (std::size_t lead = 0; lead < n; ++lead) {
    const std::size_t tail = n - lead - 1;
    std::vector<std::uint64_t> digits(tail, 0);
    while (true) {
      Vec v = zero_vec(f, n);
      v[lead] = Scalar::one(f);
      for (std::size_t t = 0; t < tail; ++t) v[lead + 1 + t] = Scalar(f, static_cast<long>(digits[t]));
      if (fn(v)) return true;
      std::size_t pos = 0;
      while (pos < tail && ++digits[pos] == p) digits[pos++] = 0;
      if (pos == tail) break;
    }
  }
  return true;
}

DomainResult is_domain(const FinDimAlgebra& alg) {
  const Field f = alg.field();
  const std::size_t n = alg.dim();
  DomainResult out;
  if (n == 0) {
    out.status = Tri::no;
    out.reason = "zero algebra";
    return out;
  }
  auto zero_divisor = [&](const Vec& x) -> bool {
    Subspace k = kernel(alg.left_mult(x));
    if (k.is_zero()) return false;
    out.status = Tri::no;
    out.witness = std::make_pair(x, k.basis().front());
    out.reason = "zero divisor found";
    return true;
  };
  if (n == 1) {
    // Unital of dimension one means isomorphic to the ground field.
    out.status = Tri::yes;
    out.reason = "one-dimensional over a field";
    return out;
  }
  if (!f.is_rational()) {
    bool found = false;
    bool completed = for_each_projective_point(f, n, [&](const Vec& x) { return found = zero_divisor(x); });
    if (found) return out;
    if (completed) {
      out.status = Tri::yes;
      out.reason = "exhaustive search over F_p found no zero divisors";
      return out;
    }
  }
  // Sound partial search: basis elements and small combinations.
  for (std::size_t i = 0; i < n; ++i)
    if (zero_divisor(alg.basis(i))) return out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (long c : {1L, -1L, 2L, -2L}) {
        Vec x = alg.basis(i);
        x[j] = Scalar(f, c);
        if (zero_divisor(x)) return out;
      }
  out.status = Tri::unknown;
  out.reason = "no zero divisor among sampled elements; zero-divisor existence undecided over this field";
  return out;
}

bool is_idempotent(const FinDimAlgebra& alg, std::span<const Scalar> e) {
  Vec v(e.begin(), e.end());
  return alg.multiply(v, v) == v;
}

bool is_nontrivial_idempotent(const FinDimAlgebra& alg, std::span<const Scalar> e) {
  return is_idempotent(alg, e) && !is_zero(e) && Vec(e.begin(), e.end()) != alg.unit();
}

// ---------------------------------------------------------------------------

FinDimAlgebra field_algebra(Field f) {
  return FinDimAlgebra(f, {"1"}, {Scalar::one(f)}, {Vec{Scalar::one(f)}});
}

FinDimAlgebra matrix_algebra(Field f, std::size_t n) {
  if (n == 0) throw Error("matrix algebra of size 0");
  const std::size_t d = n * n;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) labels.push_back("e" + std::to_string(i + 1) + std::to_string(j + 1));
  std::vector<Vec> prods(d * d, zero_vec(f, d));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l) prods[(i * n + j) * d + (j * n + l)][i * n + l] = Scalar::one(f);
  Vec unit = zero_vec(f, d);
  for (std::size_t i = 0; i < n; ++i) unit[i * n + i] = Scalar::one(f);
  return FinDimAlgebra(f, std::move(labels), std::move(unit), std::move(prods));
}

FinDimAlgebra upper_triangular_algebra(Field f, std::size_t n) {
  std::vector<Matrix> basis;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Matrix m(f, n, n);
      m(i, j) = Scalar::one(f);
      basis.push_back(m);
      labels.push_back("e" + std::to_string(i + 1) + std::to_string(j + 1));
    }
  return matrix_subalgebra(f, n, basis, std::move(labels));
}

FinDimAlgebra truncated_polynomial_algebra(Field f, std::size_t n) {
  if (n == 0) throw Error("truncated polynomial algebra of size 0");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(i == 0 ? "1" : (i == 1 ? "x" : "x^" + std::to_string(i)));
  std::vector<Vec> prods(n * n, zero_vec(f, n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i + j < n) prods[i * n + j][i + j] = Scalar::one(f);
  return FinDimAlgebra(f, std::move(labels), unit_vec(f, n, 0), std::move(prods));
}

namespace {

Vec flatten(const Matrix& m) {
  Vec v;
  v.reserve(m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (const auto& s : m.row(r)) v.push_back(s);
  return v;
}

}  // namespace

FinDimAlgebra matrix_subalgebra(Field f, std::size_t n, const std::vector<Matrix>& basis,
                                std::vector<std::string> labels) {
  const std::size_t d = basis.size();
  if (labels.size() != d) throw Error("label count mismatch");
  std::vector<Vec> flat;
  for (const auto& b : basis) flat.push_back(flatten(b));
  // Coordinates are solved against the given (not echelonized) basis.
  Matrix coords = Matrix::from_columns(f, n * n, flat);
  if (rank(coords) != d) throw Error("matrix subalgebra basis is linearly dependent");
  auto coordinates_of = [&](const Matrix& m) {
    auto sol = solve(coords, flatten(m));
    if (!sol) throw Error("matrix span is not closed under multiplication");
    return sol->particular;
  };
  std::vector<Vec> prods;
  prods.reserve(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) prods.push_back(coordinates_of(basis[i] * basis[j]));
  Vec unit = coordinates_of(Matrix::identity(f, n));
  return FinDimAlgebra(f, std::move(labels), std::move(unit), std::move(prods));
}

FinDimAlgebra direct_product(const FinDimAlgebra& a, const FinDimAlgebra& b) {
  if (a.field() != b.field()) throw Error("direct product over different fields");
  const Field f = a.field();
  const std::size_t da = a.dim(), db = b.dim(), d = da + db;
  std::vector<std::string> labels;
  for (const auto& l : a.labels()) labels.push_back(l + "_1");
  for (const auto& l : b.labels()) labels.push_back(l + "_2");
  std::vector<Vec> prods(d * d, zero_vec(f, d));
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j)
      for (std::size_t m = 0; m < da; ++m) prods[i * d + j][m] = a.product(i, j)[m];
  for (std::size_t i = 0; i < db; ++i)
    for (std::size_t j = 0; j < db; ++j)
      for (std::size_t m = 0; m < db; ++m) prods[(da + i) * d + (da + j)][da + m] = b.product(i, j)[m];
  Vec unit = zero_vec(f, d);
  for (std::size_t i = 0; i < da; ++i) unit[i] = a.unit()[i];
  for (std::size_t i = 0; i < db; ++i) unit[da + i] = b.unit()[i];
  return FinDimAlgebra(f, std::move(labels), std::move(unit), std::move(prods));
}

}  // namespace gmalie
