#include "support.hpp"

#include <cmath>

namespace testkit {

Matrix block(const Gma& g, const Matrix& map, Block target, Block source) {
  return map.block(g.offset(target), g.offset(source), g.size(target), g.size(source));
}

Vec m_elem(const Gma& g, const MapSequence& s, std::size_t k) {
  return block(g, s[k], Block::M, Block::A).apply(g.context().a.unit());
}

Vec n_elem(const Gma& g, const MapSequence& s, std::size_t k) {
  return block(g, s[k], Block::N, Block::A).apply(g.context().a.unit());
}

Matrix tabulate(Field f, std::size_t rows, std::size_t cols, const std::function<Vec(const Vec&)>& fn) {
  Matrix out(f, rows, cols);
  for (std::size_t j = 0; j < cols; ++j) out.set_column(j, fn(unit_vec(f, cols, j)));
  return out;
}

Named random_incidence(Field f, std::size_t n, Sampler& rnd) {
  for (;;) {
    std::vector<bool> rel(n * n, false);
    for (std::size_t i = 0; i < n; ++i) rel[i * n + i] = true;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && rnd.coin(0.45)) rel[i * n + j] = true;
    for (std::size_t w = 0; w < n; ++w)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (rel[i * n + w] && rel[w * n + j]) rel[i * n + j] = true;
    const std::size_t split = 1 + rnd.index(n - 1);
    bool linked = false;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if ((i < split) != (j < split) && rel[i * n + j]) linked = true;
    if (!linked) continue;
    std::string name = "incidence(" + std::to_string(n) + ",";
    for (bool b : rel) name += b ? '1' : '0';
    name += ",p=" + std::to_string(split) + ")";
    return {name, incidence_gma(f, n, rel, split)};
  }
}

std::vector<Named> mixed_pool(Field f, std::uint64_t seed) {
  Sampler rnd(f, seed);
  std::vector<Named> out;
  out.push_back({"full_matrix(2)", full_matrix(f, 2)});
  out.push_back({"full_matrix(3)", full_matrix(f, 3)});
  out.push_back({"benkovic", benkovic(f)});
  for (int i = 0; i < 3; ++i) out.push_back(random_incidence(f, 3, rnd));
  return out;
}

std::vector<Named> weakly_faithful_pool(Field f, std::uint64_t seed) {
  Sampler rnd(f, seed);
  std::vector<Named> out;
  out.push_back({"full_matrix(2)", full_matrix(f, 2)});
  out.push_back({"full_matrix(3)", full_matrix(f, 3)});
  out.push_back({"benkovic", benkovic(f)});
  const FinDimAlgebra t2 = upper_triangular_algebra(f, 2);
  out.push_back({"tri(T2,T2,T2)", triangular(t2, regular_bimodule(t2), t2)});
  out.push_back({"tri(F,F^2,F)", triangular(field_algebra(f), scalar_bimodule(f, 2), field_algebra(f))});
  for (int tries = 0; out.size() < 8 && tries < 50; ++tries) {
    Named n = random_incidence(f, 3, rnd);
    if (faithfulness(n.g).weakly_faithful) out.push_back(std::move(n));
  }
  return out;
}

MapSequence perturb(const MapSequence& s, Sampler& rnd) {
  MapSequence out = s;
  const std::size_t k = 1 + rnd.index(s.order());
  Matrix& m = out.maps[k];
  Scalar d = rnd.scalar();
  while (d.is_zero()) d = rnd.scalar();
  m(rnd.index(m.rows()), rnd.index(m.cols())) += d;
  return out;
}

MapSequence perturb_block(const Gma& g, const MapSequence& s, std::size_t k, Block target, Block source,
                          Sampler& rnd) {
  MapSequence out = s;
  Scalar d = rnd.scalar();
  while (d.is_zero()) d = rnd.scalar();
  out.maps[k](g.offset(target) + rnd.index(g.size(target)), g.offset(source) + rnd.index(g.size(source))) += d;
  return out;
}

std::vector<std::pair<std::string, FinDimAlgebra>> small_algebras(Field f) {
  return {{"F", field_algebra(f)},
          {"FxF", direct_product(field_algebra(f), field_algebra(f))},
          {"T2", upper_triangular_algebra(f, 2)},
          {"F[x]/x^2", truncated_polynomial_algebra(f, 2)},
          {"M2", matrix_algebra(f, 2)}};
}

std::vector<Vec> characters(const FinDimAlgebra& a) {
  const Field f = a.field();
  std::vector<Scalar> values;
  const bool small = !f.is_rational() && std::pow(static_cast<double>(f.prime()), a.dim()) <= 1e5;
  if (!small) {
    values = {Scalar(f, 0L), Scalar(f, 1L), Scalar(f, -1L)};
  } else {
    for (std::uint64_t v = 0; v < f.prime(); ++v) values.emplace_back(f, static_cast<long>(v));
  }
  const std::size_t d = a.dim();
  std::vector<Vec> out;
  std::vector<std::size_t> digits(d, 0);
  auto value = [&](const Vec& chi, const Vec& x) {
    Scalar s(f);
    for (std::size_t i = 0; i < d; ++i) s.add_product(chi[i], x[i]);
    return s;
  };
  for (;;) {
    Vec chi(d, Scalar(f));
    for (std::size_t i = 0; i < d; ++i) chi[i] = values[digits[i]];
    bool ok = value(chi, a.unit()).is_one();
    for (std::size_t i = 0; ok && i < d; ++i)
      for (std::size_t j = 0; ok && j < d; ++j)
        ok = value(chi, a.product(i, j)) == chi[i] * chi[j];
    if (ok) out.push_back(chi);
    std::size_t pos = 0;
    while (pos < d && ++digits[pos] == values.size()) digits[pos++] = 0;
    if (pos == d) break;
  }
  return out;
}

namespace {

Matrix kron(const Matrix& x, const Matrix& y) {
  Matrix out(x.field(), x.rows() * y.rows(), x.cols() * y.cols());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j)
      for (std::size_t r = 0; r < y.rows(); ++r)
        for (std::size_t c = 0; c < y.cols(); ++c) out(i * y.rows() + r, j * y.cols() + c) = x(i, j) * y(r, c);
  return out;
}

struct Rep {
  std::string name;
  std::vector<Matrix> action;  // per basis element
  bool faithful = false;
};

Matrix scalar_matrix(const Scalar& s) {
  Matrix m(s.field(), 1, 1);
  m(0, 0) = s;
  return m;
}

Matrix direct_sum(const Matrix& x, const Matrix& y) {
  Matrix out(x.field(), x.rows() + y.rows(), x.cols() + y.cols());
  out.set_block(0, 0, x);
  out.set_block(x.rows(), x.cols(), y);
  return out;
}

std::vector<Rep> representations(const FinDimAlgebra& a, bool left) {
  std::vector<Rep> reps;
  Rep regular{left ? "regular" : "regular^op", {}, true};
  for (std::size_t i = 0; i < a.dim(); ++i)
    regular.action.push_back(left ? a.left_mult(a.basis(i)) : a.right_mult(a.basis(i)));
  reps.push_back(regular);
  int idx = 0;
  for (const Vec& chi : characters(a)) {
    Rep c{"char" + std::to_string(idx), {}, a.dim() == 1};
    Rep s{"regular+char" + std::to_string(idx), {}, true};
    for (std::size_t i = 0; i < a.dim(); ++i) {
      c.action.push_back(scalar_matrix(chi[i]));
      s.action.push_back(direct_sum(regular.action[i], scalar_matrix(chi[i])));
    }
    reps.push_back(c);
    reps.push_back(s);
    Rep twice{"char" + std::to_string(idx) + "^2", {}, a.dim() == 1};
    for (std::size_t i = 0; i < a.dim(); ++i)
      twice.action.push_back(direct_sum(scalar_matrix(chi[i]), scalar_matrix(chi[i])));
    reps.push_back(twice);
    ++idx;
  }
  return reps;
}

}  // namespace

TriangularCase random_triangular(Field f, Sampler& rnd) {
  const auto algs = small_algebras(f);
  for (;;) {
    const auto& [an, a] = algs[rnd.index(algs.size())];
    const auto& [bn, b] = algs[rnd.index(algs.size())];
    const auto lreps = representations(a, true);
    const auto rreps = representations(b, false);
    const Rep& v = lreps[rnd.index(lreps.size())];
    const Rep& w = rreps[rnd.index(rreps.size())];
    const std::size_t dv = v.action[0].rows(), dw = w.action[0].rows();
    if (a.dim() + b.dim() + dv * dw > 12) continue;
    std::vector<Matrix> left, right;
    for (const Matrix& x : v.action) left.push_back(kron(x, Matrix::identity(f, dw)));
    for (const Matrix& y : w.action) right.push_back(kron(Matrix::identity(f, dv), y));
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < dv * dw; ++i) labels.push_back("m" + std::to_string(i));
    Bimodule m(f, labels, left, right);
    return {"tri(" + an + "," + v.name + "(x)" + w.name + "," + bn + ")", triangular(a, m, b),
            v.faithful && w.faithful};
  }
}

}  // namespace testkit
