#include "gmalie/morita.hpp"

#include <functional>

namespace gmalie {

namespace {

Matrix combine(Field f, std::size_t dim, const std::vector<Matrix>& mats, std::span<const Scalar> coeffs) {
  if (coeffs.size() != mats.size()) throw Error("action: element does not belong to the acting algebra");
  Matrix out(f, dim, dim);
  for (std::size_t i = 0; i < mats.size(); ++i)
    if (!coeffs[i].is_zero()) out += coeffs[i] * mats[i];
  return out;
}

Vec flatten(const Matrix& m) {
  Vec v;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (const auto& s : m.row(r)) v.push_back(s);
  return v;
}

std::string idx(std::size_t i) { return std::to_string(i); }

}  // namespace

Bimodule::Bimodule(Field f, std::vector<std::string> labels, std::vector<Matrix> left, std::vector<Matrix> right)
    : field_(f), labels_(std::move(labels)), left_(std::move(left)), right_(std::move(right)) {
  for (const auto* group : {&left_, &right_})
    for (const auto& m : *group)
      if (m.rows() != dim() || m.cols() != dim()) throw Error("bimodule action matrix has wrong shape");
}

Bimodule Bimodule::zero(Field f, std::size_t left_dim, std::size_t right_dim) {
  return Bimodule(f, {}, std::vector<Matrix>(left_dim, Matrix(f, 0, 0)),
                  std::vector<Matrix>(right_dim, Matrix(f, 0, 0)));
}

Matrix Bimodule::left_matrix(std::span<const Scalar> x) const { return combine(field_, dim(), left_, x); }
Matrix Bimodule::right_matrix(std::span<const Scalar> y) const { return combine(field_, dim(), right_, y); }

Vec Bimodule::act_left(std::span<const Scalar> x, std::span<const Scalar> m) const {
  if (x.size() != left_.size() || m.size() != dim()) throw Error("left action dimension mismatch");
  Vec out = zero_vec(field_, dim());
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) axpy(out, x[i], left_[i].apply(m));
  return out;
}

Vec Bimodule::act_right(std::span<const Scalar> m, std::span<const Scalar> y) const {
  if (y.size() != right_.size() || m.size() != dim()) throw Error("right action dimension mismatch");
  Vec out = zero_vec(field_, dim());
  for (std::size_t i = 0; i < y.size(); ++i)
    if (!y[i].is_zero()) axpy(out, y[i], right_[i].apply(m));
  return out;
}

std::vector<ValidationIssue> validate_bimodule(const FinDimAlgebra& left, const FinDimAlgebra& right,
                                               const Bimodule& mod) {
  std::vector<ValidationIssue> issues;
  if (mod.left_dim() != left.dim() || mod.right_dim() != right.dim()) {
    issues.push_back({"shape", {}, "action tensor does not match algebra dimensions"});
    return issues;
  }
  const Field f = left.field();
  const Matrix id = Matrix::identity(f, mod.dim());
  if (mod.left_matrix(left.unit()) != id) issues.push_back({"unit", {}, "1 m != m"});
  if (mod.right_matrix(right.unit()) != id) issues.push_back({"unit", {}, "m 1 != m"});
  for (std::size_t i = 0; i < left.dim(); ++i)
    for (std::size_t j = 0; j < left.dim(); ++j)
      if (mod.left()[i] * mod.left()[j] != mod.left_matrix(left.product(i, j)))
        issues.push_back({"left-associativity", {i, j}, "(a_" + idx(i) + " a_" + idx(j) + ") m != a_" + idx(i) + " (a_" + idx(j) + " m)"});
  for (std::size_t i = 0; i < right.dim(); ++i)
    for (std::size_t j = 0; j < right.dim(); ++j)
      if (mod.right()[j] * mod.right()[i] != mod.right_matrix(right.product(i, j)))
        issues.push_back({"right-associativity", {i, j}, "m (b_" + idx(i) + " b_" + idx(j) + ") != (m b_" + idx(i) + ") b_" + idx(j)});
  for (std::size_t i = 0; i < left.dim(); ++i)
    for (std::size_t j = 0; j < right.dim(); ++j)
      if (mod.left()[i] * mod.right()[j] != mod.right()[j] * mod.left()[i])
        issues.push_back({"bimodule", {i, j}, "(a m) b != a (m b)"});
  return issues;
}

Vec MoritaContext::pair_mn(std::span<const Scalar> mv, std::span<const Scalar> nv) const {
  if (mv.size() != m.dim() || nv.size() != n.dim()) throw Error("pairing dimension mismatch");
  Vec out = a.zero();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    if (mv[i].is_zero()) continue;
    for (std::size_t j = 0; j < n.dim(); ++j)
      if (!nv[j].is_zero()) axpy(out, mv[i] * nv[j], phi[i * n.dim() + j]);
  }
  return out;
}

Vec MoritaContext::pair_nm(std::span<const Scalar> nv, std::span<const Scalar> mv) const {
  if (mv.size() != m.dim() || nv.size() != n.dim()) throw Error("pairing dimension mismatch");
  Vec out = b.zero();
  for (std::size_t j = 0; j < n.dim(); ++j) {
    if (nv[j].is_zero()) continue;
    for (std::size_t i = 0; i < m.dim(); ++i)
      if (!mv[i].is_zero()) axpy(out, nv[j] * mv[i], psi[j * m.dim() + i]);
  }
  return out;
}

std::vector<ValidationIssue> validate_context(const MoritaContext& ctx) {
  std::vector<ValidationIssue> issues;
  auto append = [&](std::string prefix, std::vector<ValidationIssue> more) {
    for (auto& i : more) {
      i.kind = prefix + ":" + i.kind;
      issues.push_back(std::move(i));
    }
  };
  if (ctx.a.field() != ctx.b.field() || ctx.m.field() != ctx.a.field() || ctx.n.field() != ctx.a.field()) {
    issues.push_back({"field", {}, "components over different fields"});
    return issues;
  }
  append("A", validate(ctx.a));
  append("B", validate(ctx.b));
  append("M", validate_bimodule(ctx.a, ctx.b, ctx.m));
  append("N", validate_bimodule(ctx.b, ctx.a, ctx.n));
  if (ctx.m.dim() == 0 && ctx.n.dim() == 0) issues.push_back({"modules", {}, "M and N are both zero"});
  const std::size_t dm = ctx.m.dim(), dn = ctx.n.dim();
  if (ctx.phi.size() != dm * dn || ctx.psi.size() != dm * dn) {
    issues.push_back({"shape", {}, "pairing tensor has wrong size"});
    return issues;
  }
  for (const auto& v : ctx.phi)
    if (v.size() != ctx.a.dim()) issues.push_back({"shape", {}, "Phi value has wrong length"});
  for (const auto& v : ctx.psi)
    if (v.size() != ctx.b.dim()) issues.push_back({"shape", {}, "Psi value has wrong length"});
  if (!issues.empty()) return issues;

  const Field f = ctx.field();
  auto mb = [&](std::size_t i) { return unit_vec(f, dm, i); };
  auto nb = [&](std::size_t j) { return unit_vec(f, dn, j); };
  for (std::size_t i = 0; i < dm; ++i)
    for (std::size_t j = 0; j < dn; ++j) {
      Vec mi = mb(i), nj = nb(j);
      for (std::size_t k = 0; k < ctx.b.dim(); ++k) {
        Vec bk = ctx.b.basis(k);
        if (ctx.pair_mn(ctx.m.act_right(mi, bk), nj) != ctx.pair_mn(mi, ctx.n.act_left(bk, nj)))
          issues.push_back({"Phi-balanced", {i, k, j}, "Phi(m b, n) != Phi(m, b n)"});
      }
      for (std::size_t k = 0; k < ctx.a.dim(); ++k) {
        Vec ak = ctx.a.basis(k);
        if (ctx.pair_mn(ctx.m.act_left(ak, mi), nj) != ctx.a.multiply(ak, ctx.pair_mn(mi, nj)))
          issues.push_back({"Phi-left-linear", {k, i, j}, "Phi(a m, n) != a Phi(m, n)"});
        if (ctx.pair_mn(mi, ctx.n.act_right(nj, ak)) != ctx.a.multiply(ctx.pair_mn(mi, nj), ak))
          issues.push_back({"Phi-right-linear", {i, j, k}, "Phi(m, n a) != Phi(m, n) a"});
        if (ctx.pair_nm(ctx.n.act_right(nj, ak), mi) != ctx.pair_nm(nj, ctx.m.act_left(ak, mi)))
          issues.push_back({"Psi-balanced", {j, k, i}, "Psi(n a, m) != Psi(n, a m)"});
      }
      for (std::size_t k = 0; k < ctx.b.dim(); ++k) {
        Vec bk = ctx.b.basis(k);
        if (ctx.pair_nm(ctx.n.act_left(bk, nj), mi) != ctx.b.multiply(bk, ctx.pair_nm(nj, mi)))
          issues.push_back({"Psi-left-linear", {k, j, i}, "Psi(b n, m) != b Psi(n, m)"});
        if (ctx.pair_nm(nj, ctx.m.act_right(mi, bk)) != ctx.b.multiply(ctx.pair_nm(nj, mi), bk))
          issues.push_back({"Psi-right-linear", {j, i, k}, "Psi(n, m b) != Psi(n, m) b"});
      }
      for (std::size_t l = 0; l < dm; ++l) {
        Vec ml = mb(l);
        if (ctx.m.act_left(ctx.pair_mn(mi, nj), ml) != ctx.m.act_right(mi, ctx.pair_nm(nj, ml)))
          issues.push_back({"MNM-compatibility", {i, j, l}, "Phi(m, n) m' != m Psi(n, m')"});
      }
      for (std::size_t l = 0; l < dn; ++l) {
        Vec nl = nb(l);
        if (ctx.n.act_left(ctx.pair_nm(nj, mi), nl) != ctx.n.act_right(nj, ctx.pair_mn(mi, nl)))
          issues.push_back({"NMN-compatibility", {j, i, l}, "Psi(n, m) n' != n Phi(m, n')"});
      }
    }
  return issues;
}

// ---------------------------------------------------------------------------

const char* to_string(Block b) {
  switch (b) {
    case Block::A: return "A";
    case Block::M: return "M";
    case Block::N: return "N";
    case Block::B: return "B";
  }
  return "?";
}

Block Gma::block_of(std::size_t index) const {
  for (int b = 3; b >= 0; --b)
    if (sizes_[b] > 0 && index >= offsets_[b]) return static_cast<Block>(b);
  throw Error("index outside the GMA");
}

Vec Gma::embed(Block b, std::span<const Scalar> v) const {
  if (v.size() != size(b)) throw Error(std::string("embed: wrong length for block ") + to_string(b));
  Vec out = alg_.zero();
  for (std::size_t i = 0; i < v.size(); ++i) out[offset(b) + i] = v[i];
  return out;
}

Vec Gma::project(Block b, std::span<const Scalar> g) const {
  if (g.size() != dim()) throw Error("project: element does not belong to the GMA");
  return Vec(g.begin() + static_cast<std::ptrdiff_t>(offset(b)),
             g.begin() + static_cast<std::ptrdiff_t>(offset(b) + size(b)));
}

Vec Gma::basis(Block b, std::size_t i) const {
  if (i >= size(b)) throw Error("block basis index out of range");
  return alg_.basis(offset(b) + i);
}

Gma build_gma(MoritaContext ctx) {
  auto issues = validate_context(ctx);
  if (!issues.empty()) {
    std::string msg = "invalid Morita context: " + issues.front().kind + " " + issues.front().detail;
    if (!issues.front().indices.empty()) {
      msg += " at (";
      for (std::size_t i = 0; i < issues.front().indices.size(); ++i)
        msg += (i ? "," : "") + std::to_string(issues.front().indices[i]);
      msg += ")";
    }
    throw Error(msg);
  }
  Gma g;
  const Field f = ctx.field();
  const std::size_t da = ctx.a.dim(), dm = ctx.m.dim(), dn = ctx.n.dim(), db = ctx.b.dim();
  g.sizes_ = {da, dm, dn, db};
  g.offsets_ = {0, da, da + dm, da + dm + dn};
  const std::size_t d = da + dm + dn + db;

  std::vector<std::string> labels;
  for (const auto& l : ctx.a.labels()) labels.push_back("A:" + l);
  for (const auto& l : ctx.m.labels()) labels.push_back("M:" + l);
  for (const auto& l : ctx.n.labels()) labels.push_back("N:" + l);
  for (const auto& l : ctx.b.labels()) labels.push_back("B:" + l);

  std::vector<Vec> prods(d * d, zero_vec(f, d));
  auto put = [&](std::size_t i, std::size_t j, Block blk, const Vec& v) {
    for (std::size_t k = 0; k < v.size(); ++k) prods[i * d + j][g.offsets_[static_cast<int>(blk)] + k] = v[k];
  };
  const std::size_t oa = 0, om = da, on = da + dm, ob = da + dm + dn;
  for (std::size_t i = 0; i < da; ++i) {
    for (std::size_t j = 0; j < da; ++j) put(oa + i, oa + j, Block::A, ctx.a.product(i, j));
    for (std::size_t j = 0; j < dm; ++j) put(oa + i, om + j, Block::M, ctx.m.left()[i].column(j));
  }
  for (std::size_t i = 0; i < dm; ++i) {
    for (std::size_t j = 0; j < dn; ++j) put(om + i, on + j, Block::A, ctx.phi[i * dn + j]);
    for (std::size_t j = 0; j < db; ++j) put(om + i, ob + j, Block::M, ctx.m.right()[j].column(i));
  }
  for (std::size_t i = 0; i < dn; ++i) {
    for (std::size_t j = 0; j < da; ++j) put(on + i, oa + j, Block::N, ctx.n.right()[j].column(i));
    for (std::size_t j = 0; j < dm; ++j) put(on + i, om + j, Block::B, ctx.psi[i * dm + j]);
  }
  for (std::size_t i = 0; i < db; ++i) {
    for (std::size_t j = 0; j < dn; ++j) put(ob + i, on + j, Block::N, ctx.n.left()[i].column(j));
    for (std::size_t j = 0; j < db; ++j) put(ob + i, ob + j, Block::B, ctx.b.product(i, j));
  }
  Vec unit = zero_vec(f, d);
  for (std::size_t i = 0; i < da; ++i) unit[oa + i] = ctx.a.unit()[i];
  for (std::size_t i = 0; i < db; ++i) unit[ob + i] = ctx.b.unit()[i];
  g.alg_ = FinDimAlgebra(f, std::move(labels), std::move(unit), std::move(prods));
  g.ctx_ = std::move(ctx);
  return g;
}

Vec project_a(const Gma& g, std::span<const Scalar> x) { return g.project(Block::A, x); }
Vec project_b(const Gma& g, std::span<const Scalar> x) { return g.project(Block::B, x); }

GmaCenter center_gma(const Gma& g) {
  GmaCenter out;
  out.center = center(g.algebra());
  const auto& ctx = g.context();
  std::vector<Vec> pa, pb;
  for (const Vec& z : out.center.basis()) {
    Vec a = g.project(Block::A, z), b = g.project(Block::B, z);
    if (!is_zero(g.project(Block::M, z)) || !is_zero(g.project(Block::N, z))) {
      out.diagonal_form_ok = false;
      out.issues.push_back("central element with nonzero off-diagonal block");
    }
    for (std::size_t i = 0; i < ctx.m.dim(); ++i) {
      Vec mi = unit_vec(g.field(), ctx.m.dim(), i);
      if (ctx.m.act_left(a, mi) != ctx.m.act_right(mi, b)) {
        out.diagonal_form_ok = false;
        out.issues.push_back("a m != m b for module basis " + std::to_string(i));
      }
    }
    for (std::size_t j = 0; j < ctx.n.dim(); ++j) {
      Vec nj = unit_vec(g.field(), ctx.n.dim(), j);
      if (ctx.n.act_right(nj, a) != ctx.n.act_left(b, nj)) {
        out.diagonal_form_ok = false;
        out.issues.push_back("n a != b n for module basis " + std::to_string(j));
      }
    }
    pa.push_back(std::move(a));
    pb.push_back(std::move(b));
  }
  out.center_a = Subspace::span(g.field(), ctx.a.dim(), pa);
  out.center_b = Subspace::span(g.field(), ctx.b.dim(), pb);
  // pi_A(Z) and pi_B(Z) must sit inside the centers of A and B.
  if (!center(ctx.a).contains(out.center_a) || !center(ctx.b).contains(out.center_b)) {
    out.diagonal_form_ok = false;
    out.issues.push_back("projection of the center is not central in A or B");
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

/// Injectivity of x -> (stacked action matrices applied to x).
bool injective(Field f, const std::vector<Matrix>& mats) {
  if (mats.empty()) return true;
  std::vector<Vec> cols;
  for (const auto& m : mats) cols.push_back(flatten(m));
  if (cols.front().empty()) return false;  // acting on the zero module
  return kernel(Matrix::from_columns(f, cols.front().size(), cols)).is_zero();
}

std::vector<Matrix> concat(std::vector<Matrix> a, const std::vector<Matrix>& b) {
  // Stack per basis element: a[i] on top of b[i].
  for (std::size_t i = 0; i < a.size(); ++i) {
    Matrix s(a[i].field(), a[i].rows() + b[i].rows(), std::max(a[i].cols(), b[i].cols()));
    if (a[i].cols() == b[i].cols()) {
      s.set_block(0, 0, a[i]);
      s.set_block(a[i].rows(), 0, b[i]);
      a[i] = s;
    } else {
      // Different module dimensions: compare flattened vectors instead.
      Vec fa = flatten(a[i]), fb = flatten(b[i]);
      fa.insert(fa.end(), fb.begin(), fb.end());
      Matrix col(a[i].field(), fa.size(), 1);
      col.set_column(0, fa);
      a[i] = col;
    }
  }
  return a;
}

/// Status of "x != 0 and v != 0 implies act(x) v != 0", with x ranging over an
/// algebra of dimension algebra_dim acting on a module of dimension module_dim.
FaithfulnessClause no_annihilating_pairs(Field f, std::size_t algebra_dim, std::size_t module_dim,
                                         const std::function<Matrix(const Vec&)>& act) {
  FaithfulnessClause out;
  if (module_dim == 0) {
    out.status = Tri::no;
    out.reason = "zero module";
    return out;
  }
  auto kills = [&](const Vec& x) { return !kernel(act(x)).is_zero(); };
  if (!f.is_rational()) {
    bool found = false;
    bool complete = for_each_projective_point(f, algebra_dim, [&](const Vec& x) { return found = kills(x); });
    if (found) {
      out.status = Tri::no;
      out.reason = "exhaustive search found a nonzero pair with zero product";
      return out;
    }
    if (complete) {
      out.status = Tri::yes;
      out.reason = "exhaustive search over F_p";
      return out;
    }
  }
  if (algebra_dim == 1) {
    bool k = kills(unit_vec(f, 1, 0));
    out.status = k ? Tri::no : Tri::yes;
    out.reason = "one-dimensional acting algebra";
    return out;
  }
  for (std::size_t i = 0; i < algebra_dim; ++i)
    if (kills(unit_vec(f, algebra_dim, i))) {
      out.status = Tri::no;
      out.reason = "basis element annihilates a nonzero module element";
      return out;
    }
  if (module_dim == 1) {
    // x v = 0 with v != 0 means x kills the whole module: reduces to faithfulness.
    std::vector<Vec> cols;
    for (std::size_t i = 0; i < algebra_dim; ++i) cols.push_back(flatten(act(unit_vec(f, algebra_dim, i))));
    bool inj = kernel(Matrix::from_columns(f, 1, cols)).is_zero();
    out.status = inj ? Tri::yes : Tri::no;
    out.reason = "one-dimensional module";
    return out;
  }
  out.status = Tri::unknown;
  out.reason = "not decided over Q";
  return out;
}

Tri tri_or(Tri x, Tri y) {
  if (x == Tri::yes || y == Tri::yes) return Tri::yes;
  if (x == Tri::no && y == Tri::no) return Tri::no;
  return Tri::unknown;
}

FaithfulnessClause gate(bool prerequisite, const char* what, FaithfulnessClause c) {
  if (!prerequisite) return {Tri::no, std::string(what) + " fails"};
  return c;
}

}  // namespace

FaithfulnessReport faithfulness(const Gma& g) {
  const auto& ctx = g.context();
  const Field f = g.field();
  FaithfulnessReport r;
  r.m_left = injective(f, ctx.m.left());
  r.m_right = injective(f, ctx.m.right());
  r.n_left = injective(f, ctx.n.left());
  r.n_right = injective(f, ctx.n.right());
  r.m_faithful = r.m_left && r.m_right;
  r.n_faithful = r.n_left && r.n_right;
  // a acts on M from the left and on N from the right.
  r.weakly_a = ctx.a.dim() == 0 || injective(f, concat(ctx.m.left(), ctx.n.right()));
  r.weakly_b = ctx.b.dim() == 0 || injective(f, concat(ctx.m.right(), ctx.n.left()));
  r.weakly_faithful = r.weakly_a && r.weakly_b;

  const std::size_t da = ctx.a.dim(), db = ctx.b.dim();
  r.strong_m_a = gate(r.m_right, "right faithfulness of M",
                      no_annihilating_pairs(f, da, ctx.m.dim(), [&](const Vec& a) { return ctx.m.left_matrix(a); }));
  r.strong_m_b = gate(r.m_left, "left faithfulness of M",
                      no_annihilating_pairs(f, db, ctx.m.dim(), [&](const Vec& b) { return ctx.m.right_matrix(b); }));
  r.strong_n_a = gate(r.n_right, "right faithfulness of N",
                      no_annihilating_pairs(f, db, ctx.n.dim(), [&](const Vec& b) { return ctx.n.left_matrix(b); }));
  r.strong_n_b = gate(r.n_left, "left faithfulness of N",
                      no_annihilating_pairs(f, da, ctx.n.dim(), [&](const Vec& a) { return ctx.n.right_matrix(a); }));
  r.strongly_faithful_m = tri_or(r.strong_m_a.status, r.strong_m_b.status);
  r.strongly_faithful_n = tri_or(r.strong_n_a.status, r.strong_n_b.status);
  return r;
}

// ---------------------------------------------------------------------------

CenterIsomorphism::CenterIsomorphism(Field f, std::vector<Vec> domain_basis, std::vector<Vec> image_basis)
    : field_(f), dom_(std::move(domain_basis)), img_(std::move(image_basis)) {
  if (dom_.size() != img_.size()) throw Error("center isomorphism: basis size mismatch");
  if (dom_.empty()) throw Error("center isomorphism: empty center");
  domain_ = Subspace::span(f, dom_.front().size(), dom_);
  codomain_ = Subspace::span(f, img_.front().size(), img_);
  if (domain_.dim() != dom_.size() || codomain_.dim() != img_.size())
    throw Error("center isomorphism: projection of Z(G) is not injective");
  dom_cols_ = Matrix::from_columns(f, dom_.front().size(), dom_);
  img_cols_ = Matrix::from_columns(f, img_.front().size(), img_);
}

std::optional<Vec> CenterIsomorphism::apply(std::span<const Scalar> a) const {
  auto sol = solve(dom_cols_, a);
  if (!sol) return std::nullopt;
  return img_cols_.apply(sol->particular);
}

std::optional<Vec> CenterIsomorphism::apply_inverse(std::span<const Scalar> b) const {
  auto sol = solve(img_cols_, b);
  if (!sol) return std::nullopt;
  return dom_cols_.apply(sol->particular);
}

CenterIsomorphism compute_phi(const Gma& g) {
  if (!faithfulness(g).weakly_faithful) throw Error("compute_phi: GMA is not weakly faithful");
  GmaCenter c = center_gma(g);
  if (!c.diagonal_form_ok) throw Error("compute_phi: center does not have the diagonal form");
  std::vector<Vec> dom, img;
  for (const Vec& z : c.center.basis()) {
    dom.push_back(g.project(Block::A, z));
    img.push_back(g.project(Block::B, z));
  }
  CenterIsomorphism phi(g.field(), dom, img);
  const auto& ctx = g.context();
  // Multiplicativity on basis pairs.
  for (const Vec& x : dom)
    for (const Vec& y : dom) {
      auto lhs = phi.apply(ctx.a.multiply(x, y));
      if (!lhs || *lhs != ctx.b.multiply(*phi.apply(x), *phi.apply(y)))
        throw Error("compute_phi: projection is not multiplicative");
    }
  return phi;
}

bool is_trivial(const Gma& g) {
  const auto& ctx = g.context();
  for (const auto& v : ctx.phi)
    if (!is_zero(v)) return false;
  for (const auto& v : ctx.psi)
    if (!is_zero(v)) return false;
  return true;
}

// ---------------------------------------------------------------------------

PeirceDecomposition peirce_decompose(const FinDimAlgebra& alg, std::span<const Scalar> e_in) {
  if (!is_nontrivial_idempotent(alg, e_in)) throw Error("peirce_decompose: not a nontrivial idempotent");
  const Field f = alg.field();
  const std::size_t d = alg.dim();
  Vec e(e_in.begin(), e_in.end());
  Vec fi = sub(alg.unit(), e);
  const std::array<const Vec*, 2> idem = {&e, &fi};

  // Corner (s, t) = idem[s] A idem[t]; order eAe, eAf, fAe, fAf.
  std::array<Subspace, 4> corners;
  for (int s = 0; s < 2; ++s)
    for (int t = 0; t < 2; ++t) {
      std::vector<Vec> imgs;
      for (std::size_t i = 0; i < d; ++i) imgs.push_back(alg.multiply(alg.multiply(*idem[s], alg.basis(i)), *idem[t]));
      corners[s * 2 + t] = Subspace::span(f, d, imgs);
    }
  auto coords = [&](int corner, const Vec& v) {
    auto c = corners[corner].coordinates(v);
    if (!c) throw Error("peirce_decompose: product left its corner");
    return *c;
  };
  auto corner_labels = [&](int corner, const std::string& prefix) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < corners[corner].dim(); ++i) out.push_back(prefix + std::to_string(i));
    return out;
  };
  auto corner_algebra = [&](int corner, const Vec& unit, const std::string& prefix) {
    const auto& bs = corners[corner].basis();
    std::vector<Vec> prods;
    for (const auto& x : bs)
      for (const auto& y : bs) prods.push_back(coords(corner, alg.multiply(x, y)));
    return FinDimAlgebra(f, corner_labels(corner, prefix), coords(corner, unit), std::move(prods));
  };
  // Module at corner c, acted on the left by corner l and on the right by corner r.
  auto corner_module = [&](int c, int l, int r, const std::string& prefix) {
    const auto& bs = corners[c].basis();
    std::vector<Matrix> left, right;
    for (const auto& x : corners[l].basis()) {
      Matrix m(f, bs.size(), bs.size());
      for (std::size_t j = 0; j < bs.size(); ++j) m.set_column(j, coords(c, alg.multiply(x, bs[j])));
      left.push_back(m);
    }
    for (const auto& y : corners[r].basis()) {
      Matrix m(f, bs.size(), bs.size());
      for (std::size_t j = 0; j < bs.size(); ++j) m.set_column(j, coords(c, alg.multiply(bs[j], y)));
      right.push_back(m);
    }
    return Bimodule(f, corner_labels(c, prefix), std::move(left), std::move(right));
  };

  PeirceDecomposition out;
  MoritaContext& ctx = out.context;
  ctx.a = corner_algebra(0, e, "eAe");
  ctx.b = corner_algebra(3, fi, "fAf");
  ctx.m = corner_module(1, 0, 3, "eAf");
  ctx.n = corner_module(2, 3, 0, "fAe");
  for (const auto& x : corners[1].basis())
    for (const auto& y : corners[2].basis()) ctx.phi.push_back(coords(0, alg.multiply(x, y)));
  for (const auto& y : corners[2].basis())
    for (const auto& x : corners[1].basis()) ctx.psi.push_back(coords(3, alg.multiply(y, x)));
  for (int c = 0; c < 4; ++c) out.corner_bases[c] = corners[c].basis();
  return out;
}

// ---------------------------------------------------------------------------

Bimodule scalar_bimodule(Field f, std::size_t d) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < d; ++i) labels.push_back("m" + std::to_string(i));
  return Bimodule(f, std::move(labels), {Matrix::identity(f, d)}, {Matrix::identity(f, d)});
}

Bimodule regular_bimodule(const FinDimAlgebra& a) {
  std::vector<Matrix> left, right;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    left.push_back(a.left_mult(a.basis(i)));
    right.push_back(a.right_mult(a.basis(i)));
  }
  return Bimodule(a.field(), a.labels(), std::move(left), std::move(right));
}

Gma triangular(const FinDimAlgebra& a, const Bimodule& m, const FinDimAlgebra& b) {
  MoritaContext ctx;
  ctx.a = a;
  ctx.b = b;
  ctx.m = m;
  ctx.n = Bimodule::zero(a.field(), b.dim(), a.dim());
  return build_gma(std::move(ctx));
}

Gma full_matrix(Field f, std::size_t n) {
  if (n < 2) throw Error("full_matrix requires n >= 2");
  FinDimAlgebra mn = matrix_algebra(f, n);
  return build_gma(peirce_decompose(mn, mn.basis(0)).context);
}

Gma benkovic(Field f) {
  if (f.characteristic() == 2) throw Error("benkovic fixture requires characteristic != 2");
  const Scalar one = Scalar::one(f);
  FinDimAlgebra a = truncated_polynomial_algebra(f, 2);
  FinDimAlgebra b = FinDimAlgebra(f, {"1", "m'"}, a.unit(), {a.product(0, 0), a.product(0, 1), a.product(1, 0), a.product(1, 1)});
  a = FinDimAlgebra(f, {"1", "m"}, a.unit(), {a.product(0, 0), a.product(0, 1), a.product(1, 0), a.product(1, 1)});
  // Module basis {1, m, m'} of the ambient commutative algebra.
  Matrix id = Matrix::identity(f, 3);
  Matrix times_m(f, 3, 3), times_mp(f, 3, 3);
  times_m(1, 0) = one;   // 1 -> m
  times_mp(2, 0) = one;  // 1 -> m'
  std::vector<std::string> labels = {"1", "m", "m'"};
  MoritaContext ctx;
  ctx.a = a;
  ctx.b = b;
  ctx.m = Bimodule(f, labels, {id, times_m}, {id, times_mp});
  ctx.n = Bimodule(f, labels, {id, times_mp}, {id, times_m});
  ctx.phi.assign(9, zero_vec(f, 2));
  ctx.psi.assign(9, zero_vec(f, 2));
  return build_gma(std::move(ctx));
}

Matrix benkovic_lie_derivation(const Gma& g) {
  if (g.dim() != 10 || !is_trivial(g)) throw Error("not the benkovic fixture");
  const Field f = g.field();
  const Scalar one = Scalar::one(f);
  Matrix l(f, 10, 10);
  const std::size_t a = g.offset(Block::A), m = g.offset(Block::M), n = g.offset(Block::N), b = g.offset(Block::B);
  l(b + 1, a + 1) = one;   // r'm     -> r'm'
  l(m + 2, m + 1) = -one;  // s'm     -> -s'm'
  l(m + 1, m + 2) = -one;  // s''m'   -> -s''m
  l(n + 2, n + 1) = -one;  // t'm     -> -t'm'
  l(n + 1, n + 2) = -one;  // t''m'   -> -t''m
  l(a + 1, b + 1) = one;   // u'm'    -> u'm
  return l;
}

Gma incidence_gma(Field f, std::size_t n, const std::vector<bool>& related, std::size_t p) {
  if (related.size() != n * n) throw Error("incidence relation has wrong size");
  if (p == 0 || p >= n) throw Error("incidence split must be 1 <= p < n");
  for (std::size_t i = 0; i < n; ++i) {
    if (!related[i * n + i]) throw Error("incidence relation is not reflexive");
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (related[i * n + j] && related[j * n + k] && !related[i * n + k])
          throw Error("incidence relation is not transitive");
  }
  std::vector<Matrix> basis;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (related[i * n + j]) {
        Matrix m(f, n, n);
        m(i, j) = Scalar::one(f);
        basis.push_back(m);
        labels.push_back("e" + std::to_string(i + 1) + std::to_string(j + 1));
      }
  FinDimAlgebra inc = matrix_subalgebra(f, n, basis, labels);
  Vec e = inc.zero();
  for (std::size_t k = 0; k < basis.size(); ++k) {
    // diagonal units e_ii with i < p
    for (std::size_t i = 0; i < p; ++i)
      if (basis[k](i, i).is_one()) e[k] = Scalar::one(f);
  }
  return build_gma(peirce_decompose(inc, e).context);
}

}  // namespace gmalie
