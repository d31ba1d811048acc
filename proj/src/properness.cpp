#include "gmalie/properness.hpp"

namespace gmalie {

const char* to_string(VerdictKind v) {
  switch (v) {
    case VerdictKind::proper: return "PROPER";
    case VerdictKind::improper: return "IMPROPER";
    case VerdictKind::unknown: return "UNKNOWN";
  }
  return "?";
}

namespace {

/// Functionals vanishing on s, as rows.
std::vector<Vec> annihilator(const Subspace& s) {
  if (s.is_zero()) {
    std::vector<Vec> out;
    for (std::size_t i = 0; i < s.ambient(); ++i) out.push_back(unit_vec(s.field(), s.ambient(), i));
    return out;
  }
  return kernel(Matrix::from_rows(s.field(), s.ambient(), s.basis())).basis();
}

/// Accumulates linear constraints on the entries of an n x n matrix X (variable r * n + c).
class RowBuilder {
 public:
  RowBuilder(Field f, std::size_t n) : f_(f), n_(n) {}

  void add(Vec row, Scalar rhs) {
    rows_.push_back(std::move(row));
    rhs_.push_back(std::move(rhs));
  }
  Vec blank() const { return zero_vec(f_, n_ * n_); }

  void entry_zero(std::size_t r, std::size_t c) {
    Vec row = blank();
    row[r * n_ + c] = Scalar::one(f_);
    add(std::move(row), Scalar(f_));
  }
  /// X v = target.
  void maps_to(const Vec& v, const Vec& target) {
    for (std::size_t r = 0; r < n_; ++r) {
      Vec row = blank();
      for (std::size_t c = 0; c < n_; ++c) row[r * n_ + c] = v[c];
      add(std::move(row), target[r]);
    }
  }
  /// func(X e_c) = 0, with func given on rows [r0, r0 + func.size()).
  void column_functional(std::size_t c, std::size_t r0, const Vec& func) {
    Vec row = blank();
    for (std::size_t i = 0; i < func.size(); ++i) row[(r0 + i) * n_ + c] = func[i];
    add(std::move(row), Scalar(f_));
  }
  void append(const Matrix& sys, const Vec& rhs) {
    for (std::size_t r = 0; r < sys.rows(); ++r) add(Vec(sys.row(r).begin(), sys.row(r).end()), rhs[r]);
  }

  Matrix matrix() const { return Matrix::from_rows(f_, n_ * n_, rows_); }
  const Vec& rhs() const { return rhs_; }
  Matrix unflatten(const Vec& v) const {
    Matrix m(f_, n_, n_);
    for (std::size_t r = 0; r < n_; ++r)
      for (std::size_t c = 0; c < n_; ++c) m(r, c) = v[r * n_ + c];
    return m;
  }

 private:
  Field f_;
  std::size_t n_;
  std::vector<Vec> rows_;
  Vec rhs_;
};

Matrix embed_block(const Gma& g, Block t, Block s, const Matrix& m) {
  Matrix out(g.field(), g.dim(), g.dim());
  out.set_block(g.offset(t), g.offset(s), m);
  return out;
}

/// Central-valued, commutator-killing constraints for a single map of the whole algebra.
void central_rows(RowBuilder& rb, const FinDimAlgebra& alg) {
  const auto ann = annihilator(center(alg));
  for (std::size_t c = 0; c < alg.dim(); ++c)
    for (const auto& f : ann) rb.column_functional(c, 0, f);
  const Vec zero = alg.zero();
  for (std::size_t x = 0; x < alg.dim(); ++x)
    for (std::size_t y = x + 1; y < alg.dim(); ++y) {
      Vec c = alg.commutator(alg.basis(x), alg.basis(y));
      if (!is_zero(c)) rb.maps_to(c, zero);
    }
}

}  // namespace

std::optional<Certificate> search_certificate(const Gma& g, const MapSequence& seq, std::size_t order) {
  const auto& alg = g.algebra();
  const std::size_t n = alg.dim();
  const Field f = g.field();
  const Matrix sys = identity_system(alg, Identity::associative);
  RowBuilder fixed(f, n);
  central_rows(fixed, alg);
  std::vector<Matrix> d{Matrix::identity(f, n)}, tau{Matrix(f, n, n)};
  for (std::size_t k = 1; k <= order; ++k) {
    RowBuilder rb = fixed;
    Vec lk(n * n, Scalar(f));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) lk[r * n + c] = seq[k](r, c);
    // sys vec(D_k) = rhs(D_<k) with D_k = L_k - X.
    Vec target = sub(sys.apply(lk), identity_rhs(alg, Identity::associative, d, k));
    rb.append(sys, target);
    auto sol = solve(rb.matrix(), rb.rhs());
    if (!sol) return std::nullopt;
    Matrix t = rb.unflatten(sol->particular);
    tau.push_back(t);
    d.push_back(seq[k] - t);
  }
  Certificate c;
  c.d.maps = std::move(d);
  c.tau.maps = std::move(tau);
  c.tau.tau = true;
  for (std::size_t k = 0; k <= order; ++k) {
    c.ell_a.push_back(c.tau.maps[k].block(g.offset(Block::A), g.offset(Block::A), g.size(Block::A), g.size(Block::A)));
    c.ell_b.push_back(c.tau.maps[k].block(g.offset(Block::B), g.offset(Block::B), g.size(Block::B), g.size(Block::B)));
  }
  c.method = "affine-search";
  return c;
}

namespace {

/// The center-isomorphism construction: corrections from phi, D assembled from its free blocks.
Certificate phi_construction(const Gma& g, const EntryMaps& e, const LhdFamilies& fam, std::size_t order) {
  using B = Block;
  const Field f = g.field();
  const std::size_t da = g.size(B::A), db = g.size(B::B);
  const CenterIsomorphism phi = compute_phi(g);
  Certificate c;
  c.method = "center-isomorphism";
  c.ell_a.push_back(Matrix(f, da, da));
  c.ell_b.push_back(Matrix(f, db, db));
  for (std::size_t k = 1; k <= order; ++k) {
    Matrix la(f, da, da), lb(f, db, db);
    for (std::size_t x = 0; x < da; ++x) {
      auto v = phi.apply_inverse(fam.a_to_b[k].column(x));
      if (!v) throw Error("A->B value outside the center projection");
      la.set_column(x, *v);
    }
    for (std::size_t x = 0; x < db; ++x) {
      auto v = phi.apply(fam.b_to_a[k].column(x));
      if (!v) throw Error("B->A value outside the center projection");
      lb.set_column(x, *v);
    }
    c.ell_a.push_back(std::move(la));
    c.ell_b.push_back(std::move(lb));
  }

  // Free blocks of D: A<-A and B<-B chosen so that its diagonal HD families are P - ell, Q - ell'.
  EntryMaps de = extract_entries(g, zero_sequence(f, g.dim(), order));
  for (std::size_t k = 1; k <= order; ++k) {
    de.get(k, B::M, B::M) = e.get(k, B::M, B::M);
    de.get(k, B::N, B::N) = e.get(k, B::N, B::N);
    de.m[k] = e.m[k];
    de.n[k] = e.n[k];
  }
  for (std::size_t k = 1; k <= order; ++k) {
    const HdFamilies hf = hd_families(g, de, k);  // order-k words only see orders below k
    de.get(k, B::A, B::A) = (fam.a_left[k] - c.ell_a[k]) - hf.a_left_word[k];
    de.get(k, B::B, B::B) = (fam.b_left[k] - c.ell_b[k]) - hf.b_left_word[k];
  }
  c.d = synthesize_hd(g, order, ingredients_of(de));

  std::vector<Matrix> tau;
  for (std::size_t k = 1; k <= order; ++k) {
    Matrix t = embed_block(g, B::A, B::A, c.ell_a[k]) + embed_block(g, B::A, B::B, fam.b_to_a[k]) +
               embed_block(g, B::B, B::A, fam.a_to_b[k]) + embed_block(g, B::B, B::B, c.ell_b[k]);
    tau.push_back(std::move(t));
  }
  c.tau = make_tau(f, g.dim(), std::move(tau));
  return c;
}

}  // namespace

PrimeCheck check_A_prime(const Gma& g, const LhdFamilies& f, std::size_t order) {
  const GmaCenter z = center_gma(g);
  for (std::size_t k = 1; k <= order; ++k) {
    for (std::size_t x = 0; x < g.size(Block::B); ++x)
      if (!z.center_a.contains(f.b_to_a[k].column(x)))
        return {false, PrimeWitness{"A'", k, {0, x}, "B->A value outside the A-projection of the center"}};
    for (std::size_t x = 0; x < g.size(Block::A); ++x)
      if (!z.center_b.contains(f.a_to_b[k].column(x)))
        return {false, PrimeWitness{"A'", k, {1, x}, "A->B value outside the B-projection of the center"}};
  }
  return {};
}

namespace {

Vec b_prime_value(const Gma& g, const LhdFamilies& f, std::size_t k, std::size_t xm, std::size_t xn) {
  const auto& ctx = g.context();
  Vec m = unit_vec(g.field(), ctx.m.dim(), xm), n = unit_vec(g.field(), ctx.n.dim(), xn);
  return add(g.embed(Block::A, f.b_to_a[k].apply(ctx.pair_nm(n, m))),
             g.embed(Block::B, f.a_to_b[k].apply(ctx.pair_mn(m, n))));
}

}  // namespace

PrimeCheck check_B_prime(const Gma& g, const LhdFamilies& f, std::size_t order) {
  const Subspace z = center(g.algebra());
  for (std::size_t k = 1; k <= order; ++k)
    for (std::size_t xm = 0; xm < g.size(Block::M); ++xm)
      for (std::size_t xn = 0; xn < g.size(Block::N); ++xn)
        if (!z.contains(b_prime_value(g, f, k, xm, xn)))
          return {false, PrimeWitness{"B'", k, {xm, xn}, "P''(nm) + Q''(mn) is not central"}};
  return {};
}

bool witness_reproduces(const Gma& g, const LhdFamilies& f, const PrimeWitness& w) {
  if (w.k == 0 || w.k >= f.a_left.size() || w.indices.size() != 2) return false;
  if (w.condition == "A'") {
    const GmaCenter z = center_gma(g);
    if (w.indices[0] == 0)
      return w.indices[1] < g.size(Block::B) && !z.center_a.contains(f.b_to_a[w.k].column(w.indices[1]));
    if (w.indices[0] == 1)
      return w.indices[1] < g.size(Block::A) && !z.center_b.contains(f.a_to_b[w.k].column(w.indices[1]));
    return false;
  }
  if (w.condition == "B'") {
    if (w.indices[0] >= g.size(Block::M) || w.indices[1] >= g.size(Block::N)) return false;
    return !center(g.algebra()).contains(b_prime_value(g, f, w.k, w.indices[0], w.indices[1]));
  }
  return false;
}

CertificateCheck verify_certificate(const FinDimAlgebra& alg, const MapSequence& seq, const MapSequence& d,
                                    const MapSequence& tau, std::size_t order) {
  if (seq.order() < order || d.order() < order || tau.order() < order) return {false, "shape", std::nullopt};
  for (std::size_t k = 1; k <= order; ++k) {
    const Matrix s = d[k] + tau[k];
    if (s.rows() != alg.dim() || s.cols() != alg.dim() || seq[k].rows() != alg.dim()) return {false, "shape", std::nullopt};
    if (s != seq[k])
      for (std::size_t x = 0; x < alg.dim(); ++x)
        if (s.column(x) != seq[k].column(x)) return {false, "sum", Witness{k, x, x, seq[k].column(x), s.column(x)}};
  }
  if (d.maps.empty() || d[0] != Matrix::identity(alg.field(), alg.dim())) return {false, "shape", std::nullopt};
  if (auto r = verify_hd(alg, d, order); !r) return {false, "hd", r.witness};
  MapSequence t = tau;
  t.tau = true;
  if (auto r = is_center_valued_vanishing(alg, t, order); !r) return {false, "tau", r.witness};
  return {};
}

Verdict decide_proper(const Gma& g, const MapSequence& seq, std::size_t order) {
  if (g.field().characteristic() == 2) throw Error("characteristic 2 is not supported");
  check_shape(seq, g.dim());
  if (auto r = verify_lhd(g.algebra(), seq, order); !r)
    throw Error("sequence is not a Lie higher derivation up to order " + std::to_string(order));
  const MapSequence s = truncate(seq, order);
  const EntryMaps e = extract_entries(g, s);
  const LhdFamilies fam = lhd_families(g, e, order);
  Verdict v;
  const PrimeCheck a = check_A_prime(g, fam, order);
  const PrimeCheck b = check_B_prime(g, fam, order);
  v.a_prime = a.ok;
  v.b_prime = b.ok;
  v.weakly_faithful = faithfulness(g).weakly_faithful;
  if (!a.ok) v.witness = a.witness;
  else if (!b.ok) v.witness = b.witness;

  auto accept = [&](Certificate c) {
    if (!verify_certificate(g.algebra(), s, c.d, c.tau, order)) return false;
    v.kind = VerdictKind::proper;
    v.certificate = std::move(c);
    return true;
  };

  if (v.weakly_faithful) {
    if (!a.ok || !b.ok) {
      v.kind = VerdictKind::improper;
      v.reason = "necessary condition " + v.witness->condition + " fails at order " + std::to_string(v.witness->k);
      return v;
    }
    try {
      if (accept(phi_construction(g, e, fam, order))) return v;
      v.notes.push_back("center-isomorphism certificate failed verification");
    } catch (const Error& ex) {
      v.notes.push_back(std::string("center-isomorphism construction failed: ") + ex.what());
    }
    if (auto c = search_certificate(g, s, order); c && accept(std::move(*c))) return v;
    v.kind = VerdictKind::unknown;
    v.reason = "both conditions hold but no certificate was verified";
    return v;
  }

  if (auto c = search_certificate(g, s, order); c && accept(std::move(*c))) return v;
  v.kind = VerdictKind::unknown;
  v.reason = (!a.ok || !b.ok) ? "necessary conditions failed but converse unavailable"
                              : "not weakly faithful and the order-by-order search found no certificate";
  return v;
}

GammaMaps gamma_maps(const Gma& g, const LhdFamilies& f, const Certificate& c, std::size_t order) {
  const Field fld = g.field();
  const std::size_t da = g.size(Block::A), db = g.size(Block::B);
  GammaMaps out;
  out.a_side.push_back(Matrix(fld, da, da + db));
  out.b_side.push_back(Matrix(fld, db, da + db));
  for (std::size_t k = 1; k <= order; ++k) {
    Matrix a(fld, da, da + db), b(fld, db, da + db);
    a.set_block(0, 0, c.ell_a.at(k));
    a.set_block(0, da, f.b_to_a.at(k));
    b.set_block(0, 0, f.a_to_b.at(k));
    b.set_block(0, da, c.ell_b.at(k));
    out.a_side.push_back(std::move(a));
    out.b_side.push_back(std::move(b));
  }
  return out;
}

PairingReport pairing_crosscheck(const Gma& g, const EntryMaps& e, const LhdFamilies& f, const Certificate& c,
                                 std::size_t order) {
  using B = Block;
  PairingReport rep;
  const auto& ctx = g.context();
  const Field fld = g.field();
  const Scalar one = Scalar::one(fld);
  const HdFamilies hf = hd_families(g, extract_entries(g, c.d), order);
  const GammaMaps gm = gamma_maps(g, f, c, order);
  auto L = [&](std::size_t k, B t, B s, const Vec& v) { return g.embed(t, e.get(k, t, s).apply(v)); };
  auto mul = [&](const Vec& x, const Vec& y) { return g.multiply(x, y); };
  auto fail = [&](std::size_t k, std::size_t xm, std::size_t xn, const char* what) {
    if (!rep.failure) rep.failure = PrimeWitness{"pairing", k, {xm, xn}, what};
  };

  for (std::size_t k = 1; k <= order; ++k)
    for (std::size_t xm = 0; xm < ctx.m.dim(); ++xm)
      for (std::size_t xn = 0; xn < ctx.n.dim(); ++xn) {
        const Vec m = unit_vec(fld, ctx.m.dim(), xm), n = unit_vec(fld, ctx.n.dim(), xn);
        const Vec mn = ctx.pair_mn(m, n), nm = ctx.pair_nm(n, m);
        Vec arg(mn);
        for (const auto& x : nm) arg.push_back(-x);
        const Vec gamma = gm.a_side[k].apply(arg), gamma_b = gm.b_side[k].apply(arg);
        if (!is_zero(gamma) || !is_zero(gamma_b)) rep.gamma_vanishes = false;

        Vec sa = g.algebra().zero(), sb = g.algebra().zero(), bare_a = g.algebra().zero(),
            bare_b = g.algebra().zero();
        for (std::size_t i = 0; i <= k; ++i) {
          const std::size_t j = k - i;
          const Vec f3 = L(i, B::M, B::M, m), g4 = L(j, B::N, B::N, n);
          const Vec p3 = L(i, B::A, B::M, m), p4 = L(j, B::A, B::N, n);
          const Vec q3 = L(i, B::B, B::M, m), q4 = L(j, B::B, B::N, n);
          axpy(sa, one, mul(p3, p4));
          axpy(sa, one, mul(f3, g4));
          axpy(bare_a, one, mul(f3, g4));
          axpy(sb, one, mul(g4, f3));
          axpy(sb, one, mul(q4, q3));
          axpy(bare_b, one, mul(g4, f3));
        }
        Vec rhs_a = sub(add(hf.a_left_word[k].apply(mn), g.project(B::A, sa)), gamma);
        Vec rhs_b = sub(add(hf.b_left_word[k].apply(nm), g.project(B::B, sb)), gamma_b);
        if (hf.a_left[k].apply(mn) != rhs_a) {
          rep.ok = false;
          fail(k, xm, xn, "A-side identity");
        }
        if (hf.b_left[k].apply(nm) != rhs_b) {
          rep.ok = false;
          fail(k, xm, xn, "B-side identity");
        }
        if (f.a_left[k].apply(mn) != sub(g.project(B::A, bare_a), gamma) ||
            f.b_left[k].apply(nm) != sub(g.project(B::B, bare_b), gamma_b))
          rep.bare_form_holds = false;
      }
  return rep;
}

SufficiencyReport check_sufficient(const Gma& g) {
  const auto& ctx = g.context();
  SufficiencyReport r;
  const GmaCenter z = center_gma(g);
  r.center_a_full = z.center_a == center(ctx.a);
  r.center_b_full = z.center_b == center(ctx.b);
  r.no_central_ideal_a = !has_nonzero_central_ideal(ctx.a);
  r.no_central_ideal_b = !has_nonzero_central_ideal(ctx.b);
  r.domain_a = is_domain(ctx.a).status;
  r.domain_b = is_domain(ctx.b).status;
  const FaithfulnessReport fr = faithfulness(g);
  r.strongly_faithful_m = fr.strongly_faithful_m;
  r.strongly_faithful_n = fr.strongly_faithful_n;
  r.weakly_faithful = fr.weakly_faithful;
  r.via_central_ideals = r.no_central_ideal_a || r.no_central_ideal_b;
  r.via_domains = r.domain_a == Tri::yes && r.domain_b == Tri::yes;
  r.via_strong_faithfulness = r.strongly_faithful_m == Tri::yes || r.strongly_faithful_n == Tri::yes;
  r.guaranteed = r.weakly_faithful && r.center_a_full && r.center_b_full &&
                 (r.via_central_ideals || r.via_domains || r.via_strong_faithfulness);
  return r;
}

std::vector<Matrix> diagonal_tau_basis(const Gma& g) {
  using B = Block;
  const auto& ctx = g.context();
  const std::size_t n = g.dim();
  const Field f = g.field();
  RowBuilder rb(f, n);
  auto rows_of = [&](B b) { return std::pair{g.offset(b), g.offset(b) + g.size(b)}; };
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      const B t = g.block_of(r), s = g.block_of(c);
      const bool diag_t = t == B::A || t == B::B, diag_s = s == B::A || s == B::B;
      if (!diag_t || !diag_s) rb.entry_zero(r, c);
    }
  const auto ann_a = annihilator(center(ctx.a)), ann_b = annihilator(center(ctx.b));
  const auto ann_g = annihilator(center(g.algebra()));
  for (B s : {B::A, B::B})
    for (std::size_t c = g.offset(s); c < rows_of(s).second; ++c) {
      for (const auto& fn : ann_a) rb.column_functional(c, g.offset(B::A), fn);
      for (const auto& fn : ann_b) rb.column_functional(c, g.offset(B::B), fn);
      for (const auto& fn : ann_g) rb.column_functional(c, 0, fn);
    }
  const Vec zero = zero_vec(f, n);
  for (B s : {B::A, B::B}) {
    const auto& alg = s == B::A ? ctx.a : ctx.b;
    for (std::size_t x = 0; x < alg.dim(); ++x)
      for (std::size_t y = x + 1; y < alg.dim(); ++y) {
        Vec c = alg.commutator(alg.basis(x), alg.basis(y));
        if (!is_zero(c)) rb.maps_to(g.embed(s, c), zero);
      }
  }
  for (std::size_t xm = 0; xm < ctx.m.dim(); ++xm)
    for (std::size_t xn = 0; xn < ctx.n.dim(); ++xn) {
      Vec m = unit_vec(f, ctx.m.dim(), xm), nn = unit_vec(f, ctx.n.dim(), xn);
      Vec v = sub(g.embed(B::A, ctx.pair_mn(m, nn)), g.embed(B::B, ctx.pair_nm(nn, m)));
      if (!is_zero(v)) rb.maps_to(v, zero);
    }
  std::vector<Matrix> out;
  const Subspace sol = kernel(rb.matrix());
  for (const auto& v : sol.basis()) out.push_back(rb.unflatten(v));
  return out;
}

MapSequence random_diagonal_tau(const Gma& g, std::size_t order, Sampler& rnd) {
  const auto basis = diagonal_tau_basis(g);
  std::vector<Matrix> maps;
  for (std::size_t k = 1; k <= order; ++k) {
    Matrix t(g.field(), g.dim(), g.dim());
    for (const auto& b : basis) t += rnd.scalar() * b;
    maps.push_back(std::move(t));
  }
  return make_tau(g.field(), g.dim(), std::move(maps));
}

}  // namespace gmalie
