#include "gmalie/structure.hpp"

#include <algorithm>
#include <functional>

namespace gmalie {

int eta(int k) {
  if (k < 1) throw Error("eta requires k >= 1");
  return k % 2 ? (k - 1) / 2 : k / 2;
}

int nu(int k) {
  if (k < 1) throw Error("nu requires k >= 1");
  return k % 2 ? (k - 1) / 2 : k / 2 - 1;
}

std::size_t WordIndex::weight() const {
  std::size_t w = lead;
  for (auto a : alpha) w += a;
  for (auto b : beta) w += b;
  return w;
}

namespace {

/// Compositions of total into parts positive parts, lexicographic.
void compositions(std::size_t total, std::size_t parts, std::vector<std::size_t>& cur,
                  std::vector<std::vector<std::size_t>>& out) {
  if (parts == 0) {
    if (total == 0) out.push_back(cur);
    return;
  }
  if (total < parts) return;
  for (std::size_t first = 1; first + (parts - 1) <= total; ++first) {
    cur.push_back(first);
    compositions(total - first, parts - 1, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<std::size_t>> compositions(std::size_t total, std::size_t parts) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  compositions(total, parts, cur, out);
  return out;
}

}  // namespace

std::vector<WordIndex> word_indices(std::size_t k) {
  std::vector<WordIndex> out;
  if (k < 1) return out;
  for (int r = 1; r <= nu(static_cast<int>(k)); ++r) {
    const auto rr = static_cast<std::size_t>(r);
    // parts ordered alpha_1, beta_1, ..., alpha_r, beta_r, gamma
    for (const auto& c : compositions(k, 2 * rr + 1)) {
      WordIndex w;
      for (std::size_t p = 0; p < rr; ++p) {
        w.alpha.push_back(c[2 * p]);
        w.beta.push_back(c[2 * p + 1]);
      }
      w.lead = c.back();
      out.push_back(std::move(w));
    }
  }
  return out;
}

std::vector<WordIndex> family_indices(std::size_t k) {
  std::vector<WordIndex> out;
  if (k < 2) return out;
  for (int r = 1; r <= eta(static_cast<int>(k)); ++r) {
    const auto rr = static_cast<std::size_t>(r);
    for (std::size_t i = 0; i + 2 <= k; ++i) {
      if (k - i < 2 * rr) continue;
      for (const auto& c : compositions(k - i, 2 * rr)) {
        WordIndex w;
        w.lead = i;
        for (std::size_t p = 0; p < rr; ++p) {
          w.alpha.push_back(c[2 * p]);
          w.beta.push_back(c[2 * p + 1]);
        }
        out.push_back(std::move(w));
      }
    }
  }
  return out;
}

namespace {

/// Arithmetic in the GMA on embedded elements, with the module elements m_j, n_j at hand.
class Ops {
 public:
  Ops(const Gma& g, const std::vector<Vec>& m, const std::vector<Vec>& n, std::size_t order) : g_(g) {
    if (m.size() <= order || n.size() <= order) throw Error("module elements missing up to the requested order");
    me_.push_back(g.algebra().zero());
    ne_.push_back(g.algebra().zero());
    for (std::size_t j = 1; j <= order; ++j) {
      me_.push_back(g.embed(Block::M, m[j]));
      ne_.push_back(g.embed(Block::N, n[j]));
    }
    one_ = g.algebra().unit();
  }

  const Gma& gma() const { return g_; }
  Field field() const { return g_.field(); }
  const Vec& m(std::size_t j) const { return me_.at(j); }
  const Vec& n(std::size_t j) const { return ne_.at(j); }
  const Vec& one() const { return one_; }
  Vec zero() const { return g_.algebra().zero(); }

  Vec up(Block b, std::span<const Scalar> v) const { return g_.embed(b, v); }
  Vec down(Block b, std::span<const Scalar> x) const { return g_.project(b, x); }

  Vec mul(const Vec& a) const { return a; }
  template <class... T>
  Vec mul(const Vec& a, const Vec& b, const T&... rest) const {
    if (is_zero(a) || is_zero(b)) return zero();
    return mul(g_.multiply(a, b), rest...);
  }

  /// Applies a block map (target <- source) to an embedded element.
  Vec apply(const Matrix& map, Block target, Block source, const Vec& x) const {
    return up(target, map.apply(down(source, x)));
  }

  /// m_{b2} n_{a2} ... m_{br} n_{ar}
  Vec mn_up(const WordIndex& w) const {
    Vec out = one_;
    for (std::size_t p = 1; p < w.alpha.size(); ++p) out = mul(out, m(w.beta[p]), n(w.alpha[p]));
    return out;
  }
  /// m_{br} n_{ar} ... m_{b2} n_{a2}
  Vec mn_down(const WordIndex& w) const {
    Vec out = one_;
    for (std::size_t p = w.alpha.size(); p-- > 1;) out = mul(out, m(w.beta[p]), n(w.alpha[p]));
    return out;
  }
  /// n_{a2} m_{b2} ... n_{ar} m_{br}
  Vec nm_up(const WordIndex& w) const {
    Vec out = one_;
    for (std::size_t p = 1; p < w.alpha.size(); ++p) out = mul(out, n(w.alpha[p]), m(w.beta[p]));
    return out;
  }
  /// n_{ar} m_{br} ... n_{a2} m_{b2}
  Vec nm_down(const WordIndex& w) const {
    Vec out = one_;
    for (std::size_t p = w.alpha.size(); p-- > 1;) out = mul(out, n(w.alpha[p]), m(w.beta[p]));
    return out;
  }

  /// Matrix of the map x -> down(target, fn(up(source, x))).
  Matrix tabulate(Block target, Block source, const std::function<Vec(const Vec&)>& fn) const {
    Matrix out(field(), g_.size(target), g_.size(source));
    for (std::size_t c = 0; c < g_.size(source); ++c)
      out.set_column(c, down(target, fn(g_.basis(source, c))));
    return out;
  }

 private:
  const Gma& g_;
  std::vector<Vec> me_, ne_;
  Vec one_;
};

Vec word_sum(const Ops& ops, std::size_t k, bool n_valued) {
  // N-valued: n_a1 m_b1 ... n_ar m_br n_gamma + n_k; M-valued swaps the roles.
  Vec out = n_valued ? ops.n(k) : ops.m(k);
  for (const auto& w : word_indices(k)) {
    Vec t = ops.one();
    for (std::size_t p = 0; p < w.alpha.size(); ++p)
      t = n_valued ? ops.mul(t, ops.n(w.alpha[p]), ops.m(w.beta[p])) : ops.mul(t, ops.m(w.beta[p]), ops.n(w.alpha[p]));
    t = ops.mul(t, n_valued ? ops.n(w.lead) : ops.m(w.lead));
    axpy(out, Scalar::one(ops.field()), t);
  }
  return out;
}

WordSums word_sums(const Ops& ops, std::size_t order) {
  WordSums ws;
  const Gma& g = ops.gma();
  ws.n.push_back(zero_vec(g.field(), g.size(Block::N)));
  ws.m.push_back(zero_vec(g.field(), g.size(Block::M)));
  for (std::size_t k = 1; k <= order; ++k) {
    ws.n.push_back(ops.down(Block::N, word_sum(ops, k, true)));
    ws.m.push_back(ops.down(Block::M, word_sum(ops, k, false)));
  }
  return ws;
}

void check_entries(const Gma& g, const EntryMaps& e, std::size_t order) {
  if (order > e.order()) throw Error("requested order exceeds the entry maps");
  (void)g;
}

}  // namespace

WordSums word_sums(const Gma& g, const std::vector<Vec>& m, const std::vector<Vec>& n, std::size_t order) {
  return word_sums(Ops(g, m, n, order), order);
}

LhdFamilies lhd_families(const Gma& g, const EntryMaps& e, std::size_t order) {
  check_entries(g, e, order);
  const Ops ops(g, e.m, e.n, order);
  const Field f = g.field();
  const std::size_t da = g.size(Block::A), db = g.size(Block::B);
  using B = Block;
  LhdFamilies F;
  F.words = word_sums(ops, order);
  F.a_left = {Matrix::identity(f, da)};
  F.a_right = {Matrix::identity(f, da)};
  F.b_to_a = {Matrix(f, da, db)};
  F.b_left = {Matrix::identity(f, db)};
  F.b_right = {Matrix::identity(f, db)};
  F.a_to_b = {Matrix(f, db, da)};
  for (auto* v : {&F.a_left_word, &F.a_right_word}) v->push_back(Matrix(f, da, da));
  for (auto* v : {&F.b_to_a_word, &F.b_to_a_word_alt}) v->push_back(Matrix(f, da, db));
  for (auto* v : {&F.b_left_word, &F.b_right_word}) v->push_back(Matrix(f, db, db));
  for (auto* v : {&F.a_to_b_word, &F.a_to_b_word_alt}) v->push_back(Matrix(f, db, da));

  // Embedded images of the lower families.
  auto P = [&](std::size_t i, const Vec& a) { return ops.apply(F.a_left[i], B::A, B::A, a); };
  auto Pp = [&](std::size_t i, const Vec& a) { return ops.apply(F.a_right[i], B::A, B::A, a); };
  auto Ppp = [&](std::size_t i, const Vec& b) { return ops.apply(F.b_to_a[i], B::A, B::B, b); };
  auto Q = [&](std::size_t i, const Vec& b) { return ops.apply(F.b_left[i], B::B, B::B, b); };
  auto Qp = [&](std::size_t i, const Vec& b) { return ops.apply(F.b_right[i], B::B, B::B, b); };
  auto Qpp = [&](std::size_t i, const Vec& a) { return ops.apply(F.a_to_b[i], B::B, B::A, a); };

  for (std::size_t k = 1; k <= order; ++k) {
    const auto terms = family_indices(k);
    auto sum_over = [&](const std::function<Vec(const WordIndex&, const Vec&)>& term) {
      return [&, term](const Vec& x) {
        Vec out = ops.zero();
        for (const auto& w : terms) axpy(out, Scalar::one(f), term(w, x));
        return out;
      };
    };
    auto mb = [&](const WordIndex& w) -> const Vec& { return ops.m(w.beta[0]); };
    auto na = [&](const WordIndex& w) -> const Vec& { return ops.n(w.alpha[0]); };

    F.a_left_word.push_back(ops.tabulate(B::A, B::A, sum_over([&](const WordIndex& w, const Vec& a) {
      Vec inner = sub(ops.mul(P(w.lead, a), mb(w)), ops.mul(mb(w), Qpp(w.lead, a)));
      return ops.mul(inner, na(w), ops.mn_up(w));
    })));
    F.a_right_word.push_back(ops.tabulate(B::A, B::A, sum_over([&](const WordIndex& w, const Vec& a) {
      Vec inner = sub(ops.mul(na(w), Pp(w.lead, a)), ops.mul(Qpp(w.lead, a), na(w)));
      return ops.mul(ops.mn_down(w), mb(w), inner);
    })));
    F.b_to_a_word.push_back(ops.tabulate(B::A, B::B, sum_over([&](const WordIndex& w, const Vec& b) {
      Vec inner = sub(ops.mul(mb(w), Q(w.lead, b)), ops.mul(Ppp(w.lead, b), mb(w)));
      return ops.mul(inner, na(w), ops.mn_up(w));
    })));
    F.b_to_a_word_alt.push_back(ops.tabulate(B::A, B::B, sum_over([&](const WordIndex& w, const Vec& b) {
      Vec inner = sub(ops.mul(Qp(w.lead, b), na(w)), ops.mul(na(w), Ppp(w.lead, b)));
      return ops.mul(ops.mn_down(w), mb(w), inner);
    })));
    F.b_left_word.push_back(ops.tabulate(B::B, B::B, sum_over([&](const WordIndex& w, const Vec& b) {
      Vec inner = sub(ops.mul(mb(w), Q(w.lead, b)), ops.mul(Ppp(w.lead, b), mb(w)));
      return ops.mul(ops.nm_down(w), na(w), inner);
    })));
    F.b_right_word.push_back(ops.tabulate(B::B, B::B, sum_over([&](const WordIndex& w, const Vec& b) {
      Vec inner = sub(ops.mul(Qp(w.lead, b), na(w)), ops.mul(na(w), Ppp(w.lead, b)));
      return ops.mul(inner, mb(w), ops.nm_up(w));
    })));
    F.a_to_b_word.push_back(ops.tabulate(B::B, B::A, sum_over([&](const WordIndex& w, const Vec& a) {
      Vec inner = sub(ops.mul(P(w.lead, a), mb(w)), ops.mul(mb(w), Qpp(w.lead, a)));
      return ops.mul(ops.nm_down(w), na(w), inner);
    })));
    F.a_to_b_word_alt.push_back(ops.tabulate(B::B, B::A, sum_over([&](const WordIndex& w, const Vec& a) {
      Vec inner = sub(ops.mul(na(w), Pp(w.lead, a)), ops.mul(Qpp(w.lead, a), na(w)));
      return ops.mul(inner, mb(w), ops.nm_up(w));
    })));

    F.a_left.push_back(e.get(k, B::A, B::A) + F.a_left_word[k]);
    F.a_right.push_back(e.get(k, B::A, B::A) + F.a_right_word[k]);
    F.b_to_a.push_back(e.get(k, B::A, B::B) - F.b_to_a_word[k]);
    F.b_left.push_back(e.get(k, B::B, B::B) + F.b_left_word[k]);
    F.b_right.push_back(e.get(k, B::B, B::B) + F.b_right_word[k]);
    F.a_to_b.push_back(e.get(k, B::B, B::A) - F.a_to_b_word[k]);
  }
  return F;
}

HdFamilies hd_families(const Gma& g, const EntryMaps& e, std::size_t order) {
  check_entries(g, e, order);
  const Ops ops(g, e.m, e.n, order);
  const Field f = g.field();
  const std::size_t da = g.size(Block::A), db = g.size(Block::B);
  using B = Block;
  HdFamilies F;
  F.words = word_sums(ops, order);
  F.a_left = {Matrix::identity(f, da)};
  F.a_right = {Matrix::identity(f, da)};
  F.b_left = {Matrix::identity(f, db)};
  F.b_right = {Matrix::identity(f, db)};
  for (auto* v : {&F.a_left_word, &F.a_right_word}) v->push_back(Matrix(f, da, da));
  for (auto* v : {&F.b_left_word, &F.b_right_word}) v->push_back(Matrix(f, db, db));

  auto P = [&](std::size_t i, const Vec& a) { return ops.apply(F.a_left[i], B::A, B::A, a); };
  auto Pp = [&](std::size_t i, const Vec& a) { return ops.apply(F.a_right[i], B::A, B::A, a); };
  auto Q = [&](std::size_t i, const Vec& b) { return ops.apply(F.b_left[i], B::B, B::B, b); };
  auto Qp = [&](std::size_t i, const Vec& b) { return ops.apply(F.b_right[i], B::B, B::B, b); };

  for (std::size_t k = 1; k <= order; ++k) {
    const auto terms = family_indices(k);
    auto sum_over = [&](const std::function<Vec(const WordIndex&, const Vec&)>& term) {
      return [&, term](const Vec& x) {
        Vec out = ops.zero();
        for (const auto& w : terms) axpy(out, Scalar::one(f), term(w, x));
        return out;
      };
    };
    auto mb = [&](const WordIndex& w) -> const Vec& { return ops.m(w.beta[0]); };
    auto na = [&](const WordIndex& w) -> const Vec& { return ops.n(w.alpha[0]); };

    F.a_left_word.push_back(ops.tabulate(B::A, B::A, sum_over([&](const WordIndex& w, const Vec& a) {
      return ops.mul(P(w.lead, a), mb(w), na(w), ops.mn_up(w));
    })));
    F.a_right_word.push_back(ops.tabulate(B::A, B::A, sum_over([&](const WordIndex& w, const Vec& a) {
      return ops.mul(mb(w), na(w), ops.mn_up(w), Pp(w.lead, a));
    })));
    F.b_left_word.push_back(ops.tabulate(B::B, B::B, sum_over([&](const WordIndex& w, const Vec& b) {
      return ops.mul(ops.nm_down(w), na(w), mb(w), Q(w.lead, b));
    })));
    F.b_right_word.push_back(ops.tabulate(B::B, B::B, sum_over([&](const WordIndex& w, const Vec& b) {
      return ops.mul(Qp(w.lead, b), ops.nm_down(w), na(w), mb(w));
    })));

    F.a_left.push_back(e.get(k, B::A, B::A) + F.a_left_word[k]);
    F.a_right.push_back(e.get(k, B::A, B::A) + F.a_right_word[k]);
    F.b_left.push_back(e.get(k, B::B, B::B) + F.b_left_word[k]);
    F.b_right.push_back(e.get(k, B::B, B::B) + F.b_right_word[k]);
  }
  return F;
}

// ---------------------------------------------------------------------------

bool ConditionReport::holds(const std::string& id) const { return count(id) == 0; }

std::size_t ConditionReport::count(const std::string& id) const {
  return static_cast<std::size_t>(
      std::count_if(violations.begin(), violations.end(), [&](const Violation& v) { return v.condition == id; }));
}

namespace {

MapSequence as_sequence(const std::vector<Matrix>& maps, std::size_t order) {
  MapSequence s;
  s.maps.assign(maps.begin(), maps.begin() + static_cast<std::ptrdiff_t>(order + 1));
  return s;
}

/// Shared machinery for the block-level checks.
class Checker {
 public:
  Checker(const Gma& g, const EntryMaps& e, std::size_t order, ConditionReport& rep)
      : g_(g), e_(e), ops_(g, e.m, e.n, order), order_(order), rep_(rep) {}

  const Ops& ops() const { return ops_; }

  /// Block map of L_k applied to an embedded element.
  Vec L(std::size_t k, Block target, Block source, const Vec& x) const {
    return ops_.apply(e_.get(k, target, source), target, source, x);
  }

  void begin(const std::string& id) { rep_.conditions.push_back(id); }

  void expect(const std::string& id, std::size_t k, std::vector<std::size_t> idx, const Vec& lhs, const Vec& rhs,
              const std::string& what, bool diagnostic = false) {
    if (lhs == rhs) return;
    (diagnostic ? rep_.diagnostics : rep_.violations).push_back({id, k, std::move(idx), what});
  }

  std::size_t size(Block b) const { return g_.size(b); }
  Vec basis(Block b, std::size_t i) const { return g_.basis(b, i); }
  std::size_t order() const { return order_; }

  void sequence_check(const std::string& id, const FinDimAlgebra& alg, const std::vector<Matrix>& maps,
                      bool lie, const std::string& what) {
    auto s = as_sequence(maps, order_);
    auto res = lie ? verify_lhd(alg, s, order_) : verify_hd(alg, s, order_);
    if (!res) rep_.violations.push_back({id, res.witness->k, {res.witness->x, res.witness->y}, what});
  }

 private:
  const Gma& g_;
  const EntryMaps& e_;
  Ops ops_;
  std::size_t order_;
  ConditionReport& rep_;
};

/// The determined-block identities shared by both characterizations:
/// M<-N and N<-M blocks, then the A<-M, B<-M, A<-N, B<-N blocks.
void check_word_blocks(Checker& c, const WordSums& ws, const std::string& id_mn, const std::string& id_am,
                       const std::string& id_an) {
  using B = Block;
  const auto& o = c.ops();
  const Field f = o.field();
  const std::size_t K = c.order();
  auto N = [&](std::size_t i) { return o.up(B::N, ws.n[i]); };
  auto M = [&](std::size_t i) { return o.up(B::M, ws.m[i]); };
  const Scalar one = Scalar::one(f);

  c.begin(id_mn);
  for (std::size_t k = 1; k <= K; ++k) {
    for (std::size_t x = 0; x < c.size(B::M); ++x) {
      Vec m = c.basis(B::M, x), rhs = o.zero();
      for (std::size_t i = 1; i <= k; ++i)
        for (std::size_t j = 1; i + j <= k; ++j) axpy(rhs, -one, o.mul(N(i), c.L(k - i - j, B::M, B::M, m), N(j)));
      c.expect(id_mn, k, {x}, c.L(k, B::N, B::M, m), rhs, "N<-M block");
    }
    for (std::size_t x = 0; x < c.size(B::N); ++x) {
      Vec n = c.basis(B::N, x), rhs = o.zero();
      for (std::size_t i = 1; i <= k; ++i)
        for (std::size_t j = 1; i + j <= k; ++j) axpy(rhs, -one, o.mul(M(i), c.L(k - i - j, B::N, B::N, n), M(j)));
      c.expect(id_mn, k, {x}, c.L(k, B::M, B::N, n), rhs, "M<-N block");
    }
  }
  c.begin(id_am);
  for (std::size_t k = 1; k <= K; ++k)
    for (std::size_t x = 0; x < c.size(B::M); ++x) {
      Vec m = c.basis(B::M, x), ra = o.zero(), rb = o.zero();
      for (std::size_t j = 1; j <= k; ++j) {
        Vec fm = c.L(k - j, B::M, B::M, m);
        axpy(ra, -one, o.mul(fm, N(j)));
        axpy(rb, one, o.mul(N(j), fm));
      }
      c.expect(id_am, k, {x}, c.L(k, B::A, B::M, m), ra, "A<-M block");
      c.expect(id_am, k, {x}, c.L(k, B::B, B::M, m), rb, "B<-M block");
    }
  c.begin(id_an);
  for (std::size_t k = 1; k <= K; ++k)
    for (std::size_t x = 0; x < c.size(B::N); ++x) {
      Vec n = c.basis(B::N, x), ra = o.zero(), rb = o.zero();
      for (std::size_t j = 1; j <= k; ++j) {
        Vec gn = c.L(k - j, B::N, B::N, n);
        axpy(ra, -one, o.mul(M(j), gn));
        axpy(rb, one, o.mul(gn, M(j)));
      }
      c.expect(id_an, k, {x}, c.L(k, B::A, B::N, n), ra, "A<-N block");
      c.expect(id_an, k, {x}, c.L(k, B::B, B::N, n), rb, "B<-N block");
    }
}

}  // namespace

ConditionReport check_lhd_conditions(const Gma& g, const EntryMaps& e, std::size_t order) {
  using B = Block;
  ConditionReport rep;
  const LhdFamilies F = lhd_families(g, e, order);
  Checker c(g, e, order, rep);
  const auto& o = c.ops();
  const auto& ctx = g.context();
  const Field f = g.field();
  const Scalar one = Scalar::one(f);
  const std::size_t K = order;
  auto P = [&](std::size_t i, const Vec& a) { return o.apply(F.a_left[i], B::A, B::A, a); };
  auto Pp = [&](std::size_t i, const Vec& a) { return o.apply(F.a_right[i], B::A, B::A, a); };
  auto Ppp = [&](std::size_t i, const Vec& b) { return o.apply(F.b_to_a[i], B::A, B::B, b); };
  auto Q = [&](std::size_t i, const Vec& b) { return o.apply(F.b_left[i], B::B, B::B, b); };
  auto Qp = [&](std::size_t i, const Vec& b) { return o.apply(F.b_right[i], B::B, B::B, b); };
  auto Qpp = [&](std::size_t i, const Vec& a) { return o.apply(F.a_to_b[i], B::B, B::A, a); };

  // (1)
  c.begin("1.lhd");
  c.sequence_check("1.lhd", ctx.a, F.a_left, true, "left A family is not a Lie higher derivation");
  c.sequence_check("1.lhd", ctx.a, F.a_right, true, "right A family is not a Lie higher derivation");
  c.sequence_check("1.lhd", ctx.b, F.b_left, true, "left B family is not a Lie higher derivation");
  c.sequence_check("1.lhd", ctx.b, F.b_right, true, "right B family is not a Lie higher derivation");
  c.begin("1.center");
  const Subspace za = center(ctx.a), zb = center(ctx.b);
  for (std::size_t k = 1; k <= K; ++k) {
    for (std::size_t x = 0; x < ctx.a.dim(); ++x)
      if (!zb.contains(F.a_to_b[k].column(x))) rep.violations.push_back({"1.center", k, {x}, "A->B part not central"});
    for (std::size_t x = 0; x < ctx.b.dim(); ++x)
      if (!za.contains(F.b_to_a[k].column(x))) rep.violations.push_back({"1.center", k, {x}, "B->A part not central"});
  }
  c.begin("1.commutator");
  for (std::size_t k = 1; k <= K; ++k) {
    for (std::size_t x = 0; x < ctx.a.dim(); ++x)
      for (std::size_t y = x + 1; y < ctx.a.dim(); ++y)
        if (!is_zero(F.a_to_b[k].apply(ctx.a.commutator(ctx.a.basis(x), ctx.a.basis(y)))))
          rep.violations.push_back({"1.commutator", k, {x, y}, "A->B part nonzero on a commutator"});
    for (std::size_t x = 0; x < ctx.b.dim(); ++x)
      for (std::size_t y = x + 1; y < ctx.b.dim(); ++y)
        if (!is_zero(F.b_to_a[k].apply(ctx.b.commutator(ctx.b.basis(x), ctx.b.basis(y)))))
          rep.violations.push_back({"1.commutator", k, {x, y}, "B->A part nonzero on a commutator"});
  }

  // (2), (3)
  c.begin("2");
  for (std::size_t k = 1; k <= K; ++k)
    for (std::size_t x = 0; x < c.size(B::A); ++x) {
      Vec a = c.basis(B::A, x), rg = o.zero(), rf = o.zero();
      for (std::size_t i = 1; i <= k; ++i) {
        axpy(rg, one, sub(o.mul(o.n(i), Pp(k - i, a)), o.mul(Qpp(k - i, a), o.n(i))));
        axpy(rf, one, sub(o.mul(P(k - i, a), o.m(i)), o.mul(o.m(i), Qpp(k - i, a))));
      }
      c.expect("2", k, {x}, c.L(k, B::N, B::A, a), rg, "N<-A block");
      c.expect("2", k, {x}, c.L(k, B::M, B::A, a), rf, "M<-A block");
    }
  c.begin("3");
  for (std::size_t k = 1; k <= K; ++k)
    for (std::size_t x = 0; x < c.size(B::B); ++x) {
      Vec b = c.basis(B::B, x), rg = o.zero(), rf = o.zero();
      for (std::size_t i = 1; i <= k; ++i) {
        axpy(rg, -one, sub(o.mul(Qp(k - i, b), o.n(i)), o.mul(o.n(i), Ppp(k - i, b))));
        axpy(rf, -one, sub(o.mul(o.m(i), Q(k - i, b)), o.mul(Ppp(k - i, b), o.m(i))));
      }
      c.expect("3", k, {x}, c.L(k, B::N, B::B, b), rg, "N<-B block");
      c.expect("3", k, {x}, c.L(k, B::M, B::B, b), rf, "M<-B block");
    }

  // (4)-(7)
  c.begin("4");
  c.begin("5");
  c.begin("6");
  c.begin("7");
  for (std::size_t k = 1; k <= K; ++k) {
    for (std::size_t xm = 0; xm < c.size(B::M); ++xm) {
      Vec m = c.basis(B::M, xm);
      for (std::size_t x = 0; x < c.size(B::A); ++x) {
        Vec a = c.basis(B::A, x), rhs = o.zero();
        for (std::size_t i = 0; i <= k; ++i) {
          Vec fm = c.L(k - i, B::M, B::M, m);
          axpy(rhs, one, sub(o.mul(P(i, a), fm), o.mul(fm, Qpp(i, a))));
        }
        c.expect("4", k, {x, xm}, c.L(k, B::M, B::M, o.mul(a, m)), rhs, "M<-M block on a m");
      }
      for (std::size_t x = 0; x < c.size(B::B); ++x) {
        Vec b = c.basis(B::B, x), rhs = o.zero();
        for (std::size_t i = 0; i <= k; ++i) {
          Vec fm = c.L(k - i, B::M, B::M, m);
          axpy(rhs, one, sub(o.mul(fm, Q(i, b)), o.mul(Ppp(i, b), fm)));
        }
        c.expect("5", k, {xm, x}, c.L(k, B::M, B::M, o.mul(m, b)), rhs, "M<-M block on m b");
      }
    }
    for (std::size_t xn = 0; xn < c.size(B::N); ++xn) {
      Vec n = c.basis(B::N, xn);
      for (std::size_t x = 0; x < c.size(B::A); ++x) {
        Vec a = c.basis(B::A, x), rhs = o.zero();
        for (std::size_t i = 0; i <= k; ++i) {
          Vec gn = c.L(k - i, B::N, B::N, n);
          axpy(rhs, one, sub(o.mul(gn, Pp(i, a)), o.mul(Qpp(i, a), gn)));
        }
        c.expect("6", k, {xn, x}, c.L(k, B::N, B::N, o.mul(n, a)), rhs, "N<-N block on n a");
      }
      for (std::size_t x = 0; x < c.size(B::B); ++x) {
        Vec b = c.basis(B::B, x), rhs = o.zero();
        for (std::size_t i = 0; i <= k; ++i) {
          Vec gn = c.L(k - i, B::N, B::N, n);
          axpy(rhs, one, sub(o.mul(Qp(i, b), gn), o.mul(gn, Ppp(i, b))));
        }
        c.expect("7", k, {x, xn}, c.L(k, B::N, B::N, o.mul(b, n)), rhs, "N<-N block on b n");
      }
    }
  }

  // (8)-(10)
  check_word_blocks(c, F.words, "8", "9", "10");

  // (11), (12)
  c.begin("11");
  c.begin("12");
  for (std::size_t k = 1; k <= K; ++k)
    for (std::size_t xm = 0; xm < c.size(B::M); ++xm)
      for (std::size_t xn = 0; xn < c.size(B::N); ++xn) {
        Vec m = c.basis(B::M, xm), n = c.basis(B::N, xn);
        Vec mn = o.mul(m, n), nm = o.mul(n, m);
        Vec ra = o.zero(), rb = o.zero();
        for (std::size_t i = 0; i <= k; ++i) {
          const std::size_t j = k - i;
          Vec p3 = c.L(i, B::A, B::M, m), f3 = c.L(i, B::M, B::M, m), g3 = c.L(i, B::N, B::M, m), q3 = c.L(i, B::B, B::M, m);
          Vec p4 = c.L(j, B::A, B::N, n), f4 = c.L(j, B::M, B::N, n), g4 = c.L(j, B::N, B::N, n), q4 = c.L(j, B::B, B::N, n);
          axpy(ra, one, o.mul(p3, p4));
          axpy(ra, one, o.mul(f3, g4));
          axpy(ra, -one, o.mul(p4, p3));
          axpy(ra, -one, o.mul(f4, g3));
          axpy(rb, one, o.mul(g3, f4));
          axpy(rb, one, o.mul(q3, q4));
          axpy(rb, -one, o.mul(g4, f3));
          axpy(rb, -one, o.mul(q4, q3));
        }
        c.expect("11", k, {xm, xn}, sub(c.L(k, B::A, B::A, mn), c.L(k, B::A, B::B, nm)), ra, "A-side pairing identity");
        c.expect("12", k, {xm, xn}, sub(c.L(k, B::B, B::A, mn), c.L(k, B::B, B::B, nm)), rb, "B-side pairing identity");
      }

  // The two expressions of each of the B->A and A->B words.
  for (std::size_t k = 1; k <= K; ++k) {
    if (F.b_to_a_word[k] != F.b_to_a_word_alt[k])
      rep.diagnostics.push_back({"words.b_to_a", k, {}, "the two B->A word expressions differ"});
    if (F.a_to_b_word[k] != F.a_to_b_word_alt[k])
      rep.diagnostics.push_back({"words.a_to_b", k, {}, "the two A->B word expressions differ"});
  }
  return rep;
}

ConditionReport check_hd_conditions(const Gma& g, const EntryMaps& e, std::size_t order) {
  using B = Block;
  ConditionReport rep;
  const HdFamilies F = hd_families(g, e, order);
  Checker c(g, e, order, rep);
  const auto& o = c.ops();
  const auto& ctx = g.context();
  const Scalar one = Scalar::one(g.field());
  const std::size_t K = order;
  auto P = [&](std::size_t i, const Vec& a) { return o.apply(F.a_left[i], B::A, B::A, a); };
  auto Pp = [&](std::size_t i, const Vec& a) { return o.apply(F.a_right[i], B::A, B::A, a); };
  auto Q = [&](std::size_t i, const Vec& b) { return o.apply(F.b_left[i], B::B, B::B, b); };
  auto Qp = [&](std::size_t i, const Vec& b) { return o.apply(F.b_right[i], B::B, B::B, b); };

  c.begin("a");
  c.sequence_check("a", ctx.a, F.a_left, false, "left A family is not a higher derivation");
  c.sequence_check("a", ctx.a, F.a_right, false, "right A family is not a higher derivation");
  c.sequence_check("a", ctx.b, F.b_left, false, "left B family is not a higher derivation");
  c.sequence_check("a", ctx.b, F.b_right, false, "right B family is not a higher derivation");

  c.begin("b");
  for (std::size_t k = 1; k <= K; ++k)
    for (std::size_t x = 0; x < c.size(B::A); ++x) {
      Vec a = c.basis(B::A, x), rg = o.zero(), rf = o.zero();
      for (std::size_t i = 1; i <= k; ++i) {
        axpy(rg, one, o.mul(o.n(i), Pp(k - i, a)));
        axpy(rf, one, o.mul(P(k - i, a), o.m(i)));
      }
      c.expect("b", k, {x}, c.L(k, B::N, B::A, a), rg, "N<-A block");
      c.expect("b", k, {x}, c.L(k, B::M, B::A, a), rf, "M<-A block");
    }
  c.begin("c");
  for (std::size_t k = 1; k <= K; ++k)
    for (std::size_t x = 0; x < c.size(B::B); ++x) {
      Vec b = c.basis(B::B, x), rg = o.zero(), rf = o.zero();
      for (std::size_t i = 1; i <= k; ++i) {
        axpy(rg, -one, o.mul(Qp(k - i, b), o.n(i)));
        axpy(rf, -one, o.mul(o.m(i), Q(k - i, b)));
      }
      c.expect("c", k, {x}, c.L(k, B::N, B::B, b), rg, "N<-B block");
      c.expect("c", k, {x}, c.L(k, B::M, B::B, b), rf, "M<-B block");
    }

  c.begin("d");
  c.begin("e");
  for (std::size_t k = 1; k <= K; ++k) {
    for (std::size_t xm = 0; xm < c.size(B::M); ++xm) {
      Vec m = c.basis(B::M, xm);
      for (std::size_t x = 0; x < c.size(B::A); ++x) {
        Vec a = c.basis(B::A, x), rhs = o.zero();
        for (std::size_t i = 0; i <= k; ++i) axpy(rhs, one, o.mul(P(i, a), c.L(k - i, B::M, B::M, m)));
        c.expect("d", k, {x, xm}, c.L(k, B::M, B::M, o.mul(a, m)), rhs, "M<-M block on a m");
      }
      for (std::size_t x = 0; x < c.size(B::B); ++x) {
        Vec b = c.basis(B::B, x), rhs = o.zero();
        for (std::size_t i = 0; i <= k; ++i) axpy(rhs, one, o.mul(c.L(k - i, B::M, B::M, m), Q(i, b)));
        c.expect("d", k, {xm, x}, c.L(k, B::M, B::M, o.mul(m, b)), rhs, "M<-M block on m b");
      }
    }
    for (std::size_t xn = 0; xn < c.size(B::N); ++xn) {
      Vec n = c.basis(B::N, xn);
      for (std::size_t x = 0; x < c.size(B::A); ++x) {
        Vec a = c.basis(B::A, x), rhs = o.zero();
        for (std::size_t i = 0; i <= k; ++i) axpy(rhs, one, o.mul(c.L(k - i, B::N, B::N, n), Pp(i, a)));
        c.expect("e", k, {xn, x}, c.L(k, B::N, B::N, o.mul(n, a)), rhs, "N<-N block on n a");
      }
      for (std::size_t x = 0; x < c.size(B::B); ++x) {
        Vec b = c.basis(B::B, x), rhs = o.zero();
        for (std::size_t i = 0; i <= k; ++i) axpy(rhs, one, o.mul(Qp(i, b), c.L(k - i, B::N, B::N, n)));
        c.expect("e", k, {x, xn}, c.L(k, B::N, B::N, o.mul(b, n)), rhs, "N<-N block on b n");
      }
    }
  }

  check_word_blocks(c, F.words, "f", "g", "h");

  c.begin("i");
  c.begin("j");
  for (std::size_t k = 1; k <= K; ++k) {
    const auto terms = family_indices(k);
    for (std::size_t x = 0; x < c.size(B::A); ++x) {
      Vec a = c.basis(B::A, x), r1 = o.zero(), r2 = o.zero();
      for (const auto& w : terms) {
        const Vec &na = o.n(w.alpha[0]), &mb = o.m(w.beta[0]);
        axpy(r1, one, o.mul(o.nm_down(w), na, P(w.lead, a), mb));
        axpy(r2, one, o.mul(na, Pp(w.lead, a), mb, o.nm_up(w)));
      }
      Vec lhs = c.L(k, B::B, B::A, a);
      c.expect("i", k, {x}, lhs, r1, "B<-A block, first expression");
      c.expect("i", k, {x}, lhs, r2, "B<-A block, second expression");
    }
    for (std::size_t x = 0; x < c.size(B::B); ++x) {
      Vec b = c.basis(B::B, x), r1 = o.zero(), r2 = o.zero();
      for (const auto& w : terms) {
        const Vec &na = o.n(w.alpha[0]), &mb = o.m(w.beta[0]);
        axpy(r1, one, o.mul(mb, Q(w.lead, b), na, o.mn_up(w)));
        axpy(r2, one, o.mul(o.mn_down(w), mb, Qp(w.lead, b), na));
      }
      Vec lhs = c.L(k, B::A, B::B, b);
      c.expect("j", k, {x}, lhs, r1, "A<-B block, first expression");
      c.expect("j", k, {x}, lhs, r2, "A<-B block, second expression");
    }
  }

  for (const char* id : {"k", "l", "m", "n"}) c.begin(id);
  for (std::size_t k = 1; k <= K; ++k)
    for (std::size_t xm = 0; xm < c.size(B::M); ++xm)
      for (std::size_t xn = 0; xn < c.size(B::N); ++xn) {
        Vec m = c.basis(B::M, xm), n = c.basis(B::N, xn);
        Vec mn = o.mul(m, n), nm = o.mul(n, m);
        Vec rk = o.zero(), rl = o.zero(), rm = o.zero(), rn = o.zero();
        for (std::size_t i = 0; i <= k; ++i) {
          const std::size_t j = k - i;
          // m at order i, n at order j
          axpy(rk, one, o.mul(c.L(i, B::A, B::M, m), c.L(j, B::A, B::N, n)));
          axpy(rk, one, o.mul(c.L(i, B::M, B::M, m), c.L(j, B::N, B::N, n)));
          axpy(rl, one, o.mul(c.L(i, B::N, B::M, m), c.L(j, B::M, B::N, n)));
          axpy(rl, one, o.mul(c.L(i, B::B, B::M, m), c.L(j, B::B, B::N, n)));
          // n at order i, m at order j
          axpy(rm, one, o.mul(c.L(i, B::N, B::N, n), c.L(j, B::M, B::M, m)));
          axpy(rm, one, o.mul(c.L(i, B::B, B::N, n), c.L(j, B::B, B::M, m)));
          axpy(rn, one, o.mul(c.L(i, B::A, B::N, n), c.L(j, B::A, B::M, m)));
          axpy(rn, one, o.mul(c.L(i, B::M, B::N, n), c.L(j, B::N, B::M, m)));
        }
        c.expect("k", k, {xm, xn}, c.L(k, B::A, B::A, mn), rk, "A<-A block on m n");
        c.expect("l", k, {xm, xn}, c.L(k, B::B, B::A, mn), rl, "B<-A block on m n");
        c.expect("m", k, {xn, xm}, c.L(k, B::B, B::B, nm), rm, "B<-B block on n m");
        c.expect("n", k, {xn, xm}, c.L(k, B::A, B::B, nm), rn, "A<-B block on n m");
      }
  return rep;
}

ConditionReport check_tau_form(const Gma& g, const MapSequence& tau, std::size_t order) {
  using B = Block;
  if (order > tau.order()) throw Error("requested order exceeds the tau sequence");
  ConditionReport rep;
  MapSequence t = tau;
  t.tau = true;
  check_shape(t, g.dim());
  EntryMaps e = extract_entries(g, [&] {
    MapSequence s = t;
    s.tau = false;
    s.maps[0] = Matrix::identity(g.field(), g.dim());
    return s;
  }());
  const auto& ctx = g.context();

  rep.conditions.push_back("shape");
  for (std::size_t k = 1; k <= order; ++k)
    for (int tb = 0; tb < 4; ++tb)
      for (int sb = 0; sb < 4; ++sb) {
        const bool diagonal = (tb == 0 || tb == 3) && (sb == 0 || sb == 3);
        if (!diagonal && !e.blocks[k][tb][sb].is_zero())
          rep.violations.push_back({"shape", k, {static_cast<std::size_t>(tb), static_cast<std::size_t>(sb)},
                                    std::string(to_string(static_cast<B>(tb))) + "<-" + to_string(static_cast<B>(sb)) +
                                        " block is nonzero"});
      }
  if (!rep.ok()) return rep;

  const Subspace za = center(ctx.a), zb = center(ctx.b), zg = center(g.algebra());
  auto ell = [&](std::size_t k) -> const Matrix& { return e.get(k, B::A, B::A); };
  auto b_to_a = [&](std::size_t k) -> const Matrix& { return e.get(k, B::A, B::B); };
  auto a_to_b = [&](std::size_t k) -> const Matrix& { return e.get(k, B::B, B::A); };
  auto ell_b = [&](std::size_t k) -> const Matrix& { return e.get(k, B::B, B::B); };

  rep.conditions.push_back("center");
  rep.conditions.push_back("commutator");
  for (std::size_t k = 1; k <= order; ++k) {
    for (std::size_t x = 0; x < ctx.a.dim(); ++x) {
      if (!za.contains(ell(k).column(x))) rep.violations.push_back({"center", k, {0, x}, "A<-A part not central"});
      if (!zb.contains(a_to_b(k).column(x))) rep.violations.push_back({"center", k, {3, x}, "B<-A part not central"});
      for (std::size_t y = x + 1; y < ctx.a.dim(); ++y) {
        Vec c = ctx.a.commutator(ctx.a.basis(x), ctx.a.basis(y));
        if (!is_zero(ell(k).apply(c)) || !is_zero(a_to_b(k).apply(c)))
          rep.violations.push_back({"commutator", k, {x, y}, "nonzero on a commutator of A"});
      }
    }
    for (std::size_t x = 0; x < ctx.b.dim(); ++x) {
      if (!za.contains(b_to_a(k).column(x))) rep.violations.push_back({"center", k, {0, x}, "A<-B part not central"});
      if (!zb.contains(ell_b(k).column(x))) rep.violations.push_back({"center", k, {3, x}, "B<-B part not central"});
      for (std::size_t y = x + 1; y < ctx.b.dim(); ++y) {
        Vec c = ctx.b.commutator(ctx.b.basis(x), ctx.b.basis(y));
        if (!is_zero(b_to_a(k).apply(c)) || !is_zero(ell_b(k).apply(c)))
          rep.violations.push_back({"commutator", k, {x, y}, "nonzero on a commutator of B"});
      }
    }
  }

  rep.conditions.push_back("i");
  for (std::size_t k = 1; k <= order; ++k) {
    for (std::size_t x = 0; x < ctx.a.dim(); ++x) {
      Vec z = add(g.embed(B::A, ell(k).column(x)), g.embed(B::B, a_to_b(k).column(x)));
      if (!zg.contains(z)) rep.violations.push_back({"i", k, {0, x}, "image of an A basis element is not central"});
    }
    for (std::size_t x = 0; x < ctx.b.dim(); ++x) {
      Vec z = add(g.embed(B::A, b_to_a(k).column(x)), g.embed(B::B, ell_b(k).column(x)));
      if (!zg.contains(z)) rep.violations.push_back({"i", k, {3, x}, "image of a B basis element is not central"});
    }
  }

  rep.conditions.push_back("ii");
  for (std::size_t k = 1; k <= order; ++k)
    for (std::size_t xm = 0; xm < ctx.m.dim(); ++xm)
      for (std::size_t xn = 0; xn < ctx.n.dim(); ++xn) {
        Vec m = unit_vec(g.field(), ctx.m.dim(), xm), n = unit_vec(g.field(), ctx.n.dim(), xn);
        Vec mn = ctx.pair_mn(m, n), nm = ctx.pair_nm(n, m);
        if (ell(k).apply(mn) != b_to_a(k).apply(nm))
          rep.violations.push_back({"ii", k, {xm, xn}, "A-side values on m n and n m differ"});
        if (ell_b(k).apply(nm) != a_to_b(k).apply(mn))
          rep.violations.push_back({"ii", k, {xm, xn}, "B-side values on n m and m n differ"});
      }
  return rep;
}

// ---------------------------------------------------------------------------

Ingredients ingredients_of(const EntryMaps& e) {
  using B = Block;
  Ingredients ing;
  for (std::size_t k = 0; k <= e.order(); ++k) {
    ing.a_a.push_back(e.get(k, B::A, B::A));
    ing.b_a.push_back(e.get(k, B::A, B::B));
    ing.a_b.push_back(e.get(k, B::B, B::A));
    ing.b_b.push_back(e.get(k, B::B, B::B));
    ing.m_m.push_back(e.get(k, B::M, B::M));
    ing.n_n.push_back(e.get(k, B::N, B::N));
    ing.m.push_back(e.m[k]);
    ing.n.push_back(e.n[k]);
  }
  return ing;
}

Ingredients zero_ingredients(const Gma& g, std::size_t order) {
  return ingredients_of(extract_entries(g, zero_sequence(g.field(), g.dim(), order)));
}

namespace {

EntryMaps seed_entries(const Gma& g, std::size_t order, const Ingredients& ing, bool lie) {
  using B = Block;
  if (ing.order() < order || ing.m.size() <= order || ing.n.size() <= order)
    throw Error("ingredients do not reach the requested order");
  EntryMaps e = extract_entries(g, zero_sequence(g.field(), g.dim(), order));
  for (std::size_t k = 1; k <= order; ++k) {
    e.get(k, B::A, B::A) = ing.a_a[k];
    e.get(k, B::B, B::B) = ing.b_b[k];
    if (lie) {
      e.get(k, B::A, B::B) = ing.b_a[k];
      e.get(k, B::B, B::A) = ing.a_b[k];
    }
    e.get(k, B::M, B::M) = ing.m_m[k];
    e.get(k, B::N, B::N) = ing.n_n[k];
    e.m[k] = ing.m[k];
    e.n[k] = ing.n[k];
  }
  return e;
}

/// Fills the N<-M, M<-N, A<-M, B<-M, A<-N, B<-N blocks from the word sums.
void fill_word_blocks(const Gma& g, EntryMaps& e, const WordSums& ws, std::size_t order) {
  using B = Block;
  const Ops o(g, e.m, e.n, order);
  const Scalar one = Scalar::one(g.field());
  auto N = [&](std::size_t i) { return o.up(B::N, ws.n[i]); };
  auto M = [&](std::size_t i) { return o.up(B::M, ws.m[i]); };
  auto L = [&](std::size_t k, B t, B s, const Vec& x) { return o.apply(e.get(k, t, s), t, s, x); };
  for (std::size_t k = 1; k <= order; ++k) {
    e.get(k, B::N, B::M) = o.tabulate(B::N, B::M, [&](const Vec& m) {
      Vec r = o.zero();
      for (std::size_t i = 1; i <= k; ++i)
        for (std::size_t j = 1; i + j <= k; ++j) axpy(r, -one, o.mul(N(i), L(k - i - j, B::M, B::M, m), N(j)));
      return r;
    });
    e.get(k, B::M, B::N) = o.tabulate(B::M, B::N, [&](const Vec& n) {
      Vec r = o.zero();
      for (std::size_t i = 1; i <= k; ++i)
        for (std::size_t j = 1; i + j <= k; ++j) axpy(r, -one, o.mul(M(i), L(k - i - j, B::N, B::N, n), M(j)));
      return r;
    });
    e.get(k, B::A, B::M) = o.tabulate(B::A, B::M, [&](const Vec& m) {
      Vec r = o.zero();
      for (std::size_t j = 1; j <= k; ++j) axpy(r, -one, o.mul(L(k - j, B::M, B::M, m), N(j)));
      return r;
    });
    e.get(k, B::B, B::M) = o.tabulate(B::B, B::M, [&](const Vec& m) {
      Vec r = o.zero();
      for (std::size_t j = 1; j <= k; ++j) axpy(r, one, o.mul(N(j), L(k - j, B::M, B::M, m)));
      return r;
    });
    e.get(k, B::A, B::N) = o.tabulate(B::A, B::N, [&](const Vec& n) {
      Vec r = o.zero();
      for (std::size_t j = 1; j <= k; ++j) axpy(r, -one, o.mul(M(j), L(k - j, B::N, B::N, n)));
      return r;
    });
    e.get(k, B::B, B::N) = o.tabulate(B::B, B::N, [&](const Vec& n) {
      Vec r = o.zero();
      for (std::size_t j = 1; j <= k; ++j) axpy(r, one, o.mul(L(k - j, B::N, B::N, n), M(j)));
      return r;
    });
  }
}

std::string first_violation(const ConditionReport& rep) {
  const auto& v = rep.violations.front();
  return "condition " + v.condition + " fails at order " + std::to_string(v.k) + " (" + v.detail + ")";
}

}  // namespace

MapSequence synthesize_lhd(const Gma& g, std::size_t order, const Ingredients& ing) {
  using B = Block;
  EntryMaps e = seed_entries(g, order, ing, true);
  const LhdFamilies F = lhd_families(g, e, order);
  const Ops o(g, e.m, e.n, order);
  const Scalar one = Scalar::one(g.field());
  auto P = [&](std::size_t i, const Vec& a) { return o.apply(F.a_left[i], B::A, B::A, a); };
  auto Pp = [&](std::size_t i, const Vec& a) { return o.apply(F.a_right[i], B::A, B::A, a); };
  auto Ppp = [&](std::size_t i, const Vec& b) { return o.apply(F.b_to_a[i], B::A, B::B, b); };
  auto Q = [&](std::size_t i, const Vec& b) { return o.apply(F.b_left[i], B::B, B::B, b); };
  auto Qp = [&](std::size_t i, const Vec& b) { return o.apply(F.b_right[i], B::B, B::B, b); };
  auto Qpp = [&](std::size_t i, const Vec& a) { return o.apply(F.a_to_b[i], B::B, B::A, a); };
  for (std::size_t k = 1; k <= order; ++k) {
    e.get(k, B::N, B::A) = o.tabulate(B::N, B::A, [&](const Vec& a) {
      Vec r = o.zero();
      for (std::size_t i = 1; i <= k; ++i) axpy(r, one, sub(o.mul(o.n(i), Pp(k - i, a)), o.mul(Qpp(k - i, a), o.n(i))));
      return r;
    });
    e.get(k, B::M, B::A) = o.tabulate(B::M, B::A, [&](const Vec& a) {
      Vec r = o.zero();
      for (std::size_t i = 1; i <= k; ++i) axpy(r, one, sub(o.mul(P(k - i, a), o.m(i)), o.mul(o.m(i), Qpp(k - i, a))));
      return r;
    });
    e.get(k, B::N, B::B) = o.tabulate(B::N, B::B, [&](const Vec& b) {
      Vec r = o.zero();
      for (std::size_t i = 1; i <= k; ++i) axpy(r, -one, sub(o.mul(Qp(k - i, b), o.n(i)), o.mul(o.n(i), Ppp(k - i, b))));
      return r;
    });
    e.get(k, B::M, B::B) = o.tabulate(B::M, B::B, [&](const Vec& b) {
      Vec r = o.zero();
      for (std::size_t i = 1; i <= k; ++i) axpy(r, -one, sub(o.mul(o.m(i), Q(k - i, b)), o.mul(Ppp(k - i, b), o.m(i))));
      return r;
    });
  }
  fill_word_blocks(g, e, F.words, order);
  MapSequence s = reconstruct(g, e);
  EntryMaps back = extract_entries(g, s);
  if (back.m != e.m || back.n != e.n) throw Error("inconsistent ingredients: m_k, n_k do not match the assembled blocks");
  ConditionReport rep = check_lhd_conditions(g, back, order);
  if (!rep.ok()) throw Error("inconsistent ingredients: " + first_violation(rep));
  if (!verify_lhd(g.algebra(), s, order)) throw Error("assembled sequence is not a Lie higher derivation");
  return s;
}

MapSequence synthesize_hd(const Gma& g, std::size_t order, const Ingredients& ing) {
  using B = Block;
  EntryMaps e = seed_entries(g, order, ing, false);
  const HdFamilies F = hd_families(g, e, order);
  const Ops o(g, e.m, e.n, order);
  const Scalar one = Scalar::one(g.field());
  auto P = [&](std::size_t i, const Vec& a) { return o.apply(F.a_left[i], B::A, B::A, a); };
  auto Pp = [&](std::size_t i, const Vec& a) { return o.apply(F.a_right[i], B::A, B::A, a); };
  auto Q = [&](std::size_t i, const Vec& b) { return o.apply(F.b_left[i], B::B, B::B, b); };
  auto Qp = [&](std::size_t i, const Vec& b) { return o.apply(F.b_right[i], B::B, B::B, b); };
  for (std::size_t k = 1; k <= order; ++k) {
    const auto terms = family_indices(k);
    e.get(k, B::N, B::A) = o.tabulate(B::N, B::A, [&](const Vec& a) {
      Vec r = o.zero();
      for (std::size_t i = 1; i <= k; ++i) axpy(r, one, o.mul(o.n(i), Pp(k - i, a)));
      return r;
    });
    e.get(k, B::M, B::A) = o.tabulate(B::M, B::A, [&](const Vec& a) {
      Vec r = o.zero();
      for (std::size_t i = 1; i <= k; ++i) axpy(r, one, o.mul(P(k - i, a), o.m(i)));
      return r;
    });
    e.get(k, B::N, B::B) = o.tabulate(B::N, B::B, [&](const Vec& b) {
      Vec r = o.zero();
      for (std::size_t i = 1; i <= k; ++i) axpy(r, -one, o.mul(Qp(k - i, b), o.n(i)));
      return r;
    });
    e.get(k, B::M, B::B) = o.tabulate(B::M, B::B, [&](const Vec& b) {
      Vec r = o.zero();
      for (std::size_t i = 1; i <= k; ++i) axpy(r, -one, o.mul(o.m(i), Q(k - i, b)));
      return r;
    });
    e.get(k, B::B, B::A) = o.tabulate(B::B, B::A, [&](const Vec& a) {
      Vec r = o.zero();
      for (const auto& w : terms) axpy(r, one, o.mul(o.nm_down(w), o.n(w.alpha[0]), P(w.lead, a), o.m(w.beta[0])));
      return r;
    });
    e.get(k, B::A, B::B) = o.tabulate(B::A, B::B, [&](const Vec& b) {
      Vec r = o.zero();
      for (const auto& w : terms) axpy(r, one, o.mul(o.m(w.beta[0]), Q(w.lead, b), o.n(w.alpha[0]), o.mn_up(w)));
      return r;
    });
  }
  fill_word_blocks(g, e, F.words, order);
  MapSequence s = reconstruct(g, e);
  EntryMaps back = extract_entries(g, s);
  if (back.m != e.m || back.n != e.n) throw Error("inconsistent ingredients: m_k, n_k do not match the assembled blocks");
  ConditionReport rep = check_hd_conditions(g, back, order);
  if (!rep.ok()) throw Error("inconsistent ingredients: " + first_violation(rep));
  if (!verify_hd(g.algebra(), s, order)) throw Error("assembled sequence is not a higher derivation");
  return s;
}

std::optional<Ingredients> random_ingredients(const Gma& g, std::size_t order, Sampler& rnd,
                                              IngredientSource source) {
  const auto& alg = g.algebra();
  std::optional<MapSequence> s;
  switch (source) {
    case IngredientSource::generic:
      s = random_lhd(alg, order, rnd);
      break;
    case IngredientSource::ordinary_plus_tau:
    case IngredientSource::inner_plus_tau: {
      Matrix d = source == IngredientSource::inner_plus_tau ? inner_derivation(alg, rnd.vec(alg.dim()))
                                                            : random_derivation(alg, rnd);
      if (!g.field().factorial_invertible(static_cast<int>(order))) return std::nullopt;
      s = sum(ordinary_from_derivation(alg, d, order), random_tau(alg, order, rnd));
      break;
    }
  }
  if (!s) return std::nullopt;
  return ingredients_of(extract_entries(g, *s));
}

}  // namespace gmalie
