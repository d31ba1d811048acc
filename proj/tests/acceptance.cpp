// Acceptance runner: one line per criterion, nonzero exit if any fails.
// Closed forms are evaluated with the block products of tests/support.hpp, and the lower-order
// maps they use are read straight from the sequence matrices.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "support.hpp"

using namespace testkit;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const Field F5 = Field::prime_field(5);
const Field F7 = Field::prime_field(7);
const Field F101 = Field::prime_field(101);
const Field QQ = Field::rationals();

// Every PROPER verdict produced anywhere, re-checked by the soundness criterion.
struct ProperRecord {
  std::string where;
  Gma g;
  MapSequence seq;
  std::size_t order;
  Certificate cert;
};
std::vector<ProperRecord> proper_log;

Verdict decide_logged(const std::string& where, const Gma& g, const MapSequence& s, std::size_t k) {
  Verdict v = decide_proper(g, s, k);
  if (v.kind == VerdictKind::proper) proper_log.push_back({where, g, s, k, *v.certificate});
  return v;
}

MapSequence arbitrary_sequence(const Gma& g, std::size_t order, Sampler& rnd) {
  std::vector<Matrix> higher;
  for (std::size_t k = 1; k <= order; ++k) higher.push_back(rnd.matrix(g.dim(), g.dim()));
  return make_sequence(g.field(), g.dim(), higher);
}

void compare(const Matrix& got, const Matrix& want, const std::string& what, int& bad, std::string& first) {
  if (got == want) return;
  if (bad++ == 0) first = what;
}

// Family closed forms ----------------------------------------------------------------

void lhd_closed_forms(const Named& inst, const MapSequence& s, int& bad, std::string& first) {
  const Gma& g = inst.g;
  const Field f = g.field();
  const Blocks o(g);
  const std::size_t da = g.size(Block::A), db = g.size(Block::B);
  const LhdFamilies F = lhd_families(g, extract_entries(g, s), 3);
  const Vec m1 = m_elem(g, s, 1), m2 = m_elem(g, s, 2), n1 = n_elem(g, s, 1), n2 = n_elem(g, s, 2);
  const Matrix P1 = block(g, s[1], Block::A, Block::A), Q1 = block(g, s[1], Block::B, Block::B);
  const Matrix Ppp1 = block(g, s[1], Block::A, Block::B), Qpp1 = block(g, s[1], Block::B, Block::A);
  const Vec mn11 = o.mn(m1, n1), nm11 = o.nm(n1, m1);
  auto AA = [&](auto fn) { return tabulate(f, da, da, fn); };
  auto AB = [&](auto fn) { return tabulate(f, da, db, fn); };
  auto BB = [&](auto fn) { return tabulate(f, db, db, fn); };
  auto BA = [&](auto fn) { return tabulate(f, db, da, fn); };
  const std::string tag = inst.name + " ";

  compare(F.a_left_word[2], AA([&](const Vec& a) { return o.mn(o.am(a, m1), n1); }), tag + "p_2", bad, first);
  compare(F.a_right_word[2], AA([&](const Vec& a) { return o.aa(mn11, a); }), tag + "p'_2", bad, first);
  const Matrix ppp2 = AB([&](const Vec& b) { return o.mn(o.mb(m1, b), n1); });
  compare(F.b_to_a_word[2], ppp2, tag + "p''_2", bad, first);
  compare(F.b_to_a_word_alt[2], ppp2, tag + "p''_2 alt", bad, first);
  compare(F.b_left_word[2], BB([&](const Vec& b) { return o.bb(nm11, b); }), tag + "q_2", bad, first);
  compare(F.b_right_word[2], BB([&](const Vec& b) { return o.bb(b, nm11); }), tag + "q'_2", bad, first);
  const Matrix qpp2 = BA([&](const Vec& a) { return o.nm(o.na(n1, a), m1); });
  compare(F.a_to_b_word[2], qpp2, tag + "q''_2", bad, first);
  compare(F.a_to_b_word_alt[2], qpp2, tag + "q''_2 alt", bad, first);

  compare(F.a_left_word[3], AA([&](const Vec& a) {
            Vec r = add(o.mn(o.am(a, m1), n2), o.mn(o.am(a, m2), n1));
            r = add(r, o.mn(o.am(P1.apply(a), m1), n1));
            return sub(r, o.mn(o.mb(m1, Qpp1.apply(a)), n1));
          }),
          tag + "p_3", bad, first);
  compare(F.a_right_word[3], AA([&](const Vec& a) {
            Vec r = add(o.aa(o.mn(m1, n2), a), o.aa(o.mn(m2, n1), a));
            r = add(r, o.aa(mn11, P1.apply(a)));
            return sub(r, o.mn(o.mb(m1, Qpp1.apply(a)), n1));
          }),
          tag + "p'_3", bad, first);
  compare(F.b_to_a_word[3], AB([&](const Vec& b) {
            Vec r = add(o.mn(o.mb(m1, b), n2), o.mn(o.mb(m2, b), n1));
            r = add(r, o.mn(o.mb(m1, Q1.apply(b)), n1));
            return sub(r, o.aa(Ppp1.apply(b), mn11));
          }),
          tag + "p''_3", bad, first);
  compare(F.b_to_a_word_alt[3], AB([&](const Vec& b) {
            Vec r = add(o.mn(o.mb(m1, b), n2), o.mn(o.mb(m2, b), n1));
            r = add(r, o.mn(o.mb(m1, Q1.apply(b)), n1));
            return sub(r, o.aa(mn11, Ppp1.apply(b)));
          }),
          tag + "p''_3 alt", bad, first);
  compare(F.b_left_word[3], BB([&](const Vec& b) {
            Vec r = add(o.bb(o.nm(n1, m2), b), o.bb(o.nm(n2, m1), b));
            r = add(r, o.bb(nm11, Q1.apply(b)));
            return sub(r, o.nm(o.na(n1, Ppp1.apply(b)), m1));
          }),
          tag + "q_3", bad, first);
  compare(F.b_right_word[3], BB([&](const Vec& b) {
            Vec r = add(o.bb(b, o.nm(n1, m2)), o.bb(b, o.nm(n2, m1)));
            r = add(r, o.bb(Q1.apply(b), nm11));
            return sub(r, o.nm(o.na(n1, Ppp1.apply(b)), m1));
          }),
          tag + "q'_3", bad, first);
  compare(F.a_to_b_word[3], BA([&](const Vec& a) {
            Vec r = add(o.nm(o.na(n1, a), m2), o.nm(o.na(n2, a), m1));
            r = add(r, o.nm(o.na(n1, P1.apply(a)), m1));
            return sub(r, o.bb(nm11, Qpp1.apply(a)));
          }),
          tag + "q''_3", bad, first);
  compare(F.a_to_b_word_alt[3], BA([&](const Vec& a) {
            Vec r = add(o.nm(o.na(n1, a), m2), o.nm(o.na(n2, a), m1));
            r = add(r, o.nm(o.na(n1, P1.apply(a)), m1));
            return sub(r, o.bb(Qpp1.apply(a), nm11));
          }),
          tag + "q''_3 alt", bad, first);
}

void hd_closed_forms(const Named& inst, const MapSequence& s, int& bad, std::string& first) {
  const Gma& g = inst.g;
  const Field f = g.field();
  const Blocks o(g);
  const std::size_t da = g.size(Block::A), db = g.size(Block::B);
  const HdFamilies F = hd_families(g, extract_entries(g, s), 3);
  const Vec m1 = m_elem(g, s, 1), m2 = m_elem(g, s, 2), n1 = n_elem(g, s, 1), n2 = n_elem(g, s, 2);
  const Matrix P1 = block(g, s[1], Block::A, Block::A), Q1 = block(g, s[1], Block::B, Block::B);
  const Vec mn11 = o.mn(m1, n1), nm11 = o.nm(n1, m1);
  auto AA = [&](auto fn) { return tabulate(f, da, da, fn); };
  auto BB = [&](auto fn) { return tabulate(f, db, db, fn); };
  const std::string tag = inst.name + " ";

  compare(F.a_left_word[2], AA([&](const Vec& a) { return o.aa(a, mn11); }), tag + "hd p_2", bad, first);
  compare(F.a_right_word[2], AA([&](const Vec& a) { return o.aa(mn11, a); }), tag + "hd p'_2", bad, first);
  compare(F.b_left_word[2], BB([&](const Vec& b) { return o.bb(nm11, b); }), tag + "hd q_2", bad, first);
  compare(F.b_right_word[2], BB([&](const Vec& b) { return o.bb(b, nm11); }), tag + "hd q'_2", bad, first);
  compare(F.a_left_word[3], AA([&](const Vec& a) {
            Vec r = add(o.mn(o.am(a, m1), n2), o.mn(o.am(a, m2), n1));
            return add(r, o.mn(o.am(P1.apply(a), m1), n1));
          }),
          tag + "hd p_3", bad, first);
  compare(F.a_right_word[3], AA([&](const Vec& a) {
            Vec r = add(o.aa(o.mn(m1, n2), a), o.aa(o.mn(m2, n1), a));
            return add(r, o.aa(mn11, P1.apply(a)));
          }),
          tag + "hd p'_3", bad, first);
  compare(F.b_left_word[3], BB([&](const Vec& b) {
            Vec r = add(o.bb(o.nm(n1, m2), b), o.bb(o.nm(n2, m1), b));
            return add(r, o.bb(nm11, Q1.apply(b)));
          }),
          tag + "hd q_3", bad, first);
  compare(F.b_right_word[3], BB([&](const Vec& b) {
            Vec r = add(o.bb(b, o.nm(n1, m2)), o.bb(b, o.nm(n2, m1)));
            return add(r, o.bb(Q1.apply(b), nm11));
          }),
          tag + "hd q'_3", bad, first);
}

Outcome closed_forms(bool lie) {
  int instances = 0, bad = 0, generated = 0;
  std::string first;
  for (Field f : {F101, QQ}) {
    const auto pool = mixed_pool(f, 7);
    Sampler rnd(f, lie ? 101 : 202);
    for (int round = 0; round < 5; ++round)
      for (const Named& inst : pool) {
        const auto& alg = inst.g.algebra();
        std::optional<MapSequence> s;
        if (round % 2 == 0) s = lie ? random_lhd(alg, 3, rnd) : random_hd(alg, 3, rnd);
        if (s) ++generated;
        else s = arbitrary_sequence(inst.g, 3, rnd);
        if (lie) lhd_closed_forms(inst, *s, bad, first);
        else hd_closed_forms(inst, *s, bad, first);
        ++instances;
      }
  }
  return {instances >= 50 && bad == 0,
          fmt("%d instances (%d solved %s, rest arbitrary maps), %d mismatches%s", instances, generated,
              lie ? "LHDs" : "HDs", bad, bad ? (" first: " + first).c_str() : "")};
}

// Word sums ---------------------------------------------------------------------------

Outcome word_sum_forms() {
  int instances = 0, bad = 0;
  std::string first;
  for (Field f : {F101, QQ}) {
    Sampler rnd(f, 303);
    for (int round = 0; round < 3; ++round)
      for (const Named& inst : mixed_pool(f, 9 + round)) {
        const Gma& g = inst.g;
        const Blocks o(g);
        std::vector<Vec> m(5), n(5);
        for (std::size_t j = 1; j <= 4; ++j) {
          m[j] = rnd.vec(g.size(Block::M));
          n[j] = rnd.vec(g.size(Block::N));
        }
        const WordSums w = word_sums(g, m, n, 4);
        auto nmn = [&](std::size_t a, std::size_t b, std::size_t c) { return o.bn(o.nm(n[a], m[b]), n[c]); };
        auto mnm = [&](std::size_t a, std::size_t b, std::size_t c) { return o.am(o.mn(m[a], n[b]), m[c]); };
        const std::vector<Vec> wn = {n[1], n[2], add(nmn(1, 1, 1), n[3]),
                                     add(add(nmn(1, 1, 2), nmn(1, 2, 1)), add(nmn(2, 1, 1), n[4]))};
        const std::vector<Vec> wm = {m[1], m[2], add(mnm(1, 1, 1), m[3]),
                                     add(add(mnm(1, 1, 2), mnm(1, 2, 1)), add(mnm(2, 1, 1), m[4]))};
        for (std::size_t k = 1; k <= 4; ++k) {
          if (w.n[k] != wn[k - 1] && bad++ == 0) first = inst.name + " N_" + std::to_string(k);
          if (w.m[k] != wm[k - 1] && bad++ == 0) first = inst.name + " M_" + std::to_string(k);
        }
        if (!is_zero(w.n[0]) || !is_zero(w.m[0])) ++bad;
        ++instances;
      }
  }
  return {instances >= 20 && bad == 0,
          fmt("%d instances x orders 1..4, %d mismatches%s", instances, bad, bad ? (" first: " + first).c_str() : "")};
}

// Characterization equivalences -----------------------------------------------------------

Outcome lhd_equivalence() {
  int valid = 0, broken = 0, disagree = 0, synth_failures = 0;
  std::string first;
  const IngredientSource sources[] = {IngredientSource::generic, IngredientSource::ordinary_plus_tau,
                                      IngredientSource::inner_plus_tau};
  for (Field f : {F101, QQ}) {
    Sampler rnd(f, 404);
    const std::size_t max_k = f.is_rational() ? 3 : 4;
    int idx = 0;
    for (int round = 0; round < 4; ++round)
      for (const Named& inst : mixed_pool(f, 17 + round)) {
        const Gma& g = inst.g;
        const std::size_t K = 1 + (idx % max_k);
        const IngredientSource src = sources[idx++ % 3];
        auto ing = random_ingredients(g, K, rnd, src);
        if (!ing) { ++synth_failures; continue; }
        MapSequence s;
        try {
          s = synthesize_lhd(g, K, *ing);
        } catch (const Error&) {
          ++synth_failures;
          continue;
        }
        auto judge = [&](const MapSequence& t, bool expect_lhd) {
          const bool direct = verify_lhd(g.algebra(), t, K).ok;
          const bool blockwise = check_lhd_conditions(g, extract_entries(g, t), K).ok();
          if (direct != blockwise && disagree++ == 0)
            first = inst.name + " K=" + std::to_string(K) + (expect_lhd ? " synthesized" : " perturbed");
          return direct;
        };
        if (judge(s, true)) {
          ++valid;
          decide_logged("lhd-equivalence " + inst.name, g, s, K);
        }
        for (int p = 0; p < 2; ++p)
          if (!judge(perturb(s, rnd), false)) ++broken;
      }
  }
  return {valid >= 30 && broken >= 30 && disagree == 0 && synth_failures == 0,
          fmt("%d synthesized LHDs, %d perturbed non-LHDs, %d disagreements, %d synthesis failures%s", valid, broken,
              disagree, synth_failures, disagree ? (" first: " + first).c_str() : "")};
}

Outcome hd_equivalence() {
  int valid = 0, broken = 0, disagree = 0, not_lie = 0;
  std::string first;
  for (Field f : {F101, QQ}) {
    Sampler rnd(f, 505);
    const std::size_t max_k = f.is_rational() ? 3 : 4;
    int idx = 0;
    for (int round = 0; round < 4; ++round)
      for (const Named& inst : mixed_pool(f, 23 + round)) {
        const Gma& g = inst.g;
        const auto& alg = g.algebra();
        const std::size_t K = 1 + (idx % max_k);
        std::optional<MapSequence> s;
        if (idx++ % 2 == 0) {
          s = random_hd(alg, K, rnd);
        } else {
          s = ordinary_from_derivation(alg, random_derivation(alg, rnd), K);
        }
        if (!s) continue;
        auto judge = [&](const MapSequence& t, bool expect_hd) {
          const bool direct = verify_hd(alg, t, K).ok;
          const bool blockwise = check_hd_conditions(g, extract_entries(g, t), K).ok();
          if (direct != blockwise && disagree++ == 0)
            first = inst.name + " K=" + std::to_string(K) + (expect_hd ? " generated" : " perturbed");
          if (direct && !verify_lhd(alg, t, K).ok) ++not_lie;
          return direct;
        };
        if (judge(*s, true)) ++valid;
        for (int p = 0; p < 2; ++p)
          if (!judge(perturb(*s, rnd), false)) ++broken;
      }
  }
  return {valid >= 30 && broken >= 30 && disagree == 0 && not_lie == 0,
          fmt("%d HDs, %d perturbed non-HDs, %d disagreements, %d HDs failing the Lie identity%s", valid, broken,
              disagree, not_lie, disagree ? (" first: " + first).c_str() : "")};
}

// Fixtures ----------------------------------------------------------------------------------

Outcome benkovic_fixture() {
  std::vector<std::string> problems;
  for (Field f : {QQ, F7}) {
    const Gma g = benkovic(f);
    const Matrix L = benkovic_lie_derivation(g);
    const MapSequence s1 = make_sequence(f, g.dim(), {L});
    const std::string tag = f.to_string() + ": ";
    if (!verify_lhd(g.algebra(), s1, 1).ok) problems.push_back(tag + "map is not a Lie derivation");
    const Verdict v1 = decide_logged("benkovic K=1", g, s1, 1);
    if (v1.kind != VerdictKind::improper) problems.push_back(tag + "K=1 verdict " + to_string(v1.kind));
    const MapSequence s3 = ordinary_from_lie_derivation(g.algebra(), L, 3);
    const Verdict v3 = decide_logged("benkovic K=3", g, s3, 3);
    if (v3.kind != VerdictKind::improper) problems.push_back(tag + "K=3 verdict " + to_string(v3.kind));
  }
  std::string d = "Q and F_7: Lie derivation verified, IMPROPER at K=1 and K=3";
  if (!problems.empty()) d = problems.front();
  return {problems.empty(), d};
}

Outcome full_matrix_proper() {
  const Gma g = full_matrix(F5, 3);
  Sampler rnd(F5, 606);
  const IngredientSource sources[] = {IngredientSource::generic, IngredientSource::ordinary_plus_tau,
                                      IngredientSource::inner_plus_tau};
  int proper = 0, other = 0, tried = 0;
  for (int i = 0; i < 60; ++i) {
    const std::size_t K = 1 + i % 3;
    auto ing = random_ingredients(g, K, rnd, sources[i % 3]);
    ++tried;
    if (!ing) { ++other; continue; }
    const MapSequence s = synthesize_lhd(g, K, *ing);
    if (decide_logged("full_matrix(F5,3) seed " + std::to_string(i), g, s, K).kind == VerdictKind::proper) ++proper;
    else ++other;
  }
  const SufficiencyReport r = check_sufficient(g);
  const bool ok = proper >= 50 && other == 0 && r.guaranteed && r.via_central_ideals;
  return {ok, fmt("%d/%d PROPER (K<=3); sufficiency guaranteed=%s via central ideals=%s", proper, tried,
                  r.guaranteed ? "yes" : "no", r.via_central_ideals ? "yes" : "no")};
}

// Completeness on weakly faithful instances ----------------------------------------------

Outcome weakly_faithful_completeness() {
  int decided = 0, proper = 0, improper = 0, disagree = 0, bad_witness = 0, unsound_search = 0;
  std::string first;
  for (Field f : {F5, F101, QQ}) {
    Sampler rnd(f, 707);
    int idx = 0;
    for (int round = 0; round < 3; ++round)
      for (const Named& inst : weakly_faithful_pool(f, 31 + round)) {
        const Gma& g = inst.g;
        if (!faithfulness(g).weakly_faithful) continue;
        for (int variant = 0; variant < 2; ++variant) {
          const std::size_t K = 1 + (idx % 3);
          std::optional<MapSequence> s;
          switch (idx++ % 3) {
            case 0:
              s = random_lhd(g.algebra(), K, rnd);
              break;
            case 1:
              if (f.factorial_invertible(static_cast<int>(K)))
                s = ordinary_from_lie_derivation(g.algebra(), random_lie_derivation(g.algebra(), rnd), K);
              break;
            default:
              if (auto ing = random_ingredients(g, K, rnd, IngredientSource::generic)) s = synthesize_lhd(g, K, *ing);
          }
          if (!s) continue;
          const Verdict v = decide_logged("completeness " + inst.name, g, *s, K);
          const bool both = v.a_prime && v.b_prime;
          if (v.kind == VerdictKind::unknown || (v.kind == VerdictKind::proper) != both) {
            if (disagree++ == 0) first = inst.name + " verdict " + to_string(v.kind) + ": " + v.reason;
            continue;
          }
          ++decided;
          if (v.kind == VerdictKind::proper) {
            ++proper;
            continue;
          }
          ++improper;
          const LhdFamilies fam = lhd_families(g, extract_entries(g, *s), K);
          if (!v.witness || !witness_reproduces(g, fam, *v.witness)) ++bad_witness;
          if (auto c = search_certificate(g, *s, K))
            if (verify_certificate(g.algebra(), *s, c->d, c->tau, K).ok) ++unsound_search;
        }
      }
  }
  const bool ok = decided >= 100 && disagree == 0 && bad_witness == 0 && unsound_search == 0 && improper > 0;
  return {ok, fmt("%d decided (%d PROPER, %d IMPROPER), %d disagreements, %d bad witnesses, %d certificates found "
                  "for IMPROPER%s",
                  decided, proper, improper, disagree, bad_witness, unsound_search,
                  disagree ? (" first: " + first).c_str() : "")};
}

// Center-valued sequences --------------------------------------------------------------------

bool tau_witness_valid(const FinDimAlgebra& alg, const MapSequence& tau, const Witness& w) {
  if (w.k < 1 || w.k > tau.order()) return false;
  const Matrix& t = tau.maps[w.k];
  if (w.rhs.empty()) {
    const Vec v = t.column(w.x);
    if (v != w.lhs) return false;
    for (std::size_t j = 0; j < alg.dim(); ++j)
      if (!is_zero(alg.commutator(v, alg.basis(j)))) return true;
    return false;
  }
  const Vec v = t.apply(alg.commutator(alg.basis(w.x), alg.basis(w.y)));
  return v == w.lhs && !is_zero(v);
}

Outcome tau_characterization() {
  int built = 0, built_bad = 0, perturbed_fail = 0, bad_witness = 0, disagree = 0;
  for (Field f : {F5, F101, QQ}) {
    Sampler rnd(f, 808);
    std::vector<Named> pool = weakly_faithful_pool(f, 41);
    for (Named& n : mixed_pool(f, 43)) pool.push_back(std::move(n));
    for (int round = 0; round < 2; ++round)
      for (const Named& inst : pool) {
        const Gma& g = inst.g;
        const std::size_t K = 1 + rnd.index(3);
        const MapSequence tau = random_diagonal_tau(g, K, rnd);
        ++built;
        if (!is_center_valued_vanishing(g.algebra(), tau, K).ok || !check_tau_form(g, tau, K).ok()) ++built_bad;
        const MapSequence bent = perturb(tau, rnd);
        const CheckResult r = is_center_valued_vanishing(g.algebra(), bent, K);
        if (r.ok != check_tau_form(g, bent, K).ok()) ++disagree;
        if (!r.ok) {
          ++perturbed_fail;
          if (!r.witness || !tau_witness_valid(g.algebra(), bent, *r.witness)) ++bad_witness;
        }
      }
  }
  const bool ok = built >= 30 && built_bad == 0 && perturbed_fail >= 30 && bad_witness == 0 && disagree == 0;
  return {ok, fmt("%d constructed (%d rejected), %d perturbed rejected, %d invalid witnesses, %d form disagreements",
                  built, built_bad, perturbed_fail, bad_witness, disagree)};
}

// Faithful M: commutator vanishing from the remaining conditions ---------------------------

Outcome faithful_commutators() {
  int instances = 0, premise_failed = 0, exceptions = 0, pairs = 0;
  for (Field f : {F101, QQ, F7}) {
    Sampler rnd(f, 909);
    std::vector<Named> pool;
    for (Named& n : weakly_faithful_pool(f, 51))
      if (faithfulness(n.g).m_faithful) pool.push_back(std::move(n));
    for (int i = 0; i < 8; ++i) {
      TriangularCase t = random_triangular(f, rnd);
      if (t.m_faithful) pool.push_back({t.name, std::move(t.g)});
    }
    for (const Named& inst : pool) {
      const Gma& g = inst.g;
      const std::size_t K = 3;
      auto s = random_lhd(g.algebra(), K, rnd);
      if (!s) continue;
      // Disturb a block outside conditions (1), (4), (5) so the full characterization no longer holds.
      const std::size_t k = 1 + rnd.index(K);
      MapSequence t = g.size(Block::N) > 0 ? perturb_block(g, *s, k, Block::N, Block::N, rnd)
                                            : perturb_block(g, *s, k, Block::M, Block::B, rnd);
      const EntryMaps e = extract_entries(g, t);
      const ConditionReport rep = check_lhd_conditions(g, e, K);
      if (!(rep.holds("1.lhd") && rep.holds("1.center") && rep.holds("4") && rep.holds("5"))) {
        ++premise_failed;
        continue;
      }
      ++instances;
      const LhdFamilies F = lhd_families(g, e, K);
      const auto& ctx = g.context();
      for (std::size_t j = 1; j <= K; ++j) {
        for (std::size_t x = 0; x < ctx.a.dim(); ++x)
          for (std::size_t y = x + 1; y < ctx.a.dim(); ++y, ++pairs)
            if (!is_zero(F.a_to_b[j].apply(ctx.a.commutator(ctx.a.basis(x), ctx.a.basis(y))))) ++exceptions;
        for (std::size_t x = 0; x < ctx.b.dim(); ++x)
          for (std::size_t y = x + 1; y < ctx.b.dim(); ++y, ++pairs)
            if (!is_zero(F.b_to_a[j].apply(ctx.b.commutator(ctx.b.basis(x), ctx.b.basis(y))))) ++exceptions;
      }
    }
  }
  return {instances >= 20 && exceptions == 0,
          fmt("%d faithful-M instances with the premises (%d skipped), %d basis commutator pairs, %d exceptions",
              instances, premise_failed, pairs, exceptions)};
}

Outcome triangular_faithfulness() {
  int instances = 0, faithful = 0, disagree = 0;
  std::string first;
  for (Field f : {F5, F7, QQ}) {
    Sampler rnd(f, 1010);
    for (int i = 0; i < 15; ++i) {
      const TriangularCase t = random_triangular(f, rnd);
      const FaithfulnessReport r = faithfulness(t.g);
      ++instances;
      if (t.m_faithful) ++faithful;
      if (r.weakly_faithful != t.m_faithful && disagree++ == 0) first = t.name;
    }
  }
  const int unfaithful = instances - faithful;
  return {instances >= 20 && disagree == 0 && faithful > 0 && unfaithful > 0,
          fmt("%d triangular instances (%d faithful M, %d not), %d disagreements%s", instances, faithful, unfaithful,
              disagree, disagree ? (" first: " + first).c_str() : "")};
}

Outcome certificate_soundness() {
  int bad = 0, pairing_bad = 0;
  std::string first;
  for (const ProperRecord& r : proper_log) {
    const auto& alg = r.g.algebra();
    const Certificate& c = r.cert;
    bool ok = verify_certificate(alg, r.seq, c.d, c.tau, r.order).ok;
    ok = ok && verify_hd(alg, c.d, r.order).ok && is_center_valued_vanishing(alg, c.tau, r.order).ok;
    for (std::size_t k = 1; ok && k <= r.order; ++k) ok = r.seq[k] == c.d[k] + c.tau.maps[k];
    if (!ok && bad++ == 0) first = r.where;
    const EntryMaps e = extract_entries(r.g, r.seq);
    if (!pairing_crosscheck(r.g, e, lhd_families(r.g, e, r.order), c, r.order).ok && pairing_bad++ == 0)
      first = r.where + " (pairing)";
  }
  return {!proper_log.empty() && bad == 0 && pairing_bad == 0,
          fmt("%zu PROPER verdicts rechecked, %d certificate failures, %d pairing failures%s", proper_log.size(), bad,
              pairing_bad, (bad || pairing_bad) ? (" first: " + first).c_str() : "")};
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    std::function<Outcome()> run;
  };
  // Soundness runs last so it sees every verdict; output keeps the numbered order.
  const std::vector<Entry> entries = {
      {"lhd family closed forms", [] { return closed_forms(true); }},
      {"hd family closed forms", [] { return closed_forms(false); }},
      {"word sums", word_sum_forms},
      {"lhd characterization equivalence", lhd_equivalence},
      {"hd characterization equivalence", hd_equivalence},
      {"benkovic fixture", benkovic_fixture},
      {"full matrix properness", full_matrix_proper},
      {"certificate soundness", certificate_soundness},
      {"weakly faithful completeness", weakly_faithful_completeness},
      {"center-valued sequences", tau_characterization},
      {"faithful M commutators", faithful_commutators},
      {"triangular faithfulness", triangular_faithfulness},
  };
  std::vector<Outcome> results(entries.size());
  std::vector<double> seconds(entries.size());
  const std::size_t soundness = 7;
  auto run = [&](std::size_t i) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      results[i] = entries[i].run();
    } catch (const std::exception& e) {
      results[i] = {false, std::string("exception: ") + e.what()};
    }
    seconds[i] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };
  for (std::size_t i = 0; i < entries.size(); ++i)
    if (i != soundness) run(i);
  run(soundness);
  int failed = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!results[i].pass) ++failed;
    std::cout << "criterion " << (i + 1) << " [" << (results[i].pass ? "PASS" : "FAIL") << "] " << entries[i].name
              << ": " << results[i].detail << fmt(" (%.1fs)", seconds[i]) << '\n';
  }
  std::cout << (failed ? "FAILED: " + std::to_string(failed) + " criteria" : std::string("all criteria pass")) << '\n';
  return failed ? 1 : 0;
}
