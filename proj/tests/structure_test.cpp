#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

using namespace testkit;

namespace {

const Field Q = Field::rationals();
const Field F5 = Field::prime_field(5);
const Field F101 = Field::prime_field(101);

Gma peirce_m2(Field f) {
  const FinDimAlgebra m2 = matrix_algebra(f, 2);
  return build_gma(peirce_decompose(m2, m2.basis(0)).context);
}

std::size_t violations_of(const ConditionReport& r, std::initializer_list<const char*> ids) {
  std::size_t n = 0;
  for (const char* id : ids) n += r.count(id);
  return n;
}

}  // namespace

TEST(Indices, EtaAndNu) {
  EXPECT_EQ(eta(3), 1);
  EXPECT_EQ(eta(4), 2);
  EXPECT_EQ(nu(3), 1);
  EXPECT_EQ(nu(4), 1);
  EXPECT_EQ(eta(1), 0);
  EXPECT_EQ(nu(1), 0);
  EXPECT_EQ(nu(2), 0);
  EXPECT_THROW(eta(0), Error);
  EXPECT_THROW(nu(0), Error);
}

TEST(Indices, WordIndicesAreAdmissibleAndDistinct) {
  const std::size_t expected[] = {0, 0, 1, 3, 7, 15};
  for (std::size_t k = 1; k <= 6; ++k) {
    const auto ws = word_indices(k);
    EXPECT_EQ(ws.size(), expected[k - 1]) << k;
    std::set<std::vector<std::size_t>> seen;
    for (const WordIndex& w : ws) {
      EXPECT_EQ(w.weight(), k);
      EXPECT_GE(w.lead, 1u);
      ASSERT_EQ(w.alpha.size(), w.beta.size());
      EXPECT_GE(w.alpha.size(), 1u);
      EXPECT_LE(static_cast<int>(w.alpha.size()), nu(static_cast<int>(k)));
      std::vector<std::size_t> key{w.lead};
      for (std::size_t i = 0; i < w.alpha.size(); ++i) {
        EXPECT_GE(w.alpha[i], 1u);
        EXPECT_GE(w.beta[i], 1u);
        key.push_back(w.alpha[i]);
        key.push_back(w.beta[i]);
      }
      EXPECT_TRUE(seen.insert(key).second);
    }
  }
}

TEST(Indices, FamilyIndices) {
  const std::size_t expected[] = {0, 1, 3, 7, 15, 31};
  for (std::size_t k = 1; k <= 6; ++k) {
    const auto fs = family_indices(k);
    EXPECT_EQ(fs.size(), expected[k - 1]) << k;
    for (const WordIndex& w : fs) {
      EXPECT_EQ(w.weight(), k);
      EXPECT_LE(w.lead + 2, k);
      EXPECT_LE(static_cast<int>(w.alpha.size()), eta(static_cast<int>(k)));
    }
  }
}

TEST(WordSums, LowOrders) {
  const Gma g = full_matrix(Q, 3);
  Sampler rnd(Q, 1);
  std::vector<Vec> m(4), n(4);
  for (std::size_t j = 1; j <= 3; ++j) {
    m[j] = rnd.vec(2);
    n[j] = rnd.vec(2);
  }
  const WordSums w = word_sums(g, m, n, 3);
  EXPECT_EQ(w.n[1], n[1]);
  EXPECT_EQ(w.m[2], m[2]);
  const Blocks o(g);
  EXPECT_EQ(w.n[3], add(o.bn(o.nm(n[1], m[1]), n[1]), n[3]));
  EXPECT_THROW(word_sums(g, m, n, 4), Error);
}

TEST(Families, DefiningIdentitiesOnRandomSequences) {
  for (Field f : {Q, F101}) {
    Sampler rnd(f, 2);
    for (const Named& inst : mixed_pool(f, 3)) {
      const Gma& g = inst.g;
      std::vector<Matrix> hs;
      for (int k = 0; k < 3; ++k) hs.push_back(rnd.matrix(g.dim(), g.dim()));
      const EntryMaps e = extract_entries(g, make_sequence(f, g.dim(), hs));
      const LhdFamilies F = lhd_families(g, e, 3);
      const HdFamilies H = hd_families(g, e, 3);
      using B = Block;
      EXPECT_EQ(F.a_left[0], Matrix::identity(f, g.size(B::A)));
      EXPECT_TRUE(F.b_to_a[0].is_zero());
      EXPECT_TRUE(F.a_left_word[1].is_zero());
      EXPECT_TRUE(F.a_to_b_word[1].is_zero());
      EXPECT_TRUE(H.b_right_word[1].is_zero());
      for (std::size_t k = 1; k <= 3; ++k) {
        EXPECT_EQ(F.a_left[k], e.get(k, B::A, B::A) + F.a_left_word[k]);
        EXPECT_EQ(F.a_right[k], e.get(k, B::A, B::A) + F.a_right_word[k]);
        EXPECT_EQ(F.b_to_a[k], e.get(k, B::A, B::B) - F.b_to_a_word[k]);
        EXPECT_EQ(F.b_left[k], e.get(k, B::B, B::B) + F.b_left_word[k]);
        EXPECT_EQ(F.b_right[k], e.get(k, B::B, B::B) + F.b_right_word[k]);
        EXPECT_EQ(F.a_to_b[k], e.get(k, B::B, B::A) - F.a_to_b_word[k]);
        EXPECT_EQ(H.a_left[k], e.get(k, B::A, B::A) + H.a_left_word[k]);
        EXPECT_EQ(H.b_right[k], e.get(k, B::B, B::B) + H.b_right_word[k]);
      }
    }
  }
}

TEST(Families, EmptyWordsWhenModuleElementsVanish) {
  const Gma g = full_matrix(Q, 3);
  Sampler rnd(Q, 3);
  std::vector<Matrix> hs;
  for (int k = 0; k < 3; ++k) {
    Matrix x = rnd.matrix(g.dim(), g.dim());
    // Kill f_1k(1) and g_1k(1): zero the M<-A and N<-A columns.
    for (Block t : {Block::M, Block::N})
      for (std::size_t r = 0; r < g.size(t); ++r)
        for (std::size_t c = 0; c < g.size(Block::A); ++c) x(g.offset(t) + r, g.offset(Block::A) + c) = Scalar(Q);
    hs.push_back(x);
  }
  const EntryMaps e = extract_entries(g, make_sequence(Q, g.dim(), hs));
  const LhdFamilies F = lhd_families(g, e, 3);
  const HdFamilies H = hd_families(g, e, 3);
  for (std::size_t k = 1; k <= 3; ++k) {
    for (const auto* v : {&F.a_left_word, &F.a_right_word, &F.b_to_a_word, &F.b_left_word, &F.b_right_word,
                          &F.a_to_b_word, &H.a_left_word, &H.a_right_word, &H.b_left_word, &H.b_right_word})
      EXPECT_TRUE((*v)[k].is_zero());
    EXPECT_EQ(F.a_left[k], e.get(k, Block::A, Block::A));
    EXPECT_EQ(F.a_to_b[k], e.get(k, Block::B, Block::A));
    EXPECT_EQ(H.b_left[k], e.get(k, Block::B, Block::B));
  }
}

TEST(LhdConditions, ZeroSequenceHoldsVacuously) {
  const Gma g = benkovic(Q);
  const ConditionReport r = check_lhd_conditions(g, extract_entries(g, zero_sequence(Q, g.dim(), 3)), 3);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.conditions.size(), 14u);
}

TEST(LhdConditions, SynthesizedLhdOnPeirceM2) {
  const Gma g = peirce_m2(Q);
  Sampler rnd(Q, 4);
  for (auto src : {IngredientSource::generic, IngredientSource::inner_plus_tau}) {
    auto ing = random_ingredients(g, 3, rnd, src);
    ASSERT_TRUE(ing);
    const MapSequence s = synthesize_lhd(g, 3, *ing);
    EXPECT_TRUE(verify_lhd(g.algebra(), s, 3).ok);
    const ConditionReport r = check_lhd_conditions(g, extract_entries(g, s), 3);
    EXPECT_TRUE(r.ok());
    EXPECT_TRUE(r.diagnostics.empty());
  }
}

// A non-scalar map on M does not commute with the right action of B = M_2.
TEST(LhdConditions, NonScalarModuleMapBreaksFourOrFive) {
  const Gma g = full_matrix(Q, 3);
  Matrix l1(Q, g.dim(), g.dim());
  l1(g.offset(Block::M), g.offset(Block::M) + 1) = Scalar::one(Q);
  const MapSequence s = make_sequence(Q, g.dim(), {l1});
  EXPECT_GT(violations_of(check_lhd_conditions(g, extract_entries(g, s), 1), {"4", "5"}), 0u);
  EXPECT_FALSE(verify_lhd(g.algebra(), s, 1).ok);
}

TEST(LhdConditions, PerturbedModuleMapsAgreeWithDirectCheck) {
  std::size_t rejected = 0;
  for (Field f : {Q, F101}) {
    Sampler rnd(f, 5);
    for (const Named& inst : mixed_pool(f, 6)) {
      const Gma& g = inst.g;
      if (g.size(Block::M) == 0) continue;
      auto s = random_lhd(g.algebra(), 2, rnd);
      ASSERT_TRUE(s);
      const MapSequence bad = perturb_block(g, *s, 2, Block::M, Block::M, rnd);
      const bool direct = verify_lhd(g.algebra(), bad, 2).ok;
      EXPECT_EQ(check_lhd_conditions(g, extract_entries(g, bad), 2).ok(), direct) << inst.name;
      rejected += !direct;
    }
  }
  EXPECT_GT(rejected, 0u);
}

TEST(LhdConditions, HoldOnHigherDerivations) {
  for (Field f : {Q, F101}) {
    Sampler rnd(f, 6);
    for (const Named& inst : mixed_pool(f, 7)) {
      auto s = random_hd(inst.g.algebra(), 3, rnd);
      ASSERT_TRUE(s);
      const EntryMaps e = extract_entries(inst.g, *s);
      EXPECT_TRUE(check_hd_conditions(inst.g, e, 3).ok()) << inst.name;
      EXPECT_TRUE(check_lhd_conditions(inst.g, e, 3).ok()) << inst.name;
    }
  }
}

TEST(HdConditions, ZeroAndInnerOrdinary) {
  const Gma g = full_matrix(Q, 3);
  EXPECT_TRUE(check_hd_conditions(g, extract_entries(g, zero_sequence(Q, g.dim(), 2)), 2).ok());
  Sampler rnd(Q, 7);
  const MapSequence s = ordinary_from_derivation(g.algebra(), inner_derivation(g.algebra(), rnd.vec(g.dim())), 3);
  EXPECT_TRUE(check_hd_conditions(g, extract_entries(g, s), 3).ok());
}

TEST(HdConditions, NonScalarNMapBreaksE) {
  const Gma g = full_matrix(Q, 3);
  Matrix l1(Q, g.dim(), g.dim());
  l1(g.offset(Block::N), g.offset(Block::N) + 1) = Scalar::one(Q);
  const MapSequence s = make_sequence(Q, g.dim(), {l1});
  EXPECT_FALSE(check_hd_conditions(g, extract_entries(g, s), 1).holds("e"));
  EXPECT_FALSE(verify_hd(g.algebra(), s, 1).ok);
}

TEST(HdConditions, PerturbedNMapsAgreeWithDirectCheck) {
  std::size_t rejected = 0;
  for (Field f : {Q, F101}) {
    Sampler rnd(f, 8);
    for (const Named& inst : mixed_pool(f, 9)) {
      const Gma& g = inst.g;
      if (g.size(Block::N) == 0) continue;
      auto s = random_hd(g.algebra(), 2, rnd);
      ASSERT_TRUE(s);
      const MapSequence bad = perturb_block(g, *s, 2, Block::N, Block::N, rnd);
      const bool direct = verify_hd(g.algebra(), bad, 2).ok;
      EXPECT_EQ(check_hd_conditions(g, extract_entries(g, bad), 2).ok(), direct) << inst.name;
      rejected += !direct;
    }
  }
  EXPECT_GT(rejected, 0u);
}

TEST(TauForm, Examples) {
  const Gma g = full_matrix(Q, 3);
  EXPECT_TRUE(check_tau_form(g, make_tau(Q, g.dim(), {Matrix(Q, g.dim(), g.dim())}), 1).ok());
  Sampler rnd(Q, 9);
  const MapSequence tau = random_diagonal_tau(g, 2, rnd);
  EXPECT_TRUE(check_tau_form(g, tau, 2).ok());
  Matrix off(Q, g.dim(), g.dim());
  off(g.offset(Block::M), g.offset(Block::A)) = Scalar::one(Q);
  const ConditionReport r = check_tau_form(g, make_tau(Q, g.dim(), {off}), 1);
  EXPECT_FALSE(r.holds("shape"));
  EXPECT_EQ(r.conditions, std::vector<std::string>{"shape"});
}

TEST(TauForm, CertificateTausHaveTheForm) {
  const Gma g = full_matrix(F5, 3);
  Sampler rnd(F5, 10);
  for (int i = 0; i < 5; ++i) {
    auto ing = random_ingredients(g, 2, rnd, IngredientSource::ordinary_plus_tau);
    ASSERT_TRUE(ing);
    const Verdict v = decide_proper(g, synthesize_lhd(g, 2, *ing), 2);
    ASSERT_EQ(v.kind, VerdictKind::proper);
    EXPECT_TRUE(check_tau_form(g, v.certificate->tau, 2).ok());
  }
}

TEST(Synthesis, ZeroIngredientsGiveTheZeroSequence) {
  const Gma g = full_matrix(Q, 3);
  const MapSequence s = synthesize_lhd(g, 3, zero_ingredients(g, 3));
  for (std::size_t k = 1; k <= 3; ++k) EXPECT_TRUE(s[k].is_zero());
  const MapSequence h = synthesize_hd(g, 2, zero_ingredients(g, 2));
  for (std::size_t k = 1; k <= 2; ++k) EXPECT_TRUE(h[k].is_zero());
}

TEST(Synthesis, RoundTripThroughIngredients) {
  for (Field f : {Q, F101}) {
    Sampler rnd(f, 11);
    for (const Named& inst : mixed_pool(f, 12)) {
      auto s = random_lhd(inst.g.algebra(), 3, rnd);
      ASSERT_TRUE(s);
      const MapSequence back = synthesize_lhd(inst.g, 3, ingredients_of(extract_entries(inst.g, *s)));
      for (std::size_t k = 1; k <= 3; ++k) EXPECT_EQ(back[k], (*s)[k]) << inst.name;
      auto h = random_hd(inst.g.algebra(), 3, rnd);
      ASSERT_TRUE(h);
      const MapSequence hb = synthesize_hd(inst.g, 3, ingredients_of(extract_entries(inst.g, *h)));
      for (std::size_t k = 1; k <= 3; ++k) EXPECT_EQ(hb[k], (*h)[k]) << inst.name;
    }
  }
}

TEST(Synthesis, InconsistentIngredientsAreReported) {
  const Gma g = full_matrix(Q, 3);
  Sampler rnd(Q, 13);
  auto ing = random_ingredients(g, 2, rnd, IngredientSource::generic);
  ASSERT_TRUE(ing);
  ing->m_m[1](0, 0) += Scalar::one(Q);
  try {
    synthesize_lhd(g, 2, *ing);
    FAIL() << "expected an inconsistency";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("condition"), std::string::npos) << e.what();
  }
}

TEST(Synthesis, IngredientsPlusTauAreProper) {
  const Gma g = peirce_m2(Q);
  Sampler rnd(Q, 14);
  auto ing = random_ingredients(g, 2, rnd, IngredientSource::ordinary_plus_tau);
  ASSERT_TRUE(ing);
  const MapSequence s = synthesize_lhd(g, 2, *ing);
  const MapSequence t = sum(s, random_diagonal_tau(g, 2, rnd));
  EXPECT_TRUE(verify_lhd(g.algebra(), t, 2).ok);
  const Verdict v = decide_proper(g, t, 2);
  ASSERT_EQ(v.kind, VerdictKind::proper);
  EXPECT_TRUE(verify_certificate(g.algebra(), t, v.certificate->d, v.certificate->tau, 2).ok);
}

// Without faithfulness of M the commutator vanishing is not implied: here e2 in B kills M, and a
// B-valued map sending e12 to e2 satisfies (1), (4) and (5) but not the commutator condition.
TEST(FaithfulM, CommutatorConditionNeedsFaithfulness) {
  const FinDimAlgebra t2 = upper_triangular_algebra(Q, 2);
  const FinDimAlgebra ff = direct_product(field_algebra(Q), field_algebra(Q));
  std::vector<Matrix> left;
  for (std::size_t i = 0; i < 3; ++i) left.push_back(t2.left_mult(t2.basis(i)));
  const Bimodule m(Q, {"m0", "m1", "m2"}, left, {Matrix::identity(Q, 3), Matrix(Q, 3, 3)});
  const Gma g = triangular(t2, m, ff);
  ASSERT_FALSE(faithfulness(g).m_faithful);
  Matrix l1(Q, g.dim(), g.dim());
  l1(g.offset(Block::B) + 1, g.offset(Block::A) + 1) = Scalar::one(Q);
  const MapSequence s = make_sequence(Q, g.dim(), {l1});
  const ConditionReport r = check_lhd_conditions(g, extract_entries(g, s), 1);
  EXPECT_TRUE(r.holds("1.lhd"));
  EXPECT_TRUE(r.holds("1.center"));
  EXPECT_TRUE(r.holds("4"));
  EXPECT_TRUE(r.holds("5"));
  EXPECT_FALSE(r.holds("1.commutator"));
  EXPECT_FALSE(verify_lhd(g.algebra(), s, 1).ok);
}
