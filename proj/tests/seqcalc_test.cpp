#include <gtest/gtest.h>

#include "greenseq/cli/corpus.hpp"
#include "greenseq/errors.hpp"
#include "greenseq/explorer.hpp"
#include "greenseq/seqcalc.hpp"
#include "support/oracles.hpp"

using namespace greenseq;

namespace {

const Matrix kBStar = Matrix::from_rows({{0, 1, 2}, {-1, 0, 1}, {-1, -1, 0}});
const PatternContext kCtx(kBStar, InvariantChecks::on);

Vector e(int j) { return unit_vector(3, j); }
Vector minus(Vector v) {
  for (auto& x : v) x = -x;
  return v;
}

TEST(Sequence, ParseAndPrint) {
  EXPECT_EQ(parse_sequence("3,2,1"), (MutationSequence{3, 2, 1}));
  EXPECT_EQ(parse_sequence(" 3 , 2 ,1 "), (MutationSequence{3, 2, 1}));
  EXPECT_TRUE(parse_sequence("").empty());
  EXPECT_THROW(parse_sequence("1,,2"), std::invalid_argument);
  EXPECT_THROW(parse_sequence("1,x"), std::invalid_argument);
  EXPECT_EQ(to_string(MutationSequence{1, 2}), "(1,2)");
  EXPECT_THROW(MutationSequence({1, 4}).validate(3), std::out_of_range);
  EXPECT_EQ((MutationSequence{1, 2, 3}).reversed(), (MutationSequence{3, 2, 1}));
}

TEST(Trace, MaximalGreen) {
  const SequenceTrace t = run_sequence(kCtx, {3, 2, 1});
  EXPECT_EQ(t.cvecs, (std::vector<Vector>{e(3), e(2), e(1)}));
  EXPECT_TRUE(t.red_positions.empty());
  EXPECT_EQ(t.seeds.size(), 4u);
}

TEST(Trace, Empty) {
  const SequenceTrace t = run_sequence(kCtx, {});
  EXPECT_EQ(t.seeds.size(), 1u);
  EXPECT_TRUE(t.cvecs.empty());
}

TEST(Trace, TwoReddeningCVectors) {
  const SequenceTrace t = run_sequence(kCtx, {1, 2, 1, 2, 1, 3, 1, 2});
  const Vector e12{1, 1, 0};
  EXPECT_EQ(t.cvecs, (std::vector<Vector>{e(1), e12, e(2), minus(e(1)), minus(e(2)), e(3), e(2), e(1)}));
  EXPECT_EQ(t.red_positions, (std::vector<std::size_t>{3, 4}));
}

TEST(Classify, Examples) {
  const SequenceVerdict mgs = classify(kCtx, {3, 2, 1});
  EXPECT_TRUE(mgs.is_maximal_green());
  EXPECT_EQ(mgs.perm, Permutation({1, 2, 3}));
  EXPECT_TRUE(classify(kCtx, {2, 3, 1, 2, 1, 2}).is_maximal_green());
  const SequenceVerdict red2 = classify(kCtx, {1, 2, 1, 2, 1, 3, 1, 2});
  EXPECT_EQ(red2.kind, SequenceKind::reddening);
  EXPECT_EQ(red2.red_count, 2u);
  const SequenceVerdict green = classify(kCtx, {1, 1});
  EXPECT_EQ(green.kind, SequenceKind::greening);
  EXPECT_EQ(green.red_count, 1u);
  const SequenceVerdict empty = classify(kCtx, {});
  EXPECT_EQ(empty.kind, SequenceKind::greening);
  EXPECT_EQ(empty.red_count, 0u);
  EXPECT_EQ(classify(kCtx, {1, 2}).kind, SequenceKind::neither);
}

TEST(Classify, AgreesWithOracle) {
  cli::Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix b = cli::random_acyclic(rng, 3, 2);
    const auto cat = enumerate_reddening_greening(b, 5);
    for (const auto* list : {&cat.reddening, &cat.greening})
      for (const auto& s : *list) ASSERT_TRUE(oracle::same(oracle::classify(b, s), classify(b, s))) << b << to_string(s);
    for (int k = 0; k < 5; ++k) {
      const MutationSequence s = cli::random_path(rng, 3, 4);
      ASSERT_TRUE(oracle::same(oracle::classify(b, s), classify(b, s)));
    }
  }
}

TEST(Counting, Examples) {
  for (const MutationSequence& s : {MutationSequence{3, 2, 1}, MutationSequence{1, 2, 1, 2, 1, 3, 1, 2}, MutationSequence{1, 1}}) {
    const SequenceTrace t = run_sequence(kCtx, s);
    EXPECT_TRUE(check_reddening_wellformed(classify(t), t).ok()) << to_string(s);
    EXPECT_TRUE(check_hemisphere_crossings(t).ok()) << to_string(s);
  }
  const SequenceTrace t = run_sequence(kCtx, {1, 2, 1, 2, 1, 3, 1, 2});
  EXPECT_EQ(oracle::unit_balance(t.cvecs, 3), (std::vector<long long>{1, 1, 1}));
}

TEST(Counting, RejectsInconsistentVerdict) {
  const SequenceTrace t = run_sequence(kCtx, {3, 2});
  SequenceVerdict fake;
  fake.kind = SequenceKind::reddening;
  fake.perm = Permutation({1, 2, 3});
  EXPECT_FALSE(check_reddening_wellformed(fake, t).ok());
}

TEST(Conjugate, Examples) {
  const TransformPrediction p1 = conjugate(kBStar, {3, 2, 1}, 1);
  EXPECT_EQ(p1.seq, (MutationSequence{1, 3, 2, 1, 1}));
  EXPECT_EQ(p1.target, mutate_matrix(kBStar, 1));
  EXPECT_EQ(p1.kind, SequenceKind::reddening);
  EXPECT_EQ(p1.red_count, 1u);
  const SequenceVerdict v1 = classify(p1.target, p1.seq);
  EXPECT_EQ(v1.kind, SequenceKind::reddening);
  EXPECT_EQ(v1.red_count, 1u);
  EXPECT_EQ(v1.perm, Permutation({1, 2, 3}));

  EXPECT_EQ(conjugate(kBStar, {3, 2, 1}, 2).seq, (MutationSequence{2, 3, 2, 1, 2}));

  const TransformPrediction g = conjugate(kBStar, {1, 1}, 3);
  EXPECT_EQ(g.seq, (MutationSequence{3, 1, 1, 3}));
  EXPECT_EQ(g.kind, SequenceKind::greening);
  EXPECT_EQ(g.red_count, 2u);
  const SequenceVerdict vg = classify(g.target, g.seq);
  EXPECT_EQ(vg.kind, SequenceKind::greening);
  EXPECT_EQ(vg.red_count, 2u);

  EXPECT_THROW(conjugate(kBStar, {1, 2}, 1), DomainError);
}

TEST(Rotate, Examples) {
  const TransformPrediction r = rotate(kBStar, {3, 2, 1});
  EXPECT_EQ(r.seq, (MutationSequence{2, 1, 3}));
  EXPECT_EQ(r.target, mutate_matrix(kBStar, 3));
  EXPECT_TRUE(classify(r.target, r.seq).is_maximal_green());

  const SequenceVerdict v = classify(kBStar, {2, 3, 1, 2, 1, 2});
  const TransformPrediction r2 = rotate(kBStar, {2, 3, 1, 2, 1, 2});
  EXPECT_EQ(r2.seq, (MutationSequence{3, 1, 2, 1, 2, v.perm->inverse()(2)}));
  const SequenceVerdict v2 = classify(r2.target, r2.seq);
  EXPECT_TRUE(v2.is_maximal_green());
  EXPECT_EQ(v2.perm, v.perm);
  EXPECT_THROW(rotate(kBStar, {}), DomainError);
}

TEST(ConjugationDifference, InitialVertexIsZero) {
  const std::vector<MutationSequence> w{{3, 2, 1}};
  const ConjugationDifference d = conjugation_difference(kCtx, {}, w);
  EXPECT_EQ(d.phi, 0);
  EXPECT_EQ(d.red_from_t, 0u);
}

TEST(ConjugationDifference, MatchesOracleAndBounds) {
  const std::vector<MutationSequence> w{{3, 2, 1}, {2, 3, 1, 2, 1, 2}};
  cli::Rng rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const MutationSequence path = cli::random_path(rng, 3, 1 + static_cast<std::size_t>(trial % 4));
    const ConjugationDifference d = conjugation_difference(kCtx, path, w);
    EXPECT_EQ(d.phi, oracle::phi(kBStar, path, w[0]));
    EXPECT_EQ(d.phi, oracle::phi(kBStar, path, w[1]));
    const Seed t = oracle::walk(kBStar, oracle::initial(kBStar), path).seed;
    for (const auto& s : enumerate_reddening_greening(t.b, 6).reddening) {
      const std::size_t r = oracle::walk(kBStar, t, s).red;
      EXPECT_EQ(static_cast<long long>(r), static_cast<long long>(classify(t.b, s).red_count) + d.phi);
      EXPECT_LE(d.phi, static_cast<long long>(r));
    }
  }
}

TEST(ConjugationDifference, PathThroughMutationOne) {
  const std::vector<MutationSequence> w{{3, 2, 1}};
  const ConjugationDifference d = conjugation_difference(kCtx, {3}, w);
  EXPECT_EQ(d.phi, oracle::phi(kBStar, {3}, w[0]));
  EXPECT_EQ(d.sigma, Permutation({1, 2, 3}));
}

TEST(ConjugationDifference, SameCUpToPermutationSameValue) {
  // Every stored edge whose target was found by another path gives two
  // vertices of the tree with equal C up to relabelling.
  const std::vector<MutationSequence> w{{3, 2, 1}};
  const ExchangeGraphStore store = build_exchange_graph(kBStar, SearchBudget{3, 1000, SearchMode::all_mutations});
  std::size_t compared = 0;
  for (const StoreEdge& edge : store.edges()) {
    MutationSequence via = store.nodes()[edge.from].path;
    via.dirs.push_back(edge.direction);
    const MutationSequence& direct = store.nodes()[edge.to].path;
    if (via == direct) continue;
    ASSERT_EQ(canonical_key(walk(kCtx, initial_seed(kCtx), via)), store.nodes()[edge.to].key);
    EXPECT_EQ(conjugation_difference(kCtx, via, w).phi, conjugation_difference(kCtx, direct, w).phi)
        << to_string(via) << " vs " << to_string(direct);
    ++compared;
  }
  EXPECT_GT(compared, 0u);
}

TEST(GreenTail, Examples) {
  EXPECT_EQ(green_tail(run_sequence(kCtx, {3, 2, 1})), 0u);
  EXPECT_EQ(green_tail(run_sequence(kCtx, {1, 2, 1, 2, 1, 3, 1, 2})), 5u);
  EXPECT_EQ(green_tail(run_sequence(kCtx, {1, 1})), 2u);
}

TEST(Restrict, Examples) {
  const Restriction r = restrict_to_submatrix(kBStar, {3, 2, 1}, {1, 2});
  EXPECT_EQ(r.sub.matrix, Matrix::from_rows({{0, 1}, {-1, 0}}));
  EXPECT_EQ(r.induced, (MutationSequence{2, 1}));
  EXPECT_TRUE(classify(r.sub.matrix, r.induced).is_maximal_green());
  EXPECT_EQ(restrict_to_submatrix(kBStar, {3, 2, 1}, {1, 2, 3}).induced, (MutationSequence{3, 2, 1}));
  const Restriction single = restrict_to_submatrix(kBStar, {3, 2, 1}, {3});
  EXPECT_EQ(single.induced, (MutationSequence{1}));
  EXPECT_EQ(single.sub.matrix, Matrix(1));
}

TEST(Heavy, PairsAndWitness) {
  EXPECT_TRUE(heavy_pairs(kBStar).empty());
  const Matrix b = Matrix::from_rows({{0, -2, 0}, {2, 0, 1}, {0, -1, 0}});
  EXPECT_EQ(heavy_pairs(b), (std::vector<std::pair<int, int>>{{1, 2}}));
  EXPECT_EQ(heavy_target_witness(b, 2), 1);
  EXPECT_EQ(heavy_target_witness(b, 1), std::nullopt);
  const Matrix r2 = Matrix::from_rows({{0, 2}, {-2, 0}});
  EXPECT_EQ(heavy_target_witness(r2, 1), 2);
}

TEST(TargetBeforeSource, RunningExampleIsVacuous) {
  EXPECT_TRUE(verify_target_before_source(kBStar, {3, 2, 1}).ok());
  EXPECT_TRUE(verify_target_before_source(kBStar, {3, 2, 1}).pairs.empty());
  EXPECT_TRUE(verify_tbs_cvectors(kBStar, {1, 2, 1, 2, 1, 3, 1, 2}).ok());
  EXPECT_EQ(verify_tbs_cvectors(kBStar, {1, 2, 1, 2, 1, 3, 1, 2}).tail_start, 5u);
  EXPECT_TRUE(verify_no_heavy_target_mutation(kBStar, {3, 2, 1}).ok());
  EXPECT_TRUE(verify_no_heavy_target_mutation(kBStar, {2, 3, 1, 2, 1, 2}).ok());
}

TEST(TargetBeforeSource, WeightTwoTwoPair) {
  // b_21 = 2 > 0, b_12 = -2: every MGS mutates 1 before 2.
  const Matrix b = Matrix::from_rows({{0, -2, 0}, {2, 0, 1}, {0, -1, 0}});
  const auto mgs = oracle::all_mgs(b, 10);
  ASSERT_FALSE(mgs.empty());
  for (const auto& s : mgs) {
    const auto rep = verify_target_before_source(b, s);
    ASSERT_TRUE(rep.ok()) << to_string(s);
    ASSERT_EQ(rep.pairs.size(), 1u);
    EXPECT_LT(rep.pairs[0].q, rep.pairs[0].p);
    EXPECT_TRUE(verify_no_heavy_target_mutation(b, s).ok());
  }
  for (const auto& s : enumerate_reddening_greening(b, 8).reddening) EXPECT_TRUE(verify_tbs_cvectors(b, s).ok()) << to_string(s);
  EXPECT_THROW(verify_target_before_source(b, {1, 2}), DomainError);
}

TEST(TargetBeforeSource, HeavyStepIsFlagged) {
  const Matrix r2 = Matrix::from_rows({{0, 2}, {-2, 0}});
  const HeavyTargetReport rep = verify_no_heavy_target_mutation(r2, {1});
  EXPECT_FALSE(rep.ok());
  EXPECT_THROW(verify_target_before_source(Matrix::from_rows({{0, 1, -1}, {-1, 0, 1}, {1, -1, 0}}), {1}), std::invalid_argument);
}

}  // namespace
