#include <gtest/gtest.h>

#include "greenseq/cli/corpus.hpp"
#include "greenseq/errors.hpp"
#include "greenseq/pattern.hpp"
#include "greenseq/seqcalc.hpp"
#include "support/oracles.hpp"

using namespace greenseq;

namespace {

const Matrix kBStar = Matrix::from_rows({{0, 1, 2}, {-1, 0, 1}, {-1, -1, 0}});

PatternContext checked(const Matrix& b) { return PatternContext(b, InvariantChecks::on); }

TEST(Seed, Initial) {
  const auto ctx = checked(kBStar);
  const SeedPair sp = initial_seed(ctx);
  EXPECT_EQ(sp.seed.b, kBStar);
  EXPECT_EQ(sp.seed.c, Matrix::identity(3));
  EXPECT_EQ(sp.seed.g, Matrix::identity(3));
  EXPECT_EQ(sp.dual.b, -kBStar.transpose());
  EXPECT_THROW(PatternContext(Matrix::from_rows({{0, 1}, {1, 0}})), std::invalid_argument);
}

TEST(MutateSeed, AtThree) {
  const auto ctx = checked(kBStar);
  const SeedPair sp = mutate_seed(ctx, initial_seed(ctx), 3);
  EXPECT_EQ(sp.seed.c, Matrix::from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, -1}}));
  EXPECT_EQ(sp.seed.b, Matrix::from_rows({{0, 1, -2}, {-1, 0, -1}, {1, 1, 0}}));
  EXPECT_EQ(column_sign(sp.seed.c, 3), -1);
  EXPECT_EQ(column_sign(sp.seed.c, 1), 1);
}

TEST(MutateSeed, Involution) {
  const auto ctx = checked(kBStar);
  SeedPair sp = initial_seed(ctx);
  for (int k : {1, 2, 1, 3}) sp = mutate_seed(ctx, sp, k);
  for (int k = 1; k <= 3; ++k) EXPECT_EQ(mutate_seed(ctx, mutate_seed(ctx, sp, k), k), sp);
}

TEST(MutateSeed, MaximalGreenEndsAtMinusIdentity) {
  const auto ctx = checked(kBStar);
  SeedPair sp = initial_seed(ctx);
  for (int k : {3, 2, 1}) sp = mutate_seed(ctx, sp, k);
  EXPECT_EQ(sp.seed.c, -Matrix::identity(3));
  EXPECT_EQ(is_nonpositive_C(sp.seed.c), Permutation({1, 2, 3}));
}

TEST(MutateSeed, AgreesWithOracleAndKeepsInvariants) {
  cli::Rng rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 5);
    const Matrix b0 = cli::random_acyclic(rng, n, 2);
    const auto ctx = checked(b0);
    SeedPair sp = initial_seed(ctx);
    Seed ref = oracle::initial(b0);
    for (int k : cli::random_path(rng, n, 8).dirs) {
      sp = mutate_seed(ctx, sp, k);
      ref = oracle::mutate_seed(b0, ref, k);
      ASSERT_EQ(sp.seed, ref) << b0;
      ASSERT_TRUE(check_first_duality(sp, b0));
      ASSERT_TRUE(check_second_duality(sp));
      ASSERT_EQ(find_invariant_violation(ctx, sp), std::nullopt);
    }
  }
}

TEST(MutateSeed, CrossCheckOfTwoForms) {
  const Seed s{kBStar, Matrix::identity(3), Matrix::identity(3)};
  EXPECT_NO_THROW(mutate_single(kBStar, s, 2, true));
  EXPECT_EQ(mutate_c_matrix(kBStar, Matrix::identity(3), 1), Matrix::from_rows({{-1, 1, 2}, {0, 1, 0}, {0, 0, 1}}));
}

TEST(MutateSeed, IncoherentColumnIsRejected) {
  const Seed s{kBStar, Matrix::from_rows({{1, 0, 0}, {-1, 1, 0}, {0, 0, 1}}), Matrix::identity(3)};
  EXPECT_THROW(mutate_single(kBStar, s, 1, false), InvariantViolation);
}

TEST(Signs, Examples) {
  EXPECT_EQ(column_sign(Matrix::identity(3), 2), 1);
  const Matrix negp = -perm_matrix(Permutation({2, 3, 1}));
  for (int k = 1; k <= 3; ++k) EXPECT_EQ(column_sign(negp, k), -1);
  EXPECT_THROW(column_sign(Matrix(2), 1), InvariantViolation);
  EXPECT_THROW(row_sign(Matrix::from_rows({{1, -1}, {0, 1}}), 1), InvariantViolation);
}

TEST(Dualities, CorruptedSeedIsDetected) {
  const auto ctx = checked(kBStar);
  SeedPair sp = mutate_seed(ctx, initial_seed(ctx), 2);
  ASSERT_TRUE(check_first_duality(sp, kBStar));
  sp.seed.c.at(0, 0) += 1;
  EXPECT_FALSE(check_first_duality(sp, kBStar));
  EXPECT_FALSE(check_second_duality(sp));
  EXPECT_TRUE(find_invariant_violation(ctx, sp).has_value());
}

TEST(Rebase, AtInitialVertex) {
  const auto ctx = checked(kBStar);
  for (int j = 1; j <= 3; ++j) {
    Matrix minus_b = -kBStar;
    EXPECT_EQ(rebase_c_matrix(ctx, initial_seed(ctx), j), signed_diagonal(3, j) + positive_part_row(minus_b, j));
  }
}

TEST(Rebase, MatchesReplayFromNeighbour) {
  cli::Rng rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 3);
    const Matrix b0 = cli::random_acyclic(rng, n, 2);
    const auto ctx = checked(b0);
    const MutationSequence path = cli::random_path(rng, n, 6);
    const SeedPair sp = walk(ctx, initial_seed(ctx), path);
    for (int j = 1; j <= static_cast<int>(n); ++j) {
      MutationSequence from_neighbour{j};
      from_neighbour.dirs.insert(from_neighbour.dirs.end(), path.dirs.begin(), path.dirs.end());
      const Matrix b1 = mutate_matrix(b0, j);
      const Seed replay = oracle::walk(b1, oracle::initial(b1), from_neighbour).seed;
      const Matrix rebased = rebase_c_matrix(ctx, sp, j);
      ASSERT_EQ(rebased, replay.c) << b0 << " path " << to_string(path) << " j=" << j;
    }
  }
}

TEST(Rebase, TransformIsInvolution) {
  for (int j = 1; j <= 3; ++j) {
    Matrix minus_b = -kBStar;
    const Matrix a = signed_diagonal(3, j) + positive_part_row(minus_b, j);
    EXPECT_EQ(a * a, Matrix::identity(3));
    const Matrix b = signed_diagonal(3, j) + positive_part_row(kBStar, j);
    EXPECT_EQ(b * b, Matrix::identity(3));
  }
}

TEST(NonpositiveC, Examples) {
  EXPECT_EQ(is_nonpositive_C(-Matrix::identity(3)), Permutation({1, 2, 3}));
  EXPECT_EQ(is_nonpositive_C(Matrix::from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, -1}})), std::nullopt);
  EXPECT_EQ(is_nonpositive_C(-perm_matrix(Permutation({3, 1, 2}))), Permutation({3, 1, 2}));
  EXPECT_THROW(is_nonpositive_C(Matrix::from_rows({{-1, -1}, {0, -1}})), InvariantViolation);
}

TEST(Hemisphere, Examples) {
  const auto ctx = checked(kBStar);
  for (int j = 1; j <= 3; ++j) EXPECT_EQ(hemisphere(initial_seed(ctx), j), Hemisphere::plus);
  const SeedPair end = walk(ctx, initial_seed(ctx), {3, 2, 1});
  for (int j = 1; j <= 3; ++j) EXPECT_EQ(hemisphere(end, j), Hemisphere::minus);
}

}  // namespace
