#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "greenseq/cli/corpus.hpp"
#include "greenseq/errors.hpp"
#include "greenseq/explorer.hpp"
#include "support/oracles.hpp"

using namespace greenseq;

namespace {

const Matrix kBStar = Matrix::from_rows({{0, 1, 2}, {-1, 0, 1}, {-1, -1, 0}});
const Matrix kA2 = Matrix::from_rows({{0, 1}, {-1, 0}});
const Matrix kA3 = Matrix::from_rows({{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}});
const Matrix kBadAt1 = Matrix::from_rows({{0, 1, -1}, {-2, 0, 1}, {1, -1, 0}});

SearchBudget budget(std::size_t depth, std::size_t nodes, SearchMode mode = SearchMode::all_mutations) {
  return SearchBudget{depth, nodes, mode};
}

TEST(CanonicalKey, SameClassesAsBruteForce) {
  // A3 is of finite type, so random walks revisit vertices often.
  const PatternContext ctx(kA3, InvariantChecks::on);
  cli::Rng rng(7);
  std::vector<SeedPair> seeds;
  for (int trial = 0; trial < 40; ++trial)
    seeds.push_back(walk(ctx, initial_seed(ctx), cli::random_path(rng, 3, 1 + trial % 7)));
  std::size_t equal_pairs = 0;
  for (std::size_t a = 0; a < seeds.size(); ++a) {
    const CanonicalSeedKey ka = canonical_key(seeds[a]);
    EXPECT_EQ(ka.digest, fnv1a64(ka.encoding));
    for (std::size_t b = a + 1; b < seeds.size(); ++b) {
      const bool fast = ka == canonical_key(seeds[b]);
      EXPECT_EQ(fast, oracle::brute_force_key(seeds[a]) == oracle::brute_force_key(seeds[b]));
      equal_pairs += fast ? 1 : 0;
    }
  }
  EXPECT_GT(equal_pairs, 0u);
}

TEST(CanonicalKey, InvariantUnderRelabelling) {
  const PatternContext ctx(kBStar, InvariantChecks::on);
  const SeedPair sp = walk(ctx, initial_seed(ctx), MutationSequence{2, 1, 3});
  std::vector<int> p{1, 2, 3};
  do {
    const SeedPair moved = relabel(sp, Permutation(p));
    EXPECT_EQ(canonical_key(moved), canonical_key(sp));
  } while (std::next_permutation(p.begin(), p.end()));
  EXPECT_FALSE(canonical_key(sp) == canonical_key(initial_seed(ctx)));
}

TEST(CanonicalKey, RelabelActsOnClusterIndex) {
  const PatternContext ctx(kBStar, InvariantChecks::on);
  const SeedPair sp = walk(ctx, initial_seed(ctx), MutationSequence{1, 3});
  const Permutation pi({3, 1, 2});
  const SeedPair moved = relabel(sp, pi);
  const Matrix p = perm_matrix(pi);
  EXPECT_EQ(moved.seed.b, p.transpose() * sp.seed.b * p);
  EXPECT_EQ(moved.seed.c, sp.seed.c * p);
  EXPECT_EQ(moved.seed.g, sp.seed.g * p);
  EXPECT_EQ(find_invariant_violation(ctx, moved), std::nullopt);
}

TEST(FindMgs, ShortestOnBStar) {
  const SearchResult r = find_mgs(kBStar, budget(6, 10000));
  ASSERT_EQ(r.status, SearchStatus::found);
  EXPECT_EQ(*r.seq, (MutationSequence{3, 2, 1}));
  EXPECT_TRUE(classify(kBStar, *r.seq).is_maximal_green());
}

TEST(FindMgs, SingleVertex) {
  const SearchResult r = find_mgs(Matrix::from_rows({{0}}), budget(4, 100));
  ASSERT_EQ(r.status, SearchStatus::found);
  EXPECT_EQ(*r.seq, (MutationSequence{1}));
}

TEST(FindMgs, BudgetExhaustedIsNotCertified) {
  const SearchResult r = find_mgs(kBStar, budget(2, 10000));
  EXPECT_EQ(r.status, SearchStatus::none_within_budget);
  EXPECT_FALSE(r.seq.has_value());
  EXPECT_NE(r.note.find("budget exhausted"), std::string::npos);
}

TEST(FindMgs, Rank2DivergenceCertified) {
  SearchOptions opt;
  opt.first_direction = 1;
  const SearchResult r = find_mgs(Matrix::from_rows({{0, 2}, {-2, 0}}), budget(20, 10000), opt);
  EXPECT_EQ(r.status, SearchStatus::certified_none);
  const SearchResult free = find_mgs(Matrix::from_rows({{0, 2}, {-2, 0}}), budget(6, 10000));
  ASSERT_EQ(free.status, SearchStatus::found);
  EXPECT_EQ(*free.seq, (MutationSequence{2, 1}));
}

TEST(FindMgs, ForcedFirstDirection) {
  SearchOptions opt;
  opt.first_direction = 2;
  const SearchResult r = find_mgs(kBStar, budget(8, 100000), opt);
  ASSERT_EQ(r.status, SearchStatus::found);
  EXPECT_EQ(r.seq->dirs.front(), 2);
  EXPECT_TRUE(classify(kBStar, *r.seq).is_maximal_green());
}

TEST(FindMgs, WorkerCountDoesNotChangeResult) {
  SearchOptions one, two;
  two.workers = 2;
  const SearchResult a = find_mgs(kBStar, budget(6, 10000), one);
  const SearchResult b = find_mgs(kBStar, budget(6, 10000), two);
  EXPECT_EQ(a.seq, b.seq);
  EXPECT_EQ(a.nodes, b.nodes);
}

TEST(FindMgs, NotTotallyMutableReportsPrefix) {
  try {
    (void)find_mgs(kBadAt1, budget(4, 1000));
    FAIL() << "expected NotTotallyMutable";
  } catch (const NotTotallyMutable& e) {
    EXPECT_EQ(e.prefix(), (std::vector<int>{1}));
  }
}

TEST(FindReddening, MutatedBStar) {
  const Matrix b = mutate_matrix(kBStar, 1);
  const SearchResult r = find_reddening(b, budget(8, 100000));
  ASSERT_EQ(r.status, SearchStatus::found);
  EXPECT_EQ(classify(b, *r.seq).kind, SequenceKind::reddening);
}

TEST(EnumerateMgs, BStarCatalogue) {
  const std::vector<MutationSequence> expected{
      {1, 3, 1, 3, 2, 1}, {2, 3, 1, 2, 1, 2}, {2, 3, 2, 1}, {3, 1, 2, 1}, {3, 2, 1}};
  EXPECT_EQ(enumerate_mgs(kBStar, 9), expected);
  EXPECT_EQ(enumerate_mgs(kBStar, 9), oracle::all_mgs(kBStar, 9));
  const auto six = enumerate_mgs(kBStar, 6);
  EXPECT_NE(std::find(six.begin(), six.end(), MutationSequence{3, 2, 1}), six.end());
  EXPECT_NE(std::find(six.begin(), six.end(), MutationSequence{2, 3, 1, 2, 1, 2}), six.end());
}

TEST(EnumerateMgs, PruningKeepsEverySequence) {
  cli::Rng rng(11);
  for (int trial = 0; trial < 15; ++trial) {
    const Matrix b = cli::random_acyclic_with_heavy_pair(rng, 3, 3);
    const auto full = enumerate_mgs(b, 7);
    const auto pruned = enumerate_mgs(b, 7, true);
    EXPECT_EQ(full, pruned) << b;
  }
}

TEST(EnumerateRedGreen, CatalogueIsClassified) {
  const SequenceCatalog cat = enumerate_reddening_greening(kA2, 6);
  EXPECT_FALSE(cat.reddening.empty());
  EXPECT_FALSE(cat.greening.empty());
  for (const auto& s : cat.reddening) EXPECT_EQ(classify(kA2, s).kind, SequenceKind::reddening);
  for (const auto& s : cat.greening) EXPECT_EQ(classify(kA2, s).kind, SequenceKind::greening);
  EXPECT_TRUE(std::is_sorted(cat.reddening.begin(), cat.reddening.end()));
}

TEST(ExchangeGraph, FiniteTypes) {
  const ExchangeGraphStore a2 = build_exchange_graph(kA2, budget(20, 1000));
  EXPECT_EQ(a2.nodes().size(), 5u);
  EXPECT_FALSE(a2.truncated());
  EXPECT_TRUE(a2.frontier().empty());
  const ExchangeGraphStore a3 = build_exchange_graph(kA3, budget(20, 1000));
  EXPECT_EQ(a3.nodes().size(), 14u);
  EXPECT_FALSE(a3.truncated());
}

TEST(ExchangeGraph, StoredPathsReachStoredSeeds) {
  const ExchangeGraphStore store = build_exchange_graph(kBStar, budget(4, 1000));
  const PatternContext ctx(kBStar, InvariantChecks::on);
  std::set<std::string> keys;
  for (const StoreNode& node : store.nodes()) {
    EXPECT_EQ(walk(ctx, initial_seed(ctx), node.path), node.seed);
    EXPECT_EQ(node.path.size(), node.depth);
    EXPECT_TRUE(keys.insert(node.key.encoding).second);
  }
  for (const StoreEdge& edge : store.edges()) {
    const SeedPair next = mutate_seed(ctx, store.nodes()[edge.from].seed, edge.direction);
    EXPECT_EQ(canonical_key(next), store.nodes()[edge.to].key);
    const int sign = column_sign(store.nodes()[edge.from].seed.seed.c, edge.direction);
    EXPECT_EQ(edge.color, sign > 0 ? EdgeColor::green : EdgeColor::red);
  }
}

TEST(ExchangeGraph, GreenOnlyModeUsesGreenEdges) {
  const ExchangeGraphStore store = build_exchange_graph(kBStar, budget(6, 1000, SearchMode::green_only));
  for (const StoreEdge& edge : store.edges()) EXPECT_EQ(edge.color, EdgeColor::green);
}

TEST(ExchangeGraph, ResumeMatchesUninterruptedRun) {
  const ExchangeGraphStore whole = build_exchange_graph(kBStar, budget(5, 1000));
  ExchangeGraphStore part = build_exchange_graph(kBStar, budget(5, 10));
  EXPECT_TRUE(part.truncated());
  EXPECT_LE(part.nodes().size(), 10u);
  part.set_budget(budget(5, 1000));
  expand_store(part);
  EXPECT_EQ(serialize_store(part), serialize_store(whole));
}

TEST(ExchangeGraph, WorkerCountDoesNotChangeStore) {
  SearchOptions two;
  two.workers = 2;
  EXPECT_EQ(serialize_store(build_exchange_graph(kBStar, budget(5, 1000))),
            serialize_store(build_exchange_graph(kBStar, budget(5, 1000), two)));
}

TEST(ExchangeGraph, NotTotallyMutableReportsPrefix) {
  try {
    (void)build_exchange_graph(kBadAt1, budget(3, 100));
    FAIL() << "expected NotTotallyMutable";
  } catch (const NotTotallyMutable& e) {
    EXPECT_EQ(e.prefix(), (std::vector<int>{1}));
  }
}

TEST(Store, RoundTrip) {
  const ExchangeGraphStore store = build_exchange_graph(kBStar, budget(4, 200));
  const std::string text = serialize_store(store);
  const ExchangeGraphStore back = parse_store(text);
  EXPECT_TRUE(back == store);
  EXPECT_EQ(serialize_store(back), text);
}

TEST(Store, RejectsCorruption) {
  const std::string text = serialize_store(build_exchange_graph(kA2, budget(6, 100)));
  std::string flipped = text;
  const auto pos = flipped.find("\"depth\":1");
  ASSERT_NE(pos, std::string::npos);
  flipped[pos + 8] = '2';
  EXPECT_THROW((void)parse_store(flipped), std::runtime_error);

  std::string versioned = text;
  const auto vpos = versioned.find("\"version\":1");
  ASSERT_NE(vpos, std::string::npos);
  versioned.replace(vpos, 11, "\"version\":9");
  EXPECT_THROW((void)parse_store(versioned), std::runtime_error);

  EXPECT_THROW((void)parse_store(""), std::runtime_error);
}

TEST(Store, SaveAndLoad) {
  const ExchangeGraphStore store = build_exchange_graph(kA3, budget(10, 100));
  const std::string path = ::testing::TempDir() + "greenseq_store_test.jsonl";
  save_store(store, path);
  EXPECT_TRUE(load_store(path) == store);
  EXPECT_THROW((void)load_store(path + ".missing"), std::runtime_error);
}

TEST(Query, ReddeningPathOnBStar) {
  const ExchangeGraphStore store = build_exchange_graph(kBStar, budget(4, 1000));
  const auto p = query_reddening_path(store);
  ASSERT_TRUE(p.has_value());
  EXPECT_EQ(p->opposite_arrows, 0u);
  EXPECT_TRUE(classify(kBStar, p->seq).is_maximal_green());
}

TEST(Query, OppositeArrowsCountRedSteps) {
  const ExchangeGraphStore store = build_exchange_graph(kA3, budget(10, 100));
  const PatternContext ctx(kA3, InvariantChecks::on);
  for (std::size_t id = 0; id < store.nodes().size(); ++id) {
    const auto p = query_path(store, id);
    ASSERT_TRUE(p.has_value());
    std::size_t red = 0;
    const SeedPair end = walk(ctx, initial_seed(ctx), p->seq, &red);
    EXPECT_EQ(red, p->opposite_arrows);
    EXPECT_EQ(canonical_key(end), store.nodes()[id].key);
  }
  EXPECT_THROW((void)query_path(store, store.nodes().size()), std::out_of_range);
}

TEST(Mutability, Shortcuts) {
  EXPECT_EQ(verify_total_mutability(kBStar, 4).status, MutabilityStatus::verified_acyclic);
  const Matrix cyclic = Matrix::from_rows({{0, 1, -1}, {-1, 0, 1}, {1, -1, 0}});
  EXPECT_EQ(verify_total_mutability(cyclic, 4).status, MutabilityStatus::verified_skew_symmetrizable);
  const MutabilityResult deep = verify_total_mutability(cyclic, 6, false);
  EXPECT_EQ(deep.status, MutabilityStatus::verified_to_depth);
  EXPECT_EQ(deep.depth, 6u);
  EXPECT_GT(deep.matrices_checked, 0u);
}

TEST(Mutability, Refuted) {
  const MutabilityResult r = verify_total_mutability(kBadAt1, 4);
  EXPECT_EQ(r.status, MutabilityStatus::refuted);
  ASSERT_TRUE(r.counterexample.has_value());
  EXPECT_EQ(*r.counterexample, (MutationSequence{1}));
  EXPECT_FALSE(is_sign_skew_symmetric(mutate_matrix(kBadAt1, 1)));
}

TEST(Rank2, HeavyPairDiverges) {
  for (const auto& rows : {std::vector<std::vector<Integer>>{{0, 2}, {-2, 0}},
                           std::vector<std::vector<Integer>>{{0, 1}, {-4, 0}},
                           std::vector<std::vector<Integer>>{{0, 3}, {-3, 0}}}) {
    const Matrix b = Matrix::from_rows(rows);
    const Rank2Certificate cert = certify_rank2_green_divergence(b, 1);
    EXPECT_TRUE(cert.certified) << b << cert.reason;
    EXPECT_TRUE(cert.monotone);
    EXPECT_GE(cert.steps, cert.witness_step);
  }
}

TEST(Rank2, FiniteTypeIsNotCertified) {
  const Rank2Certificate a2 = certify_rank2_green_divergence(kA2, 1);
  EXPECT_FALSE(a2.certified);
  EXPECT_FALSE(a2.reason.empty());
  EXPECT_FALSE(certify_rank2_green_divergence(Matrix::from_rows({{0, 1}, {-3, 0}}), 1).certified);
}

TEST(Modes, StringRoundTrip) {
  for (const SearchMode m : {SearchMode::green_only, SearchMode::all_mutations})
    EXPECT_EQ(search_mode_from_string(to_string(m)), m);
  EXPECT_THROW((void)search_mode_from_string("sideways"), std::invalid_argument);
}

}  // namespace
