#pragma once

// Bounded search over the mutation tree and the exchange graph.
//
// "Not found within budget" is always reported separately from a certified
// non-existence; the latter is only claimed after an exhaustive search of a
// finite graph or from the rank-2 divergence certificate.

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "greenseq/intmat.hpp"
#include "greenseq/pattern.hpp"
#include "greenseq/seqcalc.hpp"

namespace greenseq {

enum class SearchMode { green_only, all_mutations };

std::string to_string(SearchMode m);
SearchMode search_mode_from_string(const std::string& s);

struct SearchBudget {
  std::size_t max_depth = 12;
  std::size_t max_nodes = 100000;
  SearchMode mode = SearchMode::all_mutations;

  friend bool operator==(const SearchBudget&, const SearchBudget&) = default;
};

struct SearchOptions {
  /// Skip mutating at j when the current matrix has a heavy witness for j.
  bool prune_heavy_target = false;
  /// Force the first mutation.
  std::optional<int> first_direction;
  /// Threads used to expand a BFS batch; results do not depend on it.
  unsigned workers = 1;
  /// Branches whose exchange matrix has an entry above this are dropped.
  Integer magnitude_bound = Integer(1) << 64;
};

enum class SearchStatus { found, none_within_budget, certified_none };

std::string to_string(SearchStatus s);

struct SearchResult {
  SearchStatus status = SearchStatus::none_within_budget;
  std::optional<MutationSequence> seq;
  std::size_t nodes = 0;
  std::size_t guard_hits = 0;
  std::string note;
};

/// Canonical form of (B, C, G) under simultaneous relabelling of the
/// cluster index: B -> P^T B P, C -> C P, G -> G P.
struct CanonicalSeedKey {
  std::string encoding;
  std::uint64_t digest = 0;

  friend bool operator==(const CanonicalSeedKey& a, const CanonicalSeedKey& b) { return a.encoding == b.encoding; }
};

/// Relabels the cluster index so that position a holds old index pi(a).
SeedPair relabel(const SeedPair& sp, const Permutation& pi);

/// The relabelling that sorts the columns of C lexicographically.  C-matrices
/// are unimodular, so their columns are distinct and the order is unique.
Permutation canonical_relabeling(const SeedPair& sp);
CanonicalSeedKey canonical_key(const SeedPair& sp);
std::string encode_seed(const Seed& s);
std::uint64_t fnv1a64(const std::string& bytes);

SearchResult find_mgs(const Matrix& b0, const SearchBudget& budget, const SearchOptions& options = {});
SearchResult find_reddening(const Matrix& b0, const SearchBudget& budget, const SearchOptions& options = {});

/// All maximal green sequences of length <= max_len, lexicographic.
std::vector<MutationSequence> enumerate_mgs(const Matrix& b0, std::size_t max_len, bool prune_heavy_target = false);

struct SequenceCatalog {
  std::vector<MutationSequence> reddening;
  std::vector<MutationSequence> greening;
};

/// Reddening and greening sequences among the reduced words (no direction
/// repeated twice in a row) of length 1..max_len, lexicographic.
SequenceCatalog enumerate_reddening_greening(const Matrix& b0, std::size_t max_len);

enum class EdgeColor { green, red };

struct StoreNode {
  std::size_t id = 0;
  std::size_t depth = 0;
  /// Directions from t0 that reach `seed` exactly.
  MutationSequence path;
  SeedPair seed;
  CanonicalSeedKey key;

  friend bool operator==(const StoreNode& a, const StoreNode& b) {
    return a.id == b.id && a.depth == b.depth && a.path == b.path && a.seed == b.seed && a.key == b.key;
  }
};

struct StoreEdge {
  std::size_t from = 0;
  /// Direction in the labelling of the source node's seed.
  int direction = 0;
  std::size_t to = 0;
  EdgeColor color = EdgeColor::green;

  friend bool operator==(const StoreEdge&, const StoreEdge&) = default;
};

class ExchangeGraphStore {
 public:
  ExchangeGraphStore() = default;
  ExchangeGraphStore(Matrix b0, SearchBudget budget);

  const Matrix& b0() const noexcept { return b0_; }
  const SearchBudget& budget() const noexcept { return budget_; }
  void set_budget(const SearchBudget& b) { budget_ = b; }
  const std::vector<StoreNode>& nodes() const noexcept { return nodes_; }
  const std::vector<StoreEdge>& edges() const noexcept { return edges_; }
  const std::deque<std::size_t>& frontier() const noexcept { return frontier_; }
  bool truncated() const noexcept { return truncated_; }
  std::size_t guard_hits() const noexcept { return guard_hits_; }

  std::optional<std::size_t> find(const CanonicalSeedKey& key) const;

  friend bool operator==(const ExchangeGraphStore& a, const ExchangeGraphStore& b);

 private:
  friend void expand_store(ExchangeGraphStore&, const SearchOptions&);
  friend ExchangeGraphStore parse_store(const std::string&);

  std::size_t add_node(StoreNode node);

  Matrix b0_;
  SearchBudget budget_;
  std::vector<StoreNode> nodes_;
  std::vector<StoreEdge> edges_;
  std::deque<std::size_t> frontier_;
  std::unordered_map<std::string, std::size_t> index_;
  bool truncated_ = false;
  std::size_t guard_hits_ = 0;
};

/// Breadth-first exploration with canonical deduplication.
ExchangeGraphStore build_exchange_graph(const Matrix& b0, const SearchBudget& budget,
                                        const SearchOptions& options = {});
/// Continues exploring from the store's frontier under its current budget.
void expand_store(ExchangeGraphStore& store, const SearchOptions& options = {});

struct StorePath {
  std::size_t target = 0;
  /// Directions from t0 in the labelling of the actual seeds along the walk.
  MutationSequence seq;
  /// Traversed edges that are red, i.e. opposite to the green orientation.
  std::size_t opposite_arrows = 0;
};

/// Path from t0 to `target` through stored edges with fewest opposite arrows;
/// nullopt if unreachable.  Throws std::out_of_range for an unknown id.
std::optional<StorePath> query_path(const ExchangeGraphStore& store, std::size_t target);
/// Path to some node whose C-matrix is -P with fewest opposite arrows.
std::optional<StorePath> query_reddening_path(const ExchangeGraphStore& store);

/// JSON-lines text: header, nodes, edges, frontier, trailing CRC-32 line.
std::string serialize_store(const ExchangeGraphStore& store);
/// Throws std::runtime_error on version mismatch, checksum failure or bad records.
ExchangeGraphStore parse_store(const std::string& text);
void save_store(const ExchangeGraphStore& store, const std::string& path);
ExchangeGraphStore load_store(const std::string& path);

enum class MutabilityStatus { verified_acyclic, verified_skew_symmetrizable, verified_to_depth, refuted };

std::string to_string(MutabilityStatus s);

struct MutabilityResult {
  MutabilityStatus status = MutabilityStatus::verified_to_depth;
  std::size_t depth = 0;
  std::size_t matrices_checked = 0;
  /// Path to the first matrix that is not sign-skew-symmetric.
  std::optional<MutationSequence> counterexample;
};

/// Acyclic and skew-symmetrizable inputs are accepted without search when
/// `use_shortcuts`; otherwise every matrix within `depth` mutations is checked.
MutabilityResult verify_total_mutability(const Matrix& b0, std::size_t depth, bool use_shortcuts = true);

struct Rank2Certificate {
  bool certified = false;
  /// Forced steps simulated, counting the first mutation.
  std::size_t steps = 0;
  /// Step at which beta * g >= 2 h first held.
  std::size_t witness_step = 0;
  /// Green c-vector available after each forced step.
  std::vector<Vector> green_vectors;
  /// Every green vector strictly dominates the previous one in the same column.
  bool monotone = false;
  std::string reason;
};

/// Green-only walks on a 2x2 matrix are forced: after the first step exactly
/// one column stays green.  With g the green vector, h the negated red one
/// and beta = [b_{k,o}]_+ for the green index k, beta g >= 2h is preserved by
/// every further step when |b_12 b_21| >= 4, so the walk never turns all red.
Rank2Certificate certify_rank2_green_divergence(const Matrix& b, int first_direction, std::size_t max_steps = 30);

}  // namespace greenseq
