#include "greenseq/explorer.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <thread>

#include "greenseq/errors.hpp"

namespace greenseq {

std::string to_string(SearchMode m) { return m == SearchMode::green_only ? "green-only" : "all-mutations"; }

SearchMode search_mode_from_string(const std::string& s) {
  if (s == "green-only") return SearchMode::green_only;
  if (s == "all-mutations") return SearchMode::all_mutations;
  throw std::invalid_argument("unknown search mode \"" + s + "\"");
}

std::string to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::found:
      return "found";
    case SearchStatus::none_within_budget:
      return "none-within-budget";
    case SearchStatus::certified_none:
      return "certified-none";
  }
  return "none-within-budget";
}

std::string to_string(MutabilityStatus s) {
  switch (s) {
    case MutabilityStatus::verified_acyclic:
      return "verified (acyclic shortcut)";
    case MutabilityStatus::verified_skew_symmetrizable:
      return "verified (skew-symmetrizable shortcut)";
    case MutabilityStatus::verified_to_depth:
      return "verified-to-depth";
    case MutabilityStatus::refuted:
      return "refuted";
  }
  return "refuted";
}

// ---------------------------------------------------------------------------
// Canonical keys

namespace {

Matrix relabel_matrix_both(const Matrix& m, const Permutation& pi) {
  const std::size_t n = m.size();
  Matrix r(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      r.at(a, b) = m.at(static_cast<std::size_t>(pi.images()[a] - 1), static_cast<std::size_t>(pi.images()[b] - 1));
  return r;
}

Matrix relabel_columns(const Matrix& m, const Permutation& pi) {
  const std::size_t n = m.size();
  Matrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < n; ++a) r.at(i, a) = m.at(i, static_cast<std::size_t>(pi.images()[a] - 1));
  return r;
}

Seed relabel_seed(const Seed& s, const Permutation& pi) {
  return Seed{relabel_matrix_both(s.b, pi), relabel_columns(s.c, pi), relabel_columns(s.g, pi)};
}

void append_matrix(std::string& out, const Matrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) {
      out += m.at(i, j).str();
      out += ',';
    }
  out += ';';
}

}  // namespace

SeedPair relabel(const SeedPair& sp, const Permutation& pi) {
  SeedPair out{relabel_seed(sp.seed, pi), {}};
  if (!sp.dual.b.empty()) out.dual = relabel_seed(sp.dual, pi);
  return out;
}

Permutation canonical_relabeling(const SeedPair& sp) {
  const std::size_t n = sp.size();
  std::vector<Vector> cols;
  cols.reserve(n);
  for (std::size_t k = 0; k < n; ++k) cols.push_back(sp.seed.c.column(k));
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 1);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return cols[static_cast<std::size_t>(a - 1)] < cols[static_cast<std::size_t>(b - 1)]; });
  for (std::size_t a = 1; a < n; ++a)
    if (cols[static_cast<std::size_t>(order[a] - 1)] == cols[static_cast<std::size_t>(order[a - 1] - 1)])
      throw InvariantViolation("C-matrix has two equal columns: " + to_string(sp.seed.c));
  return Permutation(std::move(order));
}

std::string encode_seed(const Seed& s) {
  std::string out = std::to_string(s.b.size()) + '|';
  append_matrix(out, s.b);
  append_matrix(out, s.c);
  append_matrix(out, s.g);
  return out;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

CanonicalSeedKey canonical_key(const SeedPair& sp) {
  CanonicalSeedKey key;
  key.encoding = encode_seed(relabel_seed(sp.seed, canonical_relabeling(sp)));
  key.digest = fnv1a64(key.encoding);
  return key;
}

// ---------------------------------------------------------------------------
// Breadth-first searches

namespace {

template <class F>
void parallel_for(std::size_t count, unsigned workers, F&& f) {
  if (workers <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  const std::size_t w = std::min<std::size_t>(workers, count);
  std::vector<std::exception_ptr> errors(w);
  std::vector<std::thread> threads;
  threads.reserve(w);
  for (std::size_t t = 0; t < w; ++t) {
    threads.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < count; i += w) f(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : threads) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

bool all_red(const Matrix& c) {
  for (std::size_t k = 0; k < c.size(); ++k)
    if (vector_sign(c.column(k)) >= 0) return false;
  return true;
}

std::vector<int> allowed_directions(const Seed& s, bool green_only, bool prune, std::optional<int> forced) {
  std::vector<int> dirs;
  const int n = static_cast<int>(s.b.size());
  for (int k = 1; k <= n; ++k) {
    if (forced && k != *forced) continue;
    if (green_only && column_sign(s.c, k) < 0) continue;
    if (prune && heavy_target_witness(s.b, k)) continue;
    dirs.push_back(k);
  }
  return dirs;
}

struct SearchNode {
  Seed seed;
  MutationSequence path;
};

struct Child {
  int direction = 0;
  Seed seed;
  CanonicalSeedKey key;
};

SearchResult bfs_to_all_red(const Matrix& b0, const SearchBudget& budget, const SearchOptions& options,
                            bool green_only, const char* what) {
  const PatternContext ctx(b0);
  const std::size_t n = b0.size();
  SearchResult result;

  SeedPair root_pair = initial_seed(ctx);
  std::vector<SearchNode> level{{root_pair.seed, {}}};
  std::unordered_map<std::string, bool> seen;
  seen.emplace(canonical_key(root_pair).encoding, true);
  result.nodes = 1;
  bool truncated = false;

  for (std::size_t depth = 0; !level.empty(); ++depth) {
    if (depth >= budget.max_depth) {
      truncated = true;
      break;
    }
    std::vector<std::vector<Child>> expansions(level.size());
    parallel_for(level.size(), options.workers, [&](std::size_t i) {
      const Seed& s = level[i].seed;
      std::optional<int> forced;
      if (depth == 0) forced = options.first_direction;
      for (int k : allowed_directions(s, green_only, options.prune_heavy_target, forced)) {
        Seed child = mutate_single(b0, s, k, false);
        CanonicalSeedKey key = canonical_key(SeedPair{child, {}});
        expansions[i].push_back(Child{k, std::move(child), std::move(key)});
      }
    });
    std::vector<SearchNode> next;
    for (std::size_t i = 0; i < level.size(); ++i) {
      for (Child& ch : expansions[i]) {
        MutationSequence path = level[i].path;
        path.dirs.push_back(ch.direction);
        if (!is_sign_skew_symmetric(ch.seed.b))
          throw NotTotallyMutable("mutation along " + to_string(path) + " gives a matrix that is not sign-skew-symmetric",
                                  path.dirs);
        if (ch.seed.b.max_abs() > options.magnitude_bound) {
          ++result.guard_hits;
          continue;
        }
        if (all_red(ch.seed.c)) {
          result.status = SearchStatus::found;
          result.seq = std::move(path);
          result.note = std::string(what) + " of length " + std::to_string(result.seq->size());
          return result;
        }
        if (seen.count(ch.key.encoding)) continue;
        if (seen.size() >= budget.max_nodes) {
          truncated = true;
          continue;
        }
        seen.emplace(std::move(ch.key.encoding), true);
        ++result.nodes;
        next.push_back(SearchNode{std::move(ch.seed), std::move(path)});
      }
    }
    level = std::move(next);
  }

  if (!truncated && result.guard_hits == 0) {
    result.status = SearchStatus::certified_none;
    result.note = std::string("no ") + what + ": reachable graph exhausted after " + std::to_string(result.nodes) +
                  " nodes";
  } else {
    result.status = SearchStatus::none_within_budget;
    result.note = "budget exhausted";
    if (budget.max_depth < n) result.note += " (" + std::string(what) + " length ≥ n = " + std::to_string(n) + ")";
    if (result.guard_hits) result.note += "; magnitude guard dropped " + std::to_string(result.guard_hits) + " branches";
  }
  return result;
}

}  // namespace

SearchResult find_mgs(const Matrix& b0, const SearchBudget& budget, const SearchOptions& options) {
  if (b0.size() == 2 && options.first_direction) {
    const auto cert = certify_rank2_green_divergence(b0, *options.first_direction);
    if (cert.certified) {
      SearchResult r;
      r.status = SearchStatus::certified_none;
      r.nodes = cert.steps;
      r.note = "no MGS beginning with " + std::to_string(*options.first_direction) + ": " + cert.reason;
      return r;
    }
  }
  return bfs_to_all_red(b0, budget, options, true, "MGS");
}

SearchResult find_reddening(const Matrix& b0, const SearchBudget& budget, const SearchOptions& options) {
  return bfs_to_all_red(b0, budget, options, budget.mode == SearchMode::green_only, "reddening sequence");
}

// ---------------------------------------------------------------------------
// Depth-first enumeration (B and C only)

namespace {

void require_sign_skew_symmetric(const Matrix& b, const std::vector<int>& path) {
  if (!is_sign_skew_symmetric(b))
    throw NotTotallyMutable("mutation along " + to_string(MutationSequence(path)) +
                                " gives a matrix that is not sign-skew-symmetric",
                            path);
}

void dfs_mgs(const Matrix& b, const Matrix& c, std::vector<int>& path, std::size_t max_len, bool prune,
             std::vector<MutationSequence>& out) {
  require_sign_skew_symmetric(b, path);
  if (all_red(c)) {
    out.emplace_back(path);
    return;
  }
  if (path.size() >= max_len) return;
  const int n = static_cast<int>(b.size());
  for (int k = 1; k <= n; ++k) {
    if (column_sign(c, k) < 0) continue;
    if (prune && heavy_target_witness(b, k)) continue;
    path.push_back(k);
    dfs_mgs(mutate_matrix(b, k), mutate_c_matrix(b, c, k), path, max_len, prune, out);
    path.pop_back();
  }
}

void dfs_reduced(const Matrix& b, const Matrix& c, std::vector<int>& path, std::size_t max_len, SequenceCatalog& out) {
  require_sign_skew_symmetric(b, path);
  if (!path.empty()) {
    if (is_nonpositive_C(c)) out.reddening.emplace_back(path);
    else if (as_permutation_matrix(c)) out.greening.emplace_back(path);
  }
  if (path.size() >= max_len) return;
  const int n = static_cast<int>(b.size());
  for (int k = 1; k <= n; ++k) {
    if (!path.empty() && path.back() == k) continue;
    path.push_back(k);
    dfs_reduced(mutate_matrix(b, k), mutate_c_matrix(b, c, k), path, max_len, out);
    path.pop_back();
  }
}

}  // namespace

std::vector<MutationSequence> enumerate_mgs(const Matrix& b0, std::size_t max_len, bool prune_heavy_target) {
  if (!is_sign_skew_symmetric(b0)) throw std::invalid_argument("enumerate_mgs: matrix is not sign-skew-symmetric");
  std::vector<MutationSequence> out;
  std::vector<int> path;
  dfs_mgs(b0, Matrix::identity(b0.size()), path, max_len, prune_heavy_target, out);
  return out;
}

SequenceCatalog enumerate_reddening_greening(const Matrix& b0, std::size_t max_len) {
  if (!is_sign_skew_symmetric(b0)) throw std::invalid_argument("enumerate: matrix is not sign-skew-symmetric");
  SequenceCatalog out;
  std::vector<int> path;
  dfs_reduced(b0, Matrix::identity(b0.size()), path, max_len, out);
  return out;
}

// ---------------------------------------------------------------------------
// Exchange graph store

ExchangeGraphStore::ExchangeGraphStore(Matrix b0, SearchBudget budget) : b0_(std::move(b0)), budget_(budget) {}

std::optional<std::size_t> ExchangeGraphStore::find(const CanonicalSeedKey& key) const {
  auto it = index_.find(key.encoding);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t ExchangeGraphStore::add_node(StoreNode node) {
  node.id = nodes_.size();
  index_.emplace(node.key.encoding, node.id);
  nodes_.push_back(std::move(node));
  return nodes_.back().id;
}

bool operator==(const ExchangeGraphStore& a, const ExchangeGraphStore& b) {
  return a.b0_ == b.b0_ && a.budget_ == b.budget_ && a.nodes_ == b.nodes_ && a.edges_ == b.edges_ &&
         a.frontier_ == b.frontier_ && a.truncated_ == b.truncated_ && a.guard_hits_ == b.guard_hits_;
}

ExchangeGraphStore build_exchange_graph(const Matrix& b0, const SearchBudget& budget, const SearchOptions& options) {
  ExchangeGraphStore store(b0, budget);
  expand_store(store, options);
  return store;
}

void expand_store(ExchangeGraphStore& store, const SearchOptions& options) {
  const PatternContext ctx(store.b0_);
  if (store.nodes_.empty()) {
    StoreNode root;
    root.seed = initial_seed(ctx);
    root.key = canonical_key(root.seed);
    store.frontier_.push_back(store.add_node(std::move(root)));
  }
  const bool green_only = store.budget_.mode == SearchMode::green_only;
  store.truncated_ = false;

  struct Expansion {
    std::vector<Child> children;
    std::vector<SeedPair> pairs;
  };

  while (!store.frontier_.empty()) {
    // Batch: leading frontier nodes of one depth, below the depth limit.
    const std::size_t depth = store.nodes_[store.frontier_.front()].depth;
    if (depth >= store.budget_.max_depth) {
      store.truncated_ = true;
      return;
    }
    std::vector<std::size_t> batch;
    for (std::size_t id : store.frontier_) {
      if (store.nodes_[id].depth != depth) break;
      batch.push_back(id);
    }
    std::vector<Expansion> expansions(batch.size());
    parallel_for(batch.size(), options.workers, [&](std::size_t i) {
      const SeedPair& sp = store.nodes_[batch[i]].seed;
      for (int k : allowed_directions(sp.seed, green_only, options.prune_heavy_target, std::nullopt)) {
        SeedPair child;
        try {
          child = mutate_seed(ctx, sp, k);
        } catch (const NotTotallyMutable& e) {
          std::vector<int> prefix = store.nodes_[batch[i]].path.dirs;
          prefix.push_back(k);
          throw NotTotallyMutable(e.what(), std::move(prefix));
        }
        CanonicalSeedKey key = canonical_key(child);
        expansions[i].children.push_back(Child{k, {}, std::move(key)});
        expansions[i].pairs.push_back(std::move(child));
      }
    });

    for (std::size_t i = 0; i < batch.size(); ++i) {
      const std::size_t from = batch[i];
      Expansion& ex = expansions[i];
      // Commit a node's expansion only if all of its new children fit, so a
      // resumed run continues exactly where this one stopped.
      std::set<std::string> fresh;
      for (std::size_t c = 0; c < ex.children.size(); ++c) {
        if (ex.pairs[c].seed.b.max_abs() > options.magnitude_bound) continue;
        if (!store.index_.count(ex.children[c].key.encoding)) fresh.insert(ex.children[c].key.encoding);
      }
      if (store.nodes_.size() + fresh.size() > store.budget_.max_nodes) {
        store.truncated_ = true;
        return;
      }
      store.frontier_.pop_front();
      for (std::size_t c = 0; c < ex.children.size(); ++c) {
        const int k = ex.children[c].direction;
        if (ex.pairs[c].seed.b.max_abs() > options.magnitude_bound) {
          ++store.guard_hits_;
          continue;
        }
        const EdgeColor color =
            column_sign(store.nodes_[from].seed.seed.c, k) > 0 ? EdgeColor::green : EdgeColor::red;
        std::size_t to = 0;
        if (auto existing = store.find(ex.children[c].key)) {
          to = *existing;
        } else {
          StoreNode node;
          node.depth = store.nodes_[from].depth + 1;
          node.path = store.nodes_[from].path;
          node.path.dirs.push_back(k);
          node.seed = std::move(ex.pairs[c]);
          node.key = std::move(ex.children[c].key);
          to = store.add_node(std::move(node));
          store.frontier_.push_back(to);
        }
        store.edges_.push_back(StoreEdge{from, k, to, color});
      }
    }
  }
}

namespace {

// Direction in `actual` whose c-vector equals column `dir` of `rep`'s C.
int translate_direction(const SeedPair& actual, const SeedPair& rep, int dir) {
  const Vector target = rep.seed.c.column(static_cast<std::size_t>(dir - 1));
  for (std::size_t k = 0; k < actual.size(); ++k)
    if (actual.seed.c.column(k) == target) return static_cast<int>(k + 1);
  throw InvariantViolation("stored seed is not equivalent to the walked seed");
}

std::optional<StorePath> zero_one_bfs(const ExchangeGraphStore& store, const std::vector<bool>& is_target) {
  const std::size_t count = store.nodes().size();
  if (count == 0) return std::nullopt;
  std::vector<std::vector<std::size_t>> out_edges(count);
  for (std::size_t e = 0; e < store.edges().size(); ++e) out_edges[store.edges()[e].from].push_back(e);

  const std::size_t inf = static_cast<std::size_t>(-1);
  std::vector<std::size_t> dist(count, inf);
  std::vector<std::size_t> via(count, inf);
  std::deque<std::size_t> dq{0};
  dist[0] = 0;
  while (!dq.empty()) {
    const std::size_t u = dq.front();
    dq.pop_front();
    for (std::size_t e : out_edges[u]) {
      const StoreEdge& edge = store.edges()[e];
      const std::size_t w = edge.color == EdgeColor::red ? 1 : 0;
      if (dist[u] + w < dist[edge.to]) {
        dist[edge.to] = dist[u] + w;
        via[edge.to] = e;
        if (w == 0) dq.push_front(edge.to);
        else dq.push_back(edge.to);
      }
    }
  }
  std::size_t best = inf;
  for (std::size_t v = 0; v < count; ++v)
    if (is_target[v] && dist[v] != inf && (best == inf || dist[v] < dist[best])) best = v;
  if (best == inf) return std::nullopt;

  std::vector<std::size_t> chain;
  for (std::size_t v = best; v != 0; v = store.edges()[via[v]].from) chain.push_back(via[v]);
  std::reverse(chain.begin(), chain.end());

  const PatternContext ctx(store.b0());
  SeedPair cur = initial_seed(ctx);
  StorePath path;
  path.target = best;
  for (std::size_t e : chain) {
    const StoreEdge& edge = store.edges()[e];
    const int k = translate_direction(cur, store.nodes()[edge.from].seed, edge.direction);
    if (column_sign(cur.seed.c, k) < 0) ++path.opposite_arrows;
    path.seq.dirs.push_back(k);
    cur = mutate_seed(ctx, cur, k);
  }
  if (path.opposite_arrows != dist[best])
    throw InvariantViolation("red steps along a stored path differ from its opposite arrows");
  return path;
}

}  // namespace

std::optional<StorePath> query_path(const ExchangeGraphStore& store, std::size_t target) {
  std::vector<bool> is_target(store.nodes().size(), false);
  if (target >= is_target.size()) throw std::out_of_range("query_path: no node " + std::to_string(target));
  is_target[target] = true;
  return zero_one_bfs(store, is_target);
}

std::optional<StorePath> query_reddening_path(const ExchangeGraphStore& store) {
  std::vector<bool> is_target(store.nodes().size(), false);
  for (std::size_t v = 0; v < is_target.size(); ++v)
    is_target[v] = is_nonpositive_C(store.nodes()[v].seed.seed.c).has_value();
  return zero_one_bfs(store, is_target);
}

// ---------------------------------------------------------------------------
// Total mutability

MutabilityResult verify_total_mutability(const Matrix& b0, std::size_t depth, bool use_shortcuts) {
  if (!is_sign_skew_symmetric(b0)) {
    return MutabilityResult{MutabilityStatus::refuted, 0, 1, MutationSequence{}};
  }
  MutabilityResult result;
  result.depth = depth;
  if (use_shortcuts) {
    if (is_acyclic(b0)) {
      result.status = MutabilityStatus::verified_acyclic;
      return result;
    }
    if (skew_symmetrizer(b0)) {
      result.status = MutabilityStatus::verified_skew_symmetrizable;
      return result;
    }
  }
  struct Item {
    Matrix b;
    MutationSequence path;
  };
  std::set<std::string> seen;
  auto key = [](const Matrix& m) { return to_string(m); };
  std::vector<Item> level{{b0, {}}};
  seen.insert(key(b0));
  result.matrices_checked = 1;
  for (std::size_t d = 0; d < depth && !level.empty(); ++d) {
    std::vector<Item> next;
    for (const Item& it : level) {
      for (int k = 1; k <= static_cast<int>(b0.size()); ++k) {
        if (!it.path.empty() && it.path.dirs.back() == k) continue;
        Matrix m = mutate_matrix(it.b, k);
        MutationSequence p = it.path;
        p.dirs.push_back(k);
        ++result.matrices_checked;
        if (!is_sign_skew_symmetric(m)) {
          result.status = MutabilityStatus::refuted;
          result.counterexample = std::move(p);
          return result;
        }
        if (seen.insert(key(m)).second) next.push_back(Item{std::move(m), std::move(p)});
      }
    }
    level = std::move(next);
  }
  result.status = MutabilityStatus::verified_to_depth;
  return result;
}

// ---------------------------------------------------------------------------
// Rank-2 certificate

Rank2Certificate certify_rank2_green_divergence(const Matrix& b, int first_direction, std::size_t max_steps) {
  Rank2Certificate cert;
  if (b.size() != 2 || !is_sign_skew_symmetric(b)) {
    cert.reason = "not a 2x2 sign-skew-symmetric matrix";
    return cert;
  }
  if (first_direction != 1 && first_direction != 2) throw std::out_of_range("first direction must be 1 or 2");
  const Integer weight = -b.at(0, 1) * b.at(1, 0);
  if (weight < 4) {
    cert.reason = "|b12 b21| = " + weight.str() + " < 4";
    return cert;
  }

  Matrix cur_b = b;
  Matrix cur_c = Matrix::identity(2);
  int k = first_direction;
  std::vector<std::optional<Vector>> last_in_column(2);
  cert.monotone = true;
  std::size_t extra_after_witness = 0;
  for (std::size_t s = 1; s <= max_steps; ++s) {
    if (column_sign(cur_c, k) < 0) {
      cert.reason = "step " + std::to_string(s) + " is not green";
      return cert;
    }
    const Matrix next_c = mutate_c_matrix(cur_b, cur_c, k);
    cur_b = mutate_matrix(cur_b, k);
    cur_c = next_c;
    cert.steps = s;

    int green = 0;
    int green_index = 0;
    for (int j = 1; j <= 2; ++j)
      if (column_sign(cur_c, j) > 0) {
        ++green;
        green_index = j;
      }
    if (green == 0) {
      cert.reason = "all columns red after " + std::to_string(s) + " steps: the walk is a maximal green sequence";
      return cert;
    }
    if (green == 2) {
      cert.reason = "step " + std::to_string(s) + " leaves two green columns; the walk is not forced";
      return cert;
    }
    const std::size_t gi = static_cast<std::size_t>(green_index - 1);
    const std::size_t oi = 1 - gi;
    const Vector g = cur_c.column(gi);
    const Vector h{-cur_c.at(0, oi), -cur_c.at(1, oi)};
    cert.green_vectors.push_back(g);

    if (auto& prev = last_in_column[gi]) {
      const bool dominates = g[0] >= (*prev)[0] && g[1] >= (*prev)[1] && g[0] + g[1] > (*prev)[0] + (*prev)[1];
      if (!dominates) cert.monotone = false;
    }
    last_in_column[gi] = g;

    const Integer beta = cur_b.at(gi, oi) > 0 ? cur_b.at(gi, oi) : Integer(0);
    const bool invariant = beta > 0 && beta * g[0] >= 2 * h[0] && beta * g[1] >= 2 * h[1];
    if (cert.witness_step == 0 && invariant) cert.witness_step = s;
    if (cert.witness_step != 0 && ++extra_after_witness > 4) break;
    k = green_index;
  }
  if (cert.witness_step == 0) {
    cert.reason = "no invariant witness within " + std::to_string(max_steps) + " steps";
    return cert;
  }
  if (!cert.monotone) {
    cert.reason = "c-vectors did not grow monotonically";
    return cert;
  }
  cert.certified = true;
  cert.reason = "forced green walk diverges (beta g >= 2h at step " + std::to_string(cert.witness_step) +
                ", |b12 b21| = " + weight.str() + " >= 4)";
  return cert;
}

}  // namespace greenseq
