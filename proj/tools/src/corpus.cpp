#include "greenseq/cli/corpus.hpp"

#include <numeric>
#include <stdexcept>

namespace greenseq::cli {

long long uniform(Rng& rng, long long lo, long long hi) {
  if (lo > hi) throw std::invalid_argument("uniform: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = span == 0 ? 0 : Rng::max() - Rng::max() % span;
  std::uint64_t x = rng();
  if (span != 0)
    while (x >= limit) x = rng();
  return lo + static_cast<long long>(span == 0 ? x : x % span);
}

Matrix random_acyclic(Rng& rng, std::size_t n, long long max_entry) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[static_cast<std::size_t>(uniform(rng, 0, static_cast<long long>(i - 1)))]);
  Matrix b(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t c = a + 1; c < n; ++c) {
      const long long out = uniform(rng, 0, max_entry);
      if (out == 0) continue;
      const long long in = uniform(rng, 1, max_entry);
      b.at(order[a], order[c]) = out;
      b.at(order[c], order[a]) = -in;
    }
  return b;
}

Matrix random_acyclic_with_heavy_pair(Rng& rng, std::size_t n, long long max_entry) {
  if (n < 2 || max_entry < 2) throw std::invalid_argument("a heavy pair needs n >= 2 and entries up to 2");
  for (;;) {
    Matrix b = random_acyclic(rng, n, max_entry);
    if (!heavy_pairs(b).empty()) return b;
  }
}

MutationSequence random_path(Rng& rng, std::size_t n, std::size_t length) {
  MutationSequence s;
  for (std::size_t i = 0; i < length; ++i) {
    int k = 0;
    do {
      k = static_cast<int>(uniform(rng, 1, static_cast<long long>(n)));
    } while (n > 1 && !s.empty() && s.dirs.back() == k);
    s.dirs.push_back(k);
  }
  return s;
}

}  // namespace greenseq::cli
