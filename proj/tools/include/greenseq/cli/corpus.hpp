#pragma once

#include <random>
#include <vector>

#include "greenseq/intmat.hpp"
#include "greenseq/seqcalc.hpp"

namespace greenseq::cli {

using Rng = std::mt19937_64;

/// Uniform integer in [lo, hi], independent of the standard library's
/// distribution implementation so that seeded runs agree everywhere.
long long uniform(Rng& rng, long long lo, long long hi);

/// Acyclic sign-skew-symmetric matrix with entries in [-max_entry, max_entry].
/// Arrows follow a random total order; each pair is independently zero or a
/// pair of magnitudes.  Not necessarily skew-symmetrizable.
Matrix random_acyclic(Rng& rng, std::size_t n, long long max_entry);

/// Like random_acyclic, with at least one pair (i, j) where b_ji > 0 and
/// -b_ji b_ij >= 4.
Matrix random_acyclic_with_heavy_pair(Rng& rng, std::size_t n, long long max_entry);

/// Reduced random word (no immediate repetition) of the given length.
MutationSequence random_path(Rng& rng, std::size_t n, std::size_t length);

}  // namespace greenseq::cli
