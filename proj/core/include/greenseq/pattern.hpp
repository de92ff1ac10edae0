#pragma once

// Seeds (B, C, G) of a matrix pattern and of its dual pattern, mutated in
// lockstep.  The dual pattern has initial matrix -B0^T and supplies the
// G-matrix used by the second duality and the hemisphere test.

#include <optional>
#include <string>

#include "greenseq/intmat.hpp"

namespace greenseq {

struct Seed {
  Matrix b;
  Matrix c;
  Matrix g;

  friend bool operator==(const Seed&, const Seed&) = default;
};

/// A seed together with the dual-pattern seed at the same tree vertex.
struct SeedPair {
  Seed seed;
  Seed dual;

  std::size_t size() const noexcept { return seed.b.size(); }
  friend bool operator==(const SeedPair&, const SeedPair&) = default;
};

enum class InvariantChecks { off, on };

#ifdef NDEBUG
inline constexpr InvariantChecks kDefaultChecks = InvariantChecks::off;
#else
inline constexpr InvariantChecks kDefaultChecks = InvariantChecks::on;
#endif

/// Initial data shared by every seed of one pattern.
class PatternContext {
 public:
  /// Throws std::invalid_argument unless `b0` is sign-skew-symmetric.
  explicit PatternContext(Matrix b0, InvariantChecks checks = kDefaultChecks);

  const Matrix& b0() const noexcept { return b0_; }
  const Matrix& dual_b0() const noexcept { return dual_b0_; }
  std::size_t size() const noexcept { return b0_.size(); }
  bool checks() const noexcept { return checks_ == InvariantChecks::on; }
  PatternContext with_checks(InvariantChecks c) const { return PatternContext(b0_, c); }

 private:
  Matrix b0_;
  Matrix dual_b0_;
  InvariantChecks checks_;
};

/// (B0, I, I) paired with (-B0^T, I, I).
SeedPair initial_seed(const PatternContext& ctx);

/// Mutation of a single seed of the pattern with initial matrix `b0`.
/// C is updated entrywise; with `cross_check` the matrix form
/// C (J_k + [eps_k(C) B]_+^{k.}) is computed too and must agree.
/// Throws InvariantViolation if column k of C is zero or incoherent.
Seed mutate_single(const Matrix& b0, const Seed& s, int k, bool cross_check);

/// C-matrix mutation alone (entrywise rule), for searches that need neither
/// G nor the dual pattern.
Matrix mutate_c_matrix(const Matrix& b, const Matrix& c, int k);

/// Mutates the seed and its dual at direction k (1-based).  With checks on,
/// every seed invariant is verified afterwards.
SeedPair mutate_seed(const PatternContext& ctx, const SeedPair& sp, int k);

/// Sign of column k of C (1-based).  Throws InvariantViolation if zero or incoherent.
int column_sign(const Matrix& c, int k);
/// Sign of row k of G (1-based).  Throws InvariantViolation if zero or incoherent.
int row_sign(const Matrix& g, int k);

/// G_t B_t == B0 C_t.
bool check_first_duality(const SeedPair& sp, const Matrix& b0);
/// dual.G^T C == I.
bool check_second_duality(const SeedPair& sp);

/// Verifies sign-coherence, both dualities, dual column/row sign agreement,
/// the +-e_j correspondence between C and the dual C, dual.B == -B^T, and
/// det C = det G = +-1.  Returns a description of the first failure.
std::optional<std::string> find_invariant_violation(const PatternContext& ctx, const SeedPair& sp);

/// C-matrix of the same vertex with respect to the initial vertex mu_j(t0):
/// (J_j + [-eps_j(G) B0]_+^{j.}) C.  The sign is read from the primary G and
/// must equal the sign of row j of the dual G.
Matrix rebase_c_matrix(const PatternContext& ctx, const SeedPair& sp, int j);

/// sigma with M = P_sigma, if M is a permutation matrix.
std::optional<Permutation> as_permutation_matrix(const Matrix& m);

/// If C is entrywise nonpositive, the sigma with C = -P_sigma.  A
/// nonpositive C that is not a negated permutation matrix throws
/// InvariantViolation.
std::optional<Permutation> is_nonpositive_C(const Matrix& c);

enum class Hemisphere { plus, minus };

/// H_j^+ iff row j of the dual G is nonnegative.
Hemisphere hemisphere(const SeedPair& sp, int j);

}  // namespace greenseq
