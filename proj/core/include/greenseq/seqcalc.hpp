#pragma once

// Sequence-level calculus: traces, reddening/greening classification,
// conjugation and rotation, conjugation difference, restriction to principal
// submatrices and the target-before-source verifiers.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "greenseq/intmat.hpp"
#include "greenseq/pattern.hpp"

namespace greenseq {

/// Mutation directions, 1-based.  May be empty, may repeat.
struct MutationSequence {
  std::vector<int> dirs;

  MutationSequence() = default;
  MutationSequence(std::initializer_list<int> d) : dirs(d) {}
  explicit MutationSequence(std::vector<int> d) : dirs(std::move(d)) {}

  std::size_t size() const noexcept { return dirs.size(); }
  bool empty() const noexcept { return dirs.empty(); }
  int operator[](std::size_t i) const { return dirs[i]; }
  MutationSequence reversed() const;
  /// Throws std::out_of_range if some direction is outside [1,n].
  void validate(std::size_t n) const;

  friend bool operator==(const MutationSequence&, const MutationSequence&) = default;
  friend auto operator<=>(const MutationSequence& a, const MutationSequence& b) { return a.dirs <=> b.dirs; }
};

std::string to_string(const MutationSequence& s);
/// Parses "3,2,1" (whitespace tolerated, empty string = empty sequence).
MutationSequence parse_sequence(const std::string& text);

struct SequenceTrace {
  MutationSequence seq;
  /// seeds[0] is the starting seed, seeds[k] the seed after k mutations.
  std::vector<SeedPair> seeds;
  /// cvecs[k] is column seq[k] of seeds[k].C.
  std::vector<Vector> cvecs;
  /// Steps k whose c-vector is negative.
  std::vector<std::size_t> red_positions;

  const SeedPair& final_seed() const { return seeds.back(); }
};

/// Runs `seq` from the initial seed of the pattern.  Throws NotTotallyMutable
/// (with the failing prefix) if a non sign-skew-symmetric matrix appears.
SequenceTrace run_sequence(const PatternContext& ctx, const MutationSequence& seq);
/// Same, starting from an arbitrary seed of the pattern.
SequenceTrace run_sequence_from(const PatternContext& ctx, const SeedPair& start, const MutationSequence& seq);

/// Seed reached by `seq` without recording the trace; `red_steps` (optional)
/// receives the number of red mutations taken.
SeedPair walk(const PatternContext& ctx, const SeedPair& start, const MutationSequence& seq,
              std::size_t* red_steps = nullptr);

enum class SequenceKind { reddening, greening, neither };

std::string to_string(SequenceKind k);

struct SequenceVerdict {
  SequenceKind kind = SequenceKind::neither;
  /// Number of red mutations along the sequence.
  std::size_t red_count = 0;
  /// sigma with final C = -P_sigma (reddening) or +P_sigma (greening).
  std::optional<Permutation> perm;

  bool is_maximal_green() const noexcept { return kind == SequenceKind::reddening && red_count == 0; }
  friend bool operator==(const SequenceVerdict&, const SequenceVerdict&) = default;
};

SequenceVerdict classify(const SequenceTrace& trace);
SequenceVerdict classify(const PatternContext& ctx, const MutationSequence& seq);
SequenceVerdict classify(const Matrix& b0, const MutationSequence& seq);

struct Diagnostics {
  std::vector<std::string> problems;
  bool ok() const noexcept { return problems.empty(); }
};

/// Counting identities of reddening and greening traces: every index occurs
/// and m >= n; #(c = e_j) = #(c = -e_j) + 1 for reddening, equal counts for
/// greening; e_j exactly once for maximal green sequences.
Diagnostics check_reddening_wellformed(const SequenceVerdict& verdict, const SequenceTrace& trace);

/// Along the trace, seeds[k] and seeds[k+1] lie in different j-hemispheres
/// iff cvecs[k] = +-e_j, leaving H_j^+ exactly when cvecs[k] = e_j.
Diagnostics check_hemisphere_crossings(const SequenceTrace& trace);

/// A transformed sequence and the verdict it is predicted to have on `target`.
struct TransformPrediction {
  MutationSequence seq;
  Matrix target;
  SequenceKind kind = SequenceKind::neither;
  std::size_t red_count = 0;
  Permutation perm;
};

/// (j, i_1..i_m, sigma^{-1}(j)) of an r-reddening (r-greening) sequence,
/// predicted (r+1)-reddening ((r+1)-greening) on mu_j(B0) with the same sigma.
/// Throws DomainError if `seq` is neither.
TransformPrediction conjugate(const Matrix& b0, const MutationSequence& seq, int j);

/// (i_2..i_m, sigma^{-1}(i_1)), predicted to keep kind, r and sigma on
/// mu_{i_1}(B0).  Accepts reddening and greening sequences, m >= 1.
TransformPrediction rotate(const Matrix& b0, const MutationSequence& seq);

struct ConjugationDifference {
  long long phi = 0;
  /// Red mutations walking from t back to t0.
  std::size_t red_from_t = 0;
  /// Red mutations walking the sigma^{-1}-relabelled path from t^- back to t0^-.
  std::size_t red_from_t_minus = 0;
  /// sigma with C at t0^- equal to -P_sigma.
  Permutation sigma;
};

/// phi of the vertex reached from t0 by `path`, using each supplied
/// reddening sequence of B0 to fix t0^-.  With several sequences, all phi
/// must agree (InvariantViolation otherwise); the first witness is returned.
ConjugationDifference conjugation_difference(const PatternContext& ctx, const MutationSequence& path,
                                             std::span<const MutationSequence> reddening_seqs);

/// Smallest k with cvecs[k..m-1] all green (m if the last step is red).
std::size_t green_tail(const SequenceTrace& trace);

/// e_j as a vector of length n (1-based j).
Vector unit_vector(std::size_t n, int j);

struct Restriction {
  Submatrix sub;
  /// Directions in the local 1-based indexing of sub.matrix.
  MutationSequence induced;
};

/// Keeps the c-vectors supported in V, projects them and replays them on
/// B0^V by mutating the unique current column equal to each projection.
/// Throws InvariantViolation if a projection matches no column or several.
Restriction restrict_to_submatrix(const Matrix& b0, const MutationSequence& seq, const std::vector<int>& v);

/// Pairs (i, j) with b_ji > 0 and -b_ji b_ij >= 4.
std::vector<std::pair<int, int>> heavy_pairs(const Matrix& b);

/// Some i with b_ji > 0 and -b_ij b_ji >= 4, if any.
std::optional<int> heavy_target_witness(const Matrix& b, int j);

struct TargetBeforeSourceReport {
  struct Pair {
    int i = 0;
    int j = 0;
    /// First (1-based) positions of i and j in the sequence; 0 if absent.
    std::size_t q = 0;
    std::size_t p = 0;
    bool ok = false;
  };
  std::vector<Pair> pairs;
  bool ok() const;
};

/// For an acyclic B0 and a maximal green sequence: the first i precedes the
/// first j for every heavy pair.  Throws std::invalid_argument if B0 is
/// cyclic and DomainError if `mgs` is not maximal green.
TargetBeforeSourceReport verify_target_before_source(const Matrix& b0, const MutationSequence& mgs);

struct CVectorOrderReport {
  struct Pair {
    int i = 0;
    int j = 0;
    /// Step indices of e_i and e_j inside the green tail, if present.
    std::optional<std::size_t> pos_i;
    std::optional<std::size_t> pos_j;
    bool vacuous = true;
    bool ok = true;
  };
  std::size_t tail_start = 0;
  std::vector<Pair> pairs;
  bool ok() const;
};

/// In the green tail of a reddening sequence, e_i precedes e_j for every
/// heavy pair where both occur.  Throws DomainError if not reddening.
CVectorOrderReport verify_tbs_cvectors(const Matrix& b0, const MutationSequence& seq);

struct HeavyTargetReport {
  struct Step {
    std::size_t step = 0;  // 0-based position in the sequence
    int direction = 0;
    std::optional<int> witness;
  };
  std::vector<Step> steps;
  bool ok() const;
};

/// At every step the mutated index j has no heavy witness i in the current B.
HeavyTargetReport verify_no_heavy_target_mutation(const Matrix& b0, const MutationSequence& seq);

}  // namespace greenseq
