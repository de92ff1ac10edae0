#include "greenseq/seqcalc.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "greenseq/errors.hpp"

namespace greenseq {

MutationSequence MutationSequence::reversed() const {
  return MutationSequence(std::vector<int>(dirs.rbegin(), dirs.rend()));
}

void MutationSequence::validate(std::size_t n) const {
  for (int d : dirs)
    if (d < 1 || static_cast<std::size_t>(d) > n)
      throw std::out_of_range("direction " + std::to_string(d) + " outside [1," + std::to_string(n) + "]");
}

std::string to_string(const MutationSequence& s) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  os << ')';
  return os.str();
}

MutationSequence parse_sequence(const std::string& text) {
  MutationSequence out;
  std::string token;
  auto flush = [&] {
    std::size_t b = token.find_first_not_of(" \t");
    if (b == std::string::npos) {
      if (!out.dirs.empty() || !token.empty()) throw std::invalid_argument("empty entry in sequence '" + text + "'");
      token.clear();
      return;
    }
    std::size_t e = token.find_last_not_of(" \t");
    const std::string t = token.substr(b, e - b + 1);
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(t, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad direction '" + t + "' in sequence '" + text + "'");
    }
    if (used != t.size()) throw std::invalid_argument("bad direction '" + t + "' in sequence '" + text + "'");
    out.dirs.push_back(v);
    token.clear();
  };
  if (text.find_first_not_of(" \t") == std::string::npos) return out;
  for (char ch : text) {
    if (ch == ',') {
      if (token.find_first_not_of(" \t") == std::string::npos)
        throw std::invalid_argument("empty entry in sequence '" + text + "'");
      flush();
    } else {
      token.push_back(ch);
    }
  }
  if (token.find_first_not_of(" \t") == std::string::npos)
    throw std::invalid_argument("empty entry in sequence '" + text + "'");
  flush();
  return out;
}

namespace {

SeedPair step(const PatternContext& ctx, const SeedPair& sp, const MutationSequence& seq, std::size_t s) {
  try {
    return mutate_seed(ctx, sp, seq[s]);
  } catch (const NotTotallyMutable& e) {
    std::vector<int> prefix(seq.dirs.begin(), seq.dirs.begin() + static_cast<std::ptrdiff_t>(s + 1));
    throw NotTotallyMutable(std::string(e.what()) + " after prefix " + to_string(MutationSequence(prefix)), prefix);
  }
}

}  // namespace

SequenceTrace run_sequence_from(const PatternContext& ctx, const SeedPair& start, const MutationSequence& seq) {
  seq.validate(ctx.size());
  SequenceTrace trace;
  trace.seq = seq;
  trace.seeds.reserve(seq.size() + 1);
  trace.seeds.push_back(start);
  for (std::size_t s = 0; s < seq.size(); ++s) {
    const SeedPair& cur = trace.seeds.back();
    Vector c = cur.seed.c.column(static_cast<std::size_t>(seq[s] - 1));
    if (column_sign(cur.seed.c, seq[s]) < 0) trace.red_positions.push_back(s);
    trace.cvecs.push_back(std::move(c));
    trace.seeds.push_back(step(ctx, cur, seq, s));
  }
  return trace;
}

SequenceTrace run_sequence(const PatternContext& ctx, const MutationSequence& seq) {
  return run_sequence_from(ctx, initial_seed(ctx), seq);
}

SeedPair walk(const PatternContext& ctx, const SeedPair& start, const MutationSequence& seq, std::size_t* red_steps) {
  seq.validate(ctx.size());
  SeedPair cur = start;
  std::size_t reds = 0;
  for (std::size_t s = 0; s < seq.size(); ++s) {
    if (column_sign(cur.seed.c, seq[s]) < 0) ++reds;
    cur = step(ctx, cur, seq, s);
  }
  if (red_steps) *red_steps = reds;
  return cur;
}

std::string to_string(SequenceKind k) {
  switch (k) {
    case SequenceKind::reddening:
      return "reddening";
    case SequenceKind::greening:
      return "greening";
    case SequenceKind::neither:
      return "neither";
  }
  return "neither";
}

SequenceVerdict classify(const SequenceTrace& trace) {
  const SeedPair& last = trace.final_seed();
  SequenceVerdict v;
  v.red_count = trace.red_positions.size();
  if (auto sigma = is_nonpositive_C(last.seed.c)) {
    // A reddening endpoint has C = G = dual G = dual C = -P.
    const Matrix minus_p = -perm_matrix(*sigma);
    if (last.seed.g != minus_p || last.dual.g != minus_p || last.dual.c != minus_p)
      throw InvariantViolation("reddening endpoint with C = -P but G, dual G or dual C differ from -P");
    v.kind = SequenceKind::reddening;
    v.perm = std::move(sigma);
  } else if (auto sigma_plus = as_permutation_matrix(last.seed.c)) {
    v.kind = SequenceKind::greening;
    v.perm = std::move(sigma_plus);
  }
  return v;
}

SequenceVerdict classify(const PatternContext& ctx, const MutationSequence& seq) {
  return classify(run_sequence(ctx, seq));
}

SequenceVerdict classify(const Matrix& b0, const MutationSequence& seq) {
  return classify(PatternContext(b0), seq);
}

Vector unit_vector(std::size_t n, int j) {
  Vector e(n);
  e.at(static_cast<std::size_t>(j - 1)) = 1;
  return e;
}

namespace {

// counts[j-1] = {#(c = e_j), #(c = -e_j)}
std::vector<std::pair<std::size_t, std::size_t>> unit_counts(const SequenceTrace& trace, std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> counts(n);
  for (const Vector& c : trace.cvecs) {
    std::size_t nonzero = 0;
    std::size_t at = 0;
    for (std::size_t i = 0; i < c.size(); ++i)
      if (!c[i].is_zero()) {
        ++nonzero;
        at = i;
      }
    if (nonzero != 1) continue;
    if (c[at] == 1) ++counts[at].first;
    else if (c[at] == -1) ++counts[at].second;
  }
  return counts;
}

}  // namespace

Diagnostics check_reddening_wellformed(const SequenceVerdict& verdict, const SequenceTrace& trace) {
  Diagnostics d;
  const std::size_t n = trace.seeds.front().size();
  const auto counts = unit_counts(trace, n);
  if (verdict.kind == SequenceKind::reddening) {
    std::vector<bool> seen(n, false);
    for (int x : trace.seq.dirs) seen[static_cast<std::size_t>(x - 1)] = true;
    for (std::size_t j = 0; j < n; ++j)
      if (!seen[j]) d.problems.push_back("index " + std::to_string(j + 1) + " never mutated");
    if (trace.seq.size() < n)
      d.problems.push_back("length " + std::to_string(trace.seq.size()) + " < n = " + std::to_string(n));
    for (std::size_t j = 0; j < n; ++j) {
      const auto [pos, neg] = counts[j];
      if (pos != neg + 1)
        d.problems.push_back("e_" + std::to_string(j + 1) + " occurs " + std::to_string(pos) + " times, -e_" +
                             std::to_string(j + 1) + " occurs " + std::to_string(neg) + " times");
      if (verdict.is_maximal_green() && pos != 1)
        d.problems.push_back("maximal green sequence uses e_" + std::to_string(j + 1) + " " + std::to_string(pos) +
                             " times");
    }
  } else if (verdict.kind == SequenceKind::greening) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto [pos, neg] = counts[j];
      if (pos != neg)
        d.problems.push_back("greening: e_" + std::to_string(j + 1) + " occurs " + std::to_string(pos) +
                             " times, -e_" + std::to_string(j + 1) + " occurs " + std::to_string(neg) + " times");
    }
  }
  return d;
}

Diagnostics check_hemisphere_crossings(const SequenceTrace& trace) {
  Diagnostics d;
  const std::size_t n = trace.seeds.front().size();
  for (std::size_t k = 0; k < trace.cvecs.size(); ++k) {
    for (int j = 1; j <= static_cast<int>(n); ++j) {
      const Hemisphere before = hemisphere(trace.seeds[k], j);
      const Hemisphere after = hemisphere(trace.seeds[k + 1], j);
      const Vector e = unit_vector(n, j);
      Vector minus_e = e;
      minus_e[static_cast<std::size_t>(j - 1)] = -1;
      const Vector& c = trace.cvecs[k];
      bool expect_cross = c == e || c == minus_e;
      if ((before != after) != expect_cross) {
        d.problems.push_back("step " + std::to_string(k) + ": hemisphere " + std::to_string(j) +
                             (expect_cross ? " not crossed" : " crossed") + " with c-vector " + to_string(c));
      } else if (expect_cross && (c == e) != (before == Hemisphere::plus)) {
        d.problems.push_back("step " + std::to_string(k) + ": hemisphere " + std::to_string(j) +
                             " crossed in the wrong direction");
      }
    }
  }
  return d;
}

TransformPrediction conjugate(const Matrix& b0, const MutationSequence& seq, int j) {
  const auto verdict = classify(b0, seq);
  if (verdict.kind == SequenceKind::neither)
    throw DomainError("conjugate: " + to_string(seq) + " is neither a reddening nor a greening sequence");
  if (j < 1 || static_cast<std::size_t>(j) > b0.size())
    throw std::out_of_range("conjugate: direction " + std::to_string(j) + " out of range");
  const Permutation& sigma = *verdict.perm;
  TransformPrediction out;
  out.seq.dirs.reserve(seq.size() + 2);
  out.seq.dirs.push_back(j);
  out.seq.dirs.insert(out.seq.dirs.end(), seq.dirs.begin(), seq.dirs.end());
  out.seq.dirs.push_back(sigma.inverse()(j));
  out.target = mutate_matrix(b0, j);
  out.kind = verdict.kind;
  out.red_count = verdict.red_count + 1;
  out.perm = sigma;
  return out;
}

TransformPrediction rotate(const Matrix& b0, const MutationSequence& seq) {
  if (seq.empty()) throw DomainError("rotate: empty sequence");
  const auto verdict = classify(b0, seq);
  if (verdict.kind == SequenceKind::neither)
    throw DomainError("rotate: " + to_string(seq) + " is neither a reddening nor a greening sequence");
  const Permutation& sigma = *verdict.perm;
  TransformPrediction out;
  out.seq.dirs.assign(seq.dirs.begin() + 1, seq.dirs.end());
  out.seq.dirs.push_back(sigma.inverse()(seq[0]));
  out.target = mutate_matrix(b0, seq[0]);
  out.kind = verdict.kind;
  out.red_count = verdict.red_count;
  out.perm = sigma;
  return out;
}

ConjugationDifference conjugation_difference(const PatternContext& ctx, const MutationSequence& path,
                                             std::span<const MutationSequence> reddening_seqs) {
  if (reddening_seqs.empty()) throw DomainError("conjugation_difference: no reddening sequence of B0 supplied");
  path.validate(ctx.size());
  const SeedPair start = initial_seed(ctx);

  // t is reached from t0 by `path`; walking back from t to t0 follows the reversal.
  const SeedPair at_t = walk(ctx, start, path);
  std::size_t red_from_t = 0;
  walk(ctx, at_t, path.reversed(), &red_from_t);

  std::optional<ConjugationDifference> first;
  for (const MutationSequence& red : reddening_seqs) {
    const SequenceTrace trace = run_sequence_from(ctx, start, red);
    const SequenceVerdict verdict = classify(trace);
    if (verdict.kind != SequenceKind::reddening)
      throw DomainError("conjugation_difference: " + to_string(red) + " is not a reddening sequence of B0");
    const Permutation sigma = *verdict.perm;
    const Permutation inv = sigma.inverse();
    MutationSequence shadow;
    for (int d : path.dirs) shadow.dirs.push_back(inv(d));
    const SeedPair t_minus = walk(ctx, trace.final_seed(), shadow);
    std::size_t red_from_t_minus = 0;
    walk(ctx, t_minus, shadow.reversed(), &red_from_t_minus);

    ConjugationDifference cd;
    cd.red_from_t = red_from_t;
    cd.red_from_t_minus = red_from_t_minus;
    cd.phi = static_cast<long long>(red_from_t) - static_cast<long long>(red_from_t_minus);
    cd.sigma = sigma;
    if (!first) {
      first = cd;
    } else if (first->phi != cd.phi) {
      throw InvariantViolation("conjugation difference depends on the reddening sequence: " +
                               std::to_string(first->phi) + " vs " + std::to_string(cd.phi) + " for " +
                               to_string(red));
    }
  }
  return *first;
}

std::size_t green_tail(const SequenceTrace& trace) {
  std::size_t k = trace.cvecs.size();
  while (k > 0 && vector_sign(trace.cvecs[k - 1]) > 0) --k;
  return k;
}

Restriction restrict_to_submatrix(const Matrix& b0, const MutationSequence& seq, const std::vector<int>& v) {
  const PatternContext ctx(b0);
  const SequenceTrace trace = run_sequence(ctx, seq);
  Restriction out{submatrix(b0, v), {}};
  const auto& idx = out.sub.indices;
  const PatternContext sub_ctx(out.sub.matrix, ctx.checks() ? InvariantChecks::on : InvariantChecks::off);
  SeedPair cur = initial_seed(sub_ctx);
  const std::size_t m = idx.size();

  for (std::size_t s = 0; s < trace.cvecs.size(); ++s) {
    const Vector& c = trace.cvecs[s];
    bool supported = true;
    for (std::size_t i = 0; i < c.size() && supported; ++i)
      if (!c[i].is_zero() && out.sub.local_index(static_cast<int>(i + 1)) == 0) supported = false;
    if (!supported) continue;
    Vector projected(m);
    for (std::size_t a = 0; a < m; ++a) projected[a] = c[static_cast<std::size_t>(idx[a] - 1)];
    int match = 0;
    for (std::size_t k = 0; k < m; ++k) {
      if (cur.seed.c.column(k) != projected) continue;
      if (match != 0)
        throw InvariantViolation("restriction: projected c-vector " + to_string(projected) +
                                 " matches several columns at step " + std::to_string(s));
      match = static_cast<int>(k + 1);
    }
    if (match == 0)
      throw InvariantViolation("restriction: projected c-vector " + to_string(projected) + " of step " +
                               std::to_string(s) + " matches no column of " + to_string(cur.seed.c));
    out.induced.dirs.push_back(match);
    cur = mutate_seed(sub_ctx, cur, match);
  }
  return out;
}

std::vector<std::pair<int, int>> heavy_pairs(const Matrix& b) {
  std::vector<std::pair<int, int>> out;
  const std::size_t n = b.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (b.at(j, i) > 0 && -b.at(j, i) * b.at(i, j) >= 4)
        out.emplace_back(static_cast<int>(i + 1), static_cast<int>(j + 1));
  return out;
}

std::optional<int> heavy_target_witness(const Matrix& b, int j) {
  const std::size_t jj = static_cast<std::size_t>(j - 1);
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b.at(jj, i) > 0 && -b.at(i, jj) * b.at(jj, i) >= 4) return static_cast<int>(i + 1);
  return std::nullopt;
}

bool TargetBeforeSourceReport::ok() const {
  return std::all_of(pairs.begin(), pairs.end(), [](const Pair& p) { return p.ok; });
}

TargetBeforeSourceReport verify_target_before_source(const Matrix& b0, const MutationSequence& mgs) {
  if (!is_acyclic(b0)) throw std::invalid_argument("target-before-source needs an acyclic matrix");
  if (!classify(b0, mgs).is_maximal_green())
    throw DomainError(to_string(mgs) + " is not a maximal green sequence");
  TargetBeforeSourceReport report;
  auto first = [&](int x) -> std::size_t {
    for (std::size_t s = 0; s < mgs.size(); ++s)
      if (mgs[s] == x) return s + 1;
    return 0;
  };
  for (auto [i, j] : heavy_pairs(b0)) {
    TargetBeforeSourceReport::Pair p{i, j, first(i), first(j), false};
    p.ok = p.q != 0 && p.p != 0 && p.p > p.q;
    report.pairs.push_back(p);
  }
  return report;
}

bool CVectorOrderReport::ok() const {
  return std::all_of(pairs.begin(), pairs.end(), [](const Pair& p) { return p.ok; });
}

CVectorOrderReport verify_tbs_cvectors(const Matrix& b0, const MutationSequence& seq) {
  const PatternContext ctx(b0);
  const SequenceTrace trace = run_sequence(ctx, seq);
  if (classify(trace).kind != SequenceKind::reddening)
    throw DomainError(to_string(seq) + " is not a reddening sequence");
  CVectorOrderReport report;
  report.tail_start = green_tail(trace);
  const std::size_t n = b0.size();
  auto find_unit = [&](int x) -> std::optional<std::size_t> {
    const Vector e = unit_vector(n, x);
    for (std::size_t s = report.tail_start; s < trace.cvecs.size(); ++s)
      if (trace.cvecs[s] == e) return s;
    return std::nullopt;
  };
  for (auto [i, j] : heavy_pairs(b0)) {
    CVectorOrderReport::Pair p;
    p.i = i;
    p.j = j;
    p.pos_i = find_unit(i);
    p.pos_j = find_unit(j);
    p.vacuous = !(p.pos_i && p.pos_j);
    p.ok = p.vacuous || *p.pos_i < *p.pos_j;
    report.pairs.push_back(p);
  }
  return report;
}

bool HeavyTargetReport::ok() const {
  return std::all_of(steps.begin(), steps.end(), [](const Step& s) { return !s.witness; });
}

HeavyTargetReport verify_no_heavy_target_mutation(const Matrix& b0, const MutationSequence& seq) {
  seq.validate(b0.size());
  HeavyTargetReport report;
  Matrix b = b0;
  for (std::size_t s = 0; s < seq.size(); ++s) {
    report.steps.push_back({s, seq[s], heavy_target_witness(b, seq[s])});
    b = mutate_matrix(b, seq[s]);
  }
  return report;
}

}  // namespace greenseq
