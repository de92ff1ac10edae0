#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "greenseq/cli/cli.hpp"
#include "greenseq/cli/corpus.hpp"
#include "greenseq/errors.hpp"
#include "greenseq/explorer.hpp"
#include "greenseq/pattern.hpp"
#include "greenseq/seqcalc.hpp"

namespace greenseq::cli {

namespace {

struct Collector {
  std::string suite;
  std::vector<PropertyResult>& out;

  PropertyResult& property(const std::string& name) {
    for (auto& r : out)
      if (r.suite == suite && r.property == name) return r;
    PropertyResult r;
    r.suite = suite;
    r.property = name;
    out.push_back(std::move(r));
    return out.back();
  }

  void check(const std::string& name, bool ok, const std::string& detail) {
    PropertyResult& r = property(name);
    ++r.checked;
    if (!ok && r.passed) {
      r.passed = false;
      r.counterexample = detail;
    }
  }

  void skip(const std::string& name, const std::string& why) {
    PropertyResult& r = property(name);
    if (r.checked == 0) {
      r.skipped = true;
      r.counterexample = why;
    }
  }
};

std::string describe(const Matrix& b, const MutationSequence& s) {
  return "B0 = " + to_string(b) + ", sequence (" + to_string(s) + ")";
}

std::string describe(const Matrix& b, const MutationSequence& s, const std::string& what) {
  return describe(b, s) + ": " + what;
}

std::string verdict_text(SequenceKind k, std::size_t r, const std::optional<Permutation>& p) {
  std::ostringstream os;
  os << to_string(k) << " r=" << r;
  if (p) os << " perm=" << *p;
  return os.str();
}

void suite_paths(const Matrix& b0, const VerifyOptions& o, Rng& rng, Collector& dual, Collector& coh, bool& injected) {
  const PatternContext ctx(b0, InvariantChecks::off);
  for (std::size_t p = 0; p < o.paths; ++p) {
    const MutationSequence path = random_path(rng, b0.size(), static_cast<std::size_t>(uniform(rng, 1, static_cast<long long>(o.path_length))));
    SeedPair sp = initial_seed(ctx);
    for (std::size_t step = 0; step < path.size(); ++step) {
      try {
        sp = mutate_seed(ctx, sp, path[step]);
      } catch (const NotTotallyMutable& e) {
        coh.check("total mutability", false, describe(b0, path, e.what()));
        break;
      }
      if (o.inject_corruption && !injected) {
        sp.seed.g.at(0, 0) += 1;
        injected = true;
      }
      MutationSequence prefix(std::vector<int>(path.dirs.begin(), path.dirs.begin() + static_cast<long>(step + 1)));
      auto at = [&](const std::string& what) {
        return describe(b0, prefix, what) + "; C = " + to_string(sp.seed.c) + ", G = " + to_string(sp.seed.g);
      };
      dual.check("G B = B0 C", check_first_duality(sp, b0), at("first duality fails"));
      dual.check("dual G B~ = B~0 C~", sp.dual.g * sp.dual.b == ctx.dual_b0() * sp.dual.c,
                 at("first duality fails in the dual pattern"));
      dual.check("G~^T C = I", check_second_duality(sp), at("second duality fails"));
      const Integer dc = determinant(sp.seed.c);
      const Integer dg = determinant(sp.seed.g);
      dual.check("det C, det G = +-1", abs(dc) == 1 && abs(dg) == 1, at("determinant not +-1"));
      bool coherent = true;
      bool agree = true;
      for (std::size_t k = 0; k < b0.size(); ++k) {
        const int s = vector_sign(sp.seed.c.column(k));
        const int sd = vector_sign(sp.dual.c.column(k));
        const int g = vector_sign(sp.seed.g.row(k));
        const int gd = vector_sign(sp.dual.g.row(k));
        coherent = coherent && s != 0 && sd != 0 && g != 0 && gd != 0;
        agree = agree && s == sd && g == gd;
      }
      coh.check("c-vectors and G rows sign-coherent", coherent, at("sign-coherence fails"));
      coh.check("signs agree with the dual pattern", agree, at("dual sign disagreement"));
      coh.check("B sign-skew-symmetric", is_sign_skew_symmetric(sp.seed.b), at("B lost sign-skew-symmetry"));
    }
  }
}

void suite_transform(const Matrix& b0, const SequenceCatalog& cat, Collector& conj, Collector& rot) {
  std::vector<const MutationSequence*> all;
  for (const auto& s : cat.reddening) all.push_back(&s);
  for (const auto& s : cat.greening) all.push_back(&s);
  for (const MutationSequence* s : all) {
    const SequenceVerdict v = classify(b0, *s);
    for (int j = 1; j <= static_cast<int>(b0.size()); ++j) {
      const TransformPrediction pred = conjugate(b0, *s, j);
      const SequenceVerdict got = classify(pred.target, pred.seq);
      const bool ok = got.kind == v.kind && got.red_count == v.red_count + 1 && got.perm && *got.perm == *v.perm &&
                      pred.kind == v.kind && pred.red_count == v.red_count + 1;
      conj.check("conjugate is (r+1)-" + to_string(v.kind) + " with the same permutation", ok,
                 describe(b0, *s, "conjugate at " + std::to_string(j) + " gives (" + to_string(pred.seq) + ") " +
                                      verdict_text(got.kind, got.red_count, got.perm) + ", expected " +
                                      verdict_text(v.kind, v.red_count + 1, v.perm)));
    }
    Matrix b = b0;
    MutationSequence cur = *s;
    bool ok = true;
    std::string detail;
    for (std::size_t i = 0; i < s->size() && ok; ++i) {
      const TransformPrediction pred = rotate(b, cur);
      const SequenceVerdict got = classify(pred.target, pred.seq);
      ok = got.kind == v.kind && got.red_count == v.red_count && got.perm && *got.perm == *v.perm;
      if (!ok)
        detail = describe(b0, *s, "rotation " + std::to_string(i + 1) + " gives (" + to_string(pred.seq) + ") on " +
                                      to_string(pred.target) + ": " + verdict_text(got.kind, got.red_count, got.perm));
      b = pred.target;
      cur = pred.seq;
    }
    rot.check("iterated rotation keeps kind, r and permutation", ok, detail);
  }
}

void suite_conj_diff(const Matrix& b0, const SequenceCatalog& cat, const VerifyOptions& o, Rng& rng, Collector& c) {
  if (cat.reddening.empty()) {
    c.skip("red count in t0 pattern = r + phi", "no reddening sequence of B0 within depth " + std::to_string(o.depth));
    return;
  }
  const PatternContext ctx(b0, InvariantChecks::off);
  // Two witnesses of t0^- with different endpoints when available.
  std::vector<MutationSequence> witnesses{cat.reddening.front()};
  const auto first_perm = classify(b0, witnesses[0]).perm;
  for (const auto& s : cat.reddening)
    if (classify(b0, s).perm != first_perm) {
      witnesses.push_back(s);
      break;
    }
  if (witnesses.size() == 1 && cat.reddening.size() > 1) witnesses.push_back(cat.reddening.back());

  const std::size_t vertices = std::max<std::size_t>(10, o.paths / 10);
  for (std::size_t v = 0; v < vertices; ++v) {
    const MutationSequence path = random_path(rng, b0.size(), static_cast<std::size_t>(uniform(rng, 0, 4)));
    ConjugationDifference cd;
    try {
      cd = conjugation_difference(ctx, path, witnesses);
      c.check("phi independent of the reddening sequence of B0", true, "");
    } catch (const InvariantViolation& e) {
      c.check("phi independent of the reddening sequence of B0", false, describe(b0, path, e.what()));
      continue;
    }
    const SeedPair at_t = walk(ctx, initial_seed(ctx), path);
    const Matrix bt = at_t.seed.b;
    const SequenceCatalog local = enumerate_reddening_greening(bt, o.depth);
    for (const auto& s : local.reddening) {
      std::size_t red_t0 = 0;
      walk(ctx, at_t, s, &red_t0);
      const SequenceVerdict vt = classify(bt, s);
      const std::string detail = describe(b0, path, "vertex t; sequence (" + to_string(s) + ") of B_t has r_t=" +
                                                        std::to_string(vt.red_count) + ", t0 count " +
                                                        std::to_string(red_t0) + ", phi=" + std::to_string(cd.phi));
      c.check("red count in t0 pattern = r + phi",
              static_cast<long long>(red_t0) == static_cast<long long>(vt.red_count) + cd.phi, detail);
      c.check("phi <= t0 red count", cd.phi <= static_cast<long long>(red_t0), detail);
    }
  }
}

void suite_traces(const Matrix& b0, const SequenceCatalog& cat, Collector& count, Collector& hemi) {
  const PatternContext ctx(b0, InvariantChecks::off);
  auto visit = [&](const MutationSequence& s) {
    const SequenceTrace t = run_sequence(ctx, s);
    const SequenceVerdict v = classify(t);
    const Diagnostics d = check_reddening_wellformed(v, t);
    count.check(v.kind == SequenceKind::greening ? "greening: #e_j = #(-e_j)" : "reddening: #e_j = #(-e_j) + 1",
                d.ok(), describe(b0, s, d.ok() ? "" : d.problems.front()));
    if (v.is_maximal_green()) count.check("MGS: each e_j exactly once", d.ok(), describe(b0, s));
    const Diagnostics h = check_hemisphere_crossings(t);
    hemi.check("hemisphere crossings exactly at +-e_j", h.ok(), describe(b0, s, h.ok() ? "" : h.problems.front()));
  };
  for (const auto& s : cat.reddening) visit(s);
  for (const auto& s : cat.greening) visit(s);
}

void suite_tbs(const Matrix& b0, const VerifyOptions& o, Collector& tbs, Collector& heavy) {
  if (!is_acyclic(b0)) {
    tbs.skip("first i before first j in every MGS", "B0 is not acyclic");
    heavy.skip("no mutation at a heavy target", "B0 is not acyclic");
    return;
  }
  const auto mgs = enumerate_mgs(b0, o.mgs_length);
  for (const auto& s : mgs) {
    const auto r = verify_target_before_source(b0, s);
    std::string detail;
    for (const auto& p : r.pairs)
      if (!p.ok) detail = "pair (" + std::to_string(p.i) + "," + std::to_string(p.j) + ") q=" + std::to_string(p.q) + " p=" + std::to_string(p.p);
    tbs.check("first i before first j in every MGS", r.ok(), describe(b0, s, detail));
    const auto cv = verify_tbs_cvectors(b0, s);
    tbs.check("e_i before e_j in the green tail", cv.ok(), describe(b0, s));
    const auto h = verify_no_heavy_target_mutation(b0, s);
    heavy.check("no mutation at a heavy target", h.ok(), describe(b0, s));
  }
  const auto pruned = enumerate_mgs(b0, o.mgs_length, true);
  heavy.check("pruning keeps the set of MGS", pruned == mgs,
              "B0 = " + to_string(b0) + ": " + std::to_string(mgs.size()) + " MGS unpruned vs " +
                  std::to_string(pruned.size()) + " pruned");
}

void suite_restriction(const Matrix& b0, const VerifyOptions& o, Collector& c) {
  const std::size_t n = b0.size();
  const auto mgs = enumerate_mgs(b0, o.mgs_length);
  if (mgs.empty()) c.skip("induced sequence is maximal green on B0^V", "no MGS within length bound");
  for (const auto& s : mgs) {
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      std::vector<int> v;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (1u << i)) v.push_back(static_cast<int>(i + 1));
      Restriction r;
      try {
        r = restrict_to_submatrix(b0, s, v);
      } catch (const InvariantViolation& e) {
        c.check("induced sequence is maximal green on B0^V", false, describe(b0, s, e.what()));
        continue;
      }
      const SequenceVerdict got = classify(r.sub.matrix, r.induced);
      std::string vs;
      for (int x : v) vs += std::to_string(x) + " ";
      c.check("induced sequence is maximal green on B0^V", got.is_maximal_green(),
              describe(b0, s, "V = {" + vs + "} induces (" + to_string(r.induced) + ")"));
      std::size_t prefix = 0;
      while (prefix < s.size() && std::find(v.begin(), v.end(), s[prefix]) != v.end()) ++prefix;
      bool same = r.induced.size() >= prefix;
      for (std::size_t i = 0; same && i < prefix; ++i) same = r.sub.indices[static_cast<std::size_t>(r.induced[i] - 1)] == s[i];
      c.check("induced sequence keeps the prefix inside V", same,
              describe(b0, s, "V = {" + vs + "} induces (" + to_string(r.induced) + ")"));
    }
  }
}

void suite_rank2(const VerifyOptions& o, Rng& rng, Collector& c) {
  std::vector<std::pair<long long, long long>> pairs{{2, 2}, {1, 4}, {4, 1}, {2, 3}};
  while (pairs.size() < 8) {
    const long long a = uniform(rng, 1, 6);
    const long long b = uniform(rng, 1, 6);
    if (a * b >= 4) pairs.emplace_back(a, b);
  }
  for (auto [a, b] : pairs) {
    const Matrix m = Matrix::from_rows({{0, a}, {-b, 0}});
    const Rank2Certificate cert = certify_rank2_green_divergence(m, 1);
    c.check("green walk from 1 certified divergent when ab >= 4", cert.certified && cert.monotone,
            "(a,b) = (" + std::to_string(a) + "," + std::to_string(b) + "): " + cert.reason);
  }
  for (auto [a, b] : std::vector<std::pair<long long, long long>>{{1, 1}, {1, 2}, {2, 1}, {1, 3}, {3, 1}}) {
    const Matrix m = Matrix::from_rows({{0, a}, {-b, 0}});
    SearchOptions opt;
    opt.first_direction = 1;
    const SearchResult r = find_mgs(m, SearchBudget{10, 1000, SearchMode::green_only}, opt);
    c.check("ab < 4: an MGS starting at 1 exists and is not certified away", r.status == SearchStatus::found,
            "(a,b) = (" + std::to_string(a) + "," + std::to_string(b) + "): " + r.note);
  }
  (void)o;
}

void suite_mutability(const Matrix& b0, const VerifyOptions& o, Collector& c) {
  const MutabilityResult r = verify_total_mutability(b0, o.depth, false);
  c.check("every matrix within depth is sign-skew-symmetric", r.status != MutabilityStatus::refuted,
          "B0 = " + to_string(b0) + ": refuted along " + (r.counterexample ? to_string(*r.counterexample) : "()"));
  if (is_acyclic(b0))
    c.check("acyclic shortcut agrees with the search", r.status == MutabilityStatus::verified_to_depth,
            "B0 = " + to_string(b0) + " is acyclic but the search refutes it");
}

bool selected(const VerifyOptions& o, const char* name) { return o.suite == "all" || o.suite == name; }

}  // namespace

bool VerifyReport::ok() const {
  return std::all_of(results.begin(), results.end(), [](const PropertyResult& r) { return r.passed; });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"dualities", "sign-coherence", "conjugation", "rotation",
                                              "conj-diff", "counting",       "hemisphere",  "tbs",
                                              "heavy-target", "restriction", "rank2",       "mutability"};
  return names;
}

VerifyReport verify_suite(const std::vector<Matrix>& matrices, const VerifyOptions& o) {
  if (o.suite != "all" && std::find(suite_names().begin(), suite_names().end(), o.suite) == suite_names().end())
    throw std::invalid_argument("unknown suite \"" + o.suite + "\"");
  VerifyReport report;
  Rng rng(o.seed);
  auto col = [&](const char* s) { return Collector{s, report.results}; };
  Collector dual = col("dualities"), coh = col("sign-coherence"), conj = col("conjugation"), rot = col("rotation"),
            diff = col("conj-diff"), count = col("counting"), hemi = col("hemisphere"), tbs = col("tbs"),
            heavy = col("heavy-target"), restr = col("restriction"), rank2 = col("rank2"),
            mut = col("mutability");
  bool injected = false;

  for (const Matrix& b0 : matrices) {
    if (!is_sign_skew_symmetric(b0)) throw std::invalid_argument("matrix is not sign-skew-symmetric: " + to_string(b0));
    if (b0.size() == 0) continue;
    try {
    if (selected(o, "dualities") || selected(o, "sign-coherence")) suite_paths(b0, o, rng, dual, coh, injected);
    const bool need_catalog = selected(o, "conjugation") || selected(o, "rotation") || selected(o, "conj-diff") ||
                              selected(o, "counting") || selected(o, "hemisphere");
    SequenceCatalog cat;
    if (need_catalog) cat = enumerate_reddening_greening(b0, o.depth);
    if (selected(o, "conjugation") || selected(o, "rotation")) suite_transform(b0, cat, conj, rot);
    if (selected(o, "conj-diff")) suite_conj_diff(b0, cat, o, rng, diff);
    if (selected(o, "counting") || selected(o, "hemisphere")) suite_traces(b0, cat, count, hemi);
    if (selected(o, "tbs") || selected(o, "heavy-target")) suite_tbs(b0, o, tbs, heavy);
    if (selected(o, "restriction")) suite_restriction(b0, o, restr);
    if (selected(o, "mutability")) suite_mutability(b0, o, mut);
    } catch (const std::exception& e) {
      mut.check("suites complete without domain errors", false, "B0 = " + to_string(b0) + ": " + e.what());
    }
  }
  if (selected(o, "rank2")) suite_rank2(o, rng, rank2);

  std::vector<PropertyResult> kept;
  for (auto& r : report.results)
    if (selected(o, r.suite.c_str()) || !r.passed) kept.push_back(std::move(r));
  auto rank = [](const std::string& suite) {
    return std::find(suite_names().begin(), suite_names().end(), suite) - suite_names().begin();
  };
  std::stable_sort(kept.begin(), kept.end(),
                   [&](const PropertyResult& a, const PropertyResult& b) { return rank(a.suite) < rank(b.suite); });
  report.results = std::move(kept);
  return report;
}

VerifyReport verify_suite(const Matrix& matrix, const VerifyOptions& options) {
  return verify_suite(std::vector<Matrix>{matrix}, options);
}

}  // namespace greenseq::cli
