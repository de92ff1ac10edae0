#include "greenseq/cli/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "greenseq/cli/corpus.hpp"
#include "greenseq/errors.hpp"
#include "greenseq/explorer.hpp"
#include "greenseq/json_io.hpp"
#include "greenseq/pattern.hpp"
#include "greenseq/seqcalc.hpp"

namespace greenseq::cli {

namespace {

using Json = nlohmann::json;
namespace gj = greenseq::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const char* kDefaultRows = "[[0,1,2],[-1,0,1],[-1,-1,0]]";

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw UsageError(what + " is not valid JSON: " + e.what());
  }
}

std::size_t env_size(const char* name, std::size_t fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  try {
    std::size_t used = 0;
    const unsigned long long x = std::stoull(v, &used);
    if (used != std::string(v).size()) throw std::invalid_argument(v);
    return static_cast<std::size_t>(x);
  } catch (const std::exception&) {
    throw UsageError(std::string("environment variable ") + name + " is not a non-negative integer");
  }
}

// Options shared by most subcommands.
struct Common {
  std::string matrix_file;
  std::string rows;
  std::string seq;
  std::string seq_file;
  bool json = false;

  void add_matrix(CLI::App* app) {
    app->add_option("--matrix", matrix_file, "JSON matrix file ({\"n\":..,\"rows\":..} or bare rows; '-' = stdin)");
    app->add_option("--rows", rows, "Matrix as inline JSON rows, e.g. '[[0,1],[-1,0]]'");
  }
  void add_seq(CLI::App* app, const char* help = "Mutation sequence, comma-separated 1-based indices") {
    app->add_option("--seq", seq, help);
    app->add_option("--seq-file", seq_file, "Sequence file (JSON or comma-separated); overrides --seq");
  }

  Matrix matrix() const {
    Json j;
    if (!matrix_file.empty()) j = parse_json(read_file(matrix_file), matrix_file);
    else j = parse_json(rows.empty() ? kDefaultRows : rows, "--rows");
    return gj::matrix_from_json(j);
  }

  MutationSequence sequence() const { return sequence_from(seq, seq_file); }

  static MutationSequence sequence_from(const std::string& text, const std::string& file) {
    if (file.empty()) return parse_sequence(text);
    const std::string body = read_file(file);
    const auto first = body.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (body[first] == '{' || body[first] == '['))
      return gj::sequence_from_json(parse_json(body, file));
    return parse_sequence(body.substr(0, body.find_last_not_of(" \t\r\n") + 1));
  }
};

// --- human-readable formatting ---------------------------------------------

std::vector<std::string> matrix_lines(const Matrix& m) {
  std::size_t w = 1;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) w = std::max(w, m.at(i, j).str().size());
  std::vector<std::string> lines;
  for (std::size_t i = 0; i < m.size(); ++i) {
    std::ostringstream os;
    for (std::size_t j = 0; j < m.size(); ++j) os << (j ? " " : "") << std::setw(static_cast<int>(w)) << m.at(i, j).str();
    lines.push_back(os.str());
  }
  if (lines.empty()) lines.emplace_back();
  return lines;
}

std::size_t column_width(const Matrix& m) {
  std::size_t w = 1;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) w = std::max(w, m.at(i, j).str().size());
  return w;
}

std::string color_marks(const Matrix& c) {
  const std::size_t w = column_width(c);
  std::string s;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const int sign = vector_sign(c.column(k));
    s += (k ? " " : "") + std::string(w - 1, ' ') + (sign > 0 ? "+" : sign < 0 ? "-" : "?");
  }
  return s;
}

void print_matrix(std::ostream& out, const std::string& title, const Matrix& m) {
  out << title << "\n";
  for (const auto& l : matrix_lines(m)) out << "  " << l << "\n";
}

void print_seed(std::ostream& out, const Seed& s) {
  const auto b = matrix_lines(s.b);
  const auto c = matrix_lines(s.c);
  const auto g = matrix_lines(s.g);
  const std::size_t wb = b.front().size();
  const std::size_t wc = std::max(c.front().size(), std::size_t{1});
  auto pad = [](const std::string& x, std::size_t w) { return x + std::string(w > x.size() ? w - x.size() : 0, ' '); };
  out << "  " << pad("B", wb) << "   " << pad("C", wc) << "   G\n";
  for (std::size_t i = 0; i < b.size(); ++i) out << "  " << pad(b[i], wb) << " | " << pad(c[i], wc) << " | " << g[i] << "\n";
  out << "  " << std::string(wb, ' ') << "   " << color_marks(s.c) << "\n";
}

std::string verdict_line(const SequenceVerdict& v) {
  std::ostringstream os;
  os << "kind=" << to_string(v.kind) << " r=" << v.red_count;
  if (v.perm) os << " perm=" << (v.perm->is_identity() ? std::string("id") : (std::ostringstream() << *v.perm).str());
  if (v.is_maximal_green()) os << " (maximal green)";
  return os.str();
}

std::string seq_text(const MutationSequence& s) { return to_string(s); }

// --- subcommands ------------------------------------------------------------

struct Budget {
  std::size_t max_depth = 12;
  std::size_t max_nodes = 100000;
  std::string mode;
  unsigned workers = 1;

  void add(CLI::App* app, const char* default_mode) {
    max_depth = env_size("GREENSEQ_MAX_DEPTH", max_depth);
    max_nodes = env_size("GREENSEQ_MAX_NODES", max_nodes);
    mode = default_mode;
    app->add_option("--max-depth", max_depth, "Depth bound (env GREENSEQ_MAX_DEPTH)")->capture_default_str();
    app->add_option("--max-nodes", max_nodes, "Node bound (env GREENSEQ_MAX_NODES)")->capture_default_str();
    app->add_option("--workers", workers, "Worker threads for frontier expansion")->capture_default_str();
  }
  void add_mode(CLI::App* app) {
    app->add_option("--mode", mode, "green-only or all-mutations")
        ->check(CLI::IsMember({"green-only", "all-mutations"}))
        ->capture_default_str();
  }
  SearchBudget budget() const { return SearchBudget{max_depth, max_nodes, search_mode_from_string(mode)}; }
};

int cmd_mutate(const Common& c, std::ostream& out) {
  const PatternContext ctx(c.matrix());
  const MutationSequence s = c.sequence();
  s.validate(ctx.size());
  const SeedPair sp = walk(ctx, initial_seed(ctx), s);
  if (c.json) {
    out << Json{{"seq", gj::sequence_to_json(s)}, {"seed", gj::seed_pair_to_json(sp)}}.dump(2) << "\n";
  } else {
    out << "seed after " << seq_text(s) << "\n";
    print_seed(out, sp.seed);
  }
  return kOk;
}

int cmd_trace(const Common& c, std::ostream& out) {
  const PatternContext ctx(c.matrix());
  const MutationSequence s = c.sequence();
  s.validate(ctx.size());
  const SequenceTrace t = run_sequence(ctx, s);
  if (c.json) {
    out << Json{{"B0", gj::matrix_to_json(ctx.b0())}, {"seq", gj::sequence_to_json(s)}, {"trace", gj::trace_to_json(t)},
                {"verdict", gj::verdict_to_json(classify(t))}}
               .dump(2)
        << "\n";
    return kOk;
  }
  out << "step  dir  c-vector  color\n";
  for (std::size_t k = 0; k < s.size(); ++k) {
    const bool green = vector_sign(t.cvecs[k]) > 0;
    out << std::setw(4) << k + 1 << "  " << std::setw(3) << s[k] << "  " << to_string(t.cvecs[k]) << "  "
        << (green ? "+ green" : "- red") << "\n";
  }
  out << "final seed\n";
  print_seed(out, t.final_seed().seed);
  out << verdict_line(classify(t)) << "\n";
  return kOk;
}

int cmd_classify(const Common& c, bool diagnostics, std::ostream& out) {
  const PatternContext ctx(c.matrix());
  const MutationSequence s = c.sequence();
  s.validate(ctx.size());
  const SequenceTrace t = run_sequence(ctx, s);
  const SequenceVerdict v = classify(t);
  Diagnostics d;
  if (diagnostics && v.kind != SequenceKind::neither) d = check_reddening_wellformed(v, t);
  if (diagnostics) {
    const Diagnostics h = check_hemisphere_crossings(t);
    d.problems.insert(d.problems.end(), h.problems.begin(), h.problems.end());
  }
  if (c.json) {
    Json j{{"seq", gj::sequence_to_json(s)}, {"verdict", gj::verdict_to_json(v)}};
    if (diagnostics) j["diagnostics"] = d.problems;
    out << j.dump(2) << "\n";
  } else {
    out << seq_text(s) << ": " << verdict_line(v) << "\n";
    for (const auto& p : d.problems) out << "  problem: " << p << "\n";
    if (diagnostics && d.ok()) out << "  counting and hemisphere checks passed\n";
  }
  if (!d.ok()) return kDomainFailure;
  return v.kind == SequenceKind::neither ? kDomainFailure : kOk;
}

int report_transform(const Common& c, const MutationSequence& input, const SequenceVerdict& before,
                     const std::vector<TransformPrediction>& steps, std::ostream& out) {
  bool all_ok = true;
  Json arr = Json::array();
  for (const auto& p : steps) {
    const SequenceVerdict got = classify(p.target, p.seq);
    const bool ok = got.kind == p.kind && got.red_count == p.red_count && got.perm && *got.perm == p.perm;
    all_ok = all_ok && ok;
    if (c.json) {
      arr.push_back(Json{{"seq", gj::sequence_to_json(p.seq)},
                         {"target", gj::matrix_to_json(p.target)},
                         {"predicted", {{"kind", to_string(p.kind)}, {"r", p.red_count}, {"perm", gj::permutation_to_json(p.perm)}}},
                         {"actual", gj::verdict_to_json(got)},
                         {"agrees", ok}});
    } else {
      out << seq_text(p.seq) << " on\n";
      for (const auto& l : matrix_lines(p.target)) out << "  " << l << "\n";
      out << "  predicted kind=" << to_string(p.kind) << " r=" << p.red_count << " perm=" << p.perm << "\n";
      out << "  actual    " << verdict_line(got) << (ok ? "" : "  MISMATCH") << "\n";
    }
  }
  if (c.json) {
    out << Json{{"input", {{"seq", gj::sequence_to_json(input)}, {"verdict", gj::verdict_to_json(before)}}},
                {"results", arr},
                {"agrees", all_ok}}
               .dump(2)
        << "\n";
  }
  return all_ok ? kOk : kDomainFailure;
}

int cmd_conjugate(const Common& c, int j, std::ostream& out) {
  const Matrix b0 = c.matrix();
  const MutationSequence s = c.sequence();
  s.validate(b0.size());
  const SequenceVerdict v = classify(b0, s);
  if (!c.json) out << "input " << seq_text(s) << ": " << verdict_line(v) << "\n";
  return report_transform(c, s, v, {conjugate(b0, s, j)}, out);
}

int cmd_rotate(const Common& c, std::size_t times, std::ostream& out) {
  const Matrix b0 = c.matrix();
  const MutationSequence s = c.sequence();
  s.validate(b0.size());
  const SequenceVerdict v = classify(b0, s);
  if (!c.json) out << "input " << seq_text(s) << ": " << verdict_line(v) << "\n";
  std::vector<TransformPrediction> steps;
  Matrix b = b0;
  MutationSequence cur = s;
  for (std::size_t i = 0; i < times; ++i) {
    steps.push_back(rotate(b, cur));
    b = steps.back().target;
    cur = steps.back().seq;
  }
  return report_transform(c, s, v, steps, out);
}

std::vector<MutationSequence> default_witnesses(const Matrix& b0, std::size_t depth) {
  const SequenceCatalog cat = enumerate_reddening_greening(b0, depth);
  std::vector<MutationSequence> w;
  if (cat.reddening.empty()) return w;
  w.push_back(cat.reddening.front());
  const auto p0 = classify(b0, w[0]).perm;
  for (const auto& s : cat.reddening)
    if (classify(b0, s).perm != p0) {
      w.push_back(s);
      break;
    }
  return w;
}

int cmd_conj_diff(const Common& c, const std::string& path_text, const std::vector<std::string>& reddening,
                  std::size_t depth, std::ostream& out) {
  const PatternContext ctx(c.matrix());
  const MutationSequence path = parse_sequence(path_text);
  path.validate(ctx.size());
  std::vector<MutationSequence> witnesses;
  for (const auto& r : reddening) {
    witnesses.push_back(parse_sequence(r));
    witnesses.back().validate(ctx.size());
  }
  if (witnesses.empty()) witnesses = default_witnesses(ctx.b0(), depth);
  if (witnesses.empty()) throw DomainError("no reddening sequence of B0 within depth " + std::to_string(depth));
  const ConjugationDifference d = conjugation_difference(ctx, path, witnesses);
  if (c.json) {
    Json w = Json::array();
    for (const auto& s : witnesses) w.push_back(gj::sequence_to_json(s));
    out << Json{{"path", gj::sequence_to_json(path)},
                {"phi", d.phi},
                {"red_from_t", d.red_from_t},
                {"red_from_t_minus", d.red_from_t_minus},
                {"sigma", gj::permutation_to_json(d.sigma)},
                {"convention", "C at t0^- equals -P_sigma"},
                {"witnesses", w}}
               .dump(2)
        << "\n";
  } else {
    out << "vertex t reached by " << seq_text(path) << "\n";
    out << "phi = " << d.phi << " (red steps t -> t0: " << d.red_from_t << ", t^- -> t0^-: " << d.red_from_t_minus
        << ")\n";
    out << "sigma = " << d.sigma << " (C at t0^- is -P_sigma), witnesses:";
    for (const auto& s : witnesses) out << " " << seq_text(s);
    out << "\n";
  }
  return kOk;
}

int cmd_restrict(const Common& c, const std::string& subset, std::ostream& out) {
  const Matrix b0 = c.matrix();
  const MutationSequence s = c.sequence();
  s.validate(b0.size());
  const std::vector<int> v = parse_sequence(subset).dirs;
  const Restriction r = restrict_to_submatrix(b0, s, v);
  const SequenceVerdict got = classify(r.sub.matrix, r.induced);
  if (c.json) {
    out << Json{{"V", r.sub.indices},
                {"submatrix", gj::matrix_to_json(r.sub.matrix)},
                {"induced", gj::sequence_to_json(r.induced)},
                {"verdict", gj::verdict_to_json(got)}}
               .dump(2)
        << "\n";
  } else {
    print_matrix(out, "principal submatrix", r.sub.matrix);
    out << "induced " << seq_text(r.induced) << " (local indices): " << verdict_line(got) << "\n";
  }
  return kOk;
}

int search_exit(const SearchResult& r) {
  switch (r.status) {
    case SearchStatus::found:
      return kOk;
    case SearchStatus::certified_none:
      return kDomainFailure;
    case SearchStatus::none_within_budget:
      return kBudgetExhausted;
  }
  return kBudgetExhausted;
}

int cmd_search(const Common& c, const Budget& b, bool mgs, std::optional<int> first, bool prune, std::ostream& out,
               std::ostream& err) {
  const Matrix b0 = c.matrix();
  SearchOptions opt;
  opt.first_direction = first;
  opt.prune_heavy_target = prune;
  opt.workers = b.workers;
  if (first) MutationSequence{*first}.validate(b0.size());
  const SearchResult r = mgs ? find_mgs(b0, b.budget(), opt) : find_reddening(b0, b.budget(), opt);
  if (c.json) {
    Json j{{"status", to_string(r.status)}, {"nodes", r.nodes}, {"guard_hits", r.guard_hits}, {"note", r.note}};
    if (r.seq) {
      j["seq"] = gj::sequence_to_json(*r.seq);
      j["verdict"] = gj::verdict_to_json(classify(b0, *r.seq));
    }
    out << j.dump(2) << "\n";
  } else if (r.seq) {
    out << to_string(r.status) << ": " << seq_text(*r.seq) << "  " << verdict_line(classify(b0, *r.seq)) << "  ("
        << r.nodes << " nodes)\n";
  } else {
    (r.status == SearchStatus::certified_none ? out : err) << r.note << "\n";
  }
  return search_exit(r);
}

int cmd_enumerate(const Common& c, std::size_t max_len, bool prune, std::ostream& out) {
  const Matrix b0 = c.matrix();
  const auto all = enumerate_mgs(b0, max_len, prune);
  if (c.json) {
    Json arr = Json::array();
    for (const auto& s : all) arr.push_back(gj::sequence_to_json(s));
    out << Json{{"max_length", max_len}, {"count", all.size()}, {"sequences", arr}}.dump(2) << "\n";
  } else {
    for (const auto& s : all) out << seq_text(s) << "\n";
    out << all.size() << " maximal green sequences of length <= " << max_len << "\n";
  }
  return kOk;
}

Json path_json(const std::optional<StorePath>& p) {
  if (!p) return nullptr;
  return Json{{"target", p->target}, {"seq", gj::sequence_to_json(p->seq)}, {"opposite_arrows", p->opposite_arrows}};
}

int summarize_store(const ExchangeGraphStore& s, bool json, bool list, std::ostream& out) {
  if (json) {
    Json j{{"nodes", s.nodes().size()},
           {"edges", s.edges().size()},
           {"frontier", s.frontier().size()},
           {"truncated", s.truncated()},
           {"guard_hits", s.guard_hits()},
           {"mode", to_string(s.budget().mode)}};
    if (list) {
      Json arr = Json::array();
      for (const auto& n : s.nodes())
        arr.push_back(Json{{"id", n.id}, {"depth", n.depth}, {"path", gj::sequence_to_json(n.path)},
                           {"C", gj::matrix_to_json(n.seed.seed.c)}});
      j["node_list"] = arr;
    }
    out << j.dump(2) << "\n";
  } else {
    out << s.nodes().size() << " nodes, " << s.edges().size() << " edges, frontier " << s.frontier().size()
        << (s.truncated() ? " (truncated)" : " (complete)") << ", mode " << to_string(s.budget().mode) << "\n";
    if (s.guard_hits()) out << "magnitude guard dropped " << s.guard_hits() << " branches\n";
    if (list)
      for (const auto& n : s.nodes())
        out << "  node " << n.id << "  depth " << n.depth << "  path " << seq_text(n.path) << "\n";
  }
  return s.truncated() ? kBudgetExhausted : kOk;
}

int cmd_exchange_graph(const Common& c, const Budget& b, const std::string& out_file, bool list, std::ostream& out) {
  SearchOptions opt;
  opt.workers = b.workers;
  const ExchangeGraphStore s = build_exchange_graph(c.matrix(), b.budget(), opt);
  if (!out_file.empty()) save_store(s, out_file);
  return summarize_store(s, c.json, list, out);
}

int cmd_store_query(const ExchangeGraphStore& s, std::optional<std::size_t> node, bool json, std::ostream& out) {
  const auto p = node ? query_path(s, *node) : query_reddening_path(s);
  if (json) {
    out << Json{{"path", path_json(p)}}.dump(2) << "\n";
  } else if (p) {
    out << "node " << p->target << " via " << seq_text(p->seq) << " with " << p->opposite_arrows
        << " opposite arrows\n";
  } else {
    out << (node ? "node unreachable through stored edges\n" : "no stored seed has C = -P\n");
  }
  if (p) return kOk;
  return s.truncated() ? kBudgetExhausted : kDomainFailure;
}

int cmd_verify(const Common& c, VerifyOptions o, std::size_t corpus, std::ostream& out) {
  std::vector<Matrix> ms;
  if (!c.matrix_file.empty() || !c.rows.empty()) {
    ms.push_back(c.matrix());
  } else if (o.suite != "rank2") {
    Rng rng(o.seed ^ 0x9e3779b97f4a7c15ULL);
    for (std::size_t i = 0; i < corpus; ++i) ms.push_back(random_acyclic(rng, 2 + i % 2, 2));
  }
  const VerifyReport r = verify_suite(ms, o);
  if (c.json) {
    Json arr = Json::array();
    for (const auto& p : r.results)
      arr.push_back(Json{{"suite", p.suite}, {"property", p.property}, {"passed", p.passed}, {"skipped", p.skipped},
                         {"checked", p.checked}, {"counterexample", p.counterexample}});
    out << Json{{"ok", r.ok()}, {"seed", o.seed}, {"matrices", ms.size()}, {"results", arr}}.dump(2) << "\n";
  } else {
    for (const auto& p : r.results) {
      out << (p.skipped ? "SKIP" : p.passed ? "PASS" : "FAIL") << "  " << p.suite << ": " << p.property << "  ["
          << p.checked << " checked]\n";
      if (!p.passed || p.skipped) out << "      " << p.counterexample << "\n";
    }
    out << (r.ok() ? "all properties hold" : "some properties FAILED") << " (seed " << o.seed << ", "
        << ms.size() << " matrices)\n";
  }
  return r.ok() ? kOk : kDomainFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact mutation of sign-skew-symmetric seeds, reddening sequences and exchange graphs", "greenseq"};
  app.require_subcommand(1);
  Common c;
  app.add_flag("--json", c.json, "Machine-readable output");

  auto* mutate = app.add_subcommand("mutate", "Apply a mutation sequence and print the seed (B, C, G)");
  c.add_matrix(mutate);
  c.add_seq(mutate);

  auto* trace = app.add_subcommand("seed-trace", "Per-step c-vectors and colors along a sequence");
  c.add_matrix(trace);
  c.add_seq(trace);

  bool diagnostics = false;
  auto* cls = app.add_subcommand("classify", "Reddening, greening or neither");
  c.add_matrix(cls);
  c.add_seq(cls);
  cls->add_flag("--check", diagnostics, "Also run counting and hemisphere diagnostics");

  int conj_dir = 0;
  auto* conj = app.add_subcommand("conjugate", "Conjugate a reddening or greening sequence in direction j");
  c.add_matrix(conj);
  c.add_seq(conj);
  conj->add_option("-j,--direction", conj_dir, "Direction j")->required();

  std::size_t times = 1;
  auto* rot = app.add_subcommand("rotate", "Rotate a reddening or greening sequence");
  c.add_matrix(rot);
  c.add_seq(rot);
  rot->add_option("--times", times, "Number of rotations")->capture_default_str();

  std::string path_text;
  std::vector<std::string> witnesses;
  std::size_t witness_depth = 8;
  auto* diff = app.add_subcommand("conj-diff", "Conjugation difference of the vertex reached by --path");
  c.add_matrix(diff);
  diff->add_option("--path", path_text, "Directions from t0 to t");
  diff->add_option("--reddening", witnesses, "Reddening sequence of B0 (repeatable); default: enumerated");
  diff->add_option("--depth", witness_depth, "Enumeration depth for default reddening sequences")->capture_default_str();

  std::string subset;
  auto* restr = app.add_subcommand("restrict", "Induced sequence on a principal submatrix");
  c.add_matrix(restr);
  c.add_seq(restr);
  restr->add_option("--subset", subset, "Indices V, e.g. '1,3'")->required();

  Budget mgs_budget, red_budget, graph_budget;
  std::optional<int> first;
  bool prune = false;
  auto* smgs = app.add_subcommand("search-mgs", "Breadth-first search for a maximal green sequence");
  c.add_matrix(smgs);
  mgs_budget.add(smgs, "green-only");
  smgs->add_option("--first", first, "Force the first mutation");
  smgs->add_flag("--prune", prune, "Skip mutations at heavy targets");

  auto* sred = app.add_subcommand("search-reddening", "Breadth-first search for a reddening sequence");
  c.add_matrix(sred);
  red_budget.add(sred, "all-mutations");
  red_budget.add_mode(sred);

  std::size_t max_len = 9;
  auto* en = app.add_subcommand("enumerate-mgs", "All maximal green sequences up to a length");
  c.add_matrix(en);
  en->add_option("--max-length", max_len, "Length bound")->capture_default_str();
  en->add_flag("--prune", prune, "Skip mutations at heavy targets");

  std::string out_file;
  bool list = false;
  auto* eg = app.add_subcommand("exchange-graph", "Explore the exchange graph and optionally save a store");
  c.add_matrix(eg);
  graph_budget.add(eg, "all-mutations");
  graph_budget.add_mode(eg);
  eg->add_option("--out", out_file, "Store file to write");
  eg->add_flag("--list", list, "List nodes");

  VerifyOptions vo;
  std::size_t corpus = 10;
  auto* ver = app.add_subcommand("verify", "Run property suites with seeded randomness");
  c.add_matrix(ver);
  std::vector<std::string> suites = suite_names();
  suites.insert(suites.begin(), "all");
  ver->add_option("--suite", vo.suite, "Suite to run")->check(CLI::IsMember(suites))->capture_default_str();
  ver->add_option("--seed", vo.seed, "Random seed")->capture_default_str();
  ver->add_option("--paths", vo.paths, "Random paths per matrix")->capture_default_str();
  ver->add_option("--depth", vo.depth, "Reddening enumeration depth")->capture_default_str();
  ver->add_option("--mgs-length", vo.mgs_length, "MGS enumeration length")->capture_default_str();
  ver->add_option("--corpus", corpus, "Random matrices when no matrix is given")->capture_default_str();
  ver->add_flag("--inject-corruption", vo.inject_corruption, "Corrupt one G entry (negative control)");

  auto* store = app.add_subcommand("store", "Inspect, resume or query a saved exchange-graph store");
  store->require_subcommand(1);
  std::string store_file;
  auto* s_info = store->add_subcommand("info", "Validate and summarize a store");
  s_info->add_option("file", store_file)->required();
  s_info->add_flag("--list", list, "List nodes");
  Budget resume_budget;
  auto* s_resume = store->add_subcommand("resume", "Continue exploring from the saved frontier");
  s_resume->add_option("file", store_file)->required();
  s_resume->add_option("--max-depth", resume_budget.max_depth, "New depth bound");
  s_resume->add_option("--max-nodes", resume_budget.max_nodes, "New node bound");
  s_resume->add_option("--workers", resume_budget.workers, "Worker threads");
  s_resume->add_option("--out", out_file, "Write here instead of in place");
  std::optional<std::size_t> node;
  auto* s_query = store->add_subcommand("query", "Path with fewest opposite arrows");
  s_query->add_option("file", store_file)->required();
  s_query->add_option("--node", node, "Target node id; default: any seed with C = -P");
  auto* s_check = store->add_subcommand("check", "Load and re-serialize; report whether bytes are identical");
  s_check->add_option("file", store_file)->required();

  for (auto* sub : app.get_subcommands({})) sub->add_flag("--json", c.json, "Machine-readable output");
  for (auto* sub : store->get_subcommands({})) sub->add_flag("--json", c.json, "Machine-readable output");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*mutate) return cmd_mutate(c, out);
    if (*trace) return cmd_trace(c, out);
    if (*cls) return cmd_classify(c, diagnostics, out);
    if (*conj) return cmd_conjugate(c, conj_dir, out);
    if (*rot) return cmd_rotate(c, times, out);
    if (*diff) return cmd_conj_diff(c, path_text, witnesses, witness_depth, out);
    if (*restr) return cmd_restrict(c, subset, out);
    if (*smgs) return cmd_search(c, mgs_budget, true, first, prune, out, err);
    if (*sred) return cmd_search(c, red_budget, false, std::nullopt, false, out, err);
    if (*en) return cmd_enumerate(c, max_len, prune, out);
    if (*eg) return cmd_exchange_graph(c, graph_budget, out_file, list, out);
    if (*ver) return cmd_verify(c, vo, corpus, out);
    if (*s_info) return summarize_store(load_store(store_file), c.json, list, out);
    if (*s_resume) {
      ExchangeGraphStore s = load_store(store_file);
      SearchBudget b = s.budget();
      if (s_resume->count("--max-depth")) b.max_depth = resume_budget.max_depth;
      if (s_resume->count("--max-nodes")) b.max_nodes = resume_budget.max_nodes;
      s.set_budget(b);
      SearchOptions opt;
      opt.workers = resume_budget.workers;
      expand_store(s, opt);
      save_store(s, out_file.empty() ? store_file : out_file);
      return summarize_store(s, c.json, false, out);
    }
    if (*s_query) return cmd_store_query(load_store(store_file), node, c.json, out);
    if (*s_check) {
      const std::string bytes = read_file(store_file);
      const bool same = serialize_store(parse_store(bytes)) == bytes;
      if (c.json) out << Json{{"identical", same}}.dump(2) << "\n";
      else out << (same ? "round-trip identical\n" : "round-trip differs\n");
      return same ? kOk : kDomainFailure;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NotTotallyMutable& e) {
    err << "error: " << e.what() << " (after " << seq_text(MutationSequence(e.prefix())) << ")\n";
    return kDomainFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDomainFailure;
  }
  return kUsage;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace greenseq::cli
