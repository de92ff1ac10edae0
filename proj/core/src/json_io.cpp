#include "greenseq/json_io.hpp"

#include <limits>
#include <stdexcept>

namespace greenseq::json {

json integer_to_json(const Integer& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return json(static_cast<std::int64_t>(x));
  return json(x.str());
}

Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(j.get<std::uint64_t>());
    return Integer(j.get<std::int64_t>());
  }
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    const std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos)
      throw std::invalid_argument("not an integer: \"" + s + "\"");
    return Integer(s);
  }
  throw std::invalid_argument("expected an integer, got " + j.dump());
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(integer_to_json(x));
  return out;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) rows.push_back(vector_to_json(m.row(i)));
  return json{{"n", m.size()}, {"rows", rows}};
}

Matrix matrix_from_json(const json& j) {
  const json* rows = &j;
  if (j.is_object()) {
    if (!j.contains("rows")) throw std::invalid_argument("matrix object without \"rows\"");
    rows = &j.at("rows");
  }
  if (!rows->is_array()) throw std::invalid_argument("matrix rows must be an array");
  std::vector<std::vector<Integer>> r;
  for (const auto& row : *rows) {
    if (!row.is_array()) throw std::invalid_argument("matrix row must be an array");
    std::vector<Integer> vals;
    for (const auto& x : row) vals.push_back(integer_from_json(x));
    r.push_back(std::move(vals));
  }
  Matrix m = Matrix::from_rows(r);
  if (j.is_object() && j.contains("n")) {
    if (!j.at("n").is_number_integer() || j.at("n").get<long long>() != static_cast<long long>(m.size()))
      throw std::invalid_argument("matrix \"n\" does not match the number of rows");
  }
  return m;
}

json seed_to_json(const Seed& s) {
  return json{{"B", matrix_to_json(s.b)}, {"C", matrix_to_json(s.c)}, {"G", matrix_to_json(s.g)}};
}

json seed_pair_to_json(const SeedPair& sp) {
  json out = seed_to_json(sp.seed);
  if (!sp.dual.b.empty()) out["dual"] = seed_to_json(sp.dual);
  return out;
}

namespace {

Seed seed_from_json(const json& j) {
  return Seed{matrix_from_json(j.at("B")), matrix_from_json(j.at("C")), matrix_from_json(j.at("G"))};
}

}  // namespace

SeedPair seed_pair_from_json(const json& j) {
  SeedPair sp;
  sp.seed = seed_from_json(j);
  if (j.contains("dual")) sp.dual = seed_from_json(j.at("dual"));
  return sp;
}

json sequence_to_json(const MutationSequence& s) { return json{{"dirs", s.dirs}}; }

MutationSequence sequence_from_json(const json& j) {
  const json& arr = j.is_object() ? j.at("dirs") : j;
  if (!arr.is_array()) throw std::invalid_argument("sequence must be an array of directions");
  MutationSequence s;
  for (const auto& x : arr) {
    if (!x.is_number_integer()) throw std::invalid_argument("sequence entries must be integers");
    s.dirs.push_back(x.get<int>());
  }
  return s;
}

json permutation_to_json(const Permutation& p) { return json(p.images()); }

json verdict_to_json(const SequenceVerdict& v) {
  json out{{"kind", to_string(v.kind)}, {"r", v.red_count}};
  out["perm"] = v.perm ? permutation_to_json(*v.perm) : json(nullptr);
  out["maximal_green"] = v.is_maximal_green();
  return out;
}

SequenceVerdict verdict_from_json(const json& j) {
  SequenceVerdict v;
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "reddening") v.kind = SequenceKind::reddening;
  else if (kind == "greening") v.kind = SequenceKind::greening;
  else if (kind == "neither") v.kind = SequenceKind::neither;
  else throw std::invalid_argument("unknown verdict kind \"" + kind + "\"");
  v.red_count = j.at("r").get<std::size_t>();
  if (j.contains("perm") && !j.at("perm").is_null()) v.perm = Permutation(j.at("perm").get<std::vector<int>>());
  return v;
}

json trace_to_json(const SequenceTrace& t) {
  json out = json::array();
  for (std::size_t k = 0; k < t.seeds.size(); ++k) {
    json entry{{"step", k}, {"seed", seed_pair_to_json(t.seeds[k])}};
    if (k < t.cvecs.size()) {
      entry["direction"] = t.seq[k];
      entry["c_vector"] = vector_to_json(t.cvecs[k]);
      entry["color"] = vector_sign(t.cvecs[k]) > 0 ? "green" : "red";
    }
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace greenseq::json
