#pragma once

// JSON encodings shared by the library and the command-line tool.
//
//   matrix   {"n": 3, "rows": [[0,1,2],[-1,0,1],[-1,-1,0]]}
//   seed     {"B": matrix, "C": matrix, "G": matrix, "dual": {"B":..,"C":..,"G":..}}
//   sequence {"dirs": [3,2,1]}
//   verdict  {"kind": "reddening", "r": 0, "perm": [1,2,3]}
//
// Entries outside the signed 64-bit range are written as decimal strings;
// the readers accept either form.

#include <string>

#include <json.hpp>

#include "greenseq/intmat.hpp"
#include "greenseq/pattern.hpp"
#include "greenseq/seqcalc.hpp"

namespace greenseq::json {

using nlohmann::json;

json integer_to_json(const Integer& x);
Integer integer_from_json(const json& j);

json vector_to_json(const Vector& v);

json matrix_to_json(const Matrix& m);
/// Accepts {"n":..,"rows":..} or a bare array of rows.  Throws std::invalid_argument.
Matrix matrix_from_json(const json& j);

json seed_to_json(const Seed& s);
json seed_pair_to_json(const SeedPair& sp);
/// The dual part is optional in the input; when missing it is left empty.
SeedPair seed_pair_from_json(const json& j);

json sequence_to_json(const MutationSequence& s);
/// Accepts {"dirs": [...]} or a bare array.
MutationSequence sequence_from_json(const json& j);

json permutation_to_json(const Permutation& p);
json verdict_to_json(const SequenceVerdict& v);
SequenceVerdict verdict_from_json(const json& j);

/// Trace as an array of {"step": k, "seed": .., "c_vector": .., "color": "green"|"red"}.
json trace_to_json(const SequenceTrace& t);

}  // namespace greenseq::json
