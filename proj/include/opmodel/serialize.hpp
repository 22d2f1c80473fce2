#pragma once

#include "opmodel/variety.hpp"

#include <json.hpp>

namespace opm {

using Json = nlohmann::json;

// complex numbers are [re, im]; a bare number reads as real
Json complex_to_json(cplx z);
cplx complex_from_json(const Json& j);
// row-major nested arrays of complex entries
Json matrix_to_json(const CMatrix& A);
CMatrix matrix_from_json(const Json& j);

// {"terms": [{"word": [1, 2], "coeff": [re, im]}, ...]} in graded-lex order
Json series_to_json(const NcSeries& s);
NcSeries series_from_json(const Json& j, int n, int d);
// {"components": [...]} or the string "identity"
Json series_tuple_to_json(const NcSeriesTuple& f);
NcSeriesTuple series_tuple_from_json(const Json& j, int n, int d);

Json tuple_to_json(const OperatorTuple& X);
// {"matrices": [...]} only; generated and file-backed tuples are resolved by the scenario layer
OperatorTuple tuple_from_json(const Json& j);

// {"kind": "trivial" | "commutator" | "homogeneous" | "explicit", "generators": [series, ...]}
Json ideal_to_json(const IdealSpec& ideal);
IdealSpec ideal_from_json(const Json& j, int n, int d);

Json tolerances_to_json(const Tolerances& t);
Tolerances tolerances_from_json(const Json& j, Tolerances base = {});

// sorted keys, two-space indent, scalar arrays on one line, doubles as %.17g
std::string canonical_dump(const Json& j);
// FNV-1a 64, lowercase hex
std::string stable_hash(const std::string& bytes);

}  // namespace opm
