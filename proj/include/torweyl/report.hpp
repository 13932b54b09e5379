#pragma once

#include <string>

#include "json.hpp"
#include "torweyl/action.hpp"
#include "torweyl/chars.hpp"
#include "torweyl/decide.hpp"
#include "torweyl/exactlin.hpp"

namespace torweyl {

using Json = nlohmann::json;

// Integers are emitted as JSON numbers when they fit the double-exact window
// (|v| < 2^53) and as decimal strings beyond; rationals always as strings.
Json int_to_json(const Int& v);
Json vec_to_json(const IntVec& v);
Json rat_vec_to_json(const RatVec& v);
Json matrix_to_json(const IntMatrix& m);
Json ll_vec_to_json(const std::vector<long long>& v);

// Reads {"r": ..., "s": ..., "L": [[...], ...]} with integer entries given
// as numbers or decimal strings; throws ParseError on malformed documents.
TorusAction action_from_json(const Json& doc);
Json action_to_json(const TorusAction& a);

Json char_class_to_json(const CharClass& c);
Json slice_to_json(const SliceData& sd);
Json series_to_json(const DimensionSeries& s);
Json analysis_to_json(const AnalysisReport& rep);

// FNV-1a 64-bit digest, rendered as 16 hex digits.
std::string fnv1a_digest(const std::string& data);

}  // namespace torweyl
