#pragma once

#include <string>

#include <json.hpp>

#include "entlock/measures.hpp"

namespace entlock {

using Json = nlohmann::ordered_json;

// Matrices and states are stored as row-major "re"/"im" arrays. Every reader
// throws Error(Parse) naming the offending field.

Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j, const std::string& where = "matrix");

/// {"kind": "density", "dims": [...], "re": [...], "im": [...]}
Json state_to_json(const DensityOperator& rho);
/// {"kind": "pure", "dims": [...], "re": [...], "im": [...], "purifying_factor": k?}
Json state_to_json(const PureState& psi);
/// Accepts either kind; a pure state (or a flat array of length prod(dims)) becomes |psi><psi|.
DensityOperator state_from_json(const Json& j);
PureState pure_state_from_json(const Json& j);

/// {"d_in", "d_out", "kraus": [matrix...]}
Json channel_to_json(const KrausChannel& ch);
KrausChannel channel_from_json(const Json& j, const std::string& where = "channel");

Json opt_config_to_json(const OptConfig& cfg);
OptConfig opt_config_from_json(const Json& j);
Json opt_report_to_json(const OptReport& rep);
std::string to_string(ParamKind kind);

/// Real numbers with non-finite values written as null.
Json number_or_null(double x);

Json read_json_file(const std::string& path);
DensityOperator load_state_file(const std::string& path);

}  // namespace entlock
