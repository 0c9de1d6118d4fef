#pragma once

#include <string>

#include <json.hpp>

#include "jumpconj/conjugacy.hpp"
#include "jumpconj/verification.hpp"

namespace jumpconj::io {

using nlohmann::json;

inline constexpr const char* kHandleFormat = "jumpconj-handle/1";

/// A number, a [num, den] pair, or a string "p/q" / decimal. Rejects NaN and
/// infinities with ParseError.
double number_from_json(const json& j, const std::string& what);

/// Map spec: {"domain": [a, b], "t", "family": "A"|"B", "value_at_t",
/// "left": {"kind": "affine"|"poly", "coeffs": [...]}, "right": {...}}.
JumpMap map_from_json(const json& j);
json map_to_json(const JumpMap& m);

/// Throws IoError when the file cannot be read, ParseError on malformed JSON.
json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
JumpMap load_map(const std::string& path);

/// {"interpolant": "piecewise_affine"|"monotone_cubic", "extra_pins": [[x, y], ...],
///  "endpoint_slopes": [[lo, hi], ...]} with null for an unset slope.
InitSpec init_spec_from_json(const json& j);

json init_to_json(const InitialHomeo& init);
InitialHomeo init_from_json(const json& j);

json params_to_json(const EvalParams& p);
EvalParams params_from_json(const json& j);

/// Everything needed to rebuild the conjugacy.
json handle_to_json(const Conjugacy& phi);
Conjugacy conjugacy_from_handle(const json& j);

json to_json(const ValidationReport& r);
json to_json(const PairDecision& d);
json to_json(const VerificationReport& r);
json to_json(const SmoothnessReport& r);
json to_json(const PinnedPoints& p);

}  // namespace jumpconj::io
