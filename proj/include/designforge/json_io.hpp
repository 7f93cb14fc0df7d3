#pragma once

#include <string>

#include <json.hpp>

#include "designforge/design_core.hpp"
#include "designforge/hadamard.hpp"
#include "designforge/search.hpp"

namespace designforge {

using nlohmann::json;

// Malformed documents raise DesignError.
json group_to_json(const FiniteAbelianGroup& g);
FiniteAbelianGroup group_from_json(const json& j);
json element_to_json(const GroupElement& a);
GroupElement element_from_json(const FiniteAbelianGroup& g, const json& j);

// {"group", "forbidden", "blocks", "declared", "provenance"}. A plain DF
// declares its single index as "lambda".
json family_to_json(const DifferenceFamily& f);
DifferenceFamily family_from_json(const json& j);

json report_to_json(const VerificationReport& r);

json spec_to_json(const SearchSpec& s);
SearchSpec spec_from_json(const json& j);
// Family document extended with "spec", "seed" and "nodes".
json certificate_to_json(const Certificate& c, const SearchSpec& s);

json matrix_to_json(const SignMatrix& m, const json& provenance = json::object());
SignMatrix matrix_from_json(const json& j);

json fingerprint_to_json(const Fingerprint& f);

// Parses a whole file; throws DesignError on IO or syntax errors.
json read_json_file(const std::string& path);
// Two-space indented, trailing newline.
std::string dump(const json& j);

}  // namespace designforge
