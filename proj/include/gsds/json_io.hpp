// JSON serialization for the pipeline artifacts, with a byte-stable dump:
// object keys are sorted and every floating-point number prints through
// %.17g, so identical runs produce identical bytes.

#pragma once

#include <string>

#include "gsds/eliminate.hpp"
#include "gsds/invariants.hpp"
#include "gsds/scene.hpp"
#include "gsds/singular.hpp"
#include "json.hpp"

namespace gsds {

// nlohmann dump with fixed float formatting (17 significant digits).
std::string stable_dump(const nlohmann::json& j, int indent = 2);

nlohmann::json to_json(const GenericityCheck& c);
nlohmann::json to_json(const GsdsProblem& p);
nlohmann::json to_json(const ImplicitCurve& c);
nlohmann::json to_json(const SolveReport& r);
nlohmann::json to_json(const InvariantSet& s);
nlohmann::json to_json(const InvariantReport& r);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace gsds
