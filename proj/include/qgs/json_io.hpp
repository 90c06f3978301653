#pragma once

#include <json.hpp>
#include <string>

#include "qgs/ac.hpp"
#include "qgs/coupling.hpp"
#include "qgs/reduction.hpp"
#include "qgs/tree.hpp"

namespace qgs {

using Json = nlohmann::ordered_json;

// Shortest round-trip decimal representation; keeps golden files stable.
std::string format_double(double v);
std::string format_complex(Complex v);

Json to_json(const GpiCouplingA& c);
GpiCouplingA coupling_from_json(const Json& j);

Json to_json(const RadialTreeSpec& spec);
RadialTreeSpec tree_from_json(const Json& j);

Json to_json(const HalflineProblem& p);
HalflineProblem problem_from_json(const Json& j);
Json decomposition_to_json(const std::vector<HalflineProblem>& problems);

Json to_json(const GpiMeasureSet& s);
GpiMeasureSet measures_from_json(const Json& j);

Json to_json(const MainTheoremReport& r);
Json to_json(const ValidationReport& r);

// Canonical serialization used for files and stdout: 2-space indent plus a
// trailing newline.
std::string dump(const Json& j);

}  // namespace qgs
