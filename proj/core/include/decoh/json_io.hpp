#pragma once

// JSON documents for the core types. Readers are strict: unknown keys,
// missing required keys and wrong types raise ConfigError.

#include <initializer_list>
#include <string>

#include <nlohmann/json.hpp>

#include "decoh/quadrature.hpp"
#include "decoh/types.hpp"

namespace decoh {

using Json = nlohmann::json;

/// Throws ConfigError if `obj` is not an object or has keys outside `allowed`.
void check_keys(const Json& obj, std::initializer_list<const char*> allowed,
                const std::string& context);

double get_number(const Json& obj, const char* key, const std::string& context);
double get_number_or(const Json& obj, const char* key, double fallback, const std::string& context);

/// Number rounded to 12 significant digits, as written to every output.
Json rounded(double x);

Json to_json(Vec3 v);
Vec3 vec3_from_json(const Json& j, const std::string& context = "vector");

/// {"channels": [{"label", "bohr_frequency", "dipole_strength"}, ...]}
Json to_json(const AtomModel& atom);
AtomModel atom_from_json(const Json& j);

/// {"type": "constant", "position": [x, y, z]} or
/// {"type": "sampled", "times": [...], "positions": [[x, y, z], ...]}
Json to_json(const Path& path);
Path path_from_json(const Json& j);

/// {"path1", "path2", "duration"}
Json to_json(const PathPair& pair);
PathPair path_pair_from_json(const Json& j);

/// "threads" is accepted on input but never written.
Json to_json(const QuadratureSpec& spec);
QuadratureSpec quadrature_from_json(const Json& j);

Json to_json(const RateReport& report);
RateReport rate_report_from_json(const Json& j);

}  // namespace decoh
