#pragma once

#include <string>

#include "vqfp/certify.hpp"
#include "vqfp/duality.hpp"
#include "vqfp/model.hpp"
#include "vqfp/oracle.hpp"
#include "vqfp/scalarize.hpp"

#include "json.hpp"

namespace vqfp {

using Json = nlohmann::ordered_json;

/// Parses, symmetrizes and validates an instance file. ParseError for
/// malformed input, ValidationError for invariant violations.
ProblemInstance load_instance(const std::string& path, const Tolerances& tol = {});
ProblemInstance instance_from_json(const Json& j, const Tolerances& tol = {});

/// 17-significant-digit round trip.
Json instance_to_json(const ProblemInstance& p);
void save_instance(const ProblemInstance& p, const std::string& path);

Json to_json(const Vector& v);
Json to_json(const Matrix& M);
Json to_json(const Certificate& cert);
Json to_json(const DominanceReport& rep);
Json to_json(const MultiplierPair& mp);
Json to_json(const DualPoint& dp);
Json to_json(const DinkelbachResult& dr);

Vector vector_from_json(const Json& j, const std::string& what);

/// Comma-separated decimals with dot separator, locale independent.
Vector parse_vector(const std::string& text);

}  // namespace vqfp
