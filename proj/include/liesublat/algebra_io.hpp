#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "liesublat/lie_algebra.hpp"

namespace liesublat {

using Json = nlohmann::ordered_json;

/// Algebra file document:
///   {"name": str, "p": int, "dim": int, "basis": [str],
///    "brackets": [{"i": int, "j": int, "coeffs": [int]}]}
/// with i < j zero-indexed and coefficients in [0, p). Only nonzero products
/// are written.
Json algebra_to_json(const LieAlgebra& L);

/// Validates the document and builds the algebra. Schema problems throw
/// SchemaError naming the first bad field as a JSON pointer; a Jacobi failure
/// throws JacobiError.
LieAlgebra algebra_from_json(const Json& doc);

LieAlgebra load_algebra_file(const std::filesystem::path& path);
void save_algebra_file(const LieAlgebra& L, const std::filesystem::path& path);

/// Hex SHA-256 of the structure constants (prime, dimension, products);
/// names do not contribute.
std::string algebra_sha256(const LieAlgebra& L);

/// Hex SHA-256 of an arbitrary byte string.
std::string sha256_hex(const std::string& bytes);

}  // namespace liesublat
