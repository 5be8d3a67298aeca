#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "entcap/channel.hpp"

namespace entcap {

// Channel spec document, one of:
//   {"name": ..., "dim_in": n, "dim_out": m, "kraus": [matrix, ...]}
//   {"preset": name, "params": [reals]}
// A matrix is a list of rows; each entry is a two-element [re, im] pair.
// Validation failures name the offending Kraus index or field.
QuantumChannel channel_from_json(const nlohmann::json& doc);
nlohmann::json channel_to_json(const QuantumChannel& c);

// File variants; parse errors carry the parser's line context.
QuantumChannel load_channel_spec(const std::filesystem::path& path);
void save_channel_spec(const QuantumChannel& c, const std::filesystem::path& path);

// `what` names the matrix in error messages, e.g. "kraus[2]".
Matrix matrix_from_json(const nlohmann::json& rows, const std::string& what);
nlohmann::json matrix_to_json(const Matrix& m);

}  // namespace entcap
