#pragma once

// Tensor file format: {"shape": [d1, d2, d3], "data": [...]} where data is
// the row-major flattening of t_{ijk} (i slowest, k fastest), written with
// 17 significant digits.

#include <filesystem>
#include <string>

#include "semitall/json_writer.hpp"
#include "semitall/tensorcore.hpp"

namespace semitall {

json tensor_to_json(const Tensor3& t);
Tensor3 tensor_from_json(const json& doc);

std::string serialize_tensor(const Tensor3& t);
Tensor3 parse_tensor(const std::string& text);

void save_tensor(const std::filesystem::path& path, const Tensor3& t);
Tensor3 load_tensor(const std::filesystem::path& path);

}  // namespace semitall
