#pragma once

#include <ostream>
#include <string>

#include "json.hpp"

namespace semitall {

using json = nlohmann::json;

// Serializes like json::dump, except floating-point numbers are written with
// 17 significant digits ("%.17g") so every double round-trips exactly.
// Non-finite values become null.
std::string dump_json(const json& doc, int indent = 2);
void write_json(std::ostream& os, const json& doc, int indent = 2);

std::string format_double(double v);

}  // namespace semitall
