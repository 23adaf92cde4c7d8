#pragma once

#include <string>

#include "json.hpp"

#include "bgx/grid.hpp"
#include "bgx/polygauss.hpp"

namespace bgx {

// JSON container for fields; the schema is described in docs/field-format.md.
nlohmann::json to_json(const PolyGaussField& u);
nlohmann::json to_json(const GridField& u);
PolyGaussField polygauss_from_json(const nlohmann::json& j);
GridField grid_from_json(const nlohmann::json& j);

// Writes to path via a temporary file in the same directory and a rename.
void write_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace bgx
