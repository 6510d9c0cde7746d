#pragma once

#include <string>

#include <json.hpp>

#include "fssm/poly.hpp"

namespace fssm {

nlohmann::json mat_to_json(const Mat& A);
Mat mat_from_json(const nlohmann::json& j);
nlohmann::json cmat_to_json(const MatC& A);  // {"re": [...], "im": [...]}
MatC cmat_from_json(const nlohmann::json& j);

void write_json(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json(const std::string& path);

}  // namespace fssm
