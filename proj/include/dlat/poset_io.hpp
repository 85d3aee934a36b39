#pragma once

#include <json.hpp>
#include <string>

#include "dlat/poset.hpp"

namespace dlat {

// {"name", "elements", "covers": [[i,j]...]} with element i < element j.
nlohmann::json poset_to_json(const Poset& p, const std::string& name);
// Accepts any relation pairs in "covers"; the order is their closure.
Poset poset_from_json(const nlohmann::json& doc);  // ParseError, CycleError
std::string poset_to_dot(const Poset& p, const std::string& name);

std::string read_text_file(const std::string& path);                             // IOError
void write_text_file(const std::string& path, const std::string& content);       // IOError
nlohmann::json parse_json_text(const std::string& text, const std::string& what);  // ParseError

}  // namespace dlat
