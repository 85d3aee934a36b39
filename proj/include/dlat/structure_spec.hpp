#pragma once

#include <map>
#include <string>

#include "dlat/ground.hpp"

namespace dlat {

// "name:key=value,key=value"; the json form keeps everything after the colon.
struct StructureSpec {
  std::string kind;
  std::map<std::string, std::string> params;
  std::string path;  // json:<path>
};

StructureSpec parse_structure_spec(const std::string& text);  // ParseError
// Builds the ground structure described by a spec string such as
// "boolean:n=3", "subspace:q=2,n=3", "json:<path>",
// "form:q=3,gram=<path>,sigma=identity".
GroundStructure build_structure(const std::string& text);

}  // namespace dlat
