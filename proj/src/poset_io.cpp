#include "dlat/poset_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "dlat/errors.hpp"

namespace dlat {

nlohmann::json poset_to_json(const Poset& p, const std::string& name) {
  nlohmann::json covers = nlohmann::json::array();
  for (std::size_t x = 0; x < p.size(); ++x)
    for (auto y : p.upper_covers(x)) covers.push_back({x, y});
  return {{"name", name}, {"elements", p.labels()}, {"covers", covers}};
}

Poset poset_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("elements") || !doc["elements"].is_array())
    throw ParseError("poset document needs an \"elements\" array");
  std::vector<std::string> labels;
  for (auto& e : doc["elements"]) {
    if (e.is_string()) labels.push_back(e.get<std::string>());
    else if (e.is_number_integer()) labels.push_back(std::to_string(e.get<long long>()));
    else throw ParseError("element labels must be strings");
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (doc.contains("covers")) {
    if (!doc["covers"].is_array()) throw ParseError("\"covers\" must be an array");
    for (auto& c : doc["covers"]) {
      if (!c.is_array() || c.size() != 2 || !c[0].is_number_unsigned() || !c[1].is_number_unsigned())
        throw ParseError("each cover must be a pair of element indices");
      auto a = c[0].get<std::size_t>(), b = c[1].get<std::size_t>();
      if (a >= labels.size() || b >= labels.size()) throw ParseError("cover index out of range");
      pairs.emplace_back(a, b);
    }
  }
  return Poset::from_pairs(std::move(labels), pairs);
}

namespace {
std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}
}  // namespace

std::string poset_to_dot(const Poset& p, const std::string& name) {
  std::ostringstream os;
  os << "digraph " << dot_quote(name) << " {\n  rankdir=BT;\n";
  std::map<int, std::vector<std::size_t>> ranks;
  for (std::size_t x = 0; x < p.size(); ++x) ranks[p.height(x)].push_back(x);
  for (auto& [h, xs] : ranks) {
    os << "  { rank=same;";
    for (auto x : xs) os << ' ' << dot_quote(p.label(x)) << ';';
    os << " }  // height " << h << '\n';
  }
  for (std::size_t x = 0; x < p.size(); ++x)
    for (auto y : p.upper_covers(x)) os << "  " << dot_quote(p.label(x)) << " -> " << dot_quote(p.label(y)) << ";\n";
  os << "}\n";
  return os.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IOError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IOError("cannot write " + path);
  out << content;
  if (!out) throw IOError("write failed for " + path);
}

nlohmann::json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(what + ": " + e.what());
  }
}

}  // namespace dlat
