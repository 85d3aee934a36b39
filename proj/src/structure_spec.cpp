#include "dlat/structure_spec.hpp"

#include <set>

#include <fmt/format.h>

#include "dlat/errors.hpp"
#include "dlat/poset_io.hpp"

namespace dlat {

namespace {

long to_int(const StructureSpec& s, const std::string& key) {
  auto it = s.params.find(key);
  if (it == s.params.end()) throw ParseError(fmt::format("structure '{}' needs parameter {}", s.kind, key));
  try {
    std::size_t used = 0;
    long v = std::stol(it->second, &used);
    if (used != it->second.size()) throw ParseError("");
    return v;
  } catch (const std::exception&) {
    throw ParseError(fmt::format("parameter {}={} is not an integer", key, it->second));
  }
}

void expect_keys(const StructureSpec& s, const std::set<std::string>& keys) {
  for (auto& [k, v] : s.params)
    if (!keys.count(k)) throw ParseError(fmt::format("structure '{}' has no parameter '{}'", s.kind, k));
  for (auto& k : keys)
    if (!s.params.count(k)) throw ParseError(fmt::format("structure '{}' needs parameter {}", s.kind, k));
}

Mat read_gram(const std::string& path) {
  auto doc = parse_json_text(read_text_file(path), path);
  if (doc.is_object() && doc.contains("gram")) doc = doc["gram"];
  try {
    auto rows = doc.get<std::vector<std::vector<long>>>();
    Mat m;
    for (auto& r : rows) {
      if (r.size() != rows.size()) throw ParseError("Gram matrix in " + path + " is not square");
      Vec v;
      for (auto x : r) {
        if (x < 0) throw ParseError("Gram entries are field codes and must be nonnegative");
        v.push_back(static_cast<FiniteField::Elem>(x));
      }
      m.push_back(std::move(v));
    }
    if (m.empty()) throw ParseError("Gram matrix in " + path + " is empty");
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("Gram matrix in " + path + ": " + e.what());
  }
}

}  // namespace

StructureSpec parse_structure_spec(const std::string& text) {
  StructureSpec s;
  auto colon = text.find(':');
  if (colon == std::string::npos || colon == 0) throw ParseError("structure spec '" + text + "' has no 'kind:' prefix");
  s.kind = text.substr(0, colon);
  std::string rest = text.substr(colon + 1);
  if (s.kind == "json") {
    if (rest.empty()) throw ParseError("json spec needs a path");
    s.path = rest;
    return s;
  }
  std::size_t pos = 0;
  while (pos <= rest.size()) {
    auto comma = rest.find(',', pos);
    std::string item = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == item.size())
      throw ParseError("malformed parameter '" + item + "' in '" + text + "'");
    if (!s.params.emplace(item.substr(0, eq), item.substr(eq + 1)).second)
      throw ParseError("repeated parameter in '" + text + "'");
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return s;
}

GroundStructure build_structure(const std::string& text) {
  auto s = parse_structure_spec(text);
  auto narrow = [](long v, const char* what) {
    if (v < 0 || v > 1'000'000) throw SizeLimitError(fmt::format("{} = {} is out of range", what, v));
    return v;
  };
  if (s.kind == "json") return load_lattice_json(parse_json_text(read_text_file(s.path), s.path));
  if (s.kind == "boolean") {
    expect_keys(s, {"n"});
    return boolean_lattice(static_cast<int>(narrow(to_int(s, "n"), "n")));
  }
  if (s.kind == "partition") {
    expect_keys(s, {"n"});
    return partition_lattice(static_cast<int>(narrow(to_int(s, "n"), "n")));
  }
  if (s.kind == "subspace") {
    expect_keys(s, {"q", "n"});
    return subspace_lattice(static_cast<std::uint32_t>(narrow(to_int(s, "q"), "q")),
                            static_cast<int>(narrow(to_int(s, "n"), "n")));
  }
  if (s.kind == "uniform") {
    expect_keys(s, {"n", "k"});
    return uniform_matroid_flats(static_cast<int>(narrow(to_int(s, "n"), "n")),
                                 static_cast<int>(narrow(to_int(s, "k"), "k")));
  }
  if (s.kind == "unitary" || s.kind == "symplectic") {
    expect_keys(s, {"q", "n"});
    return formed_space(s.kind == "unitary" ? FormKind::Unitary : FormKind::Symplectic,
                        static_cast<std::uint32_t>(narrow(to_int(s, "q"), "q")),
                        static_cast<int>(narrow(to_int(s, "n"), "n")));
  }
  if (s.kind == "form") {
    expect_keys(s, {"q", "gram", "sigma"});
    const auto& sig = s.params.at("sigma");
    if (sig != "identity" && sig != "frobenius") throw ParseError("sigma must be identity or frobenius, got " + sig);
    Mat gram = read_gram(s.params.at("gram"));
    return formed_space(FormKind::Gram, static_cast<std::uint32_t>(narrow(to_int(s, "q"), "q")),
                        static_cast<int>(gram.size()), gram,
                        sig == "frobenius" ? Involution::Frobenius : Involution::Identity);
  }
  throw ParseError("unknown structure kind '" + s.kind + "'");
}

}  // namespace dlat
