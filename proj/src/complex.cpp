#include "dlat/complex.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include <boost/functional/hash.hpp>

#include "dlat/errors.hpp"

namespace dlat {

namespace {
struct SimplexHash {
  std::size_t operator()(const Simplex& s) const { return boost::hash_range(s.begin(), s.end()); }
};
}  // namespace

SimplicialComplex::SimplicialComplex(std::vector<std::string> vertex_labels, const std::vector<Simplex>& simplices) {
  const std::size_t n = vertex_labels.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](auto a, auto b) { return vertex_labels[a] < vertex_labels[b]; });
  std::vector<Index> newidx(n);
  labels_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    newidx[perm[i]] = static_cast<Index>(i);
    labels_[i] = vertex_labels[perm[i]];
    if (i && labels_[i] == labels_[i - 1]) throw DuplicateLabelError("duplicate vertex label '" + labels_[i] + "'");
  }
  std::vector<Simplex> cand;
  cand.reserve(simplices.size() + n);
  std::vector<char> used(n, 0);
  for (auto& s : simplices) {
    Simplex t;
    for (auto v : s) {
      if (v >= n) throw UnknownElementError("simplex vertex out of range");
      t.push_back(newidx[v]);
      used[newidx[v]] = 1;
    }
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    if (!t.empty()) cand.push_back(std::move(t));
  }
  for (std::size_t v = 0; v < n; ++v)
    if (!used[v]) cand.push_back({static_cast<Index>(v)});
  std::sort(cand.begin(), cand.end(), [](const Simplex& a, const Simplex& b) {
    return a.size() != b.size() ? a.size() > b.size() : a < b;
  });
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  // keep a candidate unless a kept (larger) facet contains it
  std::vector<std::vector<std::size_t>> by_vertex(n);
  for (auto& s : cand) {
    bool covered = false;
    for (auto f : by_vertex[s[0]]) {
      const auto& fc = facets_[f];
      if (fc.size() > s.size() && std::includes(fc.begin(), fc.end(), s.begin(), s.end())) {
        covered = true;
        break;
      }
    }
    if (covered) continue;
    for (auto v : s) by_vertex[v].push_back(facets_.size());
    facets_.push_back(s);
  }
  std::sort(facets_.begin(), facets_.end());
}

std::optional<std::size_t> SimplicialComplex::find_vertex(const std::string& l) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), l);
  if (it == labels_.end() || *it != l) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

int SimplicialComplex::dim() const {
  int d = -1;
  for (auto& f : facets_) d = std::max(d, static_cast<int>(f.size()) - 1);
  return d;
}

bool SimplicialComplex::contains(const Simplex& s) const {
  if (s.empty()) return true;
  for (auto& f : facets_)
    if (std::includes(f.begin(), f.end(), s.begin(), s.end())) return true;
  return false;
}

void SimplicialComplex::for_each_face(const std::function<void(const Simplex&)>& fn) const {
  std::unordered_set<Simplex, SimplexHash> seen;
  for (auto& f : facets_) {
    const std::size_t k = f.size();
    if (k > 30) throw SizeLimitError("facet too large to enumerate faces");
    for (std::uint64_t m = 1; m < (std::uint64_t(1) << k); ++m) {
      Simplex s;
      for (std::size_t i = 0; i < k; ++i)
        if (m >> i & 1) s.push_back(f[i]);
      if (seen.insert(s).second) fn(s);
    }
  }
}

std::vector<Simplex> SimplicialComplex::faces() const {
  std::vector<Simplex> out;
  for_each_face([&](const Simplex& s) { out.push_back(s); });
  std::sort(out.begin(), out.end(), [](const Simplex& a, const Simplex& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

std::vector<std::uint64_t> SimplicialComplex::f_vector() const {
  std::vector<std::uint64_t> f(std::max(0, dim() + 1), 0);
  for_each_face([&](const Simplex& s) { ++f[s.size() - 1]; });
  return f;
}

SimplicialComplex SimplicialComplex::link(const Simplex& s) const {
  std::vector<Simplex> parts;
  for (auto& f : facets_) {
    if (!std::includes(f.begin(), f.end(), s.begin(), s.end())) continue;
    Simplex rest;
    std::set_difference(f.begin(), f.end(), s.begin(), s.end(), std::back_inserter(rest));
    if (!rest.empty()) parts.push_back(std::move(rest));
  }
  // restrict the vertex set to vertices actually used
  std::vector<char> used(labels_.size(), 0);
  for (auto& p : parts)
    for (auto v : p) used[v] = 1;
  std::vector<Index> remap(labels_.size(), 0);
  std::vector<std::string> labels;
  for (std::size_t v = 0; v < labels_.size(); ++v)
    if (used[v]) {
      remap[v] = static_cast<Index>(labels.size());
      labels.push_back(labels_[v]);
    }
  for (auto& p : parts)
    for (auto& v : p) v = remap[v];
  return SimplicialComplex(std::move(labels), parts);
}

std::string SimplicialComplex::simplex_label(const Simplex& s) const {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += labels_[s[i]];
  }
  return out + "}";
}

Poset SimplicialComplex::face_poset() const {
  auto fs = faces();
  std::unordered_map<Simplex, std::size_t, SimplexHash> idx;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    idx.emplace(fs[i], i);
    labels.push_back(simplex_label(fs[i]));
  }
  std::vector<std::pair<std::size_t, std::size_t>> covers;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (fs[i].size() < 2) continue;
    for (std::size_t drop = 0; drop < fs[i].size(); ++drop) {
      Simplex t;
      for (std::size_t j = 0; j < fs[i].size(); ++j)
        if (j != drop) t.push_back(fs[i][j]);
      covers.emplace_back(idx.at(t), i);
    }
  }
  return Poset::from_pairs(std::move(labels), covers);
}

nlohmann::json complex_to_json(const SimplicialComplex& k) {
  return {{"vertices", k.vertex_labels()}, {"facets", k.facets()}};
}

SimplicialComplex complex_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("vertices") || !doc.contains("facets"))
    throw ParseError("complex document needs \"vertices\" and \"facets\"");
  try {
    auto labels = doc["vertices"].get<std::vector<std::string>>();
    auto facets = doc["facets"].get<std::vector<Simplex>>();
    return SimplicialComplex(std::move(labels), facets);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("complex document: ") + e.what());
  }
}

SimplicialComplex full_simplex(int n) {
  std::vector<std::string> labels;
  Simplex all;
  for (int i = 0; i < n; ++i) {
    labels.push_back(std::to_string(i + 1));
    all.push_back(static_cast<Index>(i));
  }
  return SimplicialComplex(std::move(labels), n ? std::vector<Simplex>{all} : std::vector<Simplex>{});
}

}  // namespace dlat
