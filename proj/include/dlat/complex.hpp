#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dlat/poset.hpp"

namespace dlat {

using Simplex = std::vector<Index>;  // sorted vertex indices

class SimplicialComplex {
 public:
  SimplicialComplex() = default;
  // Vertices are re-indexed in label order; a vertex that lies in no
  // simplex becomes an isolated vertex. Only maximal simplices are kept.
  SimplicialComplex(std::vector<std::string> vertex_labels, const std::vector<Simplex>& simplices);

  std::size_t vertex_count() const { return labels_.size(); }
  const std::vector<std::string>& vertex_labels() const { return labels_; }
  const std::string& vertex_label(std::size_t v) const { return labels_[v]; }
  std::optional<std::size_t> find_vertex(const std::string& l) const;
  const std::vector<Simplex>& facets() const { return facets_; }
  int dim() const;  // -1 when there are no vertices
  bool empty() const { return labels_.empty(); }

  bool contains(const Simplex& s) const;
  // Every nonempty face once, by size then lexicographically.
  std::vector<Simplex> faces() const;
  void for_each_face(const std::function<void(const Simplex&)>& f) const;
  std::vector<std::uint64_t> f_vector() const;  // f[i] = number of i-dimensional faces

  // Lk(s) = {t : t ∩ s = ∅, t ∪ s ∈ K}, vertex labels kept.
  SimplicialComplex link(const Simplex& s) const;
  // Poset of nonempty faces under inclusion, labels "{v,...}".
  Poset face_poset() const;
  std::string simplex_label(const Simplex& s) const;

  bool operator==(const SimplicialComplex& o) const { return labels_ == o.labels_ && facets_ == o.facets_; }

 private:
  std::vector<std::string> labels_;
  std::vector<Simplex> facets_;
};

nlohmann::json complex_to_json(const SimplicialComplex& k);
SimplicialComplex complex_from_json(const nlohmann::json& doc);  // ParseError

// The (n-1)-simplex on vertices "1".."n".
SimplicialComplex full_simplex(int n);

}  // namespace dlat
