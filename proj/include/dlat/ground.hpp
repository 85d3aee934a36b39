#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dlat/field.hpp"
#include "dlat/linalg.hpp"
#include "dlat/poset.hpp"

namespace dlat {

enum class Kind { Boolean, Partition, Subspace, Uniform, Formed, Custom };
std::string kind_name(Kind k);

// A bounded finite poset with a symmetric compatibility predicate standing
// in for Sub(X, ⊔). compat(x, bottom) is always true.
struct GroundStructure {
  Kind kind = Kind::Custom;
  std::string spec;
  PosetPtr base;
  std::size_t bottom = 0, top = 0;
  std::function<bool(std::size_t, std::size_t)> compat;
  // Atom -> labels of its fiber; empty when the structure has none.
  std::map<std::size_t, std::vector<std::string>> atom_bases;
  std::map<std::string, std::int64_t> meta;

  const Poset& poset() const { return *base; }
  std::size_t size() const { return base->size(); }
  int h(std::size_t x) const { return base->height(x); }
  int height() const { return base->height(top); }
  const std::string& label(std::size_t x) const { return base->label(x); }
  std::vector<std::size_t> atoms() const;
  bool has_atom_bases() const { return !atom_bases.empty(); }
};

using GroundPtr = std::shared_ptr<const GroundStructure>;

GroundStructure boolean_lattice(int n);
GroundStructure partition_lattice(int n);
GroundStructure subspace_lattice(std::uint32_t q, int n);
GroundStructure uniform_matroid_flats(int n, int k);

enum class FormKind { Unitary, Symplectic, Gram };
enum class Involution { Identity, Frobenius };
// Unitary: q is the subfield size; the space lives over GF(q^2).
// Gram: q is the field size, gram entries are field codes.
GroundStructure formed_space(FormKind kind, std::uint32_t q, int dim, const Mat& gram = {},
                             Involution sigma = Involution::Identity);

// Custom lattice from a poset; compat = no common nonzero lower bound.
GroundStructure load_lattice(const Poset& p, const std::string& name = "custom");
GroundStructure load_lattice_json(const nlohmann::json& doc);  // ParseError, UnboundedError

// The lower interval [bottom, y] as a ground structure with inherited
// compatibility and atom bases; labels are preserved.
GroundStructure restrict_below(const GroundStructure& gs, std::size_t y);

// The two small lattices used throughout the examples and tests.
Poset figure2_poset();
Poset figure5_poset();

// Lattice compatibility: down(x) ∩ down(y) = {bottom}.
std::function<bool(std::size_t, std::size_t)> meet_compat(PosetPtr p, std::size_t bottom);

}  // namespace dlat
