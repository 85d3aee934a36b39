#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "dlat/budget.hpp"
#include "dlat/ground.hpp"

namespace dlat {

// Sorted element indices of the base poset, none equal to bottom.
using Decomp = std::vector<Index>;

struct DecompCheck {
  bool ok = true;
  std::string reason;
  explicit operator bool() const { return ok; }
};

// Strict mode: joins of all subsets exist inside [0, ceiling], heights add,
// the 2^k joins are distinct and closed under meets, the full join is the
// ceiling (default: top), and all pairs are compatible. Weak mode drops the
// height condition.
DecompCheck is_full_decomposition(const GroundStructure& gs, const Decomp& s, bool weak,
                                  std::optional<std::size_t> ceiling = std::nullopt);

// Memoized enumeration of the decompositions of every lower interval.
class DecompositionEngine {
 public:
  DecompositionEngine(const GroundStructure& gs, bool weak, std::uint64_t budget = default_budget());
  // Decompositions of [0, c], sorted by label.
  const std::vector<Decomp>& below(std::size_t c);
  const std::vector<Decomp>& full() { return below(gs_.top); }
  std::uint64_t nodes() const { return budget_.used(); }

 private:
  const GroundStructure& gs_;
  bool weak_;
  Budget budget_;
  std::map<std::size_t, std::vector<Decomp>> memo_;
};

std::vector<Decomp> enumerate_decompositions(const GroundStructure& gs, bool weak);

std::string decomp_label(const GroundStructure& gs, const Decomp& d);
void sort_by_label(const GroundStructure& gs, std::vector<Decomp>& v);

enum class DecompKind { D, PD, Dw, PDw };
std::string decomp_kind_name(DecompKind k);

struct DecompPoset {
  DecompKind kind = DecompKind::D;
  std::vector<Decomp> elements;  // elements[i] is poset element i
  Poset poset;
  std::optional<std::size_t> index_of(const Decomp& d) const;
  std::map<Decomp, std::size_t> lookup;
};

// Refinement: every part of t lies below some part of s.
bool refines(const GroundStructure& gs, const Decomp& t, const Decomp& s);

DecompPoset build_decomposition_poset(const GroundStructure& gs, DecompKind kind);
// PD from an already enumerated family of full decompositions.
DecompPoset partial_from_full(const GroundStructure& gs, const std::vector<Decomp>& full, DecompKind kind);
DecompPoset poset_of(const GroundStructure& gs, std::vector<Decomp> elems, DecompKind kind);

nlohmann::json decomp_poset_to_json(const GroundStructure& gs, const DecompPoset& dp);

std::size_t phi(const GroundStructure& gs, const Decomp& s);  // InvariantError if the join is missing
// Bottom plus every element occurring in a full decomposition.
std::vector<std::size_t> sub_h_elements(const GroundStructure& gs, const std::vector<Decomp>& full);
Poset sub_h(const GroundStructure& gs);

std::vector<std::size_t> h_complements(const GroundStructure& gs, std::size_t x, std::size_t y);

enum class Property { LI, EX, CM, E1E2, UNIQUE };
std::string property_name(Property p);
std::optional<Property> parse_property(const std::string& s);

struct PropertyResult {
  Property property;
  bool holds = true;
  std::string certificate;  // human-readable counterexample
  nlohmann::json witness;   // structured counterexample (null when holds)
  std::size_t instances = 0;
};

PropertyResult check_property(const GroundStructure& gs, Property which);

}  // namespace dlat
