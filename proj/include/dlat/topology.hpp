#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dlat/complex.hpp"
#include "dlat/poset.hpp"

namespace dlat {

enum class Ring { Z, Q };
std::string ring_name(Ring r);
std::optional<Ring> parse_ring(const std::string& s);

// Reduced homology. The augmentation is part of the chain complex, so the
// empty complex has H~_{-1} = Z and every nonempty one has H~_{-1} = 0.
struct HomologyResult {
  Ring ring = Ring::Z;
  std::map<int, std::int64_t> betti;                 // nonzero ranks only
  std::map<int, std::vector<std::string>> torsion;   // elementary divisors > 1 (Z only)
  std::int64_t euler = 0;                            // reduced Euler characteristic
  int dim = -1;                                      // dimension of the complex
  std::optional<bool> spherical;
  std::optional<bool> cm;
  std::optional<std::string> certificate;

  std::int64_t rank(int degree) const;
  bool free() const { return torsion.empty(); }
  bool acyclic() const { return betti.empty() && torsion.empty(); }
  // Reduced homology vanishes outside d and is free in d.
  bool concentrated_in(int d) const;
};

nlohmann::json homology_to_json(const HomologyResult& h);

// Faces of the order complex are the nonempty chains of p.
SimplicialComplex order_complex(const Poset& p);

// Sum over k >= -1 of (-1)^k times the number of k-faces.
std::int64_t reduced_euler(const Poset& p);
std::int64_t reduced_euler(const SimplicialComplex& k);

HomologyResult homology(const SimplicialComplex& k, Ring ring = Ring::Z);
HomologyResult homology(const Poset& p, Ring ring = Ring::Z);

// Homological sphericity: reduced homology concentrated and free in expected_dim.
HomologyResult is_spherical(const Poset& p, int expected_dim, Ring ring = Ring::Z);
HomologyResult is_spherical(const SimplicialComplex& k, int expected_dim, Ring ring = Ring::Z);

struct CMVerdict {
  bool cm = true;
  std::string certificate;  // first failing interval
  std::size_t intervals = 0;
};
// The whole poset and every S_{>x}, S_{<y}, (x,y) must be homologically
// spherical of dimension n-h(x)-1, h(y)-1, h(y)-h(x)-2 (n = height of S).
// With strip_bounds a unique maximum and minimum are removed first, so a
// bounded poset is judged by its proper part.
CMVerdict homological_cm(const Poset& p, Ring ring = Ring::Q, bool strip_bounds = true);
CMVerdict homological_cm(const SimplicialComplex& k, Ring ring = Ring::Q);

}  // namespace dlat
