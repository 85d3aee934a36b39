#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dlat/complex.hpp"
#include "dlat/decomp.hpp"
#include "dlat/ground.hpp"
#include "dlat/poset.hpp"

namespace dlat {

// Frame complexes on the atoms of the base poset (vertex labels = atom labels).
struct FrameComplexes {
  SimplicialComplex PF;  // partial frames
  SimplicialComplex F;   // partial frames inside a full frame
  std::vector<Decomp> full_frames;
  bool equal = false;
};
FrameComplexes frame_complexes(const GroundStructure& gs, const std::vector<Decomp>& full);
FrameComplexes frame_complexes(const GroundStructure& gs);

using Fibers = std::map<std::string, std::vector<std::string>>;  // vertex label -> P_x

struct Inflation {
  SimplicialComplex complex;        // vertices "(x,a)"
  std::vector<std::size_t> deflation;  // inflated vertex -> vertex of K
};
// MissingFiberError if some vertex of K has no (or an empty) fiber.
Inflation inflate(const SimplicialComplex& k, const Fibers& p);
// Fibers from the structure's atom bases (MissingFiberError when absent).
Fibers atom_fibers(const GroundStructure& gs);
// Every vertex gets the fiber {"1",...,"m"}.
Fibers uniform_fibers(const SimplicialComplex& k, int m);

// Tuples of distinct elements with a realized partial order.
struct WordPoset {
  std::vector<std::vector<Index>> words;  // words[i] is poset element i
  Poset poset;
  std::vector<std::size_t> forget;        // element of the unordered poset / face list
};

std::string word_label(const std::vector<std::string>& letters);

// OD / OPD: all arrangements of the elements of dp, ordered by
// order-preserving refinement; forget maps into dp.poset.
WordPoset ordered_version(const GroundStructure& gs, const DecompPoset& dp);
// Nonempty injective words supported on simplices of k, subword order;
// forget maps into the face list k.faces().
WordPoset injective_words(const SimplicialComplex& k);

// Augmented Bergman complex on vertices "frm:<atom>" and "flt:<element>".
SimplicialComplex augmented_bergman(const GroundStructure& gs, const SimplicialComplex& frames);
// Top-removed non-Hausdorff mapping cylinder of the span map on the
// nonempty faces of the frame complex.
Poset bergman_cylinder(const GroundStructure& gs, const SimplicialComplex& frames);

// Nonempty chains of p ordered by inclusion, labels "[a<b<...]".
struct ChainPoset {
  Poset poset;
  std::vector<std::vector<Index>> chains;  // bottom to top, indexed like poset
  std::map<std::vector<Index>, std::size_t> lookup;  // sorted indices -> element
};
ChainPoset chain_poset(const Poset& p);

struct CharneyResult {
  Poset G;                 // ordered size-2 decompositions, zigzag order
  ChainPoset chains;       // face poset of the order complex of G
  std::vector<std::size_t> beta;  // redm OD element -> element of chains
  Poset source;            // (redm OD)^op
  bool injective = false;
  bool downward_closed = false;
  bool order_embedding = false;
  bool rank_preserving = false;
  bool surjective = false;
  bool isomorphism = false;
};
CharneyResult charney(const GroundStructure& gs, const DecompPoset& d);

struct GMapResult {
  Poset source;            // redm OD
  Poset proper_subh;
  ChainPoset chains;       // chains of the proper part of Sub_h
  Poset target;            // chains.poset^op
  std::vector<std::size_t> image;
  bool order_preserving = false;
  bool injective = false;
  bool surjective = false;
  bool order_reflecting = false;
  bool isomorphism = false;
};
GMapResult g_map(const GroundStructure& gs, const DecompPoset& d);

}  // namespace dlat
