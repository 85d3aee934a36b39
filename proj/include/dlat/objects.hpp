#pragma once

#include <memory>
#include <optional>

#include "dlat/decomp.hpp"
#include "dlat/derived.hpp"
#include "dlat/ground.hpp"

namespace dlat {

// Lazily built derived objects of one ground structure.
class Objects {
 public:
  explicit Objects(GroundStructure gs) : gs_(std::move(gs)) {}

  const GroundStructure& gs() const { return gs_; }
  const std::vector<Decomp>& full();
  const std::vector<Decomp>& weak_full();
  const DecompPoset& D();
  const DecompPoset& PD();
  const DecompPoset& Dw();
  const DecompPoset& PDw();
  const WordPoset& OD();
  const WordPoset& OPD();
  const Poset& subh();
  const FrameComplexes& frames();
  const SimplicialComplex& F() { return frames().F; }
  const SimplicialComplex& PF() { return frames().PF; }
  const Inflation& B();   // MissingFiberError without atom bases
  const Inflation& PB();
  const WordPoset& OF();
  const WordPoset& OPF();
  const WordPoset& OB();
  const WordPoset& OPB();
  const SimplicialComplex& bergman();

 private:
  GroundStructure gs_;
  std::optional<std::vector<Decomp>> full_, weak_;
  std::optional<DecompPoset> d_, pd_, dw_, pdw_;
  std::optional<WordPoset> od_, opd_, of_, opf_, ob_, opb_;
  std::optional<Poset> subh_;
  std::optional<FrameComplexes> frames_;
  std::optional<Inflation> b_, pb_;
  std::optional<SimplicialComplex> bergman_;
};

}  // namespace dlat
