#include "dlat/objects.hpp"

namespace dlat {

const std::vector<Decomp>& Objects::full() {
  if (!full_) full_ = enumerate_decompositions(gs_, false);
  return *full_;
}

const std::vector<Decomp>& Objects::weak_full() {
  if (!weak_) weak_ = enumerate_decompositions(gs_, true);
  return *weak_;
}

const DecompPoset& Objects::D() {
  if (!d_) d_ = poset_of(gs_, full(), DecompKind::D);
  return *d_;
}

const DecompPoset& Objects::PD() {
  if (!pd_) pd_ = partial_from_full(gs_, full(), DecompKind::PD);
  return *pd_;
}

const DecompPoset& Objects::Dw() {
  if (!dw_) dw_ = poset_of(gs_, weak_full(), DecompKind::Dw);
  return *dw_;
}

const DecompPoset& Objects::PDw() {
  if (!pdw_) pdw_ = partial_from_full(gs_, weak_full(), DecompKind::PDw);
  return *pdw_;
}

const WordPoset& Objects::OD() {
  if (!od_) od_ = ordered_version(gs_, D());
  return *od_;
}

const WordPoset& Objects::OPD() {
  if (!opd_) opd_ = ordered_version(gs_, PD());
  return *opd_;
}

const Poset& Objects::subh() {
  if (!subh_) subh_ = gs_.poset().induced(sub_h_elements(gs_, full()));
  return *subh_;
}

const FrameComplexes& Objects::frames() {
  if (!frames_) frames_ = frame_complexes(gs_, full());
  return *frames_;
}

const Inflation& Objects::B() {
  if (!b_) b_ = inflate(F(), atom_fibers(gs_));
  return *b_;
}

const Inflation& Objects::PB() {
  if (!pb_) pb_ = inflate(PF(), atom_fibers(gs_));
  return *pb_;
}

const WordPoset& Objects::OF() {
  if (!of_) of_ = injective_words(F());
  return *of_;
}

const WordPoset& Objects::OPF() {
  if (!opf_) opf_ = injective_words(PF());
  return *opf_;
}

const WordPoset& Objects::OB() {
  if (!ob_) ob_ = injective_words(B().complex);
  return *ob_;
}

const WordPoset& Objects::OPB() {
  if (!opb_) opb_ = injective_words(PB().complex);
  return *opb_;
}

const SimplicialComplex& Objects::bergman() {
  if (!bergman_) bergman_ = augmented_bergman(gs_, F());
  return *bergman_;
}

}  // namespace dlat
