#pragma once

#include <boost/dynamic_bitset.hpp>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dlat {

using Bits = boost::dynamic_bitset<std::uint64_t>;
using Index = std::uint32_t;

// Posets above this size keep only sparse up/down lists.
inline std::size_t dense_threshold = 4096;

class Poset {
 public:
  Poset() = default;

  // Reflexive-transitive closure of the pairs; CycleError on a cycle.
  static Poset from_pairs(std::vector<std::string> labels,
                          const std::vector<std::pair<std::size_t, std::size_t>>& pairs);

  // leq(i,j) on the caller's indices. The relation is checked to be a
  // partial order (OrderAxiomError otherwise). If `order` is given it
  // receives, for each new index, the caller index it came from.
  static Poset from_leq(std::vector<std::string> labels,
                        const std::function<bool(std::size_t, std::size_t)>& leq,
                        std::vector<std::size_t>* order = nullptr);

  // Strict covers on the caller's indices; `covers` must already be the
  // Hasse diagram of an order (no check beyond acyclicity).
  static Poset from_covers(std::vector<std::string> labels,
                           const std::vector<std::pair<std::size_t, std::size_t>>& covers,
                           std::vector<std::size_t>* order = nullptr);

  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  const std::string& label(std::size_t x) const { return labels_[x]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<std::size_t> find(const std::string& label) const;
  std::size_t at(const std::string& label) const;  // UnknownElementError

  bool leq(std::size_t x, std::size_t y) const;
  bool lt(std::size_t x, std::size_t y) const { return x != y && leq(x, y); }
  bool comparable(std::size_t x, std::size_t y) const { return leq(x, y) || leq(y, x); }

  // Inclusive up/down sets, sorted.
  const std::vector<Index>& up(std::size_t x) const { return up_[x]; }
  const std::vector<Index>& down(std::size_t x) const { return down_[x]; }
  Bits up_bits(std::size_t x) const;
  Bits down_bits(std::size_t x) const;
  bool dense() const { return !up_bits_.empty() || labels_.empty(); }

  const std::vector<Index>& upper_covers(std::size_t x) const { return cov_up_[x]; }
  const std::vector<Index>& lower_covers(std::size_t x) const { return cov_down_[x]; }
  std::size_t cover_count() const;
  std::size_t relation_size() const;

  // Longest chain (in edges) from a minimal element up to x.
  int height(std::size_t x) const { return height_[x]; }
  int height() const;  // -1 for the empty poset
  // Elements listed so that x < y implies x comes first.
  const std::vector<Index>& linear_extension() const { return topo_; }

  std::optional<std::size_t> bottom() const { return bottom_; }
  std::optional<std::size_t> top() const { return top_; }
  bool bounded() const { return bottom_.has_value() && top_.has_value(); }
  std::vector<std::size_t> minimal() const;
  std::vector<std::size_t> maximal() const;

  // Join (up) / meet (down) of s: the unique extremal element of the set of
  // common bounds, restricted to [floor, ceiling] when those are given.
  std::optional<std::size_t> join(const std::vector<std::size_t>& s,
                                  std::optional<std::size_t> ceiling = std::nullopt) const;
  std::optional<std::size_t> meet(const std::vector<std::size_t>& s,
                                  std::optional<std::size_t> floor = std::nullopt) const;
  std::optional<std::size_t> join(std::size_t a, std::size_t b) const { return join({a, b}); }
  std::optional<std::size_t> meet(std::size_t a, std::size_t b) const { return meet({a, b}); }

  std::int64_t mobius(std::size_t x, std::size_t y) const;  // NotComparableError

  Poset induced(const std::vector<std::size_t>& keep,
                std::vector<std::size_t>* order = nullptr) const;
  Poset filter(const std::function<bool(std::size_t)>& pred,
               std::vector<std::size_t>* order = nullptr) const;
  Poset interval(std::size_t x, std::size_t y, std::vector<std::size_t>* order = nullptr) const;
  Poset open_interval(std::size_t x, std::size_t y, std::vector<std::size_t>* order = nullptr) const;
  Poset below_strict(std::size_t x, std::vector<std::size_t>* order = nullptr) const;
  Poset above_strict(std::size_t x, std::vector<std::size_t>* order = nullptr) const;
  Poset proper_part(std::vector<std::size_t>* order = nullptr) const;  // UnboundedError
  Poset remove_top(std::vector<std::size_t>* order = nullptr) const;   // "redm"
  Poset opposite() const;

  bool operator==(const Poset& o) const;

 private:
  static Poset assemble(std::vector<std::string> labels, std::vector<std::vector<Index>> up,
                        std::vector<std::size_t>* order);
  void finish();

  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::vector<Index>> up_, down_;
  std::vector<Bits> up_bits_, down_bits_;
  std::vector<std::vector<Index>> cov_up_, cov_down_;
  std::vector<int> height_;
  std::vector<Index> topo_;
  std::optional<std::size_t> bottom_, top_;
};

using PosetPtr = std::shared_ptr<const Poset>;

Poset direct_product(const Poset& p, const Poset& q);
// Element count check helper: labels "(a,b)".
std::string pair_label(const std::string& a, const std::string& b);

struct PosetMap {
  PosetPtr source, target;
  std::vector<std::size_t> image;
  // NotOrderPreservingError unless x <= y implies image(x) <= image(y).
  PosetMap(PosetPtr s, PosetPtr t, std::vector<std::size_t> img);
};

// Non-Hausdorff mapping cylinder: T (labels "t:") below S (labels "s:"),
// with t < s whenever f(t) <= s. remove_top drops the top of S.
Poset mapping_cylinder(const PosetMap& f, bool remove_top = false);

struct LatticeCheck {
  bool lattice = true;
  std::optional<std::pair<std::size_t, std::size_t>> witness;
  std::string reason;
};
LatticeCheck is_lattice(const Poset& p);

// Adds a new minimum labelled `label` (must be fresh).
Poset add_bottom(const Poset& p, const std::string& label = "<min>");

}  // namespace dlat
