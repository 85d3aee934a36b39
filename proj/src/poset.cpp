#include "dlat/poset.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <tuple>

#include <fmt/format.h>

#include "dlat/budget.hpp"
#include "dlat/errors.hpp"

namespace dlat {

std::uint64_t default_budget() {
  static const std::uint64_t value = [] {
    if (const char* env = std::getenv("DLAT_BUDGET")) {
      try {
        return static_cast<std::uint64_t>(std::stoull(env));
      } catch (...) {
      }
    }
    return kDefaultBudget;
  }();
  return value;
}

void Budget::tick(std::uint64_t n) {
  used_ += n;
  if (used_ > limit_)
    throw BudgetExceededError(fmt::format("{} exceeded node budget {}", what_, limit_));
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw InvariantError("int64 overflow in addition");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw InvariantError("int64 overflow in multiplication");
  return r;
}

namespace {

std::vector<Index> bits_to_list(const Bits& b) {
  std::vector<Index> out;
  out.reserve(b.count());
  for (auto i = b.find_first(); i != Bits::npos; i = b.find_next(i)) out.push_back(static_cast<Index>(i));
  return out;
}

Bits list_to_bits(const std::vector<Index>& v, std::size_t n) {
  Bits b(n);
  for (auto i : v) b.set(i);
  return b;
}

std::size_t sorted_intersection_size(const std::vector<Index>& a, const std::vector<Index>& b) {
  std::size_t i = 0, j = 0, c = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) ++i;
    else if (b[j] < a[i]) ++j;
    else { ++c; ++i; ++j; }
  }
  return c;
}

}  // namespace

Poset Poset::assemble(std::vector<std::string> labels, std::vector<std::vector<Index>> up,
                      std::vector<std::size_t>* order) {
  const std::size_t n = labels.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](auto a, auto b) { return labels[a] < labels[b]; });
  for (std::size_t i = 1; i < n; ++i)
    if (labels[perm[i]] == labels[perm[i - 1]])
      throw DuplicateLabelError("duplicate label '" + labels[perm[i]] + "'");
  std::vector<Index> newidx(n);
  for (std::size_t i = 0; i < n; ++i) newidx[perm[i]] = static_cast<Index>(i);

  Poset p;
  p.labels_.resize(n);
  p.up_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto old = perm[i];
    p.labels_[i] = std::move(labels[old]);
    auto& u = p.up_[i];
    u.reserve(up[old].size());
    for (auto v : up[old]) u.push_back(newidx[v]);
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
  }
  if (order) *order = perm;
  p.finish();
  return p;
}

void Poset::finish() {
  const std::size_t n = labels_.size();
  index_.clear();
  index_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) index_.emplace(labels_[i], i);
  down_.assign(n, {});
  for (std::size_t x = 0; x < n; ++x)
    for (auto y : up_[x]) down_[y].push_back(static_cast<Index>(x));
  up_bits_.clear();
  down_bits_.clear();
  if (n <= dense_threshold) {
    up_bits_.reserve(n);
    down_bits_.reserve(n);
    for (std::size_t x = 0; x < n; ++x) {
      up_bits_.push_back(list_to_bits(up_[x], n));
      down_bits_.push_back(list_to_bits(down_[x], n));
    }
  }
  // x < y implies |down(x)| < |down(y)|
  topo_.resize(n);
  std::iota(topo_.begin(), topo_.end(), 0);
  std::stable_sort(topo_.begin(), topo_.end(),
                   [&](Index a, Index b) { return down_[a].size() < down_[b].size(); });

  cov_up_.assign(n, {});
  cov_down_.assign(n, {});
  for (std::size_t x = 0; x < n; ++x) {
    for (auto y : up_[x]) {
      if (y == x) continue;
      std::size_t between = dense() ? (down_bits_[y] & up_bits_[x]).count()
                                    : sorted_intersection_size(down_[y], up_[x]);
      if (between == 2) {
        cov_up_[x].push_back(y);
        cov_down_[y].push_back(static_cast<Index>(x));
      }
    }
  }
  for (auto& c : cov_down_) std::sort(c.begin(), c.end());

  height_.assign(n, 0);
  for (auto y : topo_)
    for (auto x : cov_down_[y]) height_[y] = std::max(height_[y], height_[x] + 1);

  bottom_.reset();
  top_.reset();
  for (std::size_t x = 0; x < n; ++x) {
    if (up_[x].size() == n) bottom_ = x;
    if (down_[x].size() == n) top_ = x;
  }
}

Poset Poset::from_pairs(std::vector<std::string> labels,
                        const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  return from_covers(std::move(labels), pairs, nullptr);
}

Poset Poset::from_covers(std::vector<std::string> labels,
                         const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                         std::vector<std::size_t>* order) {
  const std::size_t n = labels.size();
  std::vector<std::vector<Index>> succ(n);
  std::vector<std::size_t> indeg(n, 0);
  for (auto [a, b] : pairs) {
    if (a >= n || b >= n) throw UnknownElementError(fmt::format("pair ({},{}) out of range", a, b));
    if (a == b) continue;
    succ[a].push_back(static_cast<Index>(b));
  }
  for (auto& s : succ) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (auto b : s) ++indeg[b];
  }
  std::vector<Index> topo;
  topo.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    if (indeg[i] == 0) topo.push_back(static_cast<Index>(i));
  for (std::size_t k = 0; k < topo.size(); ++k)
    for (auto b : succ[topo[k]])
      if (--indeg[b] == 0) topo.push_back(b);
  if (topo.size() != n) {
    for (std::size_t i = 0; i < n; ++i)
      if (indeg[i] != 0)
        throw CycleError("relation has a cycle through '" + labels[i] + "' (antisymmetry violated)");
  }
  std::vector<std::vector<Index>> up(n);
  if (n <= dense_threshold) {
    std::vector<Bits> ub(n, Bits(n));
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
      auto x = *it;
      ub[x].set(x);
      for (auto y : succ[x]) ub[x] |= ub[y];
      up[x] = bits_to_list(ub[x]);
    }
  } else {
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
      auto x = *it;
      std::vector<Index> acc{x};
      for (auto y : succ[x]) {
        std::vector<Index> merged;
        std::set_union(acc.begin(), acc.end(), up[y].begin(), up[y].end(), std::back_inserter(merged));
        acc.swap(merged);
      }
      up[x] = std::move(acc);
    }
  }
  return assemble(std::move(labels), std::move(up), order);
}

Poset Poset::from_leq(std::vector<std::string> labels,
                      const std::function<bool(std::size_t, std::size_t)>& leq,
                      std::vector<std::size_t>* order) {
  const std::size_t n = labels.size();
  std::vector<std::vector<Index>> up(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!leq(i, i)) throw OrderAxiomError("relation is not reflexive at '" + labels[i] + "'");
    for (std::size_t j = 0; j < n; ++j)
      if (leq(i, j)) up[i].push_back(static_cast<Index>(j));
  }
  std::vector<Bits> ub;
  ub.reserve(n);
  for (std::size_t i = 0; i < n; ++i) ub.push_back(list_to_bits(up[i], n));
  for (std::size_t i = 0; i < n; ++i) {
    for (auto j : up[i]) {
      if (j == i) continue;
      if (ub[j].test(i))
        throw OrderAxiomError("antisymmetry fails for '" + labels[i] + "' and '" + labels[j] + "'");
      if (!ub[j].is_subset_of(ub[i]))
        throw OrderAxiomError("transitivity fails above '" + labels[i] + "' through '" + labels[j] + "'");
    }
  }
  return assemble(std::move(labels), std::move(up), order);
}

std::optional<std::size_t> Poset::find(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Poset::at(const std::string& label) const {
  auto f = find(label);
  if (!f) throw UnknownElementError("no element labelled '" + label + "'");
  return *f;
}

bool Poset::leq(std::size_t x, std::size_t y) const {
  if (dense()) return up_bits_[x].test(y);
  return std::binary_search(up_[x].begin(), up_[x].end(), static_cast<Index>(y));
}

Bits Poset::up_bits(std::size_t x) const {
  return dense() ? up_bits_[x] : list_to_bits(up_[x], size());
}

Bits Poset::down_bits(std::size_t x) const {
  return dense() ? down_bits_[x] : list_to_bits(down_[x], size());
}

std::size_t Poset::cover_count() const {
  std::size_t c = 0;
  for (auto& v : cov_up_) c += v.size();
  return c;
}

std::size_t Poset::relation_size() const {
  std::size_t c = 0;
  for (auto& v : up_) c += v.size();
  return c;
}

int Poset::height() const {
  int h = -1;
  for (auto v : height_) h = std::max(h, v);
  return h;
}

std::vector<std::size_t> Poset::minimal() const {
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < size(); ++x)
    if (cov_down_[x].empty()) out.push_back(x);
  return out;
}

std::vector<std::size_t> Poset::maximal() const {
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < size(); ++x)
    if (cov_up_[x].empty()) out.push_back(x);
  return out;
}

std::optional<std::size_t> Poset::join(const std::vector<std::size_t>& s,
                                       std::optional<std::size_t> ceiling) const {
  if (empty()) return std::nullopt;
  Bits u = ceiling ? down_bits(*ceiling) : Bits(size()).set();
  for (auto a : s) u &= up_bits(a);
  if (u.none()) return std::nullopt;
  std::size_t best = u.find_first();
  for (auto i = u.find_next(best); i != Bits::npos; i = u.find_next(i))
    if (down_[i].size() < down_[best].size()) best = i;
  if (!u.is_subset_of(up_bits(best))) return std::nullopt;
  return best;
}

std::optional<std::size_t> Poset::meet(const std::vector<std::size_t>& s,
                                       std::optional<std::size_t> floor) const {
  if (empty()) return std::nullopt;
  Bits l = floor ? up_bits(*floor) : Bits(size()).set();
  for (auto a : s) l &= down_bits(a);
  if (l.none()) return std::nullopt;
  std::size_t best = l.find_first();
  for (auto i = l.find_next(best); i != Bits::npos; i = l.find_next(i))
    if (up_[i].size() < up_[best].size()) best = i;
  if (!l.is_subset_of(down_bits(best))) return std::nullopt;
  return best;
}

std::int64_t Poset::mobius(std::size_t x, std::size_t y) const {
  if (!leq(x, y))
    throw NotComparableError("mobius(" + label(x) + ", " + label(y) + "): not x <= y");
  // interval members in a linear extension; mu(x,z) = -sum_{x<=w<z} mu(x,w)
  std::vector<std::int64_t> mu(size(), 0);
  std::vector<char> in(size(), 0);
  for (auto z : up_[x])
    if (leq(z, y)) in[z] = 1;
  for (auto z : topo_) {
    if (!in[z]) continue;
    if (z == x) { mu[z] = 1; continue; }
    std::int64_t s = 0;
    for (auto w : down_[z])
      if (w != z && in[w]) s = checked_add(s, mu[w]);
    mu[z] = -s;
  }
  return mu[y];
}

Poset Poset::induced(const std::vector<std::size_t>& keep_in, std::vector<std::size_t>* order) const {
  std::vector<std::size_t> keep(keep_in);
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  std::vector<std::int64_t> pos(size(), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) pos[keep[i]] = static_cast<std::int64_t>(i);
  std::vector<std::string> labels;
  std::vector<std::vector<Index>> up(keep.size());
  labels.reserve(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    labels.push_back(labels_[keep[i]]);
    for (auto y : up_[keep[i]])
      if (pos[y] >= 0) up[i].push_back(static_cast<Index>(pos[y]));
  }
  std::vector<std::size_t> local;
  Poset p = assemble(std::move(labels), std::move(up), &local);
  if (order) {
    order->resize(local.size());
    for (std::size_t i = 0; i < local.size(); ++i) (*order)[i] = keep[local[i]];
  }
  return p;
}

Poset Poset::filter(const std::function<bool(std::size_t)>& pred, std::vector<std::size_t>* order) const {
  std::vector<std::size_t> keep;
  for (std::size_t x = 0; x < size(); ++x)
    if (pred(x)) keep.push_back(x);
  return induced(keep, order);
}

Poset Poset::interval(std::size_t x, std::size_t y, std::vector<std::size_t>* order) const {
  if (!leq(x, y)) throw NotComparableError("interval(" + label(x) + ", " + label(y) + "): not x <= y");
  return filter([&](std::size_t z) { return leq(x, z) && leq(z, y); }, order);
}

Poset Poset::open_interval(std::size_t x, std::size_t y, std::vector<std::size_t>* order) const {
  if (!leq(x, y)) throw NotComparableError("open_interval(" + label(x) + ", " + label(y) + "): not x <= y");
  return filter([&](std::size_t z) { return lt(x, z) && lt(z, y); }, order);
}

Poset Poset::below_strict(std::size_t x, std::vector<std::size_t>* order) const {
  return filter([&](std::size_t z) { return lt(z, x); }, order);
}

Poset Poset::above_strict(std::size_t x, std::vector<std::size_t>* order) const {
  return filter([&](std::size_t z) { return lt(x, z); }, order);
}

Poset Poset::proper_part(std::vector<std::size_t>* order) const {
  if (!bounded()) throw UnboundedError("proper part needs a bounded poset");
  return filter([&](std::size_t z) { return z != *bottom_ && z != *top_; }, order);
}

Poset Poset::remove_top(std::vector<std::size_t>* order) const {
  if (!top_) throw UnboundedError("poset has no top element");
  return filter([&](std::size_t z) { return z != *top_; }, order);
}

Poset Poset::opposite() const {
  return assemble(labels_, down_, nullptr);
}

bool Poset::operator==(const Poset& o) const {
  return labels_ == o.labels_ && up_ == o.up_;
}

std::string pair_label(const std::string& a, const std::string& b) {
  return "(" + a + "," + b + ")";
}

Poset direct_product(const Poset& p, const Poset& q) {
  const std::size_t m = q.size();
  std::vector<std::string> labels;
  labels.reserve(p.size() * m);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < m; ++j) labels.push_back(pair_label(p.label(i), q.label(j)));
  std::vector<std::pair<std::size_t, std::size_t>> covers;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < m; ++j) {
      for (auto i2 : p.upper_covers(i)) covers.emplace_back(i * m + j, i2 * m + j);
      for (auto j2 : q.upper_covers(j)) covers.emplace_back(i * m + j, i * m + j2);
    }
  return Poset::from_pairs(std::move(labels), covers);
}

PosetMap::PosetMap(PosetPtr s, PosetPtr t, std::vector<std::size_t> img)
    : source(std::move(s)), target(std::move(t)), image(std::move(img)) {
  if (image.size() != source->size())
    throw NotOrderPreservingError("map image has wrong length");
  for (auto v : image)
    if (v >= target->size()) throw UnknownElementError("map image index out of range");
  for (std::size_t x = 0; x < source->size(); ++x)
    for (auto y : source->upper_covers(x))
      if (!target->leq(image[x], image[y]))
        throw NotOrderPreservingError("map is not order-preserving at " + source->label(x) + " < " +
                                      source->label(y));
}

Poset mapping_cylinder(const PosetMap& f, bool remove_top) {
  const Poset& t = *f.source;
  const Poset& s = *f.target;
  if (remove_top && !s.top()) throw UnboundedError("mapping cylinder redm needs a target with a top");
  const std::size_t nt = t.size();
  std::vector<std::string> labels;
  for (auto& l : t.labels()) labels.push_back("t:" + l);
  for (auto& l : s.labels()) labels.push_back("s:" + l);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t x = 0; x < nt; ++x) {
    for (auto y : t.upper_covers(x)) pairs.emplace_back(x, y);
    pairs.emplace_back(x, nt + f.image[x]);
  }
  for (std::size_t x = 0; x < s.size(); ++x)
    for (auto y : s.upper_covers(x)) pairs.emplace_back(nt + x, nt + y);
  Poset m = Poset::from_pairs(std::move(labels), pairs);
  if (!remove_top) return m;
  auto top = m.at("s:" + s.label(*s.top()));
  return m.filter([&](std::size_t z) { return z != top; });
}

LatticeCheck is_lattice(const Poset& p) {
  LatticeCheck r;
  std::vector<std::tuple<int, std::size_t, std::size_t>> pairs;
  for (std::size_t x = 0; x < p.size(); ++x)
    for (std::size_t y = x + 1; y < p.size(); ++y)
      if (!p.comparable(x, y)) pairs.emplace_back(std::max(p.height(x), p.height(y)), x, y);
  std::sort(pairs.begin(), pairs.end());
  for (auto [h, x, y] : pairs) {
    (void)h;
    bool j = p.join(x, y).has_value();
    bool m = p.meet(x, y).has_value();
    if (!j || !m) {
      r.lattice = false;
      r.witness = std::make_pair(x, y);
      r.reason = fmt::format("{} of {} and {} does not exist", !j ? "join" : "meet", p.label(x), p.label(y));
      return r;
    }
  }
  if (p.size() > 0 && !p.bounded()) {
    r.lattice = false;
    r.reason = "poset is not bounded";
  }
  return r;
}

Poset add_bottom(const Poset& p, const std::string& label) {
  if (p.find(label)) throw DuplicateLabelError("label '" + label + "' already present");
  std::vector<std::string> labels = p.labels();
  labels.push_back(label);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t x = 0; x < p.size(); ++x) {
    for (auto y : p.upper_covers(x)) pairs.emplace_back(x, y);
    if (p.lower_covers(x).empty()) pairs.emplace_back(p.size(), x);
  }
  return Poset::from_pairs(std::move(labels), pairs);
}

}  // namespace dlat
