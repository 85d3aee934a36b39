#include "dlat/decomp.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "dlat/errors.hpp"

namespace dlat {

DecompCheck is_full_decomposition(const GroundStructure& gs, const Decomp& s_in, bool weak,
                                  std::optional<std::size_t> ceiling) {
  const Poset& p = gs.poset();
  for (auto x : s_in)
    if (x >= p.size()) throw UnknownElementError(fmt::format("element index {} out of range", x));
  Decomp s(s_in);
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) return {false, "repeated part"};
  const std::size_t c = ceiling.value_or(gs.top);
  if (s.empty()) return {false, "empty set"};
  for (auto x : s) {
    if (x == gs.bottom) return {false, "contains the bottom element"};
    if (!p.leq(x, c)) return {false, gs.label(x) + " is not below " + gs.label(c)};
  }
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (!gs.compat(s[i], s[j])) return {false, gs.label(s[i]) + " and " + gs.label(s[j]) + " are not compatible"};
  const std::size_t k = s.size();
  if (k > 24) return {false, "too many parts"};
  const std::size_t full = (std::size_t(1) << k) - 1;
  std::vector<std::size_t> join(full + 1);
  std::vector<int> hsum(full + 1, 0);
  join[0] = gs.bottom;
  for (std::size_t m = 1; m <= full; ++m) {
    auto low = static_cast<std::size_t>(__builtin_ctzll(m));
    auto rest = m & (m - 1);
    auto j = p.join({join[rest], s[low]}, c);
    if (!j) return {false, "join of a subset does not exist"};
    join[m] = *j;
    hsum[m] = hsum[rest] + gs.h(s[low]);
    if (!weak && gs.h(*j) != hsum[m])
      return {false, fmt::format("height of {} is {}, parts sum to {}", gs.label(*j), gs.h(*j), hsum[m])};
  }
  if (join[full] != c) return {false, "parts do not join to " + gs.label(c)};
  {
    std::vector<std::size_t> sorted(join);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      return {false, "joins of distinct subsets coincide"};
  }
  // meets: join(t) must be the meet of the coatoms join(s \ a), a not in t
  for (std::size_t m = 0; m < full; ++m) {
    std::vector<std::size_t> coatoms;
    for (std::size_t a = 0; a < k; ++a)
      if (!(m >> a & 1)) coatoms.push_back(join[full & ~(std::size_t(1) << a)]);
    if (coatoms.size() < 2) continue;
    auto mt = p.meet(coatoms);
    if (!mt || *mt != join[m]) return {false, "subset joins are not closed under meets"};
  }
  return {true, ""};
}

DecompositionEngine::DecompositionEngine(const GroundStructure& gs, bool weak, std::uint64_t budget)
    : gs_(gs), weak_(weak), budget_(budget, "decomposition enumeration") {}

const std::vector<Decomp>& DecompositionEngine::below(std::size_t c) {
  if (auto it = memo_.find(c); it != memo_.end()) return it->second;
  std::vector<Decomp> res;
  const Poset& p = gs_.poset();
  if (c != gs_.bottom) {
    res.push_back({static_cast<Index>(c)});
    const auto& dc = p.down(c);
    for (auto x : dc) {
      if (x == gs_.bottom || x == c) continue;
      budget_.tick();
      for (auto y : dc) {
        if (y == gs_.bottom || y == c || y == x) continue;
        if (!weak_ && gs_.h(x) + gs_.h(y) != gs_.h(c)) continue;
        auto m = p.meet({x, y});
        if (!m || *m != gs_.bottom) continue;
        auto j = p.join({x, y}, c);
        if (!j || *j != c) continue;
        budget_.tick();
        // map nodes are stable, so the reference survives recursion
        const std::vector<Decomp>& taus = below(y);
        for (auto& tau : taus) {
          if (tau.front() <= x) continue;
          Decomp sigma;
          sigma.reserve(tau.size() + 1);
          sigma.push_back(x);
          sigma.insert(sigma.end(), tau.begin(), tau.end());
          budget_.tick();
          if (is_full_decomposition(gs_, sigma, weak_, c)) res.push_back(std::move(sigma));
        }
      }
    }
  }
  sort_by_label(gs_, res);
  res.erase(std::unique(res.begin(), res.end()), res.end());
  return memo_[c] = std::move(res);
}

std::vector<Decomp> enumerate_decompositions(const GroundStructure& gs, bool weak) {
  DecompositionEngine e(gs, weak);
  return e.full();
}

std::string decomp_label(const GroundStructure& gs, const Decomp& d) {
  std::string s = "{";
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) s += ',';
    s += gs.label(d[i]);
  }
  return s + "}";
}

void sort_by_label(const GroundStructure& gs, std::vector<Decomp>& v) {
  std::vector<std::pair<std::string, Decomp>> tagged;
  tagged.reserve(v.size());
  for (auto& d : v) tagged.emplace_back(decomp_label(gs, d), std::move(d));
  std::sort(tagged.begin(), tagged.end());
  v.clear();
  for (auto& [l, d] : tagged) v.push_back(std::move(d));
}

std::string decomp_kind_name(DecompKind k) {
  switch (k) {
    case DecompKind::D: return "D";
    case DecompKind::PD: return "PD";
    case DecompKind::Dw: return "Dw";
    case DecompKind::PDw: return "PDw";
  }
  return "D";
}

std::optional<std::size_t> DecompPoset::index_of(const Decomp& d) const {
  auto it = lookup.find(d);
  if (it == lookup.end()) return std::nullopt;
  return it->second;
}

bool refines(const GroundStructure& gs, const Decomp& t, const Decomp& s) {
  for (auto x : t) {
    bool found = false;
    for (auto y : s)
      if (gs.poset().leq(x, y)) { found = true; break; }
    if (!found) return false;
  }
  return true;
}

DecompPoset poset_of(const GroundStructure& gs, std::vector<Decomp> elems, DecompKind kind) {
  const Poset& p = gs.poset();
  std::vector<std::string> labels;
  std::vector<Bits> under;
  labels.reserve(elems.size());
  for (auto& d : elems) {
    labels.push_back(decomp_label(gs, d));
    Bits u(p.size());
    for (auto y : d) u |= p.down_bits(y);
    under.push_back(std::move(u));
  }
  std::vector<std::size_t> order;
  auto leq = [&](std::size_t a, std::size_t b) {
    for (auto x : elems[a])
      if (!under[b].test(x)) return false;
    return true;
  };
  DecompPoset dp;
  dp.kind = kind;
  dp.poset = Poset::from_leq(std::move(labels), leq, &order);
  dp.elements.reserve(order.size());
  for (auto o : order) dp.elements.push_back(elems[o]);
  for (std::size_t i = 0; i < dp.elements.size(); ++i) dp.lookup.emplace(dp.elements[i], i);
  return dp;
}

DecompPoset partial_from_full(const GroundStructure& gs, const std::vector<Decomp>& full, DecompKind kind) {
  std::set<Decomp> all;
  all.insert(Decomp{});
  for (auto& d : full) {
    const std::size_t k = d.size();
    for (std::size_t m = 1; m < (std::size_t(1) << k); ++m) {
      Decomp sub;
      for (std::size_t i = 0; i < k; ++i)
        if (m >> i & 1) sub.push_back(d[i]);
      all.insert(std::move(sub));
    }
  }
  return poset_of(gs, std::vector<Decomp>(all.begin(), all.end()), kind);
}

DecompPoset build_decomposition_poset(const GroundStructure& gs, DecompKind kind) {
  const bool weak = kind == DecompKind::Dw || kind == DecompKind::PDw;
  auto full = enumerate_decompositions(gs, weak);
  if (kind == DecompKind::D || kind == DecompKind::Dw) return poset_of(gs, full, kind);
  return partial_from_full(gs, full, kind);
}

nlohmann::json decomp_poset_to_json(const GroundStructure& gs, const DecompPoset& dp) {
  nlohmann::json elems = nlohmann::json::array();
  for (auto& d : dp.elements) {
    nlohmann::json parts = nlohmann::json::array();
    for (auto x : d) parts.push_back(gs.label(x));
    elems.push_back(parts);
  }
  nlohmann::json covers = nlohmann::json::array();
  for (std::size_t x = 0; x < dp.poset.size(); ++x)
    for (auto y : dp.poset.upper_covers(x)) covers.push_back({x, y});
  return {{"structure", gs.spec}, {"kind", decomp_kind_name(dp.kind)}, {"elements", elems}, {"covers", covers}};
}

std::size_t phi(const GroundStructure& gs, const Decomp& s) {
  if (s.empty()) return gs.bottom;
  std::vector<std::size_t> v(s.begin(), s.end());
  auto j = gs.poset().join(v);
  if (!j) throw InvariantError("span of " + decomp_label(gs, s) + " does not exist");
  return *j;
}

std::vector<std::size_t> sub_h_elements(const GroundStructure& gs, const std::vector<Decomp>& full) {
  std::set<std::size_t> s{gs.bottom};
  for (auto& d : full) s.insert(d.begin(), d.end());
  return {s.begin(), s.end()};
}

Poset sub_h(const GroundStructure& gs) {
  return gs.poset().induced(sub_h_elements(gs, enumerate_decompositions(gs, false)));
}

std::vector<std::size_t> h_complements(const GroundStructure& gs, std::size_t x, std::size_t y) {
  const Poset& p = gs.poset();
  if (!p.leq(x, y)) throw NotComparableError("h_complements: " + gs.label(x) + " is not below " + gs.label(y));
  std::vector<std::size_t> out;
  for (auto w : p.down(y)) {
    if (gs.h(w) + gs.h(x) != gs.h(y)) continue;
    auto m = p.meet(w, x);
    if (!m || *m != gs.bottom) continue;
    auto j = p.join(w, x);
    if (!j || *j != y) continue;
    if (!gs.compat(x, w)) continue;
    out.push_back(w);
  }
  return out;
}

std::string property_name(Property p) {
  switch (p) {
    case Property::LI: return "LI";
    case Property::EX: return "EX";
    case Property::CM: return "CM";
    case Property::E1E2: return "E1E2";
    case Property::UNIQUE: return "UNIQUE";
  }
  return "?";
}

std::optional<Property> parse_property(const std::string& s) {
  for (auto p : {Property::LI, Property::EX, Property::CM, Property::E1E2, Property::UNIQUE})
    if (property_name(p) == s) return p;
  return std::nullopt;
}

}  // namespace dlat
