#include <algorithm>
#include <functional>

#include <fmt/format.h>

#include "dlat/decomp.hpp"
#include "dlat/errors.hpp"

namespace dlat {

namespace {

using LabelSet = std::vector<std::string>;

LabelSet labels_of(const GroundStructure& gs, const Decomp& d) {
  LabelSet out;
  for (auto x : d) out.push_back(gs.label(x));
  std::sort(out.begin(), out.end());
  return out;
}

// Lower-interval data keyed by an element of the ambient structure.
struct Lower {
  GroundStructure gs;
  std::vector<Decomp> full;      // in gs's own indices
  DecompPoset pd;                // PD of the interval
  std::set<LabelSet> pd_labels;  // label sets of pd elements
};

class LowerCache {
 public:
  explicit LowerCache(const GroundStructure& gs) : gs_(gs) {}
  const Lower& at(std::size_t y) {
    auto it = cache_.find(y);
    if (it != cache_.end()) return *it->second;
    auto l = std::make_unique<Lower>();
    l->gs = restrict_below(gs_, y);
    l->full = enumerate_decompositions(l->gs, false);
    l->pd = partial_from_full(l->gs, l->full, DecompKind::PD);
    for (auto& d : l->pd.elements) l->pd_labels.insert(labels_of(l->gs, d));
    return *(cache_[y] = std::move(l));
  }

 private:
  const GroundStructure& gs_;
  std::map<std::size_t, std::unique_ptr<Lower>> cache_;
};

std::string fmt_set(const GroundStructure& gs, const Decomp& d) { return decomp_label(gs, d); }

nlohmann::json json_set(const GroundStructure& gs, const Decomp& d) {
  nlohmann::json a = nlohmann::json::array();
  for (auto x : d) a.push_back(gs.label(x));
  return a;
}

PropertyResult check_li(const GroundStructure& gs, const DecompPoset& pd, LowerCache& lower) {
  PropertyResult r;
  r.property = Property::LI;
  const Poset& p = gs.poset();
  for (std::size_t si = 0; si < pd.elements.size(); ++si) {
    const Decomp& sigma = pd.elements[si];
    ++r.instances;
    if (sigma.empty()) continue;
    // product of the lower-interval PD posets, folded left
    Poset prod = lower.at(sigma[0]).pd.poset;
    for (std::size_t i = 1; i < sigma.size(); ++i) prod = direct_product(prod, lower.at(sigma[i]).pd.poset);
    std::vector<std::size_t> members;
    std::vector<std::size_t> image;
    for (std::size_t ti = 0; ti < pd.elements.size(); ++ti) {
      if (!pd.poset.leq(ti, si)) continue;
      const Decomp& tau = pd.elements[ti];
      std::vector<Decomp> parts(sigma.size());
      for (auto z : tau) {
        int owner = -1;
        for (std::size_t i = 0; i < sigma.size(); ++i)
          if (p.leq(z, sigma[i])) {
            if (owner >= 0) {
              r.holds = false;
              r.certificate = fmt::format("sigma={}: part {} lies below two parts", fmt_set(gs, sigma), gs.label(z));
              r.witness = {{"sigma", json_set(gs, sigma)}, {"tau", json_set(gs, tau)}};
              return r;
            }
            owner = static_cast<int>(i);
          }
        parts[owner].push_back(z);
      }
      std::string label;
      for (std::size_t i = 0; i < sigma.size(); ++i) {
        const Lower& lw = lower.at(sigma[i]);
        Decomp local;
        for (auto z : parts[i]) local.push_back(static_cast<Index>(lw.gs.base->at(gs.label(z))));
        std::sort(local.begin(), local.end());
        auto idx = lw.pd.index_of(local);
        if (!idx) {
          r.holds = false;
          r.certificate = fmt::format("sigma={}: component of {} below {} is not in PD of the lower interval",
                                      fmt_set(gs, sigma), fmt_set(gs, tau), gs.label(sigma[i]));
          r.witness = {{"sigma", json_set(gs, sigma)}, {"tau", json_set(gs, tau)}};
          return r;
        }
        const std::string& l = lw.pd.poset.label(*idx);
        label = i == 0 ? l : pair_label(label, l);
      }
      members.push_back(ti);
      image.push_back(prod.at(label));
    }
    if (members.size() != prod.size()) {
      r.holds = false;
      r.certificate = fmt::format("sigma={}: PD below sigma has {} elements, the product has {}", fmt_set(gs, sigma),
                                  members.size(), prod.size());
      r.witness = {{"sigma", json_set(gs, sigma)}, {"below", members.size()}, {"product", prod.size()}};
      return r;
    }
    for (std::size_t a = 0; a < members.size(); ++a)
      for (std::size_t b = 0; b < members.size(); ++b)
        if (pd.poset.leq(members[a], members[b]) != prod.leq(image[a], image[b])) {
          r.holds = false;
          r.certificate = fmt::format("sigma={}: order differs from the product order at {} / {}", fmt_set(gs, sigma),
                                      fmt_set(gs, pd.elements[members[a]]), fmt_set(gs, pd.elements[members[b]]));
          r.witness = {{"sigma", json_set(gs, sigma)}};
          return r;
        }
  }
  return r;
}

PropertyResult check_ex(const GroundStructure& gs, const DecompPoset& pd, LowerCache& lower) {
  PropertyResult r;
  r.property = Property::EX;
  std::vector<std::size_t> order(pd.elements.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    return pd.elements[a].size() > pd.elements[b].size();
  });
  for (auto si : order) {
    const Decomp& sigma = pd.elements[si];
    for (auto y : sigma) {
      const Lower& lw = lower.at(y);
      for (auto& tau_local : lw.full) {
        if (tau_local.size() == 1) continue;
        Decomp tau;
        for (auto z : tau_local) tau.push_back(static_cast<Index>(gs.base->at(lw.gs.label(z))));
        std::sort(tau.begin(), tau.end());
        bool compatible = true;
        for (std::size_t i = 0; compatible && i < tau.size(); ++i)
          for (std::size_t j = i + 1; compatible && j < tau.size(); ++j) compatible = gs.compat(tau[i], tau[j]);
        if (!compatible) continue;
        ++r.instances;
        Decomp ext;
        for (auto z : sigma)
          if (z != y) ext.push_back(z);
        ext.insert(ext.end(), tau.begin(), tau.end());
        std::sort(ext.begin(), ext.end());
        if (!pd.index_of(ext)) {
          r.holds = false;
          r.certificate = fmt::format("sigma={}, y={}, tau={}: {} is not in PD", fmt_set(gs, sigma), gs.label(y),
                                      fmt_set(gs, tau), fmt_set(gs, ext));
          r.witness = {{"sigma", json_set(gs, sigma)}, {"y", gs.label(y)}, {"tau", json_set(gs, tau)},
                       {"result", json_set(gs, ext)}};
          return r;
        }
      }
    }
  }
  return r;
}

PropertyResult check_cm(const GroundStructure& gs, const std::vector<Decomp>& full) {
  PropertyResult r;
  r.property = Property::CM;
  const Poset& p = gs.poset();
  std::set<Decomp> dset(full.begin(), full.end());
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (auto& d : full)
    if (d.size() == 2) {
      pairs.emplace_back(d[0], d[1]);
      pairs.emplace_back(d[1], d[0]);
    }
  // labels sort like indices
  std::sort(pairs.begin(), pairs.end());
  for (auto [x, y] : pairs)
    for (auto [x2, y2] : pairs) {
      if (!p.leq(x, x2) || !p.leq(y2, y)) continue;
      ++r.instances;
      auto m = p.meet(x2, y);
      auto report = [&](const std::string& why) {
        r.holds = false;
        r.certificate = fmt::format("(x,y)=({},{}), (x',y')=({},{}): {}", gs.label(x), gs.label(y), gs.label(x2),
                                    gs.label(y2), why);
        r.witness = {{"x", gs.label(x)}, {"y", gs.label(y)}, {"x'", gs.label(x2)}, {"y'", gs.label(y2)}};
      };
      if (!m) {
        report("x' meet y does not exist");
        return r;
      }
      std::set<std::size_t> parts{*m, x, y2};
      parts.erase(gs.bottom);
      Decomp d(parts.begin(), parts.end());
      if (!dset.count(d)) {
        report(fmt::format("x' meet y = {} and {} is not a decomposition", gs.label(*m), fmt_set(gs, d)));
        return r;
      }
    }
  return r;
}

PropertyResult check_e1e2(const GroundStructure& gs, const DecompPoset& pd, LowerCache& lower) {
  PropertyResult r;
  r.property = Property::E1E2;
  const Poset& p = gs.poset();
  // E1: PD(S_<=x) = PD(S)_<={x}
  std::map<std::size_t, std::vector<Decomp>> below_x;
  for (std::size_t si = 0; si < pd.elements.size(); ++si) {
    if (pd.elements[si].size() != 1) continue;
    const std::size_t x = pd.elements[si][0];
    ++r.instances;
    std::set<LabelSet> mine;
    for (std::size_t ti = 0; ti < pd.elements.size(); ++ti)
      if (pd.poset.leq(ti, si)) {
        mine.insert(labels_of(gs, pd.elements[ti]));
        below_x[x].push_back(pd.elements[ti]);
      }
    if (mine != lower.at(x).pd_labels) {
      r.holds = false;
      r.certificate = fmt::format("E1 fails at x={}: PD of the lower interval has {} elements, PD below {{x}} has {}",
                                  gs.label(x), lower.at(x).pd_labels.size(), mine.size());
      r.witness = {{"x", gs.label(x)}, {"part", "E1"}};
      return r;
    }
  }
  // E2: unions of tau_x in PD(S_<=x), x in sigma, lie in PD below sigma
  for (std::size_t si = 0; si < pd.elements.size(); ++si) {
    const Decomp& sigma = pd.elements[si];
    if (sigma.size() < 2) continue;
    std::vector<const std::vector<Decomp>*> choices;
    for (auto x : sigma) choices.push_back(&below_x[x]);
    std::vector<std::size_t> pick(sigma.size(), 0);
    while (true) {
      ++r.instances;
      Decomp u;
      for (std::size_t i = 0; i < sigma.size(); ++i) {
        const auto& t = (*choices[i])[pick[i]];
        u.insert(u.end(), t.begin(), t.end());
      }
      std::sort(u.begin(), u.end());
      auto idx = pd.index_of(u);
      if (!idx || !pd.poset.leq(*idx, si)) {
        r.holds = false;
        r.certificate = fmt::format("E2 fails at sigma={}: union {} is not in PD below sigma", fmt_set(gs, sigma),
                                    fmt_set(gs, u));
        r.witness = {{"sigma", json_set(gs, sigma)}, {"union", json_set(gs, u)}, {"part", "E2"}};
        return r;
      }
      std::size_t i = 0;
      while (i < pick.size() && ++pick[i] == choices[i]->size()) pick[i++] = 0;
      if (i == pick.size()) break;
    }
  }
  (void)p;
  return r;
}

PropertyResult check_unique(const GroundStructure& gs) {
  PropertyResult r;
  r.property = Property::UNIQUE;
  const Poset& p = gs.poset();
  for (std::size_t y = 0; y < p.size(); ++y)
    for (auto z : p.down(y)) {
      ++r.instances;
      auto c = h_complements(gs, z, y);
      if (c.size() != 1) {
        r.holds = false;
        r.certificate = fmt::format("{} has {} (⊔,h)-complements in {}", gs.label(z), c.size(), gs.label(y));
        nlohmann::json cs = nlohmann::json::array();
        for (auto w : c) cs.push_back(gs.label(w));
        r.witness = {{"z", gs.label(z)}, {"y", gs.label(y)}, {"complements", cs}};
        return r;
      }
    }
  return r;
}

}  // namespace

PropertyResult check_property(const GroundStructure& gs, Property which) {
  if (which == Property::UNIQUE) return check_unique(gs);
  auto full = enumerate_decompositions(gs, false);
  if (which == Property::CM) return check_cm(gs, full);
  auto pd = partial_from_full(gs, full, DecompKind::PD);
  LowerCache lower(gs);
  switch (which) {
    case Property::LI: return check_li(gs, pd, lower);
    case Property::EX: return check_ex(gs, pd, lower);
    case Property::E1E2: return check_e1e2(gs, pd, lower);
    default: break;
  }
  throw InvariantError("unhandled property");
}

}  // namespace dlat
