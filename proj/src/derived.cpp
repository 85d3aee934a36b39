#include "dlat/derived.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_map>

#include <boost/functional/hash.hpp>
#include <fmt/format.h>

#include "dlat/errors.hpp"

namespace dlat {

namespace {

struct VecHash {
  std::size_t operator()(const std::vector<Index>& v) const { return boost::hash_range(v.begin(), v.end()); }
};

// Poset from caller-indexed covers, returning elements in caller order.
Poset build_and_map(std::vector<std::string> labels, const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                    std::vector<std::size_t>& new_of_old) {
  const std::size_t n = labels.size();
  const std::vector<std::string> original = labels;
  // from_pairs sorts by label; recover the permutation from the labels
  Poset p = Poset::from_pairs(std::move(labels), pairs);
  new_of_old.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) new_of_old[i] = p.at(original[i]);
  return p;
}

}  // namespace

FrameComplexes frame_complexes(const GroundStructure& gs, const std::vector<Decomp>& full) {
  const Poset& p = gs.poset();
  std::vector<Decomp> pf_gen, f_gen;
  std::set<Index> pf_atoms, f_atoms;
  FrameComplexes out;
  for (auto& d : full) {
    Decomp atoms;
    for (auto x : d)
      if (gs.h(x) == 1) atoms.push_back(x);
    if (atoms.empty()) continue;
    pf_atoms.insert(atoms.begin(), atoms.end());
    if (atoms.size() == d.size()) {
      f_atoms.insert(atoms.begin(), atoms.end());
      f_gen.push_back(atoms);
      out.full_frames.push_back(d);
    }
    pf_gen.push_back(std::move(atoms));
  }
  auto make = [&](const std::set<Index>& verts, const std::vector<Decomp>& gens) {
    std::vector<std::string> labels;
    std::map<Index, Index> local;
    for (auto v : verts) {
      local[v] = static_cast<Index>(labels.size());
      labels.push_back(p.label(v));
    }
    std::vector<Simplex> simp;
    for (auto& g : gens) {
      Simplex s;
      for (auto x : g) s.push_back(local.at(x));
      simp.push_back(std::move(s));
    }
    return SimplicialComplex(std::move(labels), simp);
  };
  out.PF = make(pf_atoms, pf_gen);
  out.F = make(f_atoms, f_gen);
  out.equal = out.PF == out.F;
  return out;
}

FrameComplexes frame_complexes(const GroundStructure& gs) {
  return frame_complexes(gs, enumerate_decompositions(gs, false));
}

Inflation inflate(const SimplicialComplex& k, const Fibers& p) {
  std::vector<std::string> labels;
  std::vector<std::size_t> defl;
  std::vector<std::vector<Index>> fiber_ids(k.vertex_count());
  for (std::size_t v = 0; v < k.vertex_count(); ++v) {
    auto it = p.find(k.vertex_label(v));
    if (it == p.end() || it->second.empty())
      throw MissingFiberError("no fiber for vertex '" + k.vertex_label(v) + "'");
    for (auto& a : it->second) {
      fiber_ids[v].push_back(static_cast<Index>(labels.size()));
      labels.push_back(pair_label(k.vertex_label(v), a));
      defl.push_back(v);
    }
  }
  std::vector<Simplex> simp;
  for (auto& f : k.facets()) {
    // all choices of one fiber element per vertex of the facet
    std::vector<std::size_t> pick(f.size(), 0);
    while (true) {
      Simplex s;
      for (std::size_t i = 0; i < f.size(); ++i) s.push_back(fiber_ids[f[i]][pick[i]]);
      simp.push_back(std::move(s));
      std::size_t i = 0;
      while (i < f.size() && ++pick[i] == fiber_ids[f[i]].size()) pick[i++] = 0;
      if (i == f.size()) break;
    }
  }
  Inflation out;
  out.complex = SimplicialComplex(labels, simp);
  // vertices were re-sorted by label
  out.deflation.resize(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) out.deflation[*out.complex.find_vertex(labels[i])] = defl[i];
  return out;
}

Fibers atom_fibers(const GroundStructure& gs) {
  if (!gs.has_atom_bases()) throw MissingFiberError("structure " + gs.spec + " has no atom bases");
  Fibers f;
  for (auto& [atom, basis] : gs.atom_bases) f[gs.label(atom)] = basis;
  return f;
}

Fibers uniform_fibers(const SimplicialComplex& k, int m) {
  std::vector<std::string> fiber;
  for (int i = 1; i <= m; ++i) fiber.push_back(std::to_string(i));
  Fibers f;
  for (auto& l : k.vertex_labels()) f[l] = fiber;
  return f;
}

std::string word_label(const std::vector<std::string>& letters) {
  std::string s = "(";
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (i) s += ',';
    s += letters[i];
  }
  return s + ")";
}

WordPoset ordered_version(const GroundStructure& gs, const DecompPoset& dp) {
  const Poset& p = gs.poset();
  std::vector<std::vector<Index>> words;
  std::vector<std::size_t> forget;
  Budget budget(default_budget(), "ordered version");
  for (std::size_t i = 0; i < dp.elements.size(); ++i) {
    auto w = dp.elements[i];
    std::sort(w.begin(), w.end());
    do {
      budget.tick();
      words.push_back(w);
      forget.push_back(i);
    } while (std::next_permutation(w.begin(), w.end()));
  }
  std::vector<std::string> labels;
  for (auto& w : words) {
    std::vector<std::string> l;
    for (auto x : w) l.push_back(p.label(x));
    labels.push_back(word_label(l));
  }
  // (x_1..x_r) <= (y_1..y_s) iff for all i <= j there are k <= l with
  // x_i <= y_k and x_j <= y_l; equivalently every x_i lies below some y and
  // the earliest admissible k for i never exceeds the latest one for j >= i.
  auto leq = [&](std::size_t a, std::size_t b) {
    const auto& x = words[a];
    const auto& y = words[b];
    long runmax = -1;
    for (std::size_t j = 0; j < x.size(); ++j) {
      long kmin = -1, kmax = -1;
      for (std::size_t k = 0; k < y.size(); ++k)
        if (p.leq(x[j], y[k])) {
          if (kmin < 0) kmin = static_cast<long>(k);
          kmax = static_cast<long>(k);
        }
      if (kmin < 0) return false;
      runmax = std::max(runmax, kmin);
      if (runmax > kmax) return false;
    }
    return true;
  };
  WordPoset out;
  std::vector<std::size_t> order;
  out.poset = Poset::from_leq(std::move(labels), leq, &order);
  for (auto o : order) {
    out.words.push_back(words[o]);
    out.forget.push_back(forget[o]);
  }
  return out;
}

WordPoset injective_words(const SimplicialComplex& k) {
  auto faces = k.faces();
  std::vector<std::vector<Index>> words;
  std::vector<std::size_t> forget;
  Budget budget(default_budget(), "injective words");
  for (std::size_t i = 0; i < faces.size(); ++i) {
    auto w = faces[i];
    do {
      budget.tick();
      words.push_back(w);
      forget.push_back(i);
    } while (std::next_permutation(w.begin(), w.end()));
  }
  std::unordered_map<std::vector<Index>, std::size_t, VecHash> index;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < words.size(); ++i) {
    index.emplace(words[i], i);
    std::vector<std::string> l;
    for (auto v : words[i]) l.push_back(k.vertex_label(v));
    labels.push_back(word_label(l));
  }
  std::vector<std::pair<std::size_t, std::size_t>> covers;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (words[i].size() < 2) continue;
    for (std::size_t d = 0; d < words[i].size(); ++d) {
      std::vector<Index> sub;
      for (std::size_t j = 0; j < words[i].size(); ++j)
        if (j != d) sub.push_back(words[i][j]);
      covers.emplace_back(index.at(sub), i);
    }
  }
  std::vector<std::size_t> new_of_old;
  WordPoset out;
  out.poset = build_and_map(std::move(labels), covers, new_of_old);
  out.words.resize(words.size());
  out.forget.resize(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    out.words[new_of_old[i]] = words[i];
    out.forget[new_of_old[i]] = forget[i];
  }
  return out;
}

namespace {

std::size_t frame_span(const GroundStructure& gs, const SimplicialComplex& frames, const Simplex& s) {
  std::vector<std::size_t> parts;
  for (auto v : s) parts.push_back(gs.poset().at(frames.vertex_label(v)));
  if (parts.empty()) return gs.bottom;
  auto j = gs.poset().join(parts);
  if (!j) throw InvariantError("frame " + frames.simplex_label(s) + " has no join");
  return *j;
}

}  // namespace

SimplicialComplex augmented_bergman(const GroundStructure& gs, const SimplicialComplex& frames) {
  const Poset& p = gs.poset();
  std::vector<std::string> labels;
  for (auto& l : frames.vertex_labels()) labels.push_back("frm:" + l);
  const Index flt0 = static_cast<Index>(labels.size());
  for (std::size_t x = 0; x < p.size(); ++x)
    if (x != gs.top) labels.push_back("flt:" + p.label(x));
  auto flt = [&](std::size_t x) { return static_cast<Index>(flt0 + (x < gs.top ? x : x - 1)); };

  std::vector<Simplex> faces = frames.faces();
  faces.insert(faces.begin(), Simplex{});
  std::vector<Simplex> simp;
  Budget budget(default_budget(), "augmented Bergman complex");
  for (auto& s : faces) {
    const std::size_t phi_s = frame_span(gs, frames, s);
    if (phi_s == gs.top) {
      simp.push_back(s);
      continue;
    }
    // maximal chains of {x >= phi(s), x != top}, walked along covers
    std::vector<std::size_t> chain{phi_s};
    std::function<void()> walk = [&]() {
      budget.tick();
      bool extended = false;
      for (auto y : p.upper_covers(chain.back())) {
        if (y == gs.top) continue;
        extended = true;
        chain.push_back(y);
        walk();
        chain.pop_back();
      }
      if (!extended) {
        Simplex t = s;
        for (auto x : chain) t.push_back(flt(x));
        simp.push_back(std::move(t));
      }
    };
    walk();
  }
  return SimplicialComplex(std::move(labels), simp);
}

Poset bergman_cylinder(const GroundStructure& gs, const SimplicialComplex& frames) {
  auto faces = frames.faces();
  auto fp = std::make_shared<const Poset>(frames.face_poset());
  std::vector<std::size_t> image(fp->size());
  for (auto& s : faces) image[fp->at(frames.simplex_label(s))] = frame_span(gs, frames, s);
  PosetMap f(fp, gs.base, std::move(image));
  return mapping_cylinder(f, true);
}

ChainPoset chain_poset(const Poset& p) {
  std::vector<std::vector<Index>> chains;
  Budget budget(default_budget(), "chain enumeration");
  std::vector<Index> cur;
  std::function<void(std::size_t)> grow = [&](std::size_t x) {
    budget.tick();
    cur.push_back(static_cast<Index>(x));
    chains.push_back(cur);
    for (auto y : p.up(x))
      if (y != x) grow(y);
    cur.pop_back();
  };
  for (std::size_t x = 0; x < p.size(); ++x) grow(x);
  std::unordered_map<std::vector<Index>, std::size_t, VecHash> index;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < chains.size(); ++i) {
    index.emplace(chains[i], i);
    std::string l = "[";
    for (std::size_t j = 0; j < chains[i].size(); ++j) {
      if (j) l += '<';
      l += p.label(chains[i][j]);
    }
    labels.push_back(l + "]");
  }
  std::vector<std::pair<std::size_t, std::size_t>> covers;
  for (std::size_t i = 0; i < chains.size(); ++i) {
    if (chains[i].size() < 2) continue;
    for (std::size_t d = 0; d < chains[i].size(); ++d) {
      std::vector<Index> sub;
      for (std::size_t j = 0; j < chains[i].size(); ++j)
        if (j != d) sub.push_back(chains[i][j]);
      covers.emplace_back(index.at(sub), i);
    }
  }
  std::vector<std::size_t> new_of_old;
  ChainPoset out;
  out.poset = build_and_map(std::move(labels), covers, new_of_old);
  out.chains.resize(chains.size());
  for (std::size_t i = 0; i < chains.size(); ++i) {
    out.chains[new_of_old[i]] = chains[i];
    auto key = chains[i];
    std::sort(key.begin(), key.end());
    out.lookup.emplace(std::move(key), new_of_old[i]);
  }
  return out;
}

namespace {

// redm OD together with its words.
struct TopRemovedOD {
  WordPoset od;
  Poset redm;
  std::vector<std::size_t> od_index;  // redm element -> od element
};

TopRemovedOD top_removed_od(const GroundStructure& gs, const DecompPoset& d) {
  if (d.kind != DecompKind::D) throw InvariantError("expected the poset of full decompositions");
  TopRemovedOD t;
  t.od = ordered_version(gs, d);
  t.redm = t.od.poset.remove_top(&t.od_index);
  return t;
}

std::size_t join_range(const GroundStructure& gs, const std::vector<Index>& w, std::size_t lo, std::size_t hi) {
  std::vector<std::size_t> parts(w.begin() + static_cast<long>(lo), w.begin() + static_cast<long>(hi));
  auto j = gs.poset().join(parts);
  if (!j) throw InvariantError("partial join of a decomposition does not exist");
  return *j;
}

}  // namespace

CharneyResult charney(const GroundStructure& gs, const DecompPoset& d) {
  const Poset& p = gs.poset();
  auto t = top_removed_od(gs, d);
  CharneyResult r;
  // G: ordered size-2 decompositions with (x,y) <= (x',y') iff x <= x', y >= y'
  std::vector<std::pair<Index, Index>> pairs;
  for (auto& e : d.elements)
    if (e.size() == 2) {
      pairs.emplace_back(e[0], e[1]);
      pairs.emplace_back(e[1], e[0]);
    }
  std::vector<std::string> labels;
  for (auto& [x, y] : pairs) labels.push_back(word_label({p.label(x), p.label(y)}));
  std::vector<std::size_t> order;
  r.G = Poset::from_leq(
      std::move(labels),
      [&](std::size_t a, std::size_t b) { return p.leq(pairs[a].first, pairs[b].first) && p.leq(pairs[b].second, pairs[a].second); },
      &order);
  std::map<std::pair<Index, Index>, std::size_t> g_index;
  for (std::size_t i = 0; i < order.size(); ++i) g_index[pairs[order[i]]] = i;
  r.chains = chain_poset(r.G);
  r.source = t.redm.opposite();

  const std::size_t n = t.redm.size();
  r.beta.assign(n, 0);
  r.rank_preserving = true;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& w = t.od.words[t.od_index[i]];
    std::vector<Index> chain;
    for (std::size_t j = 0; j + 1 < w.size(); ++j) {
      auto x = join_range(gs, w, 0, j + 1), y = join_range(gs, w, j + 1, w.size());
      auto it = g_index.find({static_cast<Index>(x), static_cast<Index>(y)});
      if (it == g_index.end()) throw InvariantError("beta leaves the Charney poset");
      chain.push_back(static_cast<Index>(it->second));
    }
    std::sort(chain.begin(), chain.end());
    auto it = r.chains.lookup.find(chain);
    if (it == r.chains.lookup.end()) throw InvariantError("beta image is not a chain");
    r.beta[i] = it->second;
    const std::size_t si = r.source.at(t.redm.label(i));
    if (r.source.height(si) != r.chains.poset.height(it->second)) r.rank_preserving = false;
  }
  // source indices follow t.redm labels; map each source element to beta
  std::vector<std::size_t> beta_src(n);
  for (std::size_t i = 0; i < n; ++i) beta_src[r.source.at(t.redm.label(i))] = r.beta[i];

  std::vector<char> hit(r.chains.poset.size(), 0);
  r.injective = true;
  for (auto b : beta_src) {
    if (hit[b]) r.injective = false;
    hit[b] = 1;
  }
  r.surjective = std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
  r.downward_closed = true;
  for (std::size_t c = 0; c < hit.size(); ++c)
    if (hit[c])
      for (auto below : r.chains.poset.down(c))
        if (!hit[below]) r.downward_closed = false;
  r.order_embedding = true;
  for (std::size_t a = 0; a < n && r.order_embedding; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (r.source.leq(a, b) != r.chains.poset.leq(beta_src[a], beta_src[b])) {
        r.order_embedding = false;
        break;
      }
  r.beta = std::move(beta_src);
  r.isomorphism = r.injective && r.surjective && r.order_embedding;
  return r;
}

GMapResult g_map(const GroundStructure& gs, const DecompPoset& d) {
  const Poset& p = gs.poset();
  auto t = top_removed_od(gs, d);
  GMapResult r;
  r.source = t.redm;
  Poset subh = p.induced(sub_h_elements(gs, d.elements));
  r.proper_subh = subh.proper_part();
  r.chains = chain_poset(r.proper_subh);
  r.target = r.chains.poset.opposite();
  const std::size_t n = r.source.size();
  r.image.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& w = t.od.words[t.od_index[i]];
    std::vector<Index> chain;
    for (std::size_t j = 1; j < w.size(); ++j) {
      auto x = join_range(gs, w, 0, j);
      auto local = r.proper_subh.find(p.label(x));
      if (!local) throw InvariantError("partial join " + p.label(x) + " is not in the proper part of Sub_h");
      chain.push_back(static_cast<Index>(*local));
    }
    std::sort(chain.begin(), chain.end());
    auto it = r.chains.lookup.find(chain);
    if (it == r.chains.lookup.end()) throw InvariantError("G image is not a chain");
    r.image[i] = r.target.at(r.chains.poset.label(it->second));
  }
  std::vector<char> hit(r.target.size(), 0);
  r.injective = true;
  for (auto b : r.image) {
    if (hit[b]) r.injective = false;
    hit[b] = 1;
  }
  r.surjective = std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
  r.order_preserving = r.order_reflecting = true;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const bool s = r.source.leq(a, b), tt = r.target.leq(r.image[a], r.image[b]);
      if (s && !tt) r.order_preserving = false;
      if (tt && !s) r.order_reflecting = false;
    }
  r.isomorphism = r.order_preserving && r.injective && r.surjective && r.order_reflecting;
  return r;
}

}  // namespace dlat
