#include <functional>

#include <fmt/format.h>

#include "dlat/budget.hpp"
#include "dlat/errors.hpp"
#include "dlat/topology.hpp"

namespace dlat {

SimplicialComplex order_complex(const Poset& p) {
  std::vector<Simplex> facets;
  Budget budget(default_budget(), "maximal chains");
  Simplex cur;
  std::function<void(std::size_t)> walk = [&](std::size_t x) {
    budget.tick();
    cur.push_back(static_cast<Index>(x));
    if (p.upper_covers(x).empty()) {
      Simplex s = cur;
      std::sort(s.begin(), s.end());
      facets.push_back(std::move(s));
    }
    for (auto y : p.upper_covers(x)) walk(y);
    cur.pop_back();
  };
  for (auto m : p.minimal()) walk(m);
  return SimplicialComplex(p.labels(), facets);
}

std::int64_t reduced_euler(const Poset& p) {
  // s(x) = signed count of chains with top x
  std::vector<std::int64_t> s(p.size(), 0);
  std::int64_t total = -1;
  for (auto x : p.linear_extension()) {
    std::int64_t v = 1;
    for (auto y : p.down(x))
      if (y != x) v = checked_add(v, -s[y]);
    s[x] = v;
    total = checked_add(total, v);
  }
  return total;
}

std::int64_t reduced_euler(const SimplicialComplex& k) {
  std::int64_t total = -1;
  auto f = k.f_vector();
  for (std::size_t i = 0; i < f.size(); ++i) {
    auto c = static_cast<std::int64_t>(f[i]);
    total = checked_add(total, i % 2 ? -c : c);
  }
  return total;
}

HomologyResult is_spherical(const Poset& p, int expected_dim, Ring ring) {
  auto h = homology(p, ring);
  h.spherical = h.concentrated_in(expected_dim);
  return h;
}

HomologyResult is_spherical(const SimplicialComplex& k, int expected_dim, Ring ring) {
  auto h = homology(k, ring);
  h.spherical = h.concentrated_in(expected_dim);
  return h;
}

namespace {

std::string describe(const HomologyResult& h) {
  std::string s = "{";
  bool first = true;
  for (auto& [k, b] : h.betti) {
    s += fmt::format("{}{}:{}", first ? "" : ",", k, b);
    first = false;
  }
  s += "}";
  if (!h.torsion.empty()) s += " with torsion";
  return s;
}

}  // namespace

CMVerdict homological_cm(const Poset& input, Ring ring, bool strip_bounds) {
  CMVerdict v;
  Poset p = input;
  if (strip_bounds && p.size() > 1 && (p.top() || p.bottom())) {
    std::vector<std::size_t> keep;
    for (std::size_t x = 0; x < p.size(); ++x)
      if (x != p.top() && x != p.bottom()) keep.push_back(x);
    p = p.induced(keep);
  }
  const int n = p.height();
  auto check = [&](const Poset& q, int expected, const std::string& what) {
    ++v.intervals;
    auto h = homology(q, ring);
    if (h.concentrated_in(expected)) return true;
    v.cm = false;
    v.certificate = fmt::format("{}: expected reduced homology only in degree {}, got {}", what, expected, describe(h));
    return false;
  };
  if (!check(p, n, "whole poset")) return v;
  for (std::size_t x = 0; x < p.size(); ++x)
    if (!check(p.above_strict(x), n - p.height(x) - 1, "S_>" + p.label(x))) return v;
  for (std::size_t y = 0; y < p.size(); ++y)
    if (!check(p.below_strict(y), p.height(y) - 1, "S_<" + p.label(y))) return v;
  for (std::size_t x = 0; x < p.size(); ++x)
    for (auto y : p.up(x)) {
      if (y == x) continue;
      if (!check(p.open_interval(x, y), p.height(y) - p.height(x) - 2,
                 "(" + p.label(x) + ", " + p.label(y) + ")"))
        return v;
    }
  return v;
}

CMVerdict homological_cm(const SimplicialComplex& k, Ring ring) { return homological_cm(k.face_poset(), ring, false); }

}  // namespace dlat
