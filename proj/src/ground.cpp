#include "dlat/ground.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "dlat/errors.hpp"
#include "dlat/poset_io.hpp"

namespace dlat {

std::string kind_name(Kind k) {
  switch (k) {
    case Kind::Boolean: return "boolean";
    case Kind::Partition: return "partition";
    case Kind::Subspace: return "subspace";
    case Kind::Uniform: return "uniform-matroid";
    case Kind::Formed: return "formed";
    case Kind::Custom: return "custom";
  }
  return "custom";
}

std::vector<std::size_t> GroundStructure::atoms() const {
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < size(); ++x)
    if (x != bottom && h(x) == 1 && base->leq(bottom, x)) out.push_back(x);
  return out;
}

std::function<bool(std::size_t, std::size_t)> meet_compat(PosetPtr p, std::size_t bottom) {
  return [p, bottom](std::size_t x, std::size_t y) {
    if (x == bottom || y == bottom) return true;
    if (p->dense()) return (p->down_bits(x) & p->down_bits(y)).count() == 1;
    const auto& a = p->down(x);
    const auto& b = p->down(y);
    std::vector<Index> common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
    return common.size() == 1;
  };
}

namespace {

std::string set_label(std::uint32_t mask, int n) {
  std::string s = "{";
  bool first = true;
  for (int i = 0; i < n; ++i)
    if (mask >> i & 1u) {
      if (!first) s += ',';
      s += std::to_string(i + 1);
      first = false;
    }
  return s + "}";
}

GroundStructure finish_lattice(Kind kind, std::string spec, Poset p) {
  if (!p.bounded()) throw UnboundedError(spec + ": poset is not bounded");
  GroundStructure gs;
  gs.kind = kind;
  gs.spec = std::move(spec);
  gs.base = std::make_shared<const Poset>(std::move(p));
  gs.bottom = *gs.base->bottom();
  gs.top = *gs.base->top();
  gs.compat = meet_compat(gs.base, gs.bottom);
  return gs;
}

}  // namespace

GroundStructure boolean_lattice(int n) {
  if (n < 1 || n > 16) throw SizeLimitError(fmt::format("boolean lattice needs 1 <= n <= 16, got {}", n));
  const std::uint32_t total = 1u << n;
  std::vector<std::string> labels(total);
  std::vector<std::pair<std::size_t, std::size_t>> covers;
  for (std::uint32_t m = 0; m < total; ++m) {
    labels[m] = set_label(m, n);
    for (int i = 0; i < n; ++i)
      if (!(m >> i & 1u)) covers.emplace_back(m, m | (1u << i));
  }
  std::vector<std::size_t> order;
  Poset p = Poset::from_covers(std::move(labels), covers, &order);
  GroundStructure gs = finish_lattice(Kind::Boolean, fmt::format("boolean:n={}", n), std::move(p));
  std::vector<std::uint32_t> mask(total);
  for (std::size_t i = 0; i < total; ++i) mask[i] = static_cast<std::uint32_t>(order[i]);
  gs.compat = [mask](std::size_t x, std::size_t y) { return (mask[x] & mask[y]) == 0; };
  for (std::size_t i = 0; i < total; ++i)
    if (__builtin_popcount(mask[i]) == 1) gs.atom_bases[i] = {std::to_string(__builtin_ctz(mask[i]) + 1)};
  gs.meta["n"] = n;
  return gs;
}

GroundStructure partition_lattice(int n) {
  if (n < 2 || n > 6) throw SizeLimitError(fmt::format("partition lattice needs 2 <= n <= 6, got {}", n));
  // restricted growth strings
  std::vector<std::vector<int>> parts;
  std::vector<int> a(n, 0);
  std::function<void(int, int)> rec = [&](int i, int mx) {
    if (i == n) { parts.push_back(a); return; }
    for (int b = 0; b <= mx + 1; ++b) {
      a[i] = b;
      rec(i + 1, std::max(mx, b));
    }
  };
  a[0] = 0;
  rec(1, 0);
  std::vector<std::string> labels;
  for (auto& rgs : parts) {
    int nb = *std::max_element(rgs.begin(), rgs.end()) + 1;
    std::string s;
    for (int b = 0; b < nb; ++b) {
      if (b) s += '|';
      for (int i = 0; i < n; ++i)
        if (rgs[i] == b) s += std::to_string(i + 1);
    }
    labels.push_back(s);
  }
  auto leq = [&](std::size_t x, std::size_t y) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (parts[x][i] == parts[x][j] && parts[y][i] != parts[y][j]) return false;
    return true;
  };
  Poset p = Poset::from_leq(labels, leq);
  GroundStructure gs = finish_lattice(Kind::Partition, fmt::format("partition:n={}", n), std::move(p));
  for (auto x : gs.atoms()) {
    const auto& l = gs.label(x);
    // the unique two-element block
    std::string block;
    std::size_t start = 0;
    while (start <= l.size()) {
      auto end = l.find('|', start);
      if (end == std::string::npos) end = l.size();
      if (end - start == 2) block = l.substr(start, 2);
      start = end + 1;
    }
    gs.atom_bases[x] = {block};
  }
  gs.meta["n"] = n;
  return gs;
}

GroundStructure subspace_lattice(std::uint32_t q, int n) {
  FiniteField f(q);
  if (n < 1) throw SizeLimitError("subspace lattice needs n >= 1");
  std::uint64_t points = 1;
  for (int i = 0; i < n; ++i) {
    points *= q;
    if (points > (1u << 20)) throw SizeLimitError(fmt::format("GF({})^{} has too many vectors", q, n));
  }
  auto subs = all_subspaces(f, n, 20000);
  std::vector<std::string> labels;
  std::vector<Bits> pts;
  for (auto& m : subs) {
    labels.push_back(subspace_label(m, q));
    pts.push_back(span_points(f, m, n));
  }
  std::vector<std::size_t> order;
  Poset p = Poset::from_leq(labels, [&](std::size_t x, std::size_t y) { return pts[x].is_subset_of(pts[y]); },
                            &order);
  GroundStructure gs = finish_lattice(Kind::Subspace, fmt::format("subspace:q={},n={}", q, n), std::move(p));
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& m = subs[order[i]];
    if (m.size() != 1) continue;
    std::vector<std::string> vecs;
    for (FiniteField::Elem c = 1; c < q; ++c) {
      Vec v(n);
      for (int j = 0; j < n; ++j) v[j] = f.mul(c, m[0][j]);
      vecs.push_back(vector_label(v, q));
    }
    std::sort(vecs.begin(), vecs.end());
    gs.atom_bases[i] = vecs;
  }
  gs.meta["q"] = q;
  gs.meta["n"] = n;
  return gs;
}

GroundStructure uniform_matroid_flats(int n, int k) {
  if (k < 1 || k > n || n > 12)
    throw SizeLimitError(fmt::format("uniform matroid needs 1 <= k <= n <= 12, got n={} k={}", n, k));
  std::vector<std::uint32_t> flats;
  const std::uint32_t full = (1u << n) - 1;
  for (std::uint32_t m = 0; m <= full; ++m)
    if (__builtin_popcount(m) < k || m == full) flats.push_back(m);
  std::vector<std::string> labels;
  for (auto m : flats) labels.push_back(set_label(m, n));
  std::vector<std::size_t> order;
  Poset p = Poset::from_leq(labels, [&](std::size_t x, std::size_t y) { return (flats[x] & ~flats[y]) == 0; },
                            &order);
  GroundStructure gs = finish_lattice(Kind::Uniform, fmt::format("uniform:n={},k={}", n, k), std::move(p));
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto m = flats[order[i]];
    if (__builtin_popcount(m) == 1 && gs.h(i) == 1) gs.atom_bases[i] = {std::to_string(__builtin_ctz(m) + 1)};
  }
  gs.meta["n"] = n;
  gs.meta["k"] = k;
  return gs;
}

GroundStructure formed_space(FormKind kind, std::uint32_t q, int dim, const Mat& gram_in, Involution sigma) {
  if (dim < 1) throw SizeLimitError("formed space needs dim >= 1");
  auto [p, e] = prime_power(q);
  if (p == 0) throw NotPrimePowerError(fmt::format("{} is not a prime power", q));
  (void)e;
  std::uint32_t field_q = q;
  std::uint32_t sigma_pow = 1;  // sigma(x) = x^sigma_pow
  Mat gram;
  std::string spec;
  switch (kind) {
    case FormKind::Unitary:
      field_q = q * q;
      sigma_pow = q;
      gram.assign(dim, Vec(dim, 0));
      for (int i = 0; i < dim; ++i) gram[i][i] = 1;
      spec = fmt::format("unitary:q={},n={}", q, dim);
      break;
    case FormKind::Symplectic:
      if (dim % 2) throw DegenerateFormError("a symplectic form needs even dimension");
      gram.assign(dim, Vec(dim, 0));
      spec = fmt::format("symplectic:q={},n={}", q, dim);
      break;
    case FormKind::Gram: {
      if (sigma == Involution::Frobenius) {
        auto [pp, kk] = prime_power(q);
        if (kk % 2) throw UnsupportedFormError(fmt::format("sigma=frobenius needs a square field order, got {}", q));
        sigma_pow = 1;
        for (std::uint32_t i = 0; i < kk / 2; ++i) sigma_pow *= pp;
      } else if (p == 2) {
        throw UnsupportedFormError("characteristic 2 with sigma=identity is not supported");
      }
      gram = gram_in;
      if (gram.size() != static_cast<std::size_t>(dim))
        throw ParseError("gram matrix must be dim x dim");
      for (auto& row : gram) {
        if (row.size() != static_cast<std::size_t>(dim)) throw ParseError("gram matrix must be square");
        for (auto v : row)
          if (v >= q) throw ParseError("gram entry is not a field element code");
      }
      spec = fmt::format("form:q={},n={},sigma={}", q, dim, sigma == Involution::Frobenius ? "frobenius" : "identity");
      break;
    }
  }
  FiniteField f(field_q);
  if (kind == FormKind::Symplectic) {
    const int m = dim / 2;
    for (int i = 0; i < m; ++i) {
      gram[i][m + i] = 1;
      gram[m + i][i] = f.neg(1);
    }
  }
  std::uint64_t points = 1;
  for (int i = 0; i < dim; ++i) {
    points *= field_q;
    if (points > 4096) throw SizeLimitError(fmt::format("formed space over GF({})^{} is too large", field_q, dim));
  }
  auto sig = [&](FiniteField::Elem x) { return f.pow(x, sigma_pow); };
  auto form = [&](const Vec& v, const Vec& w) {
    FiniteField::Elem s = 0;
    for (int i = 0; i < dim; ++i) {
      if (!v[i]) continue;
      for (int j = 0; j < dim; ++j)
        if (gram[i][j] && w[j]) s = f.add(s, f.mul(v[i], f.mul(gram[i][j], sig(w[j]))));
    }
    return s;
  };
  if (rank(f, gram) != static_cast<std::size_t>(dim)) throw DegenerateFormError(spec + ": Gram matrix is singular");

  std::vector<Vec> allv;
  for (std::uint64_t c = 0; c < points; ++c) allv.push_back(decode_vector(c, field_q, dim));
  for (std::uint64_t a = 0; a < points; ++a)
    for (std::uint64_t b = a + 1; b < points; ++b)
      if ((form(allv[a], allv[b]) == 0) != (form(allv[b], allv[a]) == 0))
        throw NonReflexiveError(spec + ": orthogonality is not symmetric for " + vector_label(allv[a], field_q) +
                                " and " + vector_label(allv[b], field_q));

  auto subs = all_subspaces(f, dim, 20000);
  std::vector<Mat> kept;
  for (auto& s : subs) {
    if (s.empty() || s.size() == static_cast<std::size_t>(dim)) { kept.push_back(s); continue; }
    Mat g(s.size(), Vec(s.size()));
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = 0; j < s.size(); ++j) g[i][j] = form(s[i], s[j]);
    if (rank(f, g) != s.size()) continue;
    // S^perp = {v : Psi(v, b) = 0 for b in S}
    Mat rows;
    for (auto& b : s) {
      Vec r(dim, 0);
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) r[i] = f.add(r[i], f.mul(gram[i][j], sig(b[j])));
      rows.push_back(r);
    }
    auto perp = null_space(f, rows, dim);
    if (s.size() + perp.size() != static_cast<std::size_t>(dim))
      throw NonReflexiveError(spec + ": dimension formula fails at " + subspace_label(s, field_q));
    kept.push_back(s);
  }
  std::vector<std::string> labels;
  std::vector<Bits> pts;
  for (auto& s : kept) {
    labels.push_back(subspace_label(s, field_q));
    pts.push_back(span_points(f, s, dim));
  }
  std::vector<std::size_t> order;
  Poset poset = Poset::from_leq(
      labels, [&](std::size_t x, std::size_t y) { return pts[x].is_subset_of(pts[y]); }, &order);
  GroundStructure gs = finish_lattice(Kind::Formed, spec, std::move(poset));

  const std::size_t n = order.size();
  std::vector<Bits> compat(n, Bits(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const auto& sx = kept[order[x]];
      const auto& sy = kept[order[y]];
      bool ok = (pts[order[x]] & pts[order[y]]).count() == 1;
      for (std::size_t i = 0; ok && i < sx.size(); ++i)
        for (std::size_t j = 0; ok && j < sy.size(); ++j)
          ok = form(sx[i], sy[j]) == 0 && form(sy[j], sx[i]) == 0;
      if (ok) compat[x].set(y);
    }
  gs.compat = [compat](std::size_t x, std::size_t y) { return compat[x].test(y); };

  for (auto a : gs.atoms()) {
    const auto& s = kept[order[a]];
    std::vector<std::string> fiber;
    const auto& pa = pts[order[a]];
    if (kind == FormKind::Unitary && s.size() == 1) {
      for (auto c = pa.find_first(); c != Bits::npos; c = pa.find_next(c))
        if (form(allv[c], allv[c]) == 1) fiber.push_back(vector_label(allv[c], field_q));
    } else if (kind == FormKind::Symplectic && s.size() == 2) {
      for (auto c = pa.find_first(); c != Bits::npos; c = pa.find_next(c))
        for (auto d = pa.find_first(); d != Bits::npos; d = pa.find_next(d))
          if (form(allv[c], allv[d]) == 1)
            fiber.push_back(vector_label(allv[c], field_q) + "/" + vector_label(allv[d], field_q));
    }
    if (!fiber.empty()) {
      std::sort(fiber.begin(), fiber.end());
      gs.atom_bases[a] = fiber;
    }
  }
  gs.meta["q"] = q;
  gs.meta["n"] = dim;
  gs.meta["form"] = static_cast<int>(kind);
  return gs;
}

GroundStructure load_lattice(const Poset& p, const std::string& name) {
  if (p.empty()) throw UnboundedError(name + ": empty poset");
  if (!p.bottom() || !p.top())
    throw UnboundedError(name + ": poset needs a unique minimal and a unique maximal element");
  return finish_lattice(Kind::Custom, name, p);
}

GroundStructure load_lattice_json(const nlohmann::json& doc) {
  Poset p = poset_from_json(doc);
  std::string name = doc.contains("name") && doc["name"].is_string() ? doc["name"].get<std::string>() : "custom";
  GroundStructure gs = load_lattice(p, name);
  for (const char* key : {"bottom", "top"}) {
    if (!doc.contains(key)) continue;
    if (!doc[key].is_string()) throw ParseError(std::string(key) + " hint must be a label");
    auto want = gs.base->at(doc[key].get<std::string>());
    if (want != (std::string(key) == "bottom" ? gs.bottom : gs.top))
      throw UnboundedError(std::string(key) + " hint disagrees with the order");
  }
  return gs;
}

GroundStructure restrict_below(const GroundStructure& gs, std::size_t y) {
  std::vector<std::size_t> order;
  Poset p = gs.base->interval(gs.bottom, y, &order);
  GroundStructure r;
  r.kind = gs.kind;
  r.spec = gs.spec + " below " + gs.label(y);
  r.base = std::make_shared<const Poset>(std::move(p));
  r.bottom = *r.base->bottom();
  r.top = *r.base->top();
  auto parent = gs.compat;
  r.compat = [parent, order](std::size_t a, std::size_t b) { return parent(order[a], order[b]); };
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto it = gs.atom_bases.find(order[i]);
    if (it != gs.atom_bases.end()) r.atom_bases[i] = it->second;
  }
  r.meta = gs.meta;
  return r;
}

Poset figure2_poset() {
  return Poset::from_pairs({"0", "a", "b", "c", "d", "1"},
                           {{0, 1}, {0, 2}, {1, 3}, {2, 4}, {3, 5}, {4, 5}});
}

Poset figure5_poset() {
  return Poset::from_pairs({"0", "a", "b", "c", "d", "e", "1"},
                           {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {2, 5}, {3, 5}, {4, 6}, {5, 6}});
}

}  // namespace dlat
