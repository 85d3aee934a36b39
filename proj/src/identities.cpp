#include "dlat/identities.hpp"

#include <chrono>
#include <functional>
#include <mutex>

#include <fmt/format.h>

#include "dlat/errors.hpp"
#include "dlat/objects.hpp"
#include "dlat/structure_spec.hpp"
#include "dlat/topology.hpp"

namespace dlat {

using nlohmann::json;

namespace {

std::int64_t int_param(const Params& p, const std::string& key, std::int64_t fallback) {
  auto it = p.find(key);
  if (it == p.end()) return fallback;
  try {
    std::size_t used = 0;
    auto v = std::stoll(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::logic_error&) {
    throw ParseError("parameter " + key + " must be an integer, got '" + it->second + "'");
  }
}

std::string str_param(const Params& p, const std::string& key, const std::string& fallback) {
  auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ParseError(what);
}

mpz_class zpow(const mpz_class& b, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

mpq_class qpow(const mpq_class& b, unsigned long e) {
  mpq_class r = 1;
  for (unsigned long i = 0; i < e; ++i) r *= b;
  return r;
}

mpz_class factorial(int n) {
  mpz_class r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

json zjson(const mpz_class& z) {
  if (z.fits_slong_p()) return json(static_cast<std::int64_t>(z.get_si()));
  return json(z.get_str());
}

json qjson(const mpq_class& q) {
  if (q.get_den() == 1) return zjson(q.get_num());
  return json(q.get_str());
}

json betti_json(const HomologyResult& h) {
  json b = json::object();
  for (auto& [d, r] : h.betti) b[std::to_string(d)] = r;
  if (!h.torsion.empty()) b["torsion"] = true;
  return b;
}

json sphere_json(int d, std::int64_t rank) {
  json b = json::object();
  if (rank != 0) b[std::to_string(d)] = rank;
  return b;
}

// Evaluate a polynomial given by a product of factors, each a list of
// (coefficient, exponent) terms.
using Terms = std::vector<std::pair<long, unsigned long>>;
mpz_class product_of(const std::vector<Terms>& factors, const mpz_class& q) {
  mpz_class r = 1;
  for (auto& f : factors) {
    mpz_class s = 0;
    for (auto [c, e] : f) s += c * zpow(q, e);
    r *= s;
  }
  return r;
}

// (-1)^{n-1} chi~ of the ordered frame complex.
mpz_class table_ordered_frames(int n, const mpz_class& q) {
  switch (n) {
    case 2: return product_of({{{1, 2}}}, q);
    case 3: return product_of({{{1, 2}}, {{1, 1}, {1, 0}}, {{1, 3}, {1, 2}, {-1, 0}}}, q);
    case 4:
      return product_of({{{1, 2}},
                         {{1, 6}, {1, 5}, {-1, 2}, {-1, 1}, {1, 0}},
                         {{1, 2}, {1, 1}, {1, 0}},
                         {{1, 2}, {1, 1}, {1, 0}}},
                        q);
    case 5:
      return product_of({{{1, 2}},
                         {{1, 1}, {1, 0}},
                         {{1, 2}, {1, 0}},
                         {{1, 15}, {3, 14}, {5, 13}, {6, 12}, {5, 11}, {2, 10}, {-2, 9}, {-5, 8},
                          {-5, 7}, {-3, 6}, {2, 4}, {2, 3}, {1, 2}, {-1, 0}}},
                        q);
  }
  throw ParseError("table-ordered-frames is tabulated for n = 2..5");
}

// (-1)^{n-1} n! chi~ of the frame complex.
mpz_class table_frames(int n, const mpz_class& q) {
  switch (n) {
    case 2: return product_of({{{1, 1}}, {{1, 1}, {-1, 0}}}, q);
    case 3: return product_of({{{1, 1}}, {{1, 1}, {-1, 0}}, {{1, 2}, {-1, 0}}, {{1, 2}, {3, 1}, {3, 0}}}, q);
    case 4:
      return product_of({{{1, 1}},
                         {{1, 1}, {-1, 0}},
                         {{1, 3}, {-1, 0}},
                         {{1, 7}, {4, 6}, {9, 5}, {12, 4}, {8, 3}, {-4, 2}, {-12, 1}, {-12, 0}}},
                        q);
    case 5:
      return product_of({{{1, 1}},
                         {{1, 1}, {-1, 0}},
                         {{1, 1}, {-1, 0}},
                         {{1, 4}, {-1, 0}},
                         {{1, 13}, {6, 12}, {20, 11}, {49, 10}, {94, 9}, {145, 8}, {180, 7}, {170, 6},
                          {105, 5}, {-100, 3}, {-140, 2}, {-120, 1}, {-60, 0}}},
                        q);
  }
  throw ParseError("table-frames is tabulated for n = 2..5");
}

mpz_class gl_order(const mpz_class& q, int k) {
  mpz_class r = 1;
  for (int i = 0; i < k; ++i) r *= zpow(q, k) - zpow(q, i);
  return r;
}

// prod_{i=1}^{n-1} (x^i - 1)
mpq_class q_factorial_part(const mpq_class& x, int n) {
  mpq_class r = 1;
  for (int i = 1; i < n; ++i) r *= qpow(x, i) - 1;
  return r;
}

int binom2(int n) { return n * (n - 1) / 2; }

std::uint32_t field_param(const Params& p, std::int64_t fallback) {
  auto q = int_param(p, "q", fallback);
  require(q >= 2 && q <= 1024, "q must be a prime power in [2, 1024]");
  return static_cast<std::uint32_t>(q);
}

int dim_param(const Params& p, const std::string& key, std::int64_t fallback, int lo, int hi) {
  auto n = int_param(p, key, fallback);
  require(n >= lo && n <= hi, fmt::format("{} must lie in [{}, {}]", key, lo, hi));
  return static_cast<int>(n);
}

std::size_t empty_index(const DecompPoset& pd) {
  auto e = pd.index_of(Decomp{});
  if (!e) throw InvariantError("PD has no empty decomposition");
  return *e;
}

struct Sides {
  json computed, formula;
  json detail = nullptr;
};

// chi~(redm D(GF(q)^n)) / ((-1)^n / n * prod (q^i - 1))
mpq_class f_value(std::uint32_t q, int n) {
  Objects o(subspace_lattice(q, n));
  mpq_class e = reduced_euler(o.D().poset.remove_top());
  mpq_class denom = q_factorial_part(mpq_class(q), n) / n;
  if (n % 2) denom = -denom;
  return e / denom;
}

std::vector<mpq_class> interpolate(const std::vector<std::pair<mpq_class, mpq_class>>& pts) {
  std::vector<mpq_class> out(pts.size(), 0);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::vector<mpq_class> basis{1};
    mpq_class scale = 1;
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (j == i) continue;
      std::vector<mpq_class> next(basis.size() + 1, 0);
      for (std::size_t k = 0; k < basis.size(); ++k) {
        next[k + 1] += basis[k];
        next[k] -= basis[k] * pts[j].first;
      }
      basis = std::move(next);
      scale *= pts[i].first - pts[j].first;
    }
    for (std::size_t k = 0; k < basis.size(); ++k) out[k] += pts[i].second * basis[k] / scale;
  }
  while (out.size() > 1 && out.back() == 0) out.pop_back();
  return out;
}

const std::vector<std::uint32_t> kInterpolationFields = {2, 3, 4, 5};

json poly_json(const std::vector<mpq_class>& p) {
  json a = json::array();
  for (auto& c : p) a.push_back(qjson(c));
  return a;
}

Sides opd_gl(const Params& p) {
  auto q = field_param(p, 2);
  int n = dim_param(p, "n", 2, 1, 3);
  Objects o(subspace_lattice(q, n));
  return {reduced_euler(o.OPD().poset.proper_part()), zjson(-zpow(q, n * (n - 1)))};
}

Sides pd_gl(const Params& p) {
  auto q = field_param(p, 2);
  int n = dim_param(p, "n", 2, 1, 3);
  Objects o(subspace_lattice(q, n));
  mpq_class f = -qpow(mpq_class(q), binom2(n)) * q_factorial_part(mpq_class(q), n) / n;
  return {reduced_euler(o.PD().poset.proper_part()), qjson(f)};
}

Sides d_gl_shape(const Params& p) {
  int n = dim_param(p, "n", 2, 1, 3);
  json values = json::object();
  bool integral = true, positive = true;
  std::vector<std::pair<mpq_class, mpq_class>> pts;
  for (auto q : kInterpolationFields) {
    auto v = f_value(q, n);
    values[std::to_string(q)] = qjson(v);
    integral = integral && v.get_den() == 1;
    positive = positive && v > 0;
    pts.emplace_back(q, v);
  }
  auto poly = interpolate(pts);
  json computed = {{"values_positive_integers", integral && positive},
                   {"degree", static_cast<int>(poly.size()) - 1},
                   {"monic", poly.back() == 1}};
  json formula = {{"values_positive_integers", true}, {"degree", binom2(n)}, {"monic", true}};
  if (n == 2) {
    computed["poly"] = poly_json(poly);
    formula["poly"] = json::array({2, 1});
  }
  return {computed, formula, json{{"f_values", values}, {"poly", poly_json(poly)}}};
}

Sides solomon(const Params& p) {
  auto q = field_param(p, 2);
  int n = dim_param(p, "n", 3, 1, 4);
  auto gs = subspace_lattice(q, n);
  std::int64_t mu = gs.poset().mobius(gs.bottom, gs.top);
  // sum over compositions (k_1, ..., k_m) of n
  mpq_class sum = 0;
  std::vector<int> parts;
  std::function<void(int)> walk = [&](int rest) {
    if (rest == 0) {
      mpq_class term = gl_order(q, n);
      long cross = 0;
      int seen = 0;
      for (int k : parts) {
        term /= gl_order(q, k);
        cross += static_cast<long>(seen) * k;
        seen += k;
      }
      term /= qpow(mpq_class(q), static_cast<unsigned long>(cross));
      sum += parts.size() % 2 ? -term : term;
      return;
    }
    for (int k = 1; k <= rest; ++k) {
      parts.push_back(k);
      walk(rest - k);
      parts.pop_back();
    }
  };
  walk(n);
  mpq_class closed = qpow(mpq_class(q), binom2(n));
  if (n % 2) closed = -closed;
  return {json{{"mobius", mu}, {"closed_form", qjson(closed)}},
          json{{"mobius", qjson(sum)}, {"closed_form", qjson(sum)}}};
}

Sides table_ordered(const Params& p) {
  auto q = field_param(p, 2);
  int n = dim_param(p, "n", 2, 2, 5);
  Objects o(subspace_lattice(q, n));
  std::int64_t e = reduced_euler(o.OF().poset);
  if ((n - 1) % 2) e = -e;
  return {e, zjson(table_ordered_frames(n, q))};
}

Sides table_unordered(const Params& p) {
  auto q = field_param(p, 2);
  int n = dim_param(p, "n", 2, 2, 5);
  Objects o(subspace_lattice(q, n));
  mpz_class e = mpz_class(static_cast<long>(reduced_euler(o.F()))) * factorial(n);
  if ((n - 1) % 2) e = -e;
  return {zjson(e), zjson(table_frames(n, q))};
}

Sides hypertree(const Params& p) {
  int n = dim_param(p, "n", 4, 2, 6);
  Objects o(partition_lattice(n));
  mpz_class f = zpow(n - 1, n - 2);
  if ((n - 1) % 2) f = -f;
  return {reduced_euler(o.D().poset.remove_top()), zjson(f)};
}

Sides hyperforest(const Params& p) {
  int n = dim_param(p, "n", 4, 2, 5);
  Objects o(partition_lattice(n));
  return {reduced_euler(o.PD().poset.proper_part()), zjson(-factorial(n - 2))};
}

std::string spec_param(const Params& p, const std::string& fallback) { return str_param(p, "spec", fallback); }

Sides opd_unique(const Params& p) {
  auto gs = build_structure(spec_param(p, "boolean:n=2"));
  json hyp = json::object();
  for (auto prop : {Property::LI, Property::EX, Property::UNIQUE})
    hyp[property_name(prop)] = check_property(gs, prop).holds;
  Objects o(std::move(gs));
  json computed = {{"euler", reduced_euler(o.OPD().poset.proper_part())}, {"hypotheses", hyp}};
  json formula = {{"euler", -1}, {"hypotheses", {{"LI", true}, {"EX", true}, {"UNIQUE", true}}}};
  return {computed, formula};
}

json od_count_formula(Objects& o) {
  std::map<std::size_t, std::int64_t> sizes;
  for (auto& s : o.D().elements) ++sizes[s.size()];
  mpz_class sum = 0;
  for (auto [k, nk] : sizes) {
    mpz_class t = factorial(static_cast<int>(k)) * static_cast<long>(nk);
    sum += k % 2 ? -t : t;
  }
  return zjson(sum);
}

Sides od_ordered_count(const Params& p) {
  Objects o(build_structure(spec_param(p, "subspace:q=2,n=3")));
  return {reduced_euler(o.OD().poset.remove_top()), od_count_formula(o)};
}

std::int64_t fubini(int m) {
  // ordered set partitions: a(m) = sum_k C(m,k) a(m-k)
  std::vector<std::int64_t> a(m + 1, 0);
  a[0] = 1;
  for (int i = 1; i <= m; ++i) {
    std::int64_t c = 1;
    for (int k = 1; k <= i; ++k) {
      c = c * (i - k + 1) / k;
      a[i] = checked_add(a[i], checked_mul(c, a[i - k]));
    }
  }
  return a[m];
}

Sides permutohedron_fiber(const Params& p) {
  Objects o(build_structure(spec_param(p, "boolean:n=3")));
  auto& d = o.D();
  auto& od = o.OD();
  auto top = od.poset.top();
  if (!top) throw InvariantError("OD has no top word");
  std::int64_t sized = 0, spherical = 0;
  for (std::size_t s = 0; s < d.elements.size(); ++s) {
    std::vector<std::size_t> keep;
    std::size_t total = 0;
    for (std::size_t w = 0; w < od.words.size(); ++w) {
      if (!d.poset.leq(s, od.forget[w])) continue;
      ++total;
      if (w != *top) keep.push_back(w);
    }
    int m = static_cast<int>(d.elements[s].size());
    if (static_cast<std::int64_t>(total) == fubini(m)) ++sized;
    if (is_spherical(od.poset.induced(keep), m - 2).spherical.value_or(false)) ++spherical;
  }
  auto n = static_cast<std::int64_t>(d.elements.size());
  return {json{{"decompositions", n}, {"fubini_sized", sized}, {"spherical", spherical}},
          json{{"decompositions", n}, {"fubini_sized", n}, {"spherical", n}}};
}

Sides derangement_fiber(const Params& p) {
  int m = dim_param(p, "m", 3, 1, 5);
  auto words = injective_words(full_simplex(m));
  auto h = homology(words.poset);
  return {betti_json(h), sphere_json(m - 1, derangements(m))};
}

Sides bergman_fullframes(const Params& p) {
  Objects o(build_structure(spec_param(p, "subspace:q=2,n=2")));
  auto h = homology(o.bergman());
  auto hc = homology(bergman_cylinder(o.gs(), o.F()));
  auto w = sphere_json(o.gs().height() - 1, static_cast<std::int64_t>(o.frames().full_frames.size()));
  return {json{{"bergman", betti_json(h)}, {"cylinder", betti_json(hc)}}, json{{"bergman", w}, {"cylinder", w}}};
}

Sides opd_boolean_sphere(const Params& p) {
  int n = dim_param(p, "n", 2, 1, 3);
  Objects o(boolean_lattice(n));
  return {betti_json(homology(o.OPD().poset.proper_part())), sphere_json(2 * n - 3, 1)};
}

Sides od_boolean_sphere(const Params& p) {
  int n = dim_param(p, "n", 3, 1, 5);
  Objects o(boolean_lattice(n));
  return {betti_json(homology(o.OD().poset.remove_top())), sphere_json(n - 2, 1)};
}

Sides uniform_pd_rank(const Params& p) {
  int n = dim_param(p, "n", 4, 2, 7);
  int k = dim_param(p, "k", 3, 1, n);
  Objects o(uniform_matroid_flats(n, k));
  mpz_class c;
  mpz_bin_uiui(c.get_mpz_t(), n - 1, k);
  return {betti_json(homology(o.PD().poset.proper_part())), sphere_json(k - 1, c.get_si())};
}

Sides unitary_d_euler(const Params& p) {
  auto q = field_param(p, 2);
  int n = dim_param(p, "n", 2, 1, 3);
  Objects o(formed_space(FormKind::Unitary, q, n));
  mpq_class mq = -mpq_class(q);
  // the subspace-lattice formula evaluated at -q, sign (-1)^n included
  mpq_class f = q_factorial_part(mq, n) * evaluate(f_polynomial(n), mq) / n;
  if (n % 2) f = -f;
  return {reduced_euler(o.D().poset.remove_top()), qjson(f)};
}

Sides symplectic_d_euler(const Params& p) {
  auto q = field_param(p, 3);
  int dim = dim_param(p, "n", 4, 2, 6);
  require(dim % 2 == 0, "symplectic dimension n must be even");
  int m = dim / 2;
  Objects o(formed_space(FormKind::Symplectic, q, dim));
  mpq_class q2 = mpq_class(q) * q;
  mpq_class fv = evaluate(f_polynomial(m), q2);
  mpq_class f = q_factorial_part(q2, m) * fv / m;
  if (m % 2) f = -f;
  json computed = {{"euler", reduced_euler(o.D().poset.remove_top())}};
  json formula = {{"euler", qjson(f)}};
  // f_m(q^2) against brute force over GF(q^2)^m when that field is small
  if (q * q <= 16 && m <= 2) {
    computed["f_direct"] = qjson(f_value(q * q, m));
    formula["f_direct"] = qjson(fv);
  }
  return {computed, formula};
}

json chi_links(const SimplicialComplex& k, const std::function<mpz_class(const Simplex&)>& weight) {
  mpz_class sum = reduced_euler(k);
  k.for_each_face([&](const Simplex& s) {
    mpz_class t = weight(s) * reduced_euler(k.link(s));
    sum += s.size() % 2 ? -t : t;
  });
  return zjson(sum);
}

// All four ordered-version and inflation Euler identities on one structure.
Sides wedge(Objects& o) {
  json computed, formula;
  computed["i"] = reduced_euler(o.OD().poset.remove_top());
  formula["i"] = od_count_formula(o);

  auto& pd = o.PD();
  auto empty = empty_index(pd);
  mpz_class rhs = reduced_euler(pd.poset.proper_part());
  for (auto& s : o.D().elements) {
    if (s.size() == 1 && s[0] == o.gs().top) continue;
    mpz_class t = reduced_euler(pd.poset.open_interval(empty, pd.lookup.at(s)));
    rhs += s.size() % 2 ? t : mpz_class(-t);
  }
  computed["ii"] = reduced_euler(o.OPD().poset.proper_part());
  formula["ii"] = zjson(rhs);

  computed["iii"] = reduced_euler(o.OF().poset);
  formula["iii"] = chi_links(o.F(), [](const Simplex& s) { return mpz_class(static_cast<long>(derangements(static_cast<int>(s.size())))); });

  auto inflation = [&](const Fibers& fib, const std::string& key) {
    auto& k = o.PF();
    computed[key] = reduced_euler(inflate(k, fib).complex);
    formula[key] = chi_links(k, [&](const Simplex& s) {
      // the fiber over s is a join of discrete sets: prod (|P_x| - 1) spheres
      mpz_class prod = 1;
      for (auto v : s) prod *= static_cast<long>(fib.at(k.vertex_label(v)).size()) - 1;
      return prod;
    });
  };
  if (o.gs().has_atom_bases()) inflation(atom_fibers(o.gs()), "iv_atom_bases");
  inflation(uniform_fibers(o.PF(), 2), "iv_size2");
  return {computed, formula};
}

Sides wedge_identities(const Params& p) {
  Objects o(build_structure(spec_param(p, "subspace:q=2,n=2")));
  return wedge(o);
}

struct Entry {
  const char* name;
  std::function<Sides(const Params&)> run;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> r = {
      {"opd-gl", opd_gl},
      {"pd-gl", pd_gl},
      {"d-gl-shape", d_gl_shape},
      {"solomon", solomon},
      {"table-ordered-frames", table_ordered},
      {"table-frames", table_unordered},
      {"hypertree", hypertree},
      {"hyperforest", hyperforest},
      {"opd-unique-minus-one", opd_unique},
      {"od-ordered-count", od_ordered_count},
      {"permutohedron-fiber", permutohedron_fiber},
      {"derangement-fiber", derangement_fiber},
      {"bergman-fullframes", bergman_fullframes},
      {"opd-boolean-sphere", opd_boolean_sphere},
      {"od-boolean-sphere", od_boolean_sphere},
      {"uniform-pd-rank", uniform_pd_rank},
      {"unitary-d-euler", unitary_d_euler},
      {"symplectic-d-euler", symplectic_d_euler},
      {"wedge-identities", wedge_identities},
  };
  return r;
}

}  // namespace

std::int64_t derangements(int m) {
  std::int64_t d = 1;  // D(0)
  for (int i = 1; i <= m; ++i) d = checked_add(checked_mul(d, i), i % 2 ? -1 : 1);
  return d;
}

mpq_class evaluate(const std::vector<mpq_class>& poly, const mpq_class& x) {
  mpq_class r = 0;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) r = r * x + *it;
  return r;
}

const std::vector<mpq_class>& f_polynomial(int n) {
  static std::mutex mu;
  static std::map<int, std::vector<mpq_class>> cache;
  if (n < 1 || n > 3) throw ParseError("f_n is available for n = 1..3");
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<std::pair<mpq_class, mpq_class>> pts;
  for (auto q : kInterpolationFields) pts.emplace_back(q, f_value(q, n));
  return cache[n] = interpolate(pts);
}

std::vector<std::string> identity_names() {
  std::vector<std::string> out;
  for (auto& e : registry()) out.emplace_back(e.name);
  return out;
}

IdentityReport run_identity(const std::string& name, const Params& params) {
  for (auto& e : registry()) {
    if (name != e.name) continue;
    IdentityReport r;
    r.name = name;
    r.params = params;
    auto start = std::chrono::steady_clock::now();
    auto sides = e.run(params);
    r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    r.computed = std::move(sides.computed);
    r.formula = std::move(sides.formula);
    r.detail = std::move(sides.detail);
    r.pass = r.computed == r.formula;
    return r;
  }
  throw UnknownIdentityError("unknown identity '" + name + "'");
}

json report_to_json(const IdentityReport& r) {
  json j{{"identity", r.name}, {"params", r.params}, {"computed", r.computed},
         {"formula", r.formula}, {"pass", r.pass}, {"ms", static_cast<std::int64_t>(r.ms)}};
  if (!r.detail.is_null()) j["detail"] = r.detail;
  return j;
}

}  // namespace dlat
