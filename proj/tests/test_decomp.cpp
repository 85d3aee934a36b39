#include <doctest.h>

#include <functional>
#include <map>
#include <set>

#include "dlat/decomp.hpp"
#include "dlat/errors.hpp"
#include "dlat/objects.hpp"
#include "dlat/structure_spec.hpp"

using namespace dlat;

namespace {

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::int64_t gl(std::int64_t q, int k) {
  std::int64_t r = 1;
  for (int i = 0; i < k; ++i) r *= ipow(q, k) - ipow(q, i);
  return r;
}

std::int64_t fact(int n) { return n <= 1 ? 1 : n * fact(n - 1); }

// Direct sum decompositions of GF(q)^n: sum over integer partitions
// (multiplicities m_j) of |GL_n| / (prod |GL_k| * prod m_j!).
std::int64_t subspace_decomp_count(std::int64_t q, int n) {
  std::int64_t total = 0;
  std::vector<int> parts;
  std::function<void(int, int)> walk = [&](int rest, int maxpart) {
    if (rest == 0) {
      std::int64_t denom = 1;
      std::map<int, int> mult;
      for (int k : parts) {
        denom *= gl(q, k);
        ++mult[k];
      }
      for (auto [k, m] : mult) denom *= fact(m);
      total += gl(q, n) / denom;
      return;
    }
    for (int k = std::min(rest, maxpart); k >= 1; --k) {
      parts.push_back(k);
      walk(rest - k, k);
      parts.pop_back();
    }
  };
  walk(n, n);
  return total;
}

std::int64_t bell(int n) {
  std::vector<std::int64_t> row{1};
  for (int i = 0; i < n; ++i) {
    std::vector<std::int64_t> next{row.back()};
    for (auto v : row) next.push_back(next.back() + v);
    row = next;
  }
  return row.front();
}

const std::vector<std::string> kCorpus = {
    "boolean:n=1",      "boolean:n=2",      "boolean:n=3",     "boolean:n=4",     "partition:n=3",
    "partition:n=4",    "subspace:q=2,n=2", "subspace:q=2,n=3", "subspace:q=3,n=2", "uniform:n=4,k=3",
    "unitary:q=2,n=2",  "unitary:q=2,n=3",  "symplectic:q=3,n=4"};

}  // namespace

TEST_CASE("decomposition counts") {
  for (auto [q, n] : {std::pair{2, 2}, {2, 3}, {3, 2}, {3, 3}}) {
    Objects o(subspace_lattice(q, n));
    CHECK(o.D().elements.size() == static_cast<std::size_t>(subspace_decomp_count(q, n)));  // [DERIVED]
  }
  Objects s23(subspace_lattice(2, 3));
  CHECK(s23.D().poset.size() == 57);   // [DERIVED]
  CHECK(s23.PD().poset.size() == 93);  // [DERIVED]
  for (int n = 1; n <= 4; ++n) {
    Objects o(boolean_lattice(n));
    CHECK(o.D().elements.size() == static_cast<std::size_t>(bell(n)));       // set partitions
    CHECK(o.PD().elements.size() == static_cast<std::size_t>(bell(n + 1)));  // partial set partitions
  }
  Objects u(uniform_matroid_flats(4, 3));
  CHECK(u.D().elements.size() == 17);
}

TEST_CASE("strict decomposition check") {
  auto gs = subspace_lattice(2, 2);
  auto a = gs.atoms();
  CHECK(is_full_decomposition(gs, {static_cast<Index>(a[0]), static_cast<Index>(a[1])}, false));
  CHECK(!is_full_decomposition(gs, {static_cast<Index>(a[0])}, false));
  auto three = is_full_decomposition(gs, {static_cast<Index>(a[0]), static_cast<Index>(a[1]), static_cast<Index>(a[2])}, false);
  CHECK(!three);
  CHECK(!three.reason.empty());
  // every enumerated decomposition passes the check and PD is the union of power sets
  for (auto& spec : kCorpus) {
    Objects o(build_structure(spec));
    std::set<Decomp> subsets;
    for (auto& d : o.full()) {
      CHECK(is_full_decomposition(o.gs(), d, false));
      for (std::uint32_t m = 0; m < (1u << d.size()); ++m) {
        Decomp s;
        for (std::size_t i = 0; i < d.size(); ++i)
          if (m >> i & 1) s.push_back(d[i]);
        subsets.insert(s);
      }
    }
    CHECK(subsets.size() == o.PD().elements.size());
  }
}

TEST_CASE("refinement, span and complements") {
  auto gs = subspace_lattice(2, 2);
  auto a = gs.atoms();
  Decomp pair{static_cast<Index>(a[0]), static_cast<Index>(a[1])};
  Decomp top{static_cast<Index>(gs.top)};
  CHECK(refines(gs, pair, top));
  CHECK(!refines(gs, top, pair));
  CHECK(phi(gs, pair) == gs.top);
  CHECK(phi(gs, {}) == gs.bottom);
  // [DERIVED] a line in GF(q)^2 has q^{k(n-k)} = 2 complements
  CHECK(h_complements(gs, a[0], gs.top).size() == 2);
  Objects o(subspace_lattice(2, 2));
  CHECK(o.PD().poset.size() == 8);
  CHECK(o.subh().size() == 5);
  CHECK(decomp_label(gs, pair).front() == '{');
}

TEST_CASE("properties on the two example lattices") {
  auto f5 = load_lattice(figure5_poset(), "figure5");
  auto ex = check_property(f5, Property::EX);
  CHECK(!ex.holds);
  CHECK(ex.witness["sigma"] == nlohmann::json({"a", "e"}));
  CHECK(ex.witness["y"] == "e");
  CHECK(ex.witness["tau"] == nlohmann::json({"b", "c"}));
  CHECK(!check_property(f5, Property::CM).holds);
  auto f2 = load_lattice(figure2_poset(), "figure2");
  Objects o(f2);
  auto lc = is_lattice(o.PD().poset);
  CHECK(!lc.lattice);
  REQUIRE(lc.witness);
  auto [x, y] = *lc.witness;
  std::set<std::string> w{o.PD().poset.label(x), o.PD().poset.label(y)};
  CHECK(w == std::set<std::string>{"{a}", "{b}"});
}

TEST_CASE("corpus-wide structural implications") {
  for (auto& spec : kCorpus) {
    CAPTURE(spec);
    Objects o(build_structure(spec));
    auto& gs = o.gs();
    int n = gs.height();
    // height certificates
    bool size_n = false;
    for (auto& d : o.full()) size_n = size_n || static_cast<int>(d.size()) == n;
    CHECK(size_n == (o.PD().poset.height() == 2 * n - 1));
    CHECK(size_n == (o.D().poset.height() == n - 1));
    // D plus a new minimum is a lattice
    CHECK(is_lattice(add_bottom(o.D().poset)).lattice);
    // PD lattice implies Sub_h lattice
    if (is_lattice(o.PD().poset).lattice) CHECK(is_lattice(o.subh()).lattice);
    // UNIQUE and EX imply CM
    bool unique = check_property(gs, Property::UNIQUE).holds;
    bool ex = check_property(gs, Property::EX).holds;
    if (unique && ex) CHECK(check_property(gs, Property::CM).holds);
    CHECK(check_property(gs, Property::LI).holds);
    // the part above a full decomposition is a partition lattice on it
    for (std::size_t i = 0; i < o.D().elements.size(); ++i) {
      auto m = static_cast<int>(o.D().elements[i].size());
      std::size_t above = o.D().poset.up(i).size();
      CHECK(above == static_cast<std::size_t>(bell(m)));
    }
  }
}

TEST_CASE("unique minimum forces a partition lattice") {
  for (int n = 1; n <= 4; ++n) {
    Objects o(boolean_lattice(n));
    REQUIRE(o.D().poset.bottom());
    CHECK(o.D().poset.size() == static_cast<std::size_t>(bell(n)));
    CHECK(o.subh().size() == (std::size_t{1} << n));
  }
}

TEST_CASE("budget is enforced") {
  auto gs = subspace_lattice(2, 3);
  DecompositionEngine tiny(gs, false, 3);
  CHECK_THROWS_AS(tiny.full(), BudgetExceededError);
  CHECK(property_name(Property::E1E2) == "E1E2");
  CHECK(parse_property("UNIQUE") == Property::UNIQUE);
  CHECK(!parse_property("XX"));
}
