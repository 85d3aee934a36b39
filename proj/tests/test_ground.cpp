#include <doctest.h>

#include "dlat/errors.hpp"
#include "dlat/field.hpp"
#include "dlat/ground.hpp"
#include "dlat/structure_spec.hpp"

using namespace dlat;

namespace {

// Gaussian binomial [n choose k]_q
std::int64_t gauss(std::int64_t q, int n, int k) {
  std::int64_t num = 1, den = 1;
  for (int i = 0; i < k; ++i) {
    std::int64_t a = 1, b = 1;
    for (int j = 0; j < n - i; ++j) a *= q;
    for (int j = 0; j < i + 1; ++j) b *= q;
    num *= a - 1;
    den *= b - 1;
  }
  return num / den;
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

}  // namespace

TEST_CASE("finite fields") {
  CHECK(prime_power(9) == std::pair<std::uint32_t, std::uint32_t>{3, 2});
  CHECK(prime_power(6).first == 0);
  CHECK_THROWS_AS(FiniteField(6), NotPrimePowerError);
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 8u, 9u}) {
    FiniteField f(q);
    // every nonzero element has an inverse
    for (FiniteField::Elem a = 1; a < q; ++a) CHECK(f.mul(a, f.inv(a)) == 1);
    // the additive group has exponent p
    FiniteField::Elem s = 0;
    for (std::uint32_t i = 0; i < f.p(); ++i) s = f.add(s, 1);
    CHECK(s == 0);
  }
}

TEST_CASE("element counts of the standard families") {
  for (int n = 1; n <= 5; ++n) CHECK(boolean_lattice(n).size() == (std::size_t{1} << n));
  for (int n = 2; n <= 5; ++n) CHECK(partition_lattice(n).size() == static_cast<std::size_t>(bell(n)));
  for (auto [q, n] : {std::pair{2, 2}, {2, 3}, {3, 2}, {3, 3}, {4, 2}}) {
    std::int64_t total = 0;
    for (int k = 0; k <= n; ++k) total += gauss(q, n, k);  // [DERIVED]
    auto gs = subspace_lattice(q, n);
    CHECK(gs.size() == static_cast<std::size_t>(total));
    CHECK(gs.height() == n);
  }
  CHECK(subspace_lattice(2, 3).size() == 16);  // [PAPER] 1 + 7 + 7 + 1
  auto u = uniform_matroid_flats(4, 3);
  CHECK(u.size() == 1 + 4 + 6 + 1);  // [DERIVED] flats of U_4,3
  CHECK(u.height() == 3);
}

TEST_CASE("formed spaces") {
  auto s2 = formed_space(FormKind::Symplectic, 3, 2);
  CHECK(s2.size() == 2);  // every line isotropic
  auto s4 = formed_space(FormKind::Symplectic, 3, 4);
  CHECK(s4.size() == 92);
  CHECK(s4.atoms().size() == 90);
  REQUIRE(s4.has_atom_bases());
  for (auto& [atom, basis] : s4.atom_bases) CHECK(basis.size() == 24);  // [DERIVED] |SL_2(3)|
  auto u2 = formed_space(FormKind::Unitary, 2, 2);
  // [DERIVED] 5 points of PG(1,4), 3 isotropic, 2 non-degenerate
  CHECK(u2.size() == 4);
  for (auto& [atom, basis] : u2.atom_bases) CHECK(basis.size() == 3);  // q + 1 unit vectors
  auto u3 = formed_space(FormKind::Unitary, 2, 3);
  CHECK(u3.atoms().size() == 12);  // [DERIVED] 21 points minus q^3 + 1 = 9 isotropic
  CHECK_THROWS_AS(formed_space(FormKind::Symplectic, 3, 3), Error);
}

TEST_CASE("compatibility predicate") {
  auto gs = subspace_lattice(2, 2);
  auto atoms = gs.atoms();
  REQUIRE(atoms.size() == 3);
  CHECK(gs.compat(atoms[0], atoms[1]));
  CHECK(!gs.compat(atoms[0], atoms[0]));
  CHECK(gs.compat(atoms[0], gs.bottom));
  auto s4 = formed_space(FormKind::Symplectic, 3, 4);
  std::size_t orthogonal_pairs = 0;
  auto sa = s4.atoms();
  for (std::size_t i = 0; i < sa.size(); ++i)
    for (std::size_t j = i + 1; j < sa.size(); ++j) orthogonal_pairs += s4.compat(sa[i], sa[j]);
  CHECK(orthogonal_pairs == 45);  // each plane has a unique orthogonal complement
}

TEST_CASE("structure specs") {
  CHECK(build_structure("boolean:n=3").size() == 8);
  CHECK(build_structure("subspace:q=2,n=2").size() == 5);
  CHECK(build_structure("uniform:n=4,k=3").size() == 12);
  CHECK(build_structure("symplectic:q=3,n=4").size() == 92);
  CHECK(build_structure("json:" DLAT_DATA_DIR "/figure5.json").size() == 7);
  CHECK(build_structure("json:" DLAT_DATA_DIR "/figure2.json").poset() == figure2_poset());
  CHECK_THROWS_AS(build_structure("boolean"), ParseError);
  CHECK_THROWS_AS(build_structure("boolean:m=3"), ParseError);
  CHECK_THROWS_AS(build_structure("cube:n=3"), ParseError);
  CHECK_THROWS_AS(build_structure("subspace:q=6,n=2"), NotPrimePowerError);
  CHECK_THROWS_AS(build_structure("json:/nonexistent.json"), IOError);
}

TEST_CASE("custom lattices") {
  auto gs = load_lattice(figure5_poset(), "figure5");
  CHECK(gs.height() == 3);
  CHECK(gs.atoms().size() == 3);
  CHECK_THROWS_AS(load_lattice(Poset::from_pairs({"a", "b"}, {}), "anti"), UnboundedError);
  auto below = restrict_below(gs, gs.poset().at("d"));
  CHECK(below.size() == 4);
  CHECK(below.label(below.top) == "d");
}
