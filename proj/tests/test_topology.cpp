#include <doctest.h>

#include <random>
#include <set>

#include "dlat/complex.hpp"
#include "dlat/errors.hpp"
#include "dlat/ground.hpp"
#include "dlat/objects.hpp"
#include "dlat/structure_spec.hpp"
#include "dlat/topology.hpp"

using namespace dlat;

namespace {

SimplicialComplex rp2() {
  // the 6-vertex real projective plane
  std::vector<Simplex> f{{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
                         {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {2, 4, 5}, {1, 3, 5}};
  return SimplicialComplex({"1", "2", "3", "4", "5", "6"}, f);
}

std::int64_t alternating_faces(const SimplicialComplex& k) {
  std::int64_t e = -1;  // empty face
  auto f = k.f_vector();
  for (std::size_t i = 0; i < f.size(); ++i) e += (i % 2 ? -1 : 1) * static_cast<std::int64_t>(f[i]);
  return e;
}

std::int64_t betti_sum(const HomologyResult& h) {
  std::int64_t e = 0;
  for (auto [d, b] : h.betti) e += (d % 2 ? -1 : 1) * b;
  return e;
}

}  // namespace

TEST_CASE("reduced convention on trivial inputs") {
  Poset empty = Poset::from_pairs({}, {});
  CHECK(reduced_euler(empty) == -1);  // [TRIVIAL]
  auto h = homology(empty);
  CHECK(h.rank(-1) == 1);
  CHECK(h.betti.size() == 1);
  auto point = Poset::from_pairs({"p"}, {});
  CHECK(reduced_euler(point) == 0);
  CHECK(homology(point).acyclic());
  auto anti = Poset::from_pairs({"a", "b", "c"}, {});
  CHECK(homology(anti).rank(0) == 2);
  CHECK(reduced_euler(anti) == 2);
}

TEST_CASE("spheres and torsion") {
  auto tri = full_simplex(3);
  CHECK(homology(tri).acyclic());
  SimplicialComplex boundary({"a", "b", "c"}, {{0, 1}, {1, 2}, {0, 2}});
  auto hb = homology(boundary);
  CHECK(hb.rank(1) == 1);
  CHECK(hb.concentrated_in(1));
  CHECK(is_spherical(boundary, 1).spherical == true);
  CHECK(is_spherical(boundary, 0).spherical == false);
  auto p = rp2();
  auto hz = homology(p, Ring::Z);
  CHECK(hz.betti.empty());
  REQUIRE(hz.torsion.count(1));
  CHECK(hz.torsion.at(1) == std::vector<std::string>{"2"});
  CHECK(!hz.free());
  auto hq = homology(p, Ring::Q);
  CHECK(hq.acyclic());
  CHECK(hq.euler == 0);
}

TEST_CASE("three Euler characteristics agree on the corpus") {
  for (auto spec : {"boolean:n=3", "partition:n=4", "subspace:q=2,n=3", "uniform:n=4,k=3", "unitary:q=2,n=2"}) {
    CAPTURE(spec);
    Objects o(build_structure(spec));
    // proper part of PD, and D below its top closed off with a new minimum
    auto closed = add_bottom(o.D().poset);
    for (const Poset* p : std::vector<const Poset*>{&o.PD().poset, &closed}) {
      auto q = p->proper_part();
      auto k = order_complex(q);
      auto e = reduced_euler(q);
      CHECK(e == alternating_faces(k));
      CHECK(e == betti_sum(homology(q)));
      CHECK(e == p->mobius(*p->bottom(), *p->top()));
    }
  }
}

TEST_CASE("homology of known decomposition posets") {
  Objects p4(partition_lattice(4));
  auto h = homology(p4.D().poset.remove_top());
  CHECK(h.concentrated_in(1));
  CHECK(h.euler == reduced_euler(p4.D().poset.remove_top()));
  CHECK(h.euler == -h.rank(1));
  Objects u(uniform_matroid_flats(4, 3));
  auto hu = homology(u.PD().poset.proper_part());
  CHECK(hu.concentrated_in(2));
  CHECK(hu.rank(2) == 1);
  // the top-removed D and the proper part of PD share their homology
  for (auto spec : {"boolean:n=3", "unitary:q=2,n=2", "unitary:q=2,n=3"}) {
    CAPTURE(spec);
    Objects o(build_structure(spec));
    auto a = homology(o.PD().poset.proper_part());
    auto b = homology(o.D().poset.remove_top());
    CHECK(a.betti == b.betti);
    CHECK(a.torsion == b.torsion);
  }
}

TEST_CASE("Cohen-Macaulay verdicts") {
  Objects b3(boolean_lattice(3));
  CHECK(homological_cm(b3.PD().poset).cm);
  CHECK(homological_cm(b3.D().poset).cm);
  Objects u(uniform_matroid_flats(4, 3));
  auto v = homological_cm(u.D().poset);
  CHECK(!v.cm);
  CHECK(!v.certificate.empty());
  Objects s22(subspace_lattice(2, 2));
  CHECK(homological_cm(s22.D().poset).cm);
  CHECK(homological_cm(s22.F()).cm);
  // two disjoint edges are not CM, the 1-sphere is
  SimplicialComplex two({"a", "b", "c", "d"}, {{0, 1}, {2, 3}});
  CHECK(!homological_cm(two).cm);
  SimplicialComplex circle({"a", "b", "c"}, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(homological_cm(circle).cm);
}

TEST_CASE("homology JSON") {
  SimplicialComplex circle({"a", "b", "c"}, {{0, 1}, {1, 2}, {0, 2}});
  auto j = homology_to_json(homology(circle));
  CHECK(j.contains("betti"));
  CHECK(j["betti"]["1"] == 1);
  CHECK(j["ring"] == "Z");
  CHECK(parse_ring("Q") == Ring::Q);
  CHECK(!parse_ring("R"));
}

TEST_CASE("property: integer and rational ranks agree up to torsion") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 4 + trial % 4;
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back("v" + std::to_string(i));
    std::uniform_int_distribution<int> vert(0, n - 1), size(1, 3);
    std::vector<Simplex> simplices;
    for (int f = 0; f < 3 + trial % 5; ++f) {
      std::set<Index> s;
      int k = size(rng);
      while (static_cast<int>(s.size()) < k) s.insert(static_cast<Index>(vert(rng)));
      simplices.emplace_back(s.begin(), s.end());
    }
    SimplicialComplex k(labels, simplices);
    auto hz = homology(k, Ring::Z), hq = homology(k, Ring::Q);
    CHECK(hz.betti == hq.betti);
    CHECK(hz.euler == hq.euler);
    CHECK(hz.euler == reduced_euler(k));
    CHECK(hz.euler == betti_sum(hz));
    CHECK(reduced_euler(order_complex(k.face_poset())) == hz.euler);  // barycentric subdivision
  }
}
