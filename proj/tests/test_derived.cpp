#include <doctest.h>

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "dlat/derived.hpp"
#include "dlat/errors.hpp"
#include "dlat/identities.hpp"
#include "dlat/objects.hpp"
#include "dlat/structure_spec.hpp"
#include "dlat/topology.hpp"

using namespace dlat;

namespace {

SimplicialComplex random_complex(std::mt19937& rng, int vertices, int facets, int max_size) {
  std::vector<std::string> labels;
  for (int i = 0; i < vertices; ++i) labels.push_back("x" + std::to_string(i));
  std::uniform_int_distribution<int> size(1, max_size), vert(0, vertices - 1);
  std::vector<Simplex> simplices;
  for (int f = 0; f < facets; ++f) {
    std::set<Index> s;
    int k = size(rng);
    while (static_cast<int>(s.size()) < k) s.insert(static_cast<Index>(vert(rng)));
    simplices.emplace_back(s.begin(), s.end());
  }
  return SimplicialComplex(labels, simplices);
}

// chi~(K) + sum over nonempty faces of w(s) (-1)^|s| chi~(Lk s)
std::int64_t link_sum(const SimplicialComplex& k, const std::function<std::int64_t(const Simplex&)>& w) {
  std::int64_t sum = reduced_euler(k);
  for (auto& s : k.faces()) {
    auto t = w(s) * reduced_euler(k.link(s));
    sum += s.size() % 2 ? -t : t;
  }
  return sum;
}

std::int64_t fubini(int m) {
  if (m == 0) return 1;
  std::int64_t total = 0, c = 1;
  for (int k = 1; k <= m; ++k) {
    c = c * (m - k + 1) / k;
    total += c * fubini(m - k);
  }
  return total;
}

}  // namespace

TEST_CASE("frame complexes") {
  Objects s22(subspace_lattice(2, 2));
  CHECK(s22.frames().equal);
  CHECK(s22.F().vertex_count() == 3);
  CHECK(s22.F().f_vector() == std::vector<std::uint64_t>{3, 3});  // triangle boundary
  Objects u(uniform_matroid_flats(4, 3));
  CHECK(u.F().f_vector() == std::vector<std::uint64_t>{4, 6, 4});  // tetrahedron boundary
  CHECK(u.frames().full_frames.size() == 4);
  Objects b3(boolean_lattice(3));
  CHECK(b3.F().facets().size() == 1);
  CHECK(b3.F().dim() == 2);
}

TEST_CASE("inflation") {
  SimplicialComplex point({"v"}, {{0}});
  Fibers three{{"v", {"1", "2", "3"}}};
  auto inf = inflate(point, three);
  CHECK(inf.complex.vertex_count() == 3);
  CHECK(inf.complex.facets().size() == 3);
  CHECK_THROWS_AS(inflate(point, Fibers{}), MissingFiberError);
  CHECK_THROWS_AS(inflate(point, Fibers{{"v", {}}}), MissingFiberError);

  Objects s32(subspace_lattice(3, 2));
  auto& pb = s32.B();
  CHECK(pb.complex.vertex_count() == 8);  // 4 lines, 2 vectors of each up to unit
  CHECK(pb.complex.f_vector() == std::vector<std::uint64_t>{8, 6 * 4});  // each frame edge lifts to 4 edges
  // the fiber over every simplex is a join of the fibers: chi~ = prod (|P_x| - 1) up to sign
  for (auto& s : s32.F().faces()) {
    std::vector<std::size_t> keep;
    for (std::size_t v = 0; v < pb.complex.vertex_count(); ++v)
      if (std::find(s.begin(), s.end(), pb.deflation[v]) != s.end()) keep.push_back(v);
    std::vector<Simplex> sub;
    pb.complex.for_each_face([&](const Simplex& t) {
      bool inside = true;
      for (auto v : t) inside = inside && std::find(keep.begin(), keep.end(), v) != keep.end();
      if (inside) sub.push_back(t);
    });
    SimplicialComplex fiber(pb.complex.vertex_labels(), sub);
    std::int64_t expected = s.size() % 2 ? 1 : -1;  // -(-1)^|s| prod (|P_x| - 1), all |P_x| = 2
    CHECK(reduced_euler(fiber) - static_cast<std::int64_t>(pb.complex.vertex_count() - keep.size()) == expected);
  }
}

TEST_CASE("inflation multiplicity on an edge") {
  SimplicialComplex edge({"a", "b"}, {{0, 1}});
  Fibers two{{"a", {"1", "2"}}, {"b", {"1", "2"}}};
  auto inf = inflate(edge, two);
  CHECK(reduced_euler(inf.complex) == -1);  // a 4-cycle
  auto h = homology(inf.complex);
  CHECK(h.rank(1) == 1);
  // product of (|P_x| - 1) is the right multiplicity; product |P_x| minus one is not
  auto weight = [&](bool literal) {
    return [&, literal](const Simplex& sx) {
      std::int64_t with_minus = 1, plain = 1;
      for (auto v : sx) {
        auto m = static_cast<std::int64_t>(two.at(edge.vertex_label(v)).size());
        with_minus *= m - 1;
        plain *= m;
      }
      return literal ? plain - 1 : with_minus;
    };
  };
  auto good = link_sum(edge, weight(false));
  auto literal = link_sum(edge, weight(true));
  CHECK(good == -1);
  CHECK(literal == -3);
}

TEST_CASE("ordered versions") {
  Objects s22(subspace_lattice(2, 2));
  CHECK(s22.OPD().poset.size() == 11);
  Objects b3(boolean_lattice(3));
  CHECK(b3.OD().poset.size() == 13);
  // forgetful maps are order preserving
  for (auto* o : {&s22, &b3}) {
    auto& od = o->OPD();
    for (std::size_t x = 0; x < od.poset.size(); ++x)
      for (auto y : od.poset.up(x)) CHECK(o->PD().poset.leq(od.forget[x], od.forget[y]));
  }
  // each fiber over D_{>=s} has Fubini many elements
  Objects s23(subspace_lattice(2, 3));
  auto& od = s23.OD();
  for (std::size_t s = 0; s < s23.D().elements.size(); ++s) {
    std::size_t count = 0;
    for (std::size_t w = 0; w < od.words.size(); ++w) count += s23.D().poset.leq(s, od.forget[w]);
    CHECK(count == static_cast<std::size_t>(fubini(static_cast<int>(s23.D().elements[s].size()))));
  }
}

TEST_CASE("injective words") {
  Objects s22(subspace_lattice(2, 2));
  CHECK(s22.OF().poset.size() == 9);
  SimplicialComplex edge({"a", "b"}, {{0, 1}});
  auto w = injective_words(edge);
  CHECK(w.poset.size() == 4);
  auto h = homology(w.poset);
  CHECK(h.rank(1) == 1);
  CHECK(h.rank(0) == 0);
  CHECK(reduced_euler(w.poset) == -1);
  auto tri = injective_words(full_simplex(3));
  CHECK(homology(tri.poset).rank(2) == derangements(3));
  CHECK(word_label({"a", "b"}) == "(a,b)");
}

TEST_CASE("augmented Bergman complex") {
  Objects b2(boolean_lattice(2));
  auto h = homology(b2.bergman());
  CHECK(h.rank(1) == 1);
  Objects s22(subspace_lattice(2, 2));
  auto hs = homology(s22.bergman());
  CHECK(hs.rank(1) == 3);
  CHECK(hs.betti.size() == 1);
  auto cyl = bergman_cylinder(s22.gs(), s22.F());
  CHECK(reduced_euler(cyl) == reduced_euler(s22.bergman()));
  for (auto& v : s22.bergman().vertex_labels()) CHECK((v.rfind("frm:", 0) == 0 || v.rfind("flt:", 0) == 0));
}

TEST_CASE("Charney poset and beta") {
  Objects s22(subspace_lattice(2, 2));
  auto r = charney(s22.gs(), s22.D());
  CHECK(r.G.size() == 6);
  CHECK(r.G.height() == 0);
  CHECK(r.injective);
  CHECK(r.surjective);
  CHECK(r.rank_preserving);
  Objects f5(load_lattice(figure5_poset(), "figure5"));
  auto rf = charney(f5.gs(), f5.D());
  CHECK(rf.injective);
  CHECK(rf.downward_closed);
  CHECK(!rf.surjective);
}

TEST_CASE("G map") {
  Objects b3(boolean_lattice(3));
  auto g = g_map(b3.gs(), b3.D());
  CHECK(g.isomorphism);
  CHECK(homology(g.target).rank(1) == 1);
  Objects s22(subspace_lattice(2, 2));
  auto gs = g_map(s22.gs(), s22.D());
  CHECK(gs.order_preserving);
  CHECK(!gs.isomorphism);
  Objects u22(build_structure("unitary:q=2,n=2"));
  CHECK(g_map(u22.gs(), u22.D()).isomorphism);
}

TEST_CASE("property: injective-word and inflation Euler identities on random complexes") {
  std::mt19937 rng(1234);
  for (int trial = 0; trial < 40; ++trial) {
    auto k = random_complex(rng, 4 + trial % 3, 2 + trial % 4, 3);
    auto words = injective_words(k);
    auto expected = link_sum(k, [](const Simplex& s) { return derangements(static_cast<int>(s.size())); });
    CHECK(reduced_euler(words.poset) == expected);
    // forget map to the face list is order preserving
    auto faces = k.faces();
    for (std::size_t x = 0; x < words.poset.size(); ++x)
      for (auto y : words.poset.up(x)) {
        auto& a = faces[words.forget[x]];
        auto& b = faces[words.forget[y]];
        CHECK(std::includes(b.begin(), b.end(), a.begin(), a.end()));
      }
    // random fiber sizes
    std::uniform_int_distribution<int> fsize(1, 3);
    Fibers fib;
    for (auto& l : k.vertex_labels()) {
      std::vector<std::string> f;
      for (int i = fsize(rng); i > 0; --i) f.push_back(std::to_string(i));
      fib[l] = f;
    }
    auto inf = inflate(k, fib);
    auto rhs = link_sum(k, [&](const Simplex& s) {
      std::int64_t prod = 1;
      for (auto v : s) prod *= static_cast<std::int64_t>(fib.at(k.vertex_label(v)).size()) - 1;
      return prod;
    });
    CHECK(reduced_euler(inf.complex) == rhs);
  }
}
