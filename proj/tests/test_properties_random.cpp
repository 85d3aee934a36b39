#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include "dlat/decomp.hpp"
#include "dlat/ground.hpp"
#include "dlat/identities.hpp"
#include "dlat/objects.hpp"
#include "dlat/poset_io.hpp"
#include "dlat/topology.hpp"

using namespace dlat;

namespace {

// A union-closed family of subsets containing the empty and the full set is
// a lattice under inclusion.
Poset random_lattice(std::mt19937& rng, int m, int generators) {
  std::uniform_int_distribution<std::uint32_t> mask(1, (1u << m) - 2);
  std::set<std::uint32_t> fam{0, (1u << m) - 1};
  for (int i = 0; i < generators; ++i) fam.insert(mask(rng));
  for (bool grew = true; grew;) {
    grew = false;
    for (auto a : std::vector<std::uint32_t>(fam.begin(), fam.end()))
      for (auto b : std::vector<std::uint32_t>(fam.begin(), fam.end()))
        grew = fam.insert(a | b).second || grew;
  }
  std::vector<std::uint32_t> elems(fam.begin(), fam.end());
  std::vector<std::string> labels;
  for (auto e : elems) labels.push_back("s" + std::to_string(e));
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = 0; j < elems.size(); ++j)
      if (i != j && (elems[i] & elems[j]) == elems[i]) pairs.emplace_back(i, j);
  return Poset::from_pairs(labels, pairs);
}

}  // namespace

TEST_CASE("property: structural implications on random lattices") {
  std::mt19937 rng(31337);
  for (int trial = 0; trial < 25; ++trial) {
    auto p = random_lattice(rng, 3 + trial % 2, 2 + trial % 3);
    CAPTURE(poset_to_json(p, "random").dump());
    REQUIRE(is_lattice(p).lattice);
    Objects o(load_lattice(p, "random"));
    auto& gs = o.gs();
    int n = gs.height();
    for (auto& d : o.full()) CHECK(is_full_decomposition(gs, d, false));
    bool size_n = false;
    for (auto& d : o.full()) size_n = size_n || static_cast<int>(d.size()) == n;
    CHECK(size_n == (o.PD().poset.height() == 2 * n - 1));
    CHECK(is_lattice(add_bottom(o.D().poset)).lattice);
    if (is_lattice(o.PD().poset).lattice) CHECK(is_lattice(o.subh()).lattice);
    bool unique = check_property(gs, Property::UNIQUE).holds;
    bool ex = check_property(gs, Property::EX).holds;
    if (unique && ex) CHECK(check_property(gs, Property::CM).holds);
    // LI is a hypothesis, not a theorem: random lattices can fail it
    for (auto prop : {Property::LI, Property::EX, Property::CM, Property::E1E2, Property::UNIQUE}) {
      auto r = check_property(gs, prop);
      if (!r.holds) CHECK(!r.certificate.empty());
    }
  }
}

TEST_CASE("property: Euler identities on random lattices") {
  std::mt19937 rng(4242);
  auto dir = std::filesystem::temp_directory_path() / "dlat_random_lattices";
  std::filesystem::create_directories(dir);
  for (int trial = 0; trial < 15; ++trial) {
    auto p = random_lattice(rng, 3 + trial % 2, 2 + trial % 3);
    auto path = dir / ("lattice" + std::to_string(trial) + ".json");
    std::ofstream(path) << poset_to_json(p, "random").dump();
    auto r = run_identity("wedge-identities", {{"spec", "json:" + path.string()}});
    CAPTURE(report_to_json(r).dump());
    CHECK(r.pass);
  }
  std::filesystem::remove_all(dir);
}
