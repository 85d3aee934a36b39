#include "dlat/suite.hpp"

#include <atomic>
#include <chrono>
#include <thread>

#include <fmt/format.h>

#include "dlat/errors.hpp"
#include "dlat/identities.hpp"
#include "dlat/objects.hpp"
#include "dlat/structure_spec.hpp"
#include "dlat/topology.hpp"

namespace dlat {

using nlohmann::json;

namespace {

// Collects labelled checks; the criterion passes iff all of them do.
class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    ++total_;
    if (!ok) failures_.push_back(what);
  }
  void identity(const std::string& name, const Params& p) {
    auto r = run_identity(name, p);
    std::string args;
    for (auto& [k, v] : p) args += fmt::format("{}{}={}", args.empty() ? "" : ",", k, v);
    expect(r.pass, fmt::format("{}({}): computed {} formula {}", name, args, r.computed.dump(), r.formula.dump()));
  }
  bool pass() const { return failures_.empty(); }
  std::string detail() const {
    if (failures_.empty()) return fmt::format("{} checks", total_);
    std::string s = fmt::format("{}/{} checks failed", failures_.size(), total_);
    for (auto& f : failures_) s += "; " + f;
    return s;
  }

 private:
  std::size_t total_ = 0;
  std::vector<std::string> failures_;
};

struct Criterion {
  std::string id;
  std::string title;
  std::function<void(Checks&)> run;
};

Params qn(int q, int n) { return {{"q", std::to_string(q)}, {"n", std::to_string(n)}}; }
Params one(const std::string& k, const std::string& v) { return {{k, v}}; }

bool same_homology(const HomologyResult& a, const HomologyResult& b) {
  return a.betti == b.betti && a.torsion == b.torsion;
}

std::string betti_str(const HomologyResult& h) { return homology_to_json(h)["betti"].dump(); }

const std::vector<std::string> kSubspaceCorpus = {"subspace:q=2,n=2", "subspace:q=2,n=3", "subspace:q=3,n=2"};
const std::vector<std::string> kFormedCorpus = {"unitary:q=2,n=2", "unitary:q=2,n=3", "symplectic:q=3,n=4"};

std::vector<std::string> corpus() {
  std::vector<std::string> c;
  for (int n = 1; n <= 4; ++n) c.push_back(fmt::format("boolean:n={}", n));
  for (int n = 2; n <= 4; ++n) c.push_back(fmt::format("partition:n={}", n));
  c.insert(c.end(), kSubspaceCorpus.begin(), kSubspaceCorpus.end());
  c.push_back("uniform:n=4,k=3");
  c.insert(c.end(), kFormedCorpus.begin(), kFormedCorpus.end());
  return c;
}

GroundStructure figure5() { return load_lattice(figure5_poset(), "figure5"); }

void c1(Checks& c) {
  for (auto [q, n] : {std::pair{2, 2}, {3, 2}, {2, 3}}) c.identity("opd-gl", qn(q, n));
}

void c2(Checks& c) {
  for (auto [q, n] : {std::pair{2, 2}, {3, 2}, {2, 3}}) c.identity("pd-gl", qn(q, n));
}

void c3(Checks& c) {
  auto r = run_identity("d-gl-shape", one("n", "2"));
  c.expect(r.pass, "d-gl-shape(n=2): " + r.computed.dump());
  c.expect(r.computed.value("poly", json()) == json::array({2, 1}), "f_2 interpolates to q+2");
}

void c4(Checks& c) {
  for (int n : {2, 3})
    for (int q : {2, 3}) c.identity("table-ordered-frames", qn(q, n));
}

void c5(Checks& c) {
  for (int n : {2, 3})
    for (int q : {2, 3}) c.identity("table-frames", qn(q, n));
}

void c6(Checks& c) {
  for (int n : {3, 4, 5}) c.identity("hypertree", one("n", std::to_string(n)));
  for (int n : {3, 4}) c.identity("hyperforest", one("n", std::to_string(n)));
}

void c7(Checks& c) {
  for (int n = 2; n <= 4; ++n) {
    Objects o(boolean_lattice(n));
    auto h = homology(o.PD().poset.proper_part());
    c.expect(h.acyclic(), fmt::format("proper PD(B_{}) acyclic, got {}", n, betti_str(h)));
  }
  for (int n = 1; n <= 4; ++n) c.identity("od-boolean-sphere", one("n", std::to_string(n)));
  for (int n : {2, 3}) c.identity("opd-boolean-sphere", one("n", std::to_string(n)));
}

void c8(Checks& c) {
  c.identity("uniform-pd-rank", {{"n", "4"}, {"k", "3"}});
  Objects o(uniform_matroid_flats(4, 3));
  auto v = homological_cm(o.D().poset);
  c.expect(!v.cm, "D(U_4,3) should fail homological CM");
  c.expect(!v.certificate.empty(), "CM failure carries a certificate");
}

void c9(Checks& c) {
  std::vector<std::pair<std::string, std::size_t>> cases = {
      {"boolean:n=1", 1}, {"boolean:n=2", 1}, {"boolean:n=3", 1}, {"boolean:n=4", 1},
      {"subspace:q=2,n=2", 3}, {"subspace:q=2,n=3", 28}, {"uniform:n=4,k=3", 4}};
  for (auto& [spec, count] : cases) {
    Objects o(build_structure(spec));
    c.expect(o.frames().full_frames.size() == count,
             fmt::format("{}: {} full frames, expected {}", spec, o.frames().full_frames.size(), count));
    c.identity("bergman-fullframes", one("spec", spec));
  }
}

void c10(Checks& c) {
  for (int m = 1; m <= 4; ++m) c.identity("derangement-fiber", one("m", std::to_string(m)));
  c.expect(derangements(3) == 2 && derangements(4) == 9, "D(3) = 2 and D(4) = 9");
}

void c11(Checks& c) {
  for (auto& spec : corpus()) c.identity("wedge-identities", one("spec", spec));
}

void c12(Checks& c) {
  for (auto& spec : kFormedCorpus) {
    c.identity("opd-unique-minus-one", one("spec", spec));
    Objects o(build_structure(spec));
    auto a = homology(o.PD().poset.proper_part());
    auto b = homology(o.D().poset.remove_top());
    c.expect(same_homology(a, b),
             fmt::format("{}: proper PD {} vs redm D {}", spec, betti_str(a), betti_str(b)));
  }
  c.identity("unitary-d-euler", qn(2, 2));
  c.identity("unitary-d-euler", qn(2, 3));
  c.identity("symplectic-d-euler", qn(3, 4));
}

void c13(Checks& c) {
  for (auto& spec : {"subspace:q=2,n=3", "subspace:q=3,n=2"}) {
    Objects o(build_structure(spec));
    auto r = charney(o.gs(), o.D());
    c.expect(r.isomorphism, fmt::format("beta is an isomorphism on {}", spec));
  }
  {
    Objects o(figure5());
    auto r = charney(o.gs(), o.D());
    c.expect(!r.isomorphism && r.injective, "beta injective but not an isomorphism on figure5");
  }
  std::vector<std::string> iso;
  for (int n = 1; n <= 4; ++n) iso.push_back(fmt::format("boolean:n={}", n));
  iso.insert(iso.end(), kFormedCorpus.begin(), kFormedCorpus.end());
  for (auto& spec : iso) {
    Objects o(build_structure(spec));
    c.expect(g_map(o.gs(), o.D()).isomorphism, fmt::format("G is an isomorphism on {}", spec));
  }
  for (auto& spec : kSubspaceCorpus) {
    Objects o(build_structure(spec));
    auto g = g_map(o.gs(), o.D());
    c.expect(g.order_preserving && !g.isomorphism, fmt::format("G order-preserving, not an isomorphism on {}", spec));
  }
}

void c14(Checks& c) {
  for (auto& spec : kSubspaceCorpus) {
    auto gs = build_structure(spec);
    c.expect(check_property(gs, Property::EX).holds && check_property(gs, Property::CM).holds,
             "EX and CM on " + spec);
  }
  {
    auto gs = figure5();
    auto ex = check_property(gs, Property::EX);
    auto cm = check_property(gs, Property::CM);
    c.expect(!ex.holds && !ex.certificate.empty(), "EX fails with a certificate on figure5");
    c.expect(!cm.holds && !cm.certificate.empty(), "CM fails with a certificate on figure5");
  }
  for (auto& spec : corpus()) {
    auto gs = build_structure(spec);
    // partition:n=2 is the two-element chain, i.e. the Boolean lattice B_1
    bool boolean_like = spec.rfind("boolean", 0) == 0 || spec == "partition:n=2";
    bool formed = spec.rfind("unitary", 0) == 0 || spec.rfind("symplectic", 0) == 0;
    bool unique = check_property(gs, Property::UNIQUE).holds;
    c.expect(unique == (boolean_like || formed), fmt::format("UNIQUE = {} on {}", unique, spec));
    c.expect(check_property(gs, Property::LI).holds, "LI on " + spec);
  }
  c.expect(!check_property(figure5(), Property::UNIQUE).holds, "UNIQUE fails on figure5");
}

void c15(Checks& c) {
  auto cm = [&](const std::string& what, const CMVerdict& v) {
    c.expect(v.cm, what + (v.cm ? "" : ": " + v.certificate));
  };
  for (auto& spec : {"subspace:q=2,n=2", "subspace:q=2,n=3"}) {
    Objects o(build_structure(spec));
    std::string s = spec;
    cm("D of " + s, homological_cm(o.D().poset));
    cm("OD of " + s, homological_cm(o.OD().poset));
    cm("F of " + s, homological_cm(o.F()));
    cm("PB of " + s, homological_cm(o.PB().complex));
    cm("OF of " + s, homological_cm(o.OF().poset, Ring::Q, false));
  }
  for (int n = 2; n <= 4; ++n) {
    Objects o(partition_lattice(n));
    cm(fmt::format("D of partition:n={}", n), homological_cm(o.D().poset));
  }
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {"1", "ordered partial decompositions of GF(q)^n: chi~ = -q^{n(n-1)}", c1},
      {"2", "partial decompositions of GF(q)^n: chi~ closed form", c2},
      {"3", "decompositions of GF(q)^n: f_n positive integers, f_2 = q+2", c3},
      {"4", "ordered frame complex Euler characteristics (table)", c4},
      {"5", "frame complex Euler characteristics (table)", c5},
      {"6", "hypertrees and hyperforests", c6},
      {"7", "Boolean lattices: PD acyclic, OD and OPD spheres", c7},
      {"8", "uniform matroid U_4,3: PD rank, D not CM", c8},
      {"9", "augmented Bergman complex: wedge of full frames", c9},
      {"10", "injective-word fibers: derangement ranks", c10},
      {"11", "wedge and inflation Euler identities on the corpus", c11},
      {"12", "formed spaces: OPD, retract, Euler formulas", c12},
      {"13", "beta and G map isomorphism verdicts", c13},
      {"14", "property matrix EX, CM, UNIQUE, LI", c14},
      {"15", "homological Cohen-Macaulay over Q", c15},
  };
  return list;
}

std::vector<Criterion> fast_entries() {
  std::vector<std::pair<std::string, Params>> runs = {
      {"opd-gl", qn(2, 2)},
      {"pd-gl", qn(2, 2)},
      {"d-gl-shape", one("n", "2")},
      {"solomon", qn(2, 2)},
      {"table-ordered-frames", qn(2, 2)},
      {"table-frames", qn(2, 2)},
      {"hypertree", one("n", "4")},
      {"hyperforest", one("n", "4")},
      {"opd-unique-minus-one", one("spec", "unitary:q=2,n=2")},
      {"od-ordered-count", one("spec", "subspace:q=2,n=2")},
      {"permutohedron-fiber", one("spec", "boolean:n=3")},
      {"derangement-fiber", one("m", "3")},
      {"bergman-fullframes", one("spec", "subspace:q=2,n=2")},
      {"opd-boolean-sphere", one("n", "2")},
      {"od-boolean-sphere", one("n", "2")},
      {"uniform-pd-rank", {{"n", "4"}, {"k", "3"}}},
      {"unitary-d-euler", qn(2, 2)},
      {"symplectic-d-euler", qn(3, 4)},
      {"wedge-identities", one("spec", "subspace:q=2,n=2")},
  };
  std::vector<Criterion> out;
  for (auto& [name, p] : runs) {
    std::string args;
    for (auto& [k, v] : p) args += fmt::format("{}{}={}", args.empty() ? "" : " ", k, v);
    out.push_back({name, args, [name, p](Checks& c) { c.identity(name, p); }});
  }
  return out;
}

std::vector<CriterionReport> execute(const std::vector<Criterion>& list, unsigned threads) {
  std::vector<CriterionReport> out(list.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < list.size();) {
      auto& cr = list[i];
      auto& r = out[i];
      r.id = cr.id;
      r.title = cr.title;
      auto start = std::chrono::steady_clock::now();
      Checks c;
      try {
        cr.run(c);
        r.pass = c.pass();
        r.detail = c.detail();
      } catch (const Error& e) {
        r.pass = false;
        r.detail = fmt::format("{}: {}", e.name(), e.what());
      } catch (const std::exception& e) {
        r.pass = false;
        r.detail = fmt::format("error: {}", e.what());
      }
      r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(list.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace

std::optional<SuiteScope> parse_scope(const std::string& s) {
  if (s == "all") return SuiteScope::All;
  if (s == "fast") return SuiteScope::Fast;
  return std::nullopt;
}

std::vector<CriterionReport> run_acceptance(unsigned threads) { return execute(criteria(), threads); }

std::vector<CriterionReport> run_fast_suite(unsigned threads) { return execute(fast_entries(), threads); }

std::vector<CriterionReport> run_suite(SuiteScope scope, unsigned threads) {
  return scope == SuiteScope::All ? run_acceptance(threads) : run_fast_suite(threads);
}

json criterion_to_json(const CriterionReport& r) {
  return json{{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail},
              {"ms", static_cast<std::int64_t>(r.ms)}};
}

}  // namespace dlat
