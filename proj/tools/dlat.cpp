#include <algorithm>
#include <iostream>
#include <optional>
#include <variant>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>
#include <json.hpp>

#include "dlat/errors.hpp"
#include "dlat/identities.hpp"
#include "dlat/objects.hpp"
#include "dlat/poset_io.hpp"
#include "dlat/structure_spec.hpp"
#include "dlat/suite.hpp"
#include "dlat/topology.hpp"

using namespace dlat;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

const std::vector<std::string> kObjects = {"base", "subh", "D",  "PD", "Dw",  "PDw", "OD",      "OPD",    "F",
                                           "PF",   "B",    "PB", "OB", "OPB", "OF",  "bergman", "charney"};

// A selected object: either a poset or a simplicial complex, plus the JSON
// form the export command writes.
struct Selected {
  std::variant<Poset, SimplicialComplex> value;
  json doc;
};

enum class Trim { None, Proper, Redm };

Poset trimmed(const Poset& p, Trim t) {
  switch (t) {
    case Trim::Proper: return p.proper_part();
    case Trim::Redm: return p.remove_top();
    case Trim::None: break;
  }
  return p;
}

Selected select(Objects& o, const std::string& name, Trim trim) {
  const std::string tag = o.gs().spec + " " + name;
  auto poset = [&](const Poset& p) {
    auto q = trimmed(p, trim);
    return Selected{q, poset_to_json(q, tag)};
  };
  auto decomp = [&](const DecompPoset& dp) {
    if (trim != Trim::None) return poset(dp.poset);
    return Selected{dp.poset, decomp_poset_to_json(o.gs(), dp)};
  };
  auto complex = [&](const SimplicialComplex& k) {
    if (trim != Trim::None) throw ParseError("--proper/--redm apply to posets, not to the complex " + name);
    return Selected{k, complex_to_json(k)};
  };
  if (name == "base") return poset(o.gs().poset());
  if (name == "subh") return poset(o.subh());
  if (name == "D") return decomp(o.D());
  if (name == "PD") return decomp(o.PD());
  if (name == "Dw") return decomp(o.Dw());
  if (name == "PDw") return decomp(o.PDw());
  if (name == "OD") return poset(o.OD().poset);
  if (name == "OPD") return poset(o.OPD().poset);
  if (name == "F") return complex(o.F());
  if (name == "PF") return complex(o.PF());
  if (name == "B") return complex(o.B().complex);
  if (name == "PB") return complex(o.PB().complex);
  if (name == "OB") return poset(o.OB().poset);
  if (name == "OPB") return poset(o.OPB().poset);
  if (name == "OF") return poset(o.OF().poset);
  if (name == "bergman") return complex(o.bergman());
  if (name == "charney") return poset(charney(o.gs(), o.D()).G);
  throw ParseError("unknown object '" + name + "'");
}

Trim trim_of(bool proper, bool redm) {
  if (proper && redm) throw ParseError("--proper and --redm are exclusive");
  return proper ? Trim::Proper : redm ? Trim::Redm : Trim::None;
}

void emit(const json& line) { std::cout << line.dump() << "\n"; }

std::string size_line(const Selected& s) {
  if (auto* p = std::get_if<Poset>(&s.value)) return fmt::format("poset, {} elements, {} covers", p->size(), p->cover_count());
  auto& k = std::get<SimplicialComplex>(s.value);
  return fmt::format("complex, {} vertices, {} facets, dim {}", k.vertex_count(), k.facets().size(), k.dim());
}

int cmd_build(const std::string& spec, const std::string& out) {
  auto gs = build_structure(spec);
  auto doc = poset_to_json(gs.poset(), gs.spec);
  if (!out.empty()) write_text_file(out, doc.dump(2) + "\n");
  std::cout << fmt::format("structure  {}\nkind       {}\nelements   {}\nheight     {}\natoms      {}\natom bases {}\n",
                           gs.spec, kind_name(gs.kind), gs.size(), gs.height(), gs.atoms().size(),
                           gs.has_atom_bases() ? "yes" : "no");
  emit({{"command", "build"}, {"structure", gs.spec}, {"kind", kind_name(gs.kind)}, {"elements", gs.size()},
        {"height", gs.height()}, {"atoms", gs.atoms().size()}, {"out", out.empty() ? json() : json(out)}});
  return kOk;
}

int cmd_compute(const std::string& spec, const std::string& object, const std::string& stat,
                const std::string& ring_text, Trim trim) {
  auto ring = parse_ring(ring_text);
  if (!ring) throw ParseError("ring must be Z or Q");
  Objects o(build_structure(spec));
  auto sel = select(o, object, trim);
  json line{{"command", "compute"}, {"structure", o.gs().spec}, {"object", object}, {"stat", stat},
            {"trim", trim == Trim::Proper ? "proper" : trim == Trim::Redm ? "redm" : "none"}};
  std::cout << fmt::format("{} {}: {}\n", o.gs().spec, object, size_line(sel));
  if (stat == "euler") {
    auto e = std::visit([](auto& v) { return reduced_euler(v); }, sel.value);
    std::cout << fmt::format("reduced euler  {}\n", e);
    line["value"] = e;
  } else if (stat == "homology") {
    auto h = std::visit([&](auto& v) { return homology(v, *ring); }, sel.value);
    std::cout << fmt::format("ring {}  reduced euler {}\n", ring_name(h.ring), h.euler);
    for (auto& [d, b] : h.betti) std::cout << fmt::format("  H~_{} rank {}\n", d, b);
    for (auto& [d, t] : h.torsion) std::cout << fmt::format("  H~_{} torsion {}\n", d, fmt::join(t, " "));
    if (h.betti.empty() && h.torsion.empty()) std::cout << "  acyclic\n";
    line["value"] = homology_to_json(h);
  } else if (stat == "mobius") {
    auto* p = std::get_if<Poset>(&sel.value);
    if (p && trim == Trim::None && p->bounded()) {
      auto mu = p->mobius(*p->bottom(), *p->top());
      std::cout << fmt::format("mobius(bottom, top)  {}\n", mu);
      line["value"] = mu;
    } else {
      auto e = std::visit([](auto& v) { return reduced_euler(v); }, sel.value);
      std::cout << fmt::format("mobius number (reduced euler)  {}\n", e);
      line["value"] = e;
    }
  } else {
    throw ParseError("stat must be euler, homology or mobius");
  }
  emit(line);
  return kOk;
}

int cmd_check(const std::string& spec, const std::string& prop_text) {
  auto prop = parse_property(prop_text);
  if (!prop) throw ParseError("property must be LI, EX, CM, E1E2 or UNIQUE");
  auto gs = build_structure(spec);
  auto r = check_property(gs, *prop);
  std::cout << fmt::format("{} {}: {} ({} instances)\n", gs.spec, property_name(*prop), r.holds ? "holds" : "fails",
                           r.instances);
  if (!r.holds) std::cout << "  counterexample: " << r.certificate << "\n";
  emit({{"command", "check"}, {"structure", gs.spec}, {"property", property_name(*prop)}, {"holds", r.holds},
        {"instances", r.instances}, {"certificate", r.holds ? json() : json(r.certificate)}, {"witness", r.witness}});
  return r.holds ? kOk : kFail;
}

int cmd_verify(const std::string& name, const std::vector<std::string>& args) {
  Params params;
  for (auto& a : args) {
    auto eq = a.find('=');
    if (eq == std::string::npos || eq == 0) throw ParseError("expected key=value, got '" + a + "'");
    params[a.substr(0, eq)] = a.substr(eq + 1);
  }
  auto r = run_identity(name, params);
  std::cout << fmt::format("{:<22} {}  computed {}  formula {}  ({:.0f} ms)\n", r.name, r.pass ? "PASS" : "FAIL",
                           r.computed.dump(), r.formula.dump(), r.ms);
  emit(report_to_json(r));
  return r.pass ? kOk : kFail;
}

int cmd_suite(const std::string& scope_text, unsigned threads) {
  auto scope = parse_scope(scope_text);
  if (!scope) throw ParseError("scope must be all or fast");
  auto reports = run_suite(*scope, threads);
  bool all = true;
  for (auto& r : reports) {
    std::cout << fmt::format("{} {:<28} {:>8.0f} ms  {}  {}\n", r.pass ? "PASS" : "FAIL", r.id, r.ms, r.title,
                             r.detail);
    all = all && r.pass;
  }
  for (auto& r : reports) emit(criterion_to_json(r));
  std::cout << fmt::format("{} of {} passed\n", std::count_if(reports.begin(), reports.end(),
                                                              [](auto& r) { return r.pass; }),
                           reports.size());
  return all ? kOk : kFail;
}

int cmd_export(const std::string& spec, const std::string& object, const std::string& format, const std::string& stat,
               const std::string& ring_text, Trim trim, const std::string& out) {
  Objects o(build_structure(spec));
  auto sel = select(o, object, trim);
  std::string text;
  if (stat == "homology") {
    auto ring = parse_ring(ring_text);
    if (!ring) throw ParseError("ring must be Z or Q");
    if (format != "json") throw ParseError("homology exports only as json");
    text = homology_to_json(std::visit([&](auto& v) { return homology(v, *ring); }, sel.value)).dump(2) + "\n";
  } else if (format == "json") {
    text = sel.doc.dump(2) + "\n";
  } else if (format == "dot") {
    auto* p = std::get_if<Poset>(&sel.value);
    Poset hasse = p ? *p : std::get<SimplicialComplex>(sel.value).face_poset();
    text = poset_to_dot(hasse, o.gs().spec + " " + object);
  } else {
    throw ParseError("format must be json or dot");
  }
  if (out.empty()) std::cout << text;
  else write_text_file(out, text);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dlat: decomposition posets of lattices and their topology"};
  app.require_subcommand(1);

  std::string spec, out, object, stat, ring = "Z", property, identity, scope = "all", format = "json";
  std::vector<std::string> kv;
  bool proper = false, redm = false;
  unsigned threads = 0;

  auto* build = app.add_subcommand("build", "build a ground structure and print its summary");
  build->add_option("spec", spec, "structure spec, e.g. subspace:q=2,n=3")->required();
  build->add_option("--out", out, "write the base poset JSON here");

  auto trim_flags = [&](CLI::App* c) {
    auto* p = c->add_flag("--proper", proper, "remove bottom and top");
    auto* r = c->add_flag("--redm", redm, "remove the top");
    p->excludes(r);
  };

  auto* compute = app.add_subcommand("compute", "compute an invariant of a derived object");
  compute->add_option("--spec", spec)->required();
  compute->add_option("--object", object)->required()->check(CLI::IsMember(kObjects));
  compute->add_option("--stat", stat)->required()->check(CLI::IsMember({"euler", "homology", "mobius"}));
  compute->add_option("--ring", ring)->check(CLI::IsMember({"Z", "Q"}));
  trim_flags(compute);

  auto* check = app.add_subcommand("check", "check LI, EX, CM, E1E2 or UNIQUE");
  check->add_option("--spec", spec)->required();
  check->add_option("--property", property)->required()->check(CLI::IsMember({"LI", "EX", "CM", "E1E2", "UNIQUE"}));

  auto* verify = app.add_subcommand("verify", "run a named identity");
  verify->add_option("identity", identity)->required()->check(CLI::IsMember(identity_names()));
  verify->add_option("params", kv, "key=value parameters");

  auto* suite = app.add_subcommand("suite", "run the acceptance suite");
  suite->add_option("--scope", scope)->check(CLI::IsMember({"all", "fast"}));
  suite->add_option("--threads", threads, "worker threads (0 = hardware)");

  auto* exp = app.add_subcommand("export", "write an object as JSON or DOT");
  exp->add_option("--spec", spec)->required();
  exp->add_option("--object", object)->required()->check(CLI::IsMember(kObjects));
  exp->add_option("--format", format)->check(CLI::IsMember({"json", "dot"}));
  exp->add_option("--stat", stat, "homology: export the homology instead")->check(CLI::IsMember({"homology"}));
  exp->add_option("--ring", ring)->check(CLI::IsMember({"Z", "Q"}));
  exp->add_option("--out", out);
  trim_flags(exp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*build) return cmd_build(spec, out);
    if (*compute) return cmd_compute(spec, object, stat, ring, trim_of(proper, redm));
    if (*check) return cmd_check(spec, property);
    if (*verify) return cmd_verify(identity, kv);
    if (*suite) return cmd_suite(scope, threads);
    if (*exp) return cmd_export(spec, object, format, stat, ring, trim_of(proper, redm), out);
  } catch (const BudgetExceededError& e) {
    std::cerr << e.name() << ": " << e.what() << "\n";
    return kFail;
  } catch (const InvariantError& e) {
    std::cerr << e.name() << ": " << e.what() << "\n";
    return kFail;
  } catch (const Error& e) {
    std::cerr << e.name() << ": " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
