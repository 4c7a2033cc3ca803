// Command line front end: load or generate lattices, run the checks and emit
// JSON reports.
//
// Exit codes: 0 success (a negative verdict is still success), 1 malformed
// input or a guardrail, 2 a failed verification.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "serrelab/classify.hpp"
#include "serrelab/coxeter.hpp"
#include "serrelab/derived.hpp"
#include "serrelab/field.hpp"
#include "serrelab/generators.hpp"
#include "serrelab/geom.hpp"
#include "serrelab/lattice_io.hpp"
#include "serrelab/typea.hpp"

using namespace serrelab;
using json = nlohmann::ordered_json;

namespace {

constexpr int kSchemaVersion = 1;

struct Options {
  std::string input;
  std::vector<std::string> gen;
  bool derived = false;
  std::string field = "rational";
  std::optional<int> max_steps;
  std::string json_out;
  bool timing = false;
  std::string element;
  int n = 0;
  std::string orientation;
  bool all_orientations = false;
  bool skip_categorical = false;
};

struct Source {
  LatticePtr lattice;
  std::string description;
};

int parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw invalid_input(what + " must be an integer, got '" + s + "'");
}

LatticePtr generate(const std::vector<std::string>& g) {
  if (g.empty()) throw invalid_input("--gen needs a family name");
  const std::string& kind = g[0];
  auto args = [&](std::size_t k) {
    if (g.size() != k + 1) throw invalid_input("--gen " + kind + " takes " + std::to_string(k) + " argument(s)");
  };
  if (kind == "tamari") {
    args(1);
    return gen_tamari(parse_int(g[1], "tamari N"));
  }
  if (kind == "typeI") {
    args(1);
    return gen_type_i(parse_int(g[1], "typeI M"));
  }
  if (kind == "boolean") {
    args(1);
    return gen_boolean(parse_int(g[1], "boolean K"));
  }
  if (kind == "chainprod") {
    args(2);
    return gen_chain_product(parse_int(g[1], "chainprod A"), parse_int(g[2], "chainprod B"));
  }
  if (kind == "product") {
    args(2);
    const Lattice a = load_lattice(g[1]), b = load_lattice(g[2]);
    if (a.size() * b.size() > kMaxLatticeSize) throw guardrail_exceeded("product too large");
    return std::make_shared<const Lattice>(product(a, b));
  }
  throw invalid_input("unknown generator '" + kind + "'; expected tamari, typeI, boolean, chainprod or product");
}

Source source(const Options& o) {
  if (!o.input.empty() && !o.gen.empty()) throw invalid_input("give either a lattice file or --gen, not both");
  if (!o.gen.empty()) {
    std::string d = "gen:";
    for (std::size_t k = 0; k < o.gen.size(); ++k) d += (k ? " " : "") + o.gen[k];
    return {generate(o.gen), d};
  }
  if (o.input.empty()) throw invalid_input("no lattice given; pass a JSON file or --gen");
  return {std::make_shared<const Lattice>(load_lattice(o.input)), "file:" + o.input};
}

void configure_field(const Options& o) {
  if (o.field == "rational") return;
  if (o.field.rfind("fp:", 0) == 0) {
    const int p = parse_int(o.field.substr(3), "field modulus");
    try {
      Fp::set_modulus(static_cast<std::uint32_t>(p));
    } catch (const std::invalid_argument& e) {
      throw invalid_input(e.what());
    }
    return;
  }
  throw invalid_input("--field is rational or fp:P, got '" + o.field + "'");
}

bool use_fp(const Options& o) { return o.field != "rational"; }

json header(const std::string& command) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  return j;
}

json input_block(const Source& s) {
  return {{"source", s.description}, {"fingerprint", fingerprint(*s.lattice)}, {"elements", s.lattice->size()}};
}

json classification_json(const Lattice& l) {
  if (l.size() > kMaxClassifySize) return nullptr;
  const Classification c = classify(l);
  return {{"distributive", c.distributive},
          {"join_semidistributive", c.join_semidistributive},
          {"meet_semidistributive", c.meet_semidistributive},
          {"semidistributive", c.semidistributive},
          {"divisor", c.divisor},
          {"boolean", c.boolean},
          {"chain_factors", c.chain_factors}};
}

json permutation_json(const Lattice& l, const std::vector<int>& perm) {
  json map = json::object();
  for (int a = 0; a < static_cast<int>(perm.size()); ++a) map[l.label(a)] = perm[a] >= 0 ? json(l.label(perm[a])) : json(nullptr);
  return map;
}

json combinatorial_json(const Lattice& l, const CombinatorialReport& r) {
  json j;
  j["serre_formal"] = r.serre_formal;
  j["permutation_is_bijection"] = r.permutation_is_bijection;
  j["permutation"] = permutation_json(l, r.permutation);
  j["cycles"] = r.permutation_is_bijection ? json(cycle_notation(l, r.permutation)) : json(nullptr);
  j["cycle_lengths"] = r.cycle_lengths;
  j["period"] = r.period;
  j["strict_reading_differs"] = r.strict_reading_differs;
  j["failure"] = r.failure;
  json ts = json::array();
  for (const auto& t : r.trajectories) {
    ts.push_back({{"element", l.label(t.start)},
                  {"status", to_string(t.status)},
                  {"steps", t.steps},
                  {"sign", t.sign},
                  {"target", t.target >= 0 ? json(l.label(t.target)) : json(nullptr)}});
  }
  j["trajectories"] = ts;
  return j;
}

template <Field F>
json orbit_json(const Lattice& l, const SerreOrbit<F>& o, bool with_steps) {
  json j;
  j["element"] = l.label(o.start);
  j["period"] = o.period ? json(*o.period) : json(nullptr);
  j["total_shift"] = o.total_shift;
  j["stalk_throughout"] = o.stalk_throughout;
  j["first_projective"] = o.first_projective ? json(l.label(*o.first_projective)) : json(nullptr);
  j["projective_step"] = o.projective_step ? json(*o.projective_step) : json(nullptr);
  if (with_steps) {
    json steps = json::array();
    for (const auto& s : o.steps) {
      json st;
      st["shift"] = s.shift;
      st["dims"] = s.dims;
      st["interval"] = s.interval ? json({l.label(s.interval->lo), l.label(s.interval->hi)}) : json(nullptr);
      steps.push_back(st);
    }
    j["steps"] = steps;
    if (!o.stalk_throughout) {
      json h = json::object();
      for (const auto& [d, rep] : o.non_stalk) h[std::to_string(d)] = rep.dims();
      j["non_stalk_cohomology"] = h;
    }
  }
  return j;
}

template <Field F>
json derived_json(const Lattice& l, const FcySummary<F>& s) {
  json j;
  j["field"] = F::name();
  j["all_periodic"] = s.all_periodic;
  j["fcy"] = s.shift ? json({{"shift", *s.shift}, {"period", s.period}}) : json(nullptr);
  json orbits = json::array();
  for (const auto& o : s.orbits) orbits.push_back(orbit_json(l, o, false));
  j["orbits"] = orbits;
  return j;
}

int emit(const Options& o, json report, const std::string& summary, int code, std::chrono::steady_clock::time_point t0) {
  if (o.timing) {
    report["timing_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  }
  const std::string text = report.dump(2) + "\n";
  if (o.json_out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(o.json_out);
    if (!out) throw invalid_input("cannot write " + o.json_out);
    out << text;
    std::cout << summary << "\n";
  }
  return code;
}

template <Field F>
int run_check(const Options& o, const Source& s, std::chrono::steady_clock::time_point t0) {
  const Lattice& l = *s.lattice;
  const int steps = o.max_steps.value_or(default_max_steps(l));
  json j = header("check");
  j["input"] = input_block(s);
  j["classification"] = classification_json(l);
  const auto comb = combinatorial_serre_check(l, steps);
  j["combinatorial"] = combinatorial_json(l, comb);
  std::string summary = "serre_formal=" + std::string(comb.serre_formal ? "true" : "false");
  if (comb.permutation_is_bijection) summary += " pi=" + cycle_notation(l, comb.permutation);
  if (o.derived) {
    const auto d = fcy_summary<F>(s.lattice, steps);
    j["derived"] = derived_json(l, d);
    summary += d.shift ? " fcy=(" + std::to_string(*d.shift) + "," + std::to_string(d.period) + ")" : " fcy=none";
  }
  return emit(o, j, summary, 0, t0);
}

template <Field F>
int run_orbit(const Options& o, const Source& s, std::chrono::steady_clock::time_point t0) {
  const Lattice& l = *s.lattice;
  const int steps = o.max_steps.value_or(default_max_steps(l));
  json j = header("orbit");
  j["input"] = input_block(s);
  j["field"] = F::name();
  std::vector<int> starts;
  if (!o.element.empty()) {
    const int a = l.index_of(o.element);
    if (a < 0) throw invalid_input("no element '" + o.element + "'");
    starts.push_back(a);
  } else {
    for (int a = 0; a < static_cast<int>(l.size()); ++a) starts.push_back(a);
  }
  json orbits = json::array();
  int periodic = 0;
  for (int a : starts) {
    const auto orbit = serre_orbit<F>(s.lattice, a, steps);
    if (orbit.period) ++periodic;
    orbits.push_back(orbit_json(l, orbit, true));
  }
  j["orbits"] = orbits;
  return emit(o, j, std::to_string(periodic) + "/" + std::to_string(starts.size()) + " orbits periodic", 0, t0);
}

int run_gen(const Options& o, std::chrono::steady_clock::time_point t0) {
  if (o.gen.empty()) throw invalid_input("gen needs --gen");
  const Source s = source(o);
  json j = lattice_to_json(*s.lattice);
  (void)t0;
  const std::string text = j.dump(2) + "\n";
  if (o.json_out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(o.json_out);
    if (!out) throw invalid_input("cannot write " + o.json_out);
    out << text;
    std::cout << s.lattice->size() << " elements, fingerprint " << fingerprint(*s.lattice) << "\n";
  }
  return 0;
}

template <Field F>
int run_crosscheck(const Options& o, const Source& s, std::chrono::steady_clock::time_point t0) {
  const Lattice& l = *s.lattice;
  const auto r = cross_check<F>(s.lattice, o.max_steps.value_or(default_max_steps(l)));
  json j = header("crosscheck");
  j["input"] = input_block(s);
  j["field"] = F::name();
  j["agree"] = r.agree;
  j["serre_formal"] = r.combinatorial.serre_formal;
  j["combinatorial_permutation"] = permutation_json(l, r.combinatorial.permutation);
  j["derived_permutation"] = permutation_json(l, r.derived_permutation);
  json ds = json::array();
  for (const auto& d : r.disagreements) ds.push_back({{"element", l.label(d.element)}, {"step", d.step}, {"what", d.what}});
  j["disagreements"] = ds;
  return emit(o, j, r.agree ? "agree" : "disagree", r.agree ? 0 : 2, t0);
}

template <Field F>
int run_typea(const Options& o, std::chrono::steady_clock::time_point t0) {
  if (o.n < 1 || o.n > typea::kMaxRank) throw invalid_input("--n must be in 1.." + std::to_string(typea::kMaxRank));
  if (o.all_orientations && !o.orientation.empty()) throw invalid_input("give --orientation or --all-orientations, not both");
  std::vector<std::string> orientations;
  if (o.all_orientations) {
    orientations = typea::all_orientations(o.n);
  } else {
    orientations.push_back(o.orientation.empty() ? std::string(static_cast<std::size_t>(o.n - 1), 'L') : o.orientation);
  }
  json j = header("typea");
  j["n"] = o.n;
  j["field"] = F::name();
  json runs = json::array();
  bool ok = true;
  std::string summary;
  for (const auto& orient : orientations) {
    const typea::TypeA t(typea::QuiverA::make(o.n, orient));
    const auto r = typea::run_suite<F>(t, !o.skip_categorical);
    ok = ok && r.ok();
    json x;
    x["orientation"] = r.orientation;
    x["torsion_classes"] = r.torsion_classes;
    x["wide_subcategories"] = r.wide_subcategories;
    x["mutable_intervals"] = r.mutable_intervals;
    x["cluster_triples"] = r.cluster_triples;
    x["triples_biject"] = r.triples_biject;
    x["interval_mutations"] = r.interval_mutations;
    x["serre_period"] = r.orbit.period;
    x["rank_sum"] = r.orbit.rank_sum;
    x["cycle_type"] = r.orbit.cycle_type;
    x["rotation"] = {{"case_one", r.rotation.case_one}, {"case_two", r.rotation.case_two}};
    x["categorical_serre"] = r.categorical_run ? json({{"checked", r.mutable_intervals}, {"failures", r.categorical_failures.size()}}) : json(nullptr);
    x["failures"] = r.failures;
    x["ok"] = r.ok();
    runs.push_back(x);
    summary += (summary.empty() ? "" : "; ") + (orient.empty() ? std::string("-") : orient) + ": " + std::to_string(r.mutable_intervals) + " intervals " + (r.ok() ? "pass" : "FAIL");
  }
  j["orientations"] = runs;
  j["ok"] = ok;
  return emit(o, j, summary, ok ? 0 : 2, t0);
}

int run_geom(const Options& o, std::chrono::steady_clock::time_point t0) {
  const auto r = geom::geom_check(o.n);
  json j = header("geom");
  j["n"] = r.n;
  j["expected"] = r.expected;
  j["trees"] = r.trees;
  j["quadrangulations"] = r.quads;
  j["stokes_bijective"] = r.stokes_bijective;
  j["equivariant"] = r.equivariant;
  j["dual_squared_rotates"] = r.dual_squared_rotates;
  j["rotation_order"] = r.rotation_order;
  j["rotation_cycles"] = r.rotation_cycles;
  j["failures"] = r.failures;
  j["ok"] = r.ok();
  const std::string summary = std::to_string(r.quads) + " quadrangulations, " + std::to_string(r.trees) + " trees, equivariance " + (r.equivariant ? "pass" : "FAIL");
  return emit(o, j, summary, r.ok() ? 0 : 2, t0);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Serre functor checks for lattices of torsion classes and incidence algebras"};
  app.require_subcommand(1, 1);
  Options o;

  auto lattice_opts = [&](CLI::App* c) {
    c->add_option("input", o.input, "lattice JSON file");
    c->add_option("--gen", o.gen, "tamari N | typeI M | boolean K | chainprod A B | product F1 F2")->expected(2, 3);
    c->add_option("--field", o.field, "rational or fp:P");
    c->add_option("--max-steps", o.max_steps, "step bound for Coxeter trajectories and Serre orbits");
  };
  auto common = [&](CLI::App* c) {
    c->add_option("--json", o.json_out, "write the report to this file");
    c->add_flag("--timing", o.timing, "add wall-clock timing to the report");
  };

  auto* check = app.add_subcommand("check", "combinatorial Serre check, optionally the derived orbits");
  lattice_opts(check);
  common(check);
  check->add_flag("--derived", o.derived, "also iterate the derived Serre functor");

  auto* orbit = app.add_subcommand("orbit", "derived Serre orbits of the injectives");
  lattice_opts(orbit);
  common(orbit);
  orbit->add_option("--element", o.element, "only the injective of this element");

  auto* gen = app.add_subcommand("gen", "print a generated lattice as JSON");
  gen->add_option("--gen", o.gen, "tamari N | typeI M | boolean K | chainprod A B | product F1 F2")->expected(2, 3)->required();
  gen->add_option("--json", o.json_out, "write the lattice to this file");

  auto* ta = app.add_subcommand("typea", "type A suite on torsion classes of an oriented A_n quiver");
  ta->add_option("--n", o.n, "rank")->required();
  ta->add_option("--orientation", o.orientation, "n-1 letters L or R");
  ta->add_flag("--all-orientations", o.all_orientations, "run every orientation");
  ta->add_flag("--skip-categorical", o.skip_categorical, "skip the derived Serre functor on interval modules");
  ta->add_option("--field", o.field, "rational or fp:P");
  common(ta);

  auto* ge = app.add_subcommand("geom", "trees, quadrangulations and the Stokes bijection");
  ge->add_option("--n", o.n, "rank")->required();
  common(ge);

  auto* cc = app.add_subcommand("crosscheck", "compare Coxeter trajectories with derived orbits");
  lattice_opts(cc);
  common(cc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    configure_field(o);
    const bool fp = use_fp(o);
    if (check->parsed()) return fp ? run_check<Fp>(o, source(o), t0) : run_check<Rational>(o, source(o), t0);
    if (orbit->parsed()) return fp ? run_orbit<Fp>(o, source(o), t0) : run_orbit<Rational>(o, source(o), t0);
    if (gen->parsed()) return run_gen(o, t0);
    if (ta->parsed()) return fp ? run_typea<Fp>(o, t0) : run_typea<Rational>(o, t0);
    if (ge->parsed()) return run_geom(o, t0);
    if (cc->parsed()) return fp ? run_crosscheck<Fp>(o, source(o), t0) : run_crosscheck<Rational>(o, source(o), t0);
  } catch (const invalid_input& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const guardrail_exceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
