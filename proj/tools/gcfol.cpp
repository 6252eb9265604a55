// gcfol: command-line front end of the obstruction engine.
//
//   gcfol <command> <scenario-file> [--seed N] [--degree-cap D] [--json <path>] [--trials N]
//
// Exit codes: 0 positive / all checks pass, 1 obstructed / a check failed,
// 2 solver incomplete, 3 parse error, 4 invalid scenario, 5 internal error.

#include "report.hpp"

#include "gcfol/relations.hpp"
#include "gcfol/spinors.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace gcfol;
using report::json;

namespace {

enum Exit { kPass = 0, kFail = 1, kIncomplete = 2, kParse = 3, kInvalid = 4, kInternal = 5 };

struct Options {
  std::string command, file, json_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> degree_cap, trials;
};

struct Context {
  Scenario s;
  report::RunSettings st;
};

void write_json(const Options& o, const json& j) {
  if (o.json_path.empty()) return;
  std::ofstream out(o.json_path);
  if (!out) throw std::runtime_error("cannot write " + o.json_path);
  out << j.dump(2) << "\n";
}

int cmd_decide(const Options& o, Context& c) {
  ObstructionReport r = decide(c.s);
  report::print_report(std::cout, r, c.s.layout, c.st);
  write_json(o, report::report_json(r, c.s.layout, c.st));
  switch (r.verdict) {
    case Verdict::GeneralizedComplex: return kPass;
    case Verdict::Obstructed: return kFail;
    case Verdict::SolverIncomplete: return kIncomplete;
  }
  return kInternal;
}

int cmd_relations(const Options& o, Context& c) {
  if (c.s.curvature_override)
    throw InvalidScenario("curvature override", "relations need a connection-derived curvature");
  Bundle b(c.s);
  Rng rng(c.st.seed);
  RandomBounds bd;
  bd.max_terms = 4;
  std::vector<GradedForm> forms;
  for (int k = 0; k < c.st.trials; ++k) forms.push_back(random_form(c.s.layout, rng, bd));
  RelationReport rr = verify_relations(b, forms);
  json checks = json::array();
  for (auto& ch : rr.checks) {
    std::cout << (ch.passed ? "PASS " : "FAIL ") << ch.name << " (" << ch.forms_checked << " forms)\n";
    if (!ch.passed) std::cout << "  counterexample: " << ch.counterexample << "\n";
    checks.push_back({{"name", ch.name}, {"passed", ch.passed}, {"forms_checked", ch.forms_checked},
                      {"counterexample", ch.counterexample}});
  }
  write_json(o, {{"scenario", c.s.name}, {"settings", report::settings_json(c.st)},
                 {"all_passed", rr.all_passed()}, {"checks", checks}});
  return rr.all_passed() ? kPass : kFail;
}

int cmd_cohomology(const Options& o, Context& c) {
  Bundle b(c.s);
  CohClass om = dS_class(b, c.s.omega);
  PhiForms phi = phi_forms(b, c.s.omega);
  json j{{"scenario", c.s.name}, {"settings", report::settings_json(c.st)}};
  auto line = [&](const std::string& label, const GradedForm& a) {
    report::print_form(std::cout, label, a);
    j[label] = report::form_json(a);
  };
  line("[omega]", om.rep);
  if (!c.s.curvature_override) line("GM[omega]", gauss_manin(b, om).rep);
  line("[Phi^A]", dS_class(b, phi.A).rep);
  write_json(o, j);
  return kPass;
}

int cmd_pluriharmonic(const Options& o, Context& c) {
  Bundle b(c.s);
  CohClass om = dS_class(b, c.s.omega);
  bool ph = is_pluriharmonic(b, om);
  bool fl = is_flat(b, om);
  std::cout << "pluriharmonic: " << (ph ? "yes" : "no") << "; flat: " << (fl ? "yes" : "no") << "\n";
  write_json(o, {{"scenario", c.s.name}, {"settings", report::settings_json(c.st)},
                 {"pluriharmonic", ph}, {"flat", fl}});
  return ph ? kPass : kFail;
}

int cmd_spinor_check(const Options& o, Context& c) {
  const Layout& l = c.s.layout;
  GradedForm rho = canonical_generator(c.s.omega);
  PointSpace sp = PointSpace::adapted(l);
  std::vector<Point> pts = c.s.sample_points;
  for (auto& p : random_points(l, c.st.trials, c.st.seed)) pts.push_back(p);
  bool ok = true;
  json rows = json::array();
  for (auto& pt : pts) {
    PointForm v = evaluate(rho, pt);
    bool pure = is_pure(sp, v);
    bool rrz = real_rank_zero(sp, v);
    int type = type_at(v);
    bool good = pure && rrz && type == l.m;
    ok = ok && good;
    std::cout << (good ? "PASS" : "FAIL");
    for (auto& [code, q] : pt.values) std::cout << " " << CoordId::from_code(code).name() << "=" << q.get_str();
    std::cout << ": pure=" << pure << " real_rank_zero=" << rrz << " type=" << type << "\n";
    rows.push_back({{"point", report::point_json(pt)}, {"pure", pure}, {"real_rank_zero", rrz}, {"type", type}});
  }
  std::cout << "spinor check: " << (ok ? "all pass" : "failures") << " (" << pts.size() << " points)\n";
  write_json(o, {{"scenario", c.s.name}, {"settings", report::settings_json(c.st)}, {"all_passed", ok},
                 {"points", rows}});
  return ok ? kPass : kFail;
}

int cmd_equivariance(const Options& o, Context& c) {
  json j{{"scenario", c.s.name}, {"settings", report::settings_json(c.st)}};
  if (c.s.lattice.empty()) {
    std::cout << "no lattice generators; nothing to check\n";
    j["equivariant"] = nullptr;
    write_json(o, j);
    return kPass;
  }
  bool data = check_equivariance(c.s);
  std::cout << "data (omega, connection): " << (data ? "equivariant" : "not equivariant") << "\n";
  j["data"] = data;
  bool ok = data;
  ObstructionReport r = decide(c.s);
  if (r.verdict == Verdict::GeneralizedComplex) {
    bool w = check_equivariance(c.s, {*r.alpha, *r.beta, *r.H});
    std::cout << "witnesses (alpha, beta, H): " << (w ? "equivariant" : "not equivariant") << "\n";
    j["witnesses"] = w;
    ok = ok && w;
  } else {
    std::cout << "witnesses: none (verdict " << verdict_name(r.verdict) << ")\n";
    j["witnesses"] = nullptr;
  }
  j["equivariant"] = ok;
  write_json(o, j);
  return ok ? kPass : kFail;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(const Options& o) {
  Context c;
  try {
    c.s = parse_scenario_unchecked(read_file(o.file));
  } catch (const ParseError& e) {
    std::cerr << o.file << ": " << e.what() << "\n";
    return kParse;
  }
  c.st.hash = scenario_hash(c.s);
  if (o.seed) c.s.solver.seed = *o.seed;
  if (o.degree_cap) c.s.solver.degree_cap = *o.degree_cap;
  if (o.trials) c.s.solver.trials = *o.trials;
  try {
    validate_scenario(c.s);
  } catch (const InvalidScenario& e) {
    std::cerr << o.file << ": invalid scenario (" << e.invariant << "): " << e.what() << "\n";
    return kInvalid;
  }
  c.st.seed = c.s.solver.seed;
  c.st.degree_cap = solver_bounds(c.s).degree_cap;
  c.st.trials = c.s.solver.trials;

  try {
    if (o.command == "decide") return cmd_decide(o, c);
    if (o.command == "relations") return cmd_relations(o, c);
    if (o.command == "cohomology") return cmd_cohomology(o, c);
    if (o.command == "pluriharmonic") return cmd_pluriharmonic(o, c);
    if (o.command == "spinor-check") return cmd_spinor_check(o, c);
    if (o.command == "equivariance") return cmd_equivariance(o, c);
  } catch (const InvalidScenario& e) {
    std::cerr << "invalid scenario (" << e.invariant << "): " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Obstructions to generalized complex structures on regular Poisson foliations"};
  Options o;
  app.add_option("command", o.command, "decide | relations | cohomology | pluriharmonic | spinor-check | equivariance")
      ->required()
      ->check(CLI::IsMember({"decide", "relations", "cohomology", "pluriharmonic", "spinor-check", "equivariance"}));
  app.add_option("scenario", o.file, "scenario file")->required();
  app.add_option("--seed", o.seed, "random seed");
  app.add_option("--degree-cap", o.degree_cap, "solver degree cap")->check(CLI::NonNegativeNumber);
  app.add_option("--json", o.json_path, "write a JSON report to this path");
  app.add_option("--trials", o.trials, "number of random trials")->check(CLI::NonNegativeNumber);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kParse;
  }
  return run(o);
}
