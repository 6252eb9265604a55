// JSON and text rendering of decision reports for the command-line tool.
#pragma once

#include "gcfol/scenario_io.hpp"

#include <json.hpp>

#include <ostream>
#include <string>

namespace gcfol::report {

using json = nlohmann::ordered_json;

struct RunSettings {
  std::string hash;
  std::uint64_t seed = 1;
  int degree_cap = 0;
  int trials = 0;
};

inline json form_json(const GradedForm& a) {
  json j = json::object();
  for (auto& [mono, f] : a.terms()) j[io::monomial_str(a.layout(), mono)] = io::coeff_str(f);
  return j;
}

inline json point_json(const Point& pt) {
  json j = json::object();
  for (auto& [code, v] : pt.values) j[CoordId::from_code(code).name()] = v.get_str();
  return j;
}

inline json point_form_json(const Layout& l, const PointForm& f) {
  json j = json::object();
  for (auto& [mono, q] : f) j[io::monomial_str(l, mono)] = io::gauss_str(q);
  return j;
}

inline json settings_json(const RunSettings& st) {
  return {{"scenario_hash", st.hash}, {"seed", st.seed}, {"degree_cap", st.degree_cap}, {"trials", st.trials}};
}

inline json class_json(const ClassReport& c) {
  json j{{"state", class_state_name(c.state)}};
  if (c.rep) j["representative"] = form_json(*c.rep);
  return j;
}

template <class T>
json opt_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

inline json report_json(const ObstructionReport& r, const Layout& l, const RunSettings& st) {
  json j;
  j["scenario"] = r.scenario;
  j["settings"] = settings_json(st);
  j["verdict"] = verdict_name(r.verdict);
  j["stage"] = r.stage ? json(stage_name(*r.stage)) : json(nullptr);
  j["phi"] = {{"A", form_json(r.phi.A)}, {"B", form_json(r.phi.B)}, {"C", form_json(r.phi.C)}};
  j["classes"] = {{"A", class_json(r.classA)}, {"B", class_json(r.classB)}, {"C", class_json(r.classC)}};
  j["alpha"] = r.alpha ? form_json(*r.alpha) : json(nullptr);
  j["beta"] = r.beta ? form_json(*r.beta) : json(nullptr);
  j["H"] = r.H ? form_json(*r.H) : json(nullptr);
  j["H_012"] = r.H ? form_json(r.H->project_degree({0, 1, 2})) : json(nullptr);
  j["calabi_yau"] = opt_json(r.calabi_yau);
  j["equivariant"] = opt_json(r.equivariant);
  j["pluriharmonic"] = opt_json(r.pluriharmonic);
  j["flat"] = opt_json(r.flat);
  json pw = json::array();
  for (auto& v : r.phiC_pointwise) pw.push_back({{"point", point_json(v.point)}, {"value", point_form_json(l, v.value)}});
  j["phiC_pointwise"] = pw;
  j["notes"] = r.notes;
  return j;
}

inline std::string yes_no(const std::optional<bool>& b) { return b ? (*b ? "yes" : "no") : "n/a"; }

inline void print_form(std::ostream& os, const std::string& label, const GradedForm& a) {
  os << label << ": " << (a.is_zero() ? "0" : a.str()) << "\n";
}

inline void print_report(std::ostream& os, const ObstructionReport& r, const Layout& l, const RunSettings& st) {
  os << "scenario: " << r.scenario << " [" << st.hash << "]\n";
  os << "settings: seed=" << st.seed << " degree_cap=" << st.degree_cap << " trials=" << st.trials << "\n";
  os << "verdict: " << verdict_name(r.verdict);
  if (r.stage) os << " (" << stage_name(*r.stage) << ")";
  os << "\n";
  print_form(os, "Phi^A", r.phi.A);
  print_form(os, "Phi^B", r.phi.B);
  print_form(os, "Phi^C", r.phi.C);
  const char* names[] = {"A", "B", "C"};
  const ClassReport* cls[] = {&r.classA, &r.classB, &r.classC};
  for (int k = 0; k < 3; ++k) {
    os << "class " << names[k] << ": " << class_state_name(cls[k]->state);
    if (cls[k]->rep && !cls[k]->rep->is_zero()) os << "  " << cls[k]->rep->str();
    os << "\n";
  }
  if (r.alpha) print_form(os, "alpha", *r.alpha);
  if (r.beta) print_form(os, "beta", *r.beta);
  if (r.H) {
    print_form(os, "H", *r.H);
    print_form(os, "H^{0,1;2}", r.H->project_degree({0, 1, 2}));
  }
  if (r.calabi_yau) os << "CalabiYau: " << yes_no(r.calabi_yau) << "\n";
  if (r.equivariant) os << "equivariant: " << yes_no(r.equivariant) << "\n";
  os << "pluriharmonic: " << yes_no(r.pluriharmonic) << "; flat: " << yes_no(r.flat) << "\n";
  for (auto& v : r.phiC_pointwise) {
    os << "Phi^C at";
    for (auto& [code, q] : v.point.values) os << " " << CoordId::from_code(code).name() << "=" << q.get_str();
    os << ":";
    if (v.value.empty()) os << " 0";
    for (auto& [mono, q] : v.value) os << " (" << io::gauss_str(q) << ")" << io::monomial_str(l, mono);
    os << "\n";
  }
  for (auto& n : r.notes) os << "note: " << n << "\n";
}

}  // namespace gcfol::report
