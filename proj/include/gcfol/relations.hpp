// Self-test of the quadratic relations among the graded components of d.
#pragma once

#include "gcfol/calculus.hpp"
#include "gcfol/cohomology.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace gcfol {

struct RelationCheck {
  std::string name;
  bool passed = true;
  int forms_checked = 0;
  std::string counterexample;  // first failing input, empty when passed
};

struct RelationReport {
  std::vector<RelationCheck> checks;
  bool all_passed() const {
    for (auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

namespace detail {

inline std::string relation_name(Degree sh) {
  static const std::map<Degree, std::string> names = {
      {{2, 0, 0}, "AC1: del^2 + theta+ d_S + d_S theta+ = 0"},
      {{0, 2, 0}, "AC1': delbar^2 + theta- d_S + d_S theta- = 0"},
      {{1, 1, 0}, "AC2: del delbar + delbar del + theta0 d_S + d_S theta0 = 0"},
      {{2, 2, -2}, "AC3: theta+ theta- + theta- theta+ + theta0^2 = 0"},
      {{2, 1, -1}, "AC4: del theta0 + theta0 del + delbar theta+ + theta+ delbar = 0"},
      {{1, 2, -1}, "AC4': delbar theta0 + theta0 delbar + del theta- + theta- del = 0"},
      {{3, 1, -2}, "theta+ theta0 + theta0 theta+ = 0"},
      {{1, 3, -2}, "theta- theta0 + theta0 theta- = 0"},
      {{3, 0, -1}, "del theta+ + theta+ del = 0"},
      {{0, 3, -1}, "delbar theta- + theta- delbar = 0"},
      {{1, 0, 1}, "del d_S + d_S del = 0"},
      {{0, 1, 1}, "delbar d_S + d_S delbar = 0"},
      {{4, 0, -2}, "theta+^2 = 0"},
      {{0, 4, -2}, "theta-^2 = 0"},
      {{0, 0, 2}, "d_S^2 = 0"},
  };
  auto it = names.find(sh);
  return it == names.end() ? "relation of shift " + sh.str() : it->second;
}

inline void record(RelationCheck& c, const GradedForm& input, const GradedForm& residual) {
  ++c.forms_checked;
  if (c.passed && !residual.is_zero()) {
    c.passed = false;
    c.counterexample = "input " + input.str() + " gives " + residual.str();
  }
}

}  // namespace detail

/// Checks d^2 = 0, every grouped anticommutation relation of the six components, the
/// regrouped real relations and del delbar = -delbar del in d_S-cohomology.
inline RelationReport verify_relations(const Bundle& b, const std::vector<GradedForm>& forms) {
  // group ordered pairs of components by their total shift
  std::map<Degree, std::vector<std::pair<Op, Op>>> groups;
  for (Op p : kAllOps)
    for (Op q : kAllOps) groups[shift_of(p) + shift_of(q)].emplace_back(p, q);

  RelationCheck dsq{"d^2 = 0", true, 0, ""};
  std::map<Degree, RelationCheck> grouped;
  for (auto& [sh, pairs] : groups) grouped[sh].name = detail::relation_name(sh);
  using Unary = std::function<GradedForm(const GradedForm&)>;
  Unary nab = [&](const GradedForm& a) { return b.nabla(a); };
  Unary th = [&](const GradedForm& a) { return b.theta(a); };
  Unary ds = [&](const GradedForm& a) { return b.d_S(a); };
  struct Real {
    std::string name;
    std::function<GradedForm(const GradedForm&)> residual;
  };
  std::vector<Real> reals = {
      {"real: nabla^2 + d_S Theta + Theta d_S = 0",
       [&](const GradedForm& a) { return nab(nab(a)) + ds(th(a)) + th(ds(a)); }},
      {"real: nabla Theta + Theta nabla = 0", [&](const GradedForm& a) { return nab(th(a)) + th(nab(a)); }},
      {"real: Theta^2 = 0", [&](const GradedForm& a) { return th(th(a)); }},
      {"real: d_S^2 = 0", [&](const GradedForm& a) { return ds(ds(a)); }},
      {"real: nabla d_S + d_S nabla = 0", [&](const GradedForm& a) { return nab(ds(a)) + ds(nab(a)); }},
  };
  std::vector<RelationCheck> real_checks;
  for (auto& r : reals) real_checks.push_back({r.name, true, 0, ""});
  RelationCheck ac5{"AC5 in d_S-cohomology: [del delbar a] = -[delbar del a]", true, 0, ""};

  for (const GradedForm& a : forms) {
    detail::record(dsq, a, b.d(b.d(a)));
    for (Degree g : a.degrees()) {
      GradedForm ag = a.project_degree(g);
      std::map<Op, GradedForm> first;
      for (Op q : kAllOps) first.emplace(q, b.component(ag, q));
      for (auto& [sh, pairs] : groups) {
        GradedForm sum(b.layout());
        for (auto& [p, q] : pairs) sum += b.component(first.at(q), p);
        detail::record(grouped[sh], ag, sum);
      }
    }
    for (std::size_t k = 0; k < reals.size(); ++k) detail::record(real_checks[k], a, reals[k].residual(a));
    // fibre-constant part plus a d_S-exact part is d_S-closed
    GradedForm closed = a.fibre_average() + b.d_S(a);
    GradedForm ddb = b.del(b.delbar(closed));
    GradedForm dbd = b.delbar(b.del(closed));
    detail::record(ac5, closed, dS_class(b, ddb + dbd).rep);
  }

  RelationReport rep;
  rep.checks.push_back(std::move(dsq));
  for (auto& [sh, c] : grouped) rep.checks.push_back(std::move(c));
  for (auto& c : real_checks) rep.checks.push_back(std::move(c));
  rep.checks.push_back(std::move(ac5));
  return rep;
}

}  // namespace gcfol
