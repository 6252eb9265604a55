// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "gcfol/obstruction.hpp"
#include "gcfol/relations.hpp"
#include "gcfol/scenario_io.hpp"
#include "support.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace gcfol;

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure(what);
}

Scenario load(const std::string& name) {
  std::ifstream in(std::string(GCFOL_SCENARIO_DIR) + "/" + name + ".scn");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

const char* kBundled[] = {"t4_over_c", "closed_extension", "v_omega_halfplane",
                          "v_omega_torus", "symplectic_bundle", "flag_pointwise"};

int failures = 0;

void criterion(int n, const std::string& title, double budget_s, const std::function<std::string()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = true;
  try {
    detail = body();
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (ok && budget_s > 0 && secs > budget_s) {
    ok = false;
    detail = "took " + std::to_string(secs) + " s, budget " + std::to_string(budget_s) + " s";
  }
  if (!ok) ++failures;
  std::ostringstream t;
  t.precision(2);
  t << std::fixed << secs;
  std::cout << (ok ? "PASS" : "FAIL") << " [" << n << "] " << title << " (" << t.str() << " s)";
  if (!detail.empty()) std::cout << ": " << detail;
  std::cout << std::endl;
}

// 1 ------------------------------------------------------------------------

std::string t4_end_to_end() {
  Scenario s = load("t4_over_c");
  Bundle b(s);
  ObstructionReport r = decide(s);
  require(r.verdict == Verdict::GeneralizedComplex, "verdict " + verdict_name(r.verdict));
  require(r.alpha && r.alpha->is_zero() && r.beta && r.beta->is_zero(), "alpha or beta nonzero");
  require(b.d_S(s.omega).is_zero(), "d_S omega != 0");
  require(r.phi.A.is_zero() && r.phi.B.is_zero() && r.phi.C.is_zero(), "Phi forms not identically zero");
  CohClass gm = gauss_manin(b, dS_class(b, s.omega));
  require(!gm.is_zero(), "Gauss-Manin derivative of [omega] vanishes");
  require(r.equivariant == true, "equivariance failed");
  require(check_equivariance(s), "data not equivariant");
  // the twist theta2 -> theta2 - theta3 needs the compensating shift of x; either alone fails
  Scenario no_shift = s, no_twist = s;
  no_shift.lattice[0].translation = {0, 0};
  no_twist.lattice[0].fibre_matrix.clear();
  require(!check_equivariance(no_shift), "equivariant without the x shift");
  require(!check_equivariance(no_twist), "equivariant without the fibre twist");
  require(r.calabi_yau == true, "generator not d_H-closed");
  return "GM[omega] = " + gm.rep.str();
}

// 2 ------------------------------------------------------------------------

std::string h_constraints() {
  Scenario s = load("t4_over_c");
  Bundle b(s);
  ObstructionReport r = decide(s);
  require(r.H.has_value(), "no H");
  const GradedForm& H = *r.H;
  Scalar i = Scalar::I();
  require(H.project_degree({0, 0, 3}).is_zero(), "H^{0,0;3} != 0");
  require(H.project_degree({0, 1, 2}) == b.delbar(s.omega) * -i, "H^{0,1;2} != -i delbar omega");
  require(b.theta_minus(s.omega).is_zero(), "theta- omega != 0");
  require(H.project_degree({0, 2, 1}).is_zero(), "H^{0,2;1} != 0");
  require(H.project_degree({0, 3, 0}).is_zero(), "H^{0,3;0} != 0");
  require(b.d(H).is_zero(), "dH != 0");
  require(!H.project_degree({0, 1, 2}).is_zero(), "H^{0,1;2} unexpectedly zero");
  return "H^{0,1;2} = " + H.project_degree({0, 1, 2}).str();
}

// 3 ------------------------------------------------------------------------

std::string torus_obstruction() {
  Scenario s = load("v_omega_torus");
  Bundle b(s);
  const Layout& l = s.layout;
  ObstructionReport r = decide(s);
  require(r.verdict == Verdict::Obstructed && r.stage == Stage::A, "expected Obstructed(A)");
  require(r.classA.rep && !r.classA.rep->is_zero(), "zero residual");
  // V is the coefficient of th1^th2
  CoeffFn V = s.omega.terms().begin()->second;
  GradedForm Vf(l, V);
  GradedForm area = dS_class(b, GradedForm::etas(l, {0, 1})).rep;
  GradedForm expected = (b.del(b.delbar(Vf)) - b.delbar(b.del(Vf))).wedge(area) * Scalar::I();
  require(*r.classA.rep == expected, "residual differs from i(del delbar V - delbar del V) th1^th2");
  // oracle: del delbar V = (1/4) Laplacian(V) dz ^ dzbar, from coefficient derivatives only
  CoordId u1 = l.base_coord(0), u2 = l.base_coord(1);
  CoeffFn lap = V.differentiate(u1).differentiate(u1) + V.differentiate(u2).differentiate(u2);
  GradedForm ddbar = GradedForm::dz(l, 0).wedge(GradedForm::dzbar(l, 0)) * (lap * Scalar::frac(1, 4));
  GradedForm oracle = ddbar.wedge(area) * Scalar(GaussQ(0, 2));
  require(*r.classA.rep == oracle, "residual differs from 2i (del delbar V)[th1^th2]");
  return "residual = " + r.classA.rep->str();
}

// 4 ------------------------------------------------------------------------

std::string halfplane() {
  Scenario s = load("v_omega_halfplane");
  ObstructionReport r = decide(s);
  require(r.verdict == Verdict::GeneralizedComplex, "verdict " + verdict_name(r.verdict));
  require(r.pluriharmonic == true, "[omega] not pluriharmonic");
  require(r.phi.B.is_zero() && r.phi.C.is_zero(), "B or C obstruction form nonzero in type 1");
  return "";
}

// 5 ------------------------------------------------------------------------

std::string planted_symplectic() {
  int n = 0;
  for (std::uint64_t seed = 1; seed <= 24; ++seed, ++n) {
    auto ps = fixtures::planted_symplectic(seed);
    const Scenario& s = ps.scenario;
    validate_scenario(s);
    Bundle b(s);
    Scalar i = Scalar::I();
    std::string tag = "seed " + std::to_string(seed) + ": ";
    require(b.nabla(s.omega) == -b.d_S(ps.gamma + ps.gamma.conj()), tag + "planted trivialization broken");
    PhiForms phi = phi_forms(b, s.omega);
    StepAResult a = step_A(b, phi.A);
    require(a.status == StepStatus::Solved, tag + "step A failed");
    StepBResult sb = step_B(b, phi.B, a.alpha, solver_bounds(s));
    require(sb.status == StepStatus::Solved, tag + "step B failed");
    require(b.d_S(sb.alpha) == phi.A && phi.B == b.nabla(sb.alpha) + b.d_S(sb.beta), tag + "solver witnesses fail");
    GradedForm g = ps.gamma - ps.gamma.conj();
    GradedForm alpha_p = b.nabla(g) * i + (b.theta_minus(s.omega) - b.theta_plus(s.omega)) * i;
    GradedForm beta_p = b.theta(g) * i;
    require(b.d_S(alpha_p) == phi.A, tag + "proof alpha fails (A)");
    require(phi.B == b.nabla(alpha_p) + b.d_S(beta_p), tag + "proof witnesses fail (B)");
    require(b.d_S(sb.alpha - alpha_p).is_zero(), tag + "solver and proof alpha differ by a non-closed form");
  }
  return std::to_string(n) + " scenarios";
}

// 6 ------------------------------------------------------------------------

bool curved(const Bundle& b) {
  for (int i = 0; i < b.layout().p; ++i)
    if (!b.theta(GradedForm::eta(b.layout(), i)).is_zero()) return true;
  return false;
}

std::string relation_suite() {
  std::vector<Scenario> scs = {load("t4_over_c"), load("closed_extension"), load("symplectic_bundle"),
                               load("v_omega_torus"), fixtures::planted_symplectic(3).scenario,
                               fixtures::planted_symplectic(11).scenario};
  Rng rng(606);
  RandomBounds bd;
  bd.max_terms = 4;
  int total = 0, curved_count = 0;
  for (auto& s : scs) {
    Bundle b(s);
    if (curved(b)) ++curved_count;
    std::vector<GradedForm> forms;
    for (int k = 0; k < 20; ++k) forms.push_back(random_form(s.layout, rng, bd));
    total += static_cast<int>(forms.size());
    RelationReport rep = verify_relations(b, forms);
    for (auto& c : rep.checks) require(c.passed, s.name + ": " + c.name + " fails on " + c.counterexample);
  }
  require(curved_count >= 2, "fewer than two curved scenarios");
  return std::to_string(total) + " forms, " + std::to_string(scs.size()) + " scenarios (" +
         std::to_string(curved_count) + " curved)";
}

// 7 ------------------------------------------------------------------------

std::string spinor_suite() {
  int points = 0;
  for (const char* name : kBundled) {
    Scenario s = load(name);
    const Layout& l = s.layout;
    PointSpace sp = PointSpace::adapted(l);
    GradedForm rho = canonical_generator(s.omega);
    std::vector<Point> pts = s.sample_points;
    for (auto& p : random_points(l, 10, 77)) pts.push_back(p);
    for (auto& pt : pts) {
      PointForm v = evaluate(rho, pt);
      require(is_pure(sp, v), std::string(name) + ": not pure");
      require(real_rank_zero(sp, v), std::string(name) + ": real rank nonzero");
      require(type_at(v) == l.m, std::string(name) + ": wrong type");
      ++points;
    }
  }
  // Clifford identity v.w.rho + w.v.rho = 2 <v, w> rho
  Rng rng(71);
  const int n = 4;
  auto rv = [&] {
    PointVector v{std::vector<GaussQ>(n), std::vector<GaussQ>(n)};
    for (int b = 0; b < n; ++b) {
      v.X[b] = random_gauss(rng);
      v.xi[b] = random_gauss(rng);
    }
    return v;
  };
  for (int trial = 0; trial < 120; ++trial) {
    PointVector v = rv(), w = rv();
    PointForm rho;
    for (int t = 0; t < 5; ++t) add_to(rho, static_cast<Monomial>(rng.uniform(0, 15)), random_gauss(rng));
    PointForm lhs = clifford_act(v, clifford_act(w, rho));
    for (auto& [m, q] : clifford_act(w, clifford_act(v, rho))) add_to(lhs, m, q);
    PointForm rhs;
    GaussQ two_pair = pairing(v, w) * GaussQ(2);
    for (auto& [m, q] : rho) add_to(rhs, m, two_pair * q);
    require(lhs == rhs, "Clifford identity fails");
  }
  // B-transforms: closed B preserves d_H-closedness; in general H shifts by -dB
  Scenario s = load("t4_over_c");
  Bundle b(s);
  GradedForm H = *decide(s).H;
  GradedForm rho = canonical_generator(s.omega);
  const Layout& l = s.layout;
  RandomBounds bd;
  bd.max_terms = 3;
  bd.fibre_dependence = false;
  for (int trial = 0; trial < 5; ++trial) {
    GradedForm lam = random_form(l, rng, bd, Degree{0, 0, 1}).real_part() + random_form(l, rng, bd, Degree{1, 0, 0}).real_part();
    GradedForm B = b.d(lam);
    require(B.is_real() && b.d(B).is_zero(), "B not closed and real");
    require(dH_closed(b, b_transform(B, rho), H), "closed B-transform breaks integrability");
    GradedForm B2 = random_form(l, rng, bd, Degree{1, 0, 1}).real_part() * Scalar(2);
    require(dH_closed(b, b_transform(B2, rho), H - b.d(B2)), "B-transform does not shift H by -dB");
  }
  return std::to_string(points) + " points, 120 Clifford pairs, 5 + 5 B-transforms";
}

// 8 ------------------------------------------------------------------------

std::string flag_pointwise() {
  Scenario s = load("flag_pointwise");
  Bundle b(s);
  ObstructionReport r = decide(s);
  GradedForm expect = b.theta_plus(b.theta_minus(s.omega)) * Scalar(GaussQ(0, 2));
  require(r.phi.C == expect, "Phi^C != 2i theta+ theta- omega");
  for (Degree g : r.phi.C.degrees()) require(g == Degree{2, 2, 0}, "Phi^C has degree " + g.str());
  require(!r.phiC_pointwise.empty(), "no sample points");
  for (auto& pv : r.phiC_pointwise) {
    require(!pv.value.empty(), "Phi^C vanishes at a sample point");
    require(pv.value == evaluate(expect, pv.point), "pointwise value mismatch");
  }
  bool noted = false;
  for (auto& n : r.notes) noted = noted || n.find("not reproducible at desk scale") != std::string::npos;
  require(noted, "report does not state the limitation");
  require(r.verdict == Verdict::SolverIncomplete && r.stage == Stage::C, "expected SolverIncomplete(C)");
  return "Phi^C = " + r.phi.C.str() + " at " + std::to_string(r.phiC_pointwise.size()) + " points";
}

// 9 ------------------------------------------------------------------------

/// Fibre coordinates t' = t + phi(x): the connection picks up d phi, the eta^i do not change.
Scenario gauge(const Scenario& s, const std::vector<CoeffFn>& phi) {
  Scenario g = s;
  for (int i = 0; i < s.layout.p; ++i)
    for (int k = 0; k < 2 * s.layout.m; ++k) g.connection[i][k] += phi[i].differentiate(s.layout.base_coord(k));
  return g;
}

std::string gauge_change() {
  Scenario s = load("t4_over_c");
  for (auto& [mono, f] : s.omega.terms()) require(f.fibre_average() == f, "omega depends on the fibre");
  CoeffFn x1 = CoeffFn::var(CoordId::flat(0)), x2 = CoeffFn::var(CoordId::flat(1));
  // linear change fixing theta3 so that the lattice still acts
  Scenario lin = gauge(s, {x1 * Scalar(2) - x2, x2, CoeffFn(), x1 * Scalar(3)});
  lin.name = "t4_over_c_linear_gauge";
  // quadratic change; the lattice no longer acts, compare on the cover
  Scenario quad = gauge(s, {x1 * x2, CoeffFn(), x1 * x1, x2 * x2 * Scalar::frac(1, 2)});
  quad.name = "t4_over_c_quadratic_gauge";
  quad.lattice.clear();
  Scenario cover = s;
  cover.lattice.clear();
  require(!(lin.connection == s.connection) && !(quad.connection == s.connection), "connections not distinct");
  std::string out;
  Verdict base = decide(s).verdict;
  for (const Scenario* t : {&lin, &quad, &cover}) {
    ObstructionReport r = decide(*t);
    require(r.verdict == base, t->name + ": verdict " + verdict_name(r.verdict));
    if (!t->lattice.empty()) require(r.equivariant == true, t->name + ": not equivariant");
  }
  return "verdict " + verdict_name(base) + " for all connections";
}

}  // namespace

int main() {
  criterion(1, "T^4 x C / lattice end to end", 5, t4_end_to_end);
  criterion(2, "H constraints and dH = 0", 0, h_constraints);
  criterion(3, "V omega on the torus obstructed at A", 0, torus_obstruction);
  criterion(4, "V omega on the half plane", 0, halfplane);
  criterion(5, "steps A and B on planted symplectic bundles", 60, planted_symplectic);
  criterion(6, "relation suite", 120, relation_suite);
  criterion(7, "spinor suite", 0, spinor_suite);
  criterion(8, "pointwise Phi^C on the flag bundle", 0, flag_pointwise);
  criterion(9, "connection independence under gauge change", 0, gauge_change);
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
  return failures == 0 ? 0 : 1;
}
