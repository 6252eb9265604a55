// Obstruction forms, the staged solver for alpha and beta, and reconstruction of H.
#pragma once

#include "gcfol/cohomology.hpp"
#include "gcfol/linsolve.hpp"
#include "gcfol/random.hpp"
#include "gcfol/spinors.hpp"

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace gcfol {

enum class Verdict { GeneralizedComplex, Obstructed, SolverIncomplete };
enum class Stage { A, B, C };

inline std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::GeneralizedComplex: return "GeneralizedComplex";
    case Verdict::Obstructed: return "Obstructed";
    case Verdict::SolverIncomplete: return "SolverIncomplete";
  }
  return "?";
}
inline std::string stage_name(Stage s) { return std::string(1, "ABC"[static_cast<int>(s)]); }

/// Violated scenario invariant, named for diagnostics.
struct InvalidScenario : std::invalid_argument {
  InvalidScenario(std::string inv, const std::string& what)
      : std::invalid_argument(inv + ": " + what), invariant(std::move(inv)) {}
  std::string invariant;
};

// ---------------------------------------------------------------------------
// scenario checks

/// Seeded sample points: fibre and angle coordinates at quarter periods, flat
/// coordinates small rationals.
inline std::vector<Point> random_points(const Layout& l, int count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Point> pts;
  for (int n = 0; n < count; ++n) {
    Point pt;
    for (int i = 0; i < l.p; ++i) pt.set(CoordId::fibre(i), mpq_class(rng.uniform(0, 3), 4));
    for (int k = 0; k < 2 * l.m; ++k) {
      CoordId c = l.base_coord(k);
      pt.set(c, c.is_angle() ? mpq_class(rng.uniform(0, 3), 4) : mpq_class(rng.uniform(-4, 4), rng.uniform(1, 2)));
    }
    for (auto& [code, v] : pt.values) v.canonicalize();
    pts.push_back(std::move(pt));
  }
  return pts;
}

inline std::vector<Point> sample_points(const Scenario& s, int count = 8) {
  return s.sample_points.empty() ? random_points(s.layout, count, s.solver.seed) : s.sample_points;
}

/// Coefficient of eta^1..eta^p in omega^{p/2}.
inline CoeffFn top_power_coefficient(const GradedForm& omega) {
  const Layout& l = omega.layout();
  GradedForm pw(l, 1);
  for (int k = 0; k < l.p / 2; ++k) pw = pw.wedge(omega);
  Monomial top = ((Monomial{1} << l.p) - 1) << (2 * l.m);
  auto it = pw.terms().find(top);
  return it == pw.terms().end() ? CoeffFn() : it->second;
}

/// A Laurent polynomial in 2*pi*i vanishes only when every coefficient does.
inline bool nondegenerate_at(const GradedForm& omega, const Point& pt) {
  return !top_power_coefficient(omega).evaluate(pt).is_zero();
}

/// Throws InvalidScenario naming the first violated invariant.
inline void validate_scenario(const Scenario& s) {
  const Layout& l = s.layout;
  if (l.p < 2 || l.p % 2 != 0) throw InvalidScenario("even fibre rank", "fibre rank " + std::to_string(l.p));
  if (l.m < 1) throw InvalidScenario("positive base dimension", "complex base dimension " + std::to_string(l.m));
  if (l.generators() > 30) throw InvalidScenario("model size", "too many coframe generators");
  if (!(s.omega.layout() == l)) throw InvalidScenario("layout", "omega built on a different layout");
  if (static_cast<int>(s.connection.size()) != l.p) throw InvalidScenario("connection shape", "one row per fibre coordinate");
  for (auto& row : s.connection) {
    if (static_cast<int>(row.size()) != 2 * l.m)
      throw InvalidScenario("connection shape", "one entry per real base coordinate");
    for (auto& a : row)
      if (!a.is_real()) throw InvalidScenario("real connection", a.str());
  }
  for (Degree g : s.omega.degrees())
    if (!(g == Degree{0, 0, 2})) throw InvalidScenario("leafwise 2-form", "omega has a term of degree " + g.str());
  if (!s.omega.is_real()) throw InvalidScenario("real omega", s.omega.str());
  Bundle b(s);
  GradedForm ds = b.d_S(s.omega);
  if (!ds.is_zero()) throw InvalidScenario("leafwise closed", "d_S omega = " + ds.str());
  for (const Point& pt : sample_points(s))
    if (!nondegenerate_at(s.omega, pt)) throw InvalidScenario("fibrewise nondegenerate", "omega^(p/2) vanishes at a sample point");
  for (auto& g : s.lattice) {
    try {
      check_generator(g, l);
    } catch (const std::exception& e) {
      throw InvalidScenario("lattice generator", e.what());
    }
  }
  if (s.curvature_override) {
    if (static_cast<int>(s.curvature_override->size()) != l.p)
      throw InvalidScenario("curvature override", "one 2-form per fibre coordinate");
    for (auto& F : *s.curvature_override) {
      for (auto& [mono, f] : F.terms())
        if (!f.is_constant() || (mono >> (2 * l.m)) != 0 || std::popcount(mono) != 2)
          throw InvalidScenario("curvature override", "entries must be constant base 2-forms");
      if (!F.is_real()) throw InvalidScenario("curvature override", "entries must be real");
    }
  }
}

// ---------------------------------------------------------------------------
// obstruction forms

struct PhiForms {
  GradedForm A, B, C;
};

/// -2 Im(d d_K omega).
inline GradedForm phi_total(const Bundle& b, const GradedForm& omega) {
  return b.d(b.d_K(omega)).imag_part() * Scalar(-2);
}

inline PhiForms phi_forms(const Bundle& b, const GradedForm& omega) {
  require_dS_closed_omega(b, omega);
  if (!omega.is_real()) throw PreconditionError("omega must be real");
  Scalar i = Scalar::I();
  GradedForm tm = b.theta_minus(omega) - b.theta_plus(omega);
  PhiForms phi{(b.del(b.delbar(omega)) - b.delbar(b.del(omega))) * i,
               (b.nabla(tm) + b.theta(b.delbar(omega) - b.del(omega))) * i,
               b.theta(tm) * i};
  for (const GradedForm* f : {&phi.A, &phi.B, &phi.C})
    if (!f->is_real()) throw std::logic_error("obstruction form is not real: " + f->str());
  for (Degree g : phi.A.degrees())
    if (!(g == Degree{1, 1, 2})) throw std::logic_error("Phi^A has degree " + g.str());
  for (Degree g : phi.B.degrees())
    if (g.k != 1 || g.i + g.j != 3 || g.i < 1 || g.j < 1) throw std::logic_error("Phi^B has degree " + g.str());
  for (Degree g : phi.C.degrees())
    if (g.k != 0 || g.i + g.j != 4) throw std::logic_error("Phi^C has degree " + g.str());
  if (!b.has_curvature_override()) {
    GradedForm direct = phi_total(b, omega);
    if (!(phi.A + phi.B + phi.C == direct))
      throw std::logic_error("Phi^A + Phi^B + Phi^C differs from -2 Im(d d_K omega)");
  }
  return phi;
}

// ---------------------------------------------------------------------------
// search spaces for the linear steps

namespace detail {

/// Base-only coefficient keys: flat monomials of total degree <= deg.
inline std::vector<CoeffFn::Key> flat_monomials(const Layout& l, int deg) {
  std::vector<CoeffFn::Key> out{{}};
  for (int k = 0; k < 2 * l.m; ++k) {
    std::vector<CoeffFn::Key> next;
    for (auto& key : out) {
      int used = 0;
      for (auto& e : key) used += e.second;
      for (int e = 0; used + e <= deg; ++e) {
        CoeffFn::Key nk = key;
        if (e > 0) nk.emplace_back(CoordId::flat(k).code(), e);
        next.push_back(std::move(nk));
      }
    }
    out = std::move(next);
  }
  return out;
}

inline CoeffFn::Key base_part(const CoeffFn::Key& k) {
  CoeffFn::Key r;
  for (auto& e : k)
    if (CoordId::from_code(e.first).kind != CoordKind::Fibre) r.push_back(e);
  return r;
}

inline std::set<CoeffFn::Key> base_modes(const GradedForm& a) {
  std::set<CoeffFn::Key> r;
  for (auto& [mono, f] : a.terms())
    for (auto& [key, c] : f.terms()) r.insert(base_part(key));
  return r;
}

inline CoeffFn::Key add_modes(const CoeffFn::Key& a, const CoeffFn::Key& b) {
  std::map<int, int> m;
  for (auto& [c, v] : a) m[c] += v;
  for (auto& [c, v] : b) m[c] += v;
  CoeffFn::Key r;
  for (auto& [c, v] : m)
    if (v != 0) r.emplace_back(c, v);
  return r;
}

inline std::pair<int, int> tau_range(const GradedForm& a) {
  int lo = 0, hi = 0;
  bool any = false;
  for (auto& [mono, f] : a.terms())
    for (auto& [key, c] : f.terms())
      for (auto& [k, q] : c.coeffs()) {
        lo = any ? std::min(lo, k) : k;
        hi = any ? std::max(hi, k) : k;
        any = true;
      }
  return {lo, hi};
}

/// Base-form monomials of the given types, e.g. {(1,1)} or {(2,1),(1,2)}.
inline std::vector<Monomial> base_form_monomials(const Layout& l, std::vector<std::pair<int, int>> types) {
  std::vector<Monomial> out;
  for (Monomial mono = 0; mono < (Monomial{1} << (2 * l.m)); ++mono) {
    int i = std::popcount(mono & ((Monomial{1} << l.m) - 1));
    int j = std::popcount(mono >> l.m);
    for (auto& t : types)
      if (t.first == i && t.second == j) out.push_back(mono);
  }
  return out;
}

inline bool connection_fibre_independent(const Scenario& s) {
  for (auto& row : s.connection)
    for (auto& a : row)
      if (!a.fibre_independent()) return false;
  return true;
}

inline bool curvature_constant(const Bundle& b) {
  for (int i = 0; i < b.layout().p; ++i)
    for (auto& [mono, f] : b.d_eta(i).terms())
      if (!f.is_constant()) return false;
  return true;
}

struct SearchSpace {
  std::vector<CoeffFn::Key> keys;
  int tau_lo = 0, tau_hi = 0;
};

inline std::vector<GradedForm> basis_forms(const Layout& l, const std::vector<Monomial>& monos,
                                           const SearchSpace& sp) {
  std::vector<GradedForm> out;
  for (Monomial m : monos)
    for (auto& key : sp.keys)
      for (int t = sp.tau_lo; t <= sp.tau_hi; ++t) out.push_back(GradedForm::term(l, m, CoeffFn::monomial(key, Scalar::tau(t))));
  return out;
}

/// Joint exact solve: sum_c x_c * (first[c], second[c]) = (rhs1, rhs2).
inline std::optional<GradedForm> solve_forms(const std::vector<GradedForm>& unknowns,
                                             const std::vector<GradedForm>& images1,
                                             const std::vector<GradedForm>& images2,
                                             const GradedForm& rhs1, const GradedForm& rhs2) {
  FormIndexer idx1, idx2;
  constexpr int kOffset = 1 << 28;
  auto flat = [&](const GradedForm& a, const GradedForm& b) {
    SparseVec v = idx1.flatten(a);
    for (auto& [r, q] : idx2.flatten(b)) v[r + kOffset] = q;
    return v;
  };
  std::vector<SparseVec> cols;
  for (std::size_t c = 0; c < unknowns.size(); ++c) cols.push_back(flat(images1[c], images2[c]));
  auto x = solve_sparse(cols, flat(rhs1, rhs2));
  if (!x) return std::nullopt;
  GradedForm sol(rhs1.layout());
  for (std::size_t c = 0; c < unknowns.size(); ++c)
    if (!(*x)[c].is_zero()) sol += unknowns[c] * Scalar((*x)[c]);
  return sol;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// the three steps

enum class StepStatus { Solved, Obstructed, Incomplete };

struct StepAResult {
  StepStatus status = StepStatus::Solved;
  GradedForm alpha;
  GradedForm class_rep;  // harmonic part of Phi^A
};

/// d_S alpha = Phi^A with alpha the canonical homotopy primitive.
inline StepAResult step_A(const Bundle& b, const GradedForm& phiA) {
  PrimitiveResult pr = dS_primitive(b, phiA);
  if (!pr.exact()) return {StepStatus::Obstructed, GradedForm(b.layout()), pr.residual};
  if (!pr.primitive->is_real()) throw std::logic_error("primitive of a real form is not real");
  return {StepStatus::Solved, *pr.primitive, pr.residual};
}

struct StepBResult {
  StepStatus status = StepStatus::Solved;
  GradedForm alpha;        // alpha + alpha'
  GradedForm alpha_prime;  // d_S-closed correction
  GradedForm beta;
  GradedForm class_rep;  // harmonic part of Phi^B - nabla alpha left unmatched
};

struct SolverBounds {
  int degree_cap = 4;
  bool fibre_independent_connection = true;
};

/// Finds d_S-closed alpha' and beta with Phi^B - nabla alpha = nabla alpha' + d_S beta.
inline StepBResult step_B(const Bundle& b, const GradedForm& phiB, const GradedForm& alpha,
                          const SolverBounds& bounds) {
  const Layout& l = b.layout();
  StepBResult res;
  res.alpha = alpha;
  res.alpha_prime = GradedForm(l);
  res.beta = GradedForm(l);
  res.class_rep = GradedForm(l);
  GradedForm r = phiB - b.nabla(alpha);
  require_dS_closed(b, r, "Phi^B - nabla alpha");
  GradedForm R = r.fibre_average();
  if (!R.is_zero()) {
    // alpha' = sum_i sigma_i eta^i with fibre-constant (1,1) base forms sigma_i
    detail::SearchSpace sp;
    bool complete = bounds.fibre_independent_connection;
    if (l.base == BaseKind::Flat) {
      int need = R.max_poly_degree() + 1;
      if (need > bounds.degree_cap) complete = false;
      sp.keys = detail::flat_monomials(l, complete ? need : bounds.degree_cap);
    } else {
      auto modes = detail::base_modes(R);
      sp.keys.assign(modes.begin(), modes.end());
    }
    auto [lo, hi] = detail::tau_range(R);
    sp.tau_lo = lo - 1;
    sp.tau_hi = hi;
    std::vector<Monomial> monos;
    for (Monomial w : detail::base_form_monomials(l, {{1, 1}}))
      for (int i = 0; i < l.p; ++i) monos.push_back(w | (Monomial{1} << l.eta_bit(i)));
    std::vector<GradedForm> unknowns = detail::basis_forms(l, monos, sp);
    std::vector<GradedForm> images, none;
    for (auto& e : unknowns) {
      images.push_back(b.nabla(e).fibre_average());
      none.emplace_back(l);
    }
    auto sol = detail::solve_forms(unknowns, images, none, R, GradedForm(l));
    if (!sol) {
      res.status = complete ? StepStatus::Obstructed : StepStatus::Incomplete;
      res.class_rep = R;
      return res;
    }
    res.alpha_prime = sol->real_part();
  }
  res.alpha = alpha + res.alpha_prime;
  PrimitiveResult pr = dS_primitive(b, r - b.nabla(res.alpha_prime));
  if (!pr.exact()) throw std::logic_error("step B residual is not d_S-exact after correction");
  res.beta = *pr.primitive;
  return res;
}

struct StepCResult {
  StepStatus status = StepStatus::Solved;
  GradedForm alpha, beta;
  GradedForm residual;  // Phi^C - Theta alpha - nabla beta before correction
};

/// Solves Phi^C - Theta alpha - nabla beta = Theta alpha' + nabla beta' + nabla beta'' with
/// alpha' = sum sigma_i eta^i fibre-constant, d_S beta' = -nabla alpha', beta'' basic.
inline StepCResult step_C(const Bundle& b, const GradedForm& phiC, const GradedForm& alpha,
                          const GradedForm& beta, const SolverBounds& bounds) {
  const Layout& l = b.layout();
  StepCResult res{StepStatus::Solved, alpha, beta, GradedForm(l)};
  GradedForm r = phiC - b.theta(alpha) - b.nabla(beta);
  for (Degree g : r.degrees())
    if (g.k != 0) throw std::logic_error("step C residual is not of degree (4;0): " + g.str());
  require_dS_closed(b, r, "step C residual");
  res.residual = r;
  if (r.is_zero()) return res;

  bool complete = bounds.fibre_independent_connection && detail::curvature_constant(b);
  detail::SearchSpace sa, sb;
  if (l.base == BaseKind::Flat) {
    int need = r.max_poly_degree() + 1;
    if (need > bounds.degree_cap) complete = false;
    int da = complete ? need - 1 : bounds.degree_cap;
    sa.keys = detail::flat_monomials(l, da);
    sb.keys = detail::flat_monomials(l, da + 1);
  } else {
    std::set<CoeffFn::Key> modes = detail::base_modes(r);
    std::set<CoeffFn::Key> curv;
    for (int i = 0; i < l.p; ++i)
      for (auto& k : detail::base_modes(b.d_eta(i))) curv.insert(k);
    std::set<CoeffFn::Key> amodes = modes;
    for (auto& m : modes)
      for (auto& c : curv) amodes.insert(detail::add_modes(m, c));
    for (auto& m : modes)
      for (auto& c : curv) {
        CoeffFn::Key neg;
        for (auto& [code, v] : c) neg.emplace_back(code, -v);
        amodes.insert(detail::add_modes(m, neg));
      }
    if (!curv.empty() && !(curv.size() == 1 && curv.begin()->empty())) complete = false;
    sa.keys.assign(amodes.begin(), amodes.end());
    sb.keys.assign(modes.begin(), modes.end());
  }
  auto [lo, hi] = detail::tau_range(r);
  sa.tau_lo = sb.tau_lo = lo - 1;
  sa.tau_hi = sb.tau_hi = hi + 1;

  std::vector<Monomial> amonos;
  for (Monomial w : detail::base_form_monomials(l, {{1, 1}}))
    for (int i = 0; i < l.p; ++i) amonos.push_back(w | (Monomial{1} << l.eta_bit(i)));
  std::vector<Monomial> bmonos = detail::base_form_monomials(l, {{2, 1}, {1, 2}});

  std::vector<GradedForm> unknowns, img_closed, img_main;
  for (auto& e : detail::basis_forms(l, amonos, sa)) {
    GradedForm ne = b.nabla(e);
    img_closed.push_back(ne.fibre_average());
    img_main.push_back(b.theta(e) - b.nabla(dS_homotopy(ne)));
    unknowns.push_back(e);
  }
  std::size_t n_alpha = unknowns.size();
  for (auto& f : detail::basis_forms(l, bmonos, sb)) {
    img_closed.emplace_back(l);
    img_main.push_back(b.nabla(f));
    unknowns.push_back(f);
  }
  auto sol = detail::solve_forms(unknowns, img_closed, img_main, GradedForm(l), r);
  if (!sol) {
    res.status = complete ? StepStatus::Obstructed : StepStatus::Incomplete;
    return res;
  }
  // split the solution back into alpha' and beta''
  GradedForm ap(l), bpp(l);
  for (auto& [mono, f] : sol->terms()) (mono >> (2 * l.m) ? ap : bpp).add(mono, f);
  (void)n_alpha;
  ap = ap.real_part();
  bpp = bpp.real_part();
  GradedForm bp = -dS_homotopy(b.nabla(ap));
  res.alpha = alpha + ap;
  res.beta = beta + bp + bpp;
  return res;
}

// ---------------------------------------------------------------------------
// verification and the decision procedure

struct ConditionCheck {
  bool A = false, B = false, C = false;
  bool all() const { return A && B && C; }
};

inline ConditionCheck check_conditions(const Bundle& b, const PhiForms& phi, const GradedForm& alpha,
                                       const GradedForm& beta) {
  return {b.d_S(alpha) == phi.A, phi.B == b.nabla(alpha) + b.d_S(beta),
          phi.C == b.theta(alpha) + b.nabla(beta)};
}

/// H = 2 Im(d_K omega) + alpha + beta.
inline GradedForm reconstruct_H(const Bundle& b, const GradedForm& omega, const GradedForm& alpha,
                                const GradedForm& beta) {
  return b.d_K(omega).imag_part() * Scalar(2) + alpha + beta;
}

/// Every lattice generator preserves omega, the connection and the extra forms.
inline bool check_equivariance(const Scenario& s, const std::vector<GradedForm>& extra = {}) {
  const Layout& l = s.layout;
  for (auto& g : s.lattice) {
    check_generator(g, l);
    auto M = [&](int i, int j) { return g.fibre_matrix.empty() ? int(i == j) : g.fibre_matrix[i * l.p + j]; };
    if (!(pullback_affine(g, s.omega) == s.omega)) return false;
    for (int i = 0; i < l.p; ++i)
      for (int k = 0; k < 2 * l.m; ++k) {
        CoeffFn expect;
        for (int j = 0; j < l.p; ++j)
          if (M(i, j) != 0) expect += s.A(j, k) * Scalar(M(i, j));
        if (!(pullback_coeff(g, l, s.A(i, k)) == expect)) return false;
      }
    for (auto& f : extra)
      if (!(pullback_affine(g, f) == f)) return false;
  }
  return true;
}

/// The generator e^{i omega} ^ dz^1 ^ ... ^ dz^m is d_H-closed.
inline bool calabi_yau_check(const Bundle& b, const GradedForm& omega, const GradedForm& H) {
  return dH_closed(b, canonical_generator(omega), H);
}

enum class ClassState { Zero, Nonzero, Pending, Undecided };

inline std::string class_state_name(ClassState c) {
  switch (c) {
    case ClassState::Zero: return "zero";
    case ClassState::Nonzero: return "nonzero";
    case ClassState::Pending: return "pending";
    case ClassState::Undecided: return "undecided";
  }
  return "?";
}

struct ClassReport {
  ClassState state = ClassState::Pending;
  std::optional<GradedForm> rep;  // harmonic representative when nonzero or undecided
};

struct PointwiseValue {
  Point point;
  PointForm value;
};

struct ObstructionReport {
  std::string scenario;
  Verdict verdict = Verdict::SolverIncomplete;
  std::optional<Stage> stage;
  PhiForms phi;
  ClassReport classA, classB, classC;
  std::optional<GradedForm> alpha, beta, H;
  std::optional<bool> calabi_yau;
  std::optional<bool> equivariant;
  std::optional<bool> pluriharmonic, flat;
  int degree_cap = 0;
  std::vector<PointwiseValue> phiC_pointwise;
  std::vector<std::string> notes;
};

inline int data_degree(const Scenario& s) {
  int d = s.omega.max_poly_degree();
  int f = s.omega.max_frequency(CoordKind::BaseAngle);
  for (auto& row : s.connection)
    for (auto& a : row) {
      d = std::max(d, a.poly_degree());
      f = std::max(f, a.frequency_norm(CoordKind::BaseAngle));
    }
  return std::max(d, f);
}

inline SolverBounds solver_bounds(const Scenario& s) {
  return {s.solver.degree_cap.value_or(data_degree(s) + 2), detail::connection_fibre_independent(s)};
}

inline ObstructionReport decide(const Scenario& s) {
  validate_scenario(s);
  Bundle b(s);
  const Layout& l = s.layout;
  ObstructionReport rep;
  rep.scenario = s.name;
  SolverBounds bounds = solver_bounds(s);
  rep.degree_cap = bounds.degree_cap;
  rep.phi = phi_forms(b, s.omega);
  CohClass om = dS_class(b, s.omega);
  rep.pluriharmonic = is_pluriharmonic(b, om);
  rep.flat = is_flat(b, om);
  if (*rep.flat && !*rep.pluriharmonic) throw std::logic_error("flat class that is not pluriharmonic");

  auto stop = [&](Verdict v, Stage st) {
    rep.verdict = v;
    rep.stage = st;
    return rep;
  };

  StepAResult a = step_A(b, rep.phi.A);
  if (a.status != StepStatus::Solved) {
    rep.classA = {ClassState::Nonzero, a.class_rep};
    return stop(Verdict::Obstructed, Stage::A);
  }
  rep.classA = {ClassState::Zero, {}};

  StepBResult sb = step_B(b, rep.phi.B, a.alpha, bounds);
  if (sb.status != StepStatus::Solved) {
    rep.classB = {sb.status == StepStatus::Obstructed ? ClassState::Nonzero : ClassState::Undecided, sb.class_rep};
    return stop(sb.status == StepStatus::Obstructed ? Verdict::Obstructed : Verdict::SolverIncomplete, Stage::B);
  }
  rep.classB = {ClassState::Zero, {}};

  if (b.has_curvature_override()) {
    // pointwise mode: the curvature is prescribed at points, not derived from a connection
    GradedForm r = rep.phi.C - b.theta(sb.alpha) - b.nabla(sb.beta);
    for (const Point& pt : sample_points(s)) rep.phiC_pointwise.push_back({pt, evaluate(rep.phi.C, pt)});
    rep.classC = {ClassState::Undecided, r};
    rep.notes.push_back(
        "pointwise mode: Phi^C is evaluated at sample points only; the class of Phi^C over a compact base "
        "(for the flag manifold, the integral of 2i theta+ theta- omega over CP^2) is not reproducible at "
        "desk scale in this exact framework");
    return stop(Verdict::SolverIncomplete, Stage::C);
  }

  StepCResult sc = step_C(b, rep.phi.C, sb.alpha, sb.beta, bounds);
  if (sc.status != StepStatus::Solved) {
    rep.classC = {sc.status == StepStatus::Obstructed ? ClassState::Nonzero : ClassState::Undecided, sc.residual};
    return stop(sc.status == StepStatus::Obstructed ? Verdict::Obstructed : Verdict::SolverIncomplete, Stage::C);
  }
  rep.classC = {ClassState::Zero, {}};

  // re-verify everything before reporting a positive verdict
  const GradedForm& alpha = sc.alpha;
  const GradedForm& beta = sc.beta;
  if (!alpha.is_real() || !beta.is_real()) throw std::logic_error("witnesses are not real");
  for (Degree g : alpha.degrees())
    if (!(g == Degree{1, 1, 1})) throw std::logic_error("alpha has degree " + g.str());
  for (Degree g : beta.degrees())
    if (!(g == Degree{2, 1, 0} || g == Degree{1, 2, 0})) throw std::logic_error("beta has degree " + g.str());
  if (!check_conditions(b, rep.phi, alpha, beta).all()) throw std::logic_error("witnesses fail conditions (A)-(C)");
  if (!(phi_total(b, s.omega) == b.d(alpha + beta)))
    throw std::logic_error("-2 Im(d d_K omega) differs from d(alpha + beta)");
  GradedForm H = reconstruct_H(b, s.omega, alpha, beta);
  if (!b.d(H).is_zero()) throw std::logic_error("reconstructed H is not closed");
  if (!check_H_constraints(b, s.omega, H)) throw std::logic_error("reconstructed H violates the constraints on K");
  rep.calabi_yau = calabi_yau_check(b, s.omega, H);
  if (!*rep.calabi_yau) throw std::logic_error("generator is not d_H-closed for the reconstructed H");
  if (!s.lattice.empty()) {
    rep.equivariant = check_equivariance(s, {alpha, beta, H});
    if (!*rep.equivariant) rep.notes.push_back("lattice action does not preserve the data; verdict holds on the cover only");
  }
  rep.alpha = alpha;
  rep.beta = beta;
  rep.H = H;
  rep.verdict = Verdict::GeneralizedComplex;
  (void)l;
  return rep;
}

}  // namespace gcfol
