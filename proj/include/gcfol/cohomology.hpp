// Fibrewise d_S-cohomology on torus fibres.
//
// On T^p with Fourier coefficients the zero fibre mode is the harmonic part: every
// d_S-closed form equals its fibre average plus d_S of the per-mode homotopy
//   h(f e^{2 pi i n.t} w) = f e^{2 pi i n.t} (contraction of w with d/dt^i) / (2 pi i n_i),
// i the first index with n_i != 0.
#pragma once

#include "gcfol/calculus.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace gcfol {

struct NotClosed : std::domain_error {
  using std::domain_error::domain_error;
};

/// A d_S-cohomology class, stored by its harmonic (fibre-constant) representative.
struct CohClass {
  GradedForm rep;

  bool is_zero() const { return rep.is_zero(); }
  friend bool operator==(const CohClass&, const CohClass&) = default;
};

/// Per-mode fibre homotopy operator. Zero-mode terms are dropped.
inline GradedForm dS_homotopy(const GradedForm& a) {
  const Layout& l = a.layout();
  GradedForm r(l);
  for (auto& [mono, f] : a.terms()) {
    for (auto& [key, c] : f.terms()) {
      CoeffFn::Key fk = CoeffFn::fibre_key(key);
      if (fk.empty()) continue;
      auto [code, n] = fk.front();
      int i = CoordId::from_code(code).index;
      CoeffFn g = CoeffFn::monomial(key, c.divided_by(Scalar(GaussQ(n), 1)));
      r += GradedForm::term(l, mono, g).contract(l.eta_bit(i));
    }
  }
  return r;
}

inline void require_dS_closed(const Bundle& b, const GradedForm& a, const std::string& what) {
  GradedForm ds = b.d_S(a);
  if (!ds.is_zero()) throw NotClosed(what + " is not d_S-closed: d_S = " + ds.str());
}

inline CohClass dS_class(const Bundle& b, const GradedForm& a) {
  require_dS_closed(b, a, "form");
  return {a.fibre_average()};
}

struct PrimitiveResult {
  std::optional<GradedForm> primitive;  // set when exact
  GradedForm residual;                  // harmonic part; zero iff exact
  bool exact() const { return primitive.has_value(); }
};

/// Canonical primitive b with d_S b = a, or the nonzero harmonic residual.
inline PrimitiveResult dS_primitive(const Bundle& b, const GradedForm& a) {
  require_dS_closed(b, a, "form");
  GradedForm harm = a.fibre_average();
  if (!harm.is_zero()) return {std::nullopt, harm};
  return {dS_homotopy(a), harm};
}

inline CohClass gauss_manin(const Bundle& b, const CohClass& c) {
  GradedForm n = b.nabla(c.rep);
  GradedForm ds = b.d_S(n);
  if (!ds.is_zero())
    throw std::logic_error("nabla of a d_S-closed form is not d_S-closed: " + ds.str());
  return {n.fibre_average()};
}

inline bool is_flat(const Bundle& b, const CohClass& c) { return gauss_manin(b, c).is_zero(); }

/// del delbar [c] = 0 in d_S-cohomology; the anticommutation del delbar = -delbar del in
/// cohomology is checked on the way.
inline bool is_pluriharmonic(const Bundle& b, const CohClass& c) {
  CohClass ddb = dS_class(b, b.del(b.delbar(c.rep)));
  CohClass dbd = dS_class(b, b.delbar(b.del(c.rep)));
  if (!(dbd.rep == -ddb.rep))
    throw std::logic_error("del delbar + delbar del does not vanish in d_S-cohomology");
  return ddb.is_zero();
}

}  // namespace gcfol
