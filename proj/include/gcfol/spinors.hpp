// Pure spinors: pointwise Clifford algebra and d_H-integrability of generators.
#pragma once

#include "gcfol/calculus.hpp"
#include "gcfol/linsolve.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace gcfol {

/// Complex exterior algebra of a point: basis covectors e^0..e^{n-1} and the permutation
/// describing complex conjugation of the basis (identity for a real basis).
struct PointSpace {
  int n = 0;
  std::vector<int> conj_perm;

  static PointSpace real(int n) {
    PointSpace s{n, {}};
    for (int b = 0; b < n; ++b) s.conj_perm.push_back(b);
    return s;
  }
  /// The adapted coframe {dz, dzbar, eta} of a layout.
  static PointSpace adapted(const Layout& l) {
    PointSpace s{l.generators(), {}};
    for (int b = 0; b < s.n; ++b)
      s.conj_perm.push_back(b < l.m ? b + l.m : (b < 2 * l.m ? b - l.m : b));
    return s;
  }
};

/// Mixed-degree form at a point.
using PointForm = std::map<Monomial, GaussQ>;

/// (X, xi) in T_C + T*_C; components in the basis dual to e^b and in e^b.
struct PointVector {
  std::vector<GaussQ> X;
  std::vector<GaussQ> xi;
};

struct DegenerateSpinor : std::domain_error {
  using std::domain_error::domain_error;
};

inline void add_to(PointForm& f, Monomial m, const GaussQ& q) {
  if (q.is_zero()) return;
  GaussQ& v = f[m];
  v += q;
  if (v.is_zero()) f.erase(m);
}

inline PointForm evaluate(const GradedForm& a, const Point& pt) {
  PointForm r;
  for (auto& [mono, f] : a.terms()) add_to(r, mono, f.evaluate(pt).value());
  return r;
}

inline GaussQ pairing(const PointVector& u, const PointVector& v) {
  GaussQ s;
  for (std::size_t b = 0; b < u.X.size(); ++b) s += u.xi[b] * v.X[b] + v.xi[b] * u.X[b];
  return s * GaussQ::frac(1, 2);
}

/// (X, xi) . rho = i_X rho + xi ^ rho.
inline PointForm clifford_act(const PointVector& v, const PointForm& rho) {
  PointForm r;
  for (auto& [mono, q] : rho) {
    for (std::size_t b = 0; b < v.X.size(); ++b) {
      if (!v.X[b].is_zero() && (mono >> b & 1)) {
        int before = std::popcount(mono & ((Monomial{1} << b) - 1));
        GaussQ t = v.X[b] * q;
        add_to(r, mono & ~(Monomial{1} << b), (before & 1) ? -t : t);
      }
      if (!v.xi[b].is_zero()) {
        int s = wedge_sign(Monomial{1} << b, mono);
        if (s != 0) add_to(r, mono | (Monomial{1} << b), s > 0 ? v.xi[b] * q : -(v.xi[b] * q));
      }
    }
  }
  return r;
}

/// Basis of the null space L_rho, each vector as (X, xi).
inline std::vector<PointVector> annihilator(const PointSpace& sp, const PointForm& rho) {
  if (rho.empty()) throw DegenerateSpinor("spinor vanishes at the point");
  const int n = sp.n;
  const int rows = 1 << n;
  DenseMat mat(rows, std::vector<GaussQ>(2 * n));
  for (int c = 0; c < 2 * n; ++c) {
    PointVector v{std::vector<GaussQ>(n), std::vector<GaussQ>(n)};
    (c < n ? v.X[c] : v.xi[c - n]) = GaussQ(1);
    for (auto& [mono, q] : clifford_act(v, rho)) mat[mono][c] = q;
  }
  std::vector<PointVector> basis;
  for (auto& k : kernel(std::move(mat), 2 * n))
    basis.push_back({{k.begin(), k.begin() + n}, {k.begin() + n, k.end()}});
  return basis;
}

inline PointVector conjugate(const PointSpace& sp, const PointVector& v) {
  PointVector r{std::vector<GaussQ>(sp.n), std::vector<GaussQ>(sp.n)};
  for (int b = 0; b < sp.n; ++b) {
    r.X[sp.conj_perm[b]] = v.X[b].conj();
    r.xi[sp.conj_perm[b]] = v.xi[b].conj();
  }
  return r;
}

inline bool is_pure(const PointSpace& sp, const PointForm& rho) {
  return static_cast<int>(annihilator(sp, rho).size()) == sp.n;
}

/// L and its conjugate span T_C + T*_C.
inline bool real_rank_zero(const PointSpace& sp, const PointForm& rho) {
  auto L = annihilator(sp, rho);
  DenseMat m;
  for (auto& v : L) {
    for (const PointVector& w : {v, conjugate(sp, v)}) {
      std::vector<GaussQ> row(w.X);
      row.insert(row.end(), w.xi.begin(), w.xi.end());
      m.push_back(std::move(row));
    }
  }
  return rank(std::move(m)) == 2 * sp.n;
}

inline int type_at(const PointForm& rho) {
  if (rho.empty()) throw DegenerateSpinor("spinor vanishes at the point");
  int t = 64;
  for (auto& [mono, q] : rho) t = std::min(t, std::popcount(mono));
  return t;
}

/// e^B = 1 + B + B^B/2 + ... for B of even degree.
inline GradedForm clifford_exp(const GradedForm& B) {
  for (auto& [mono, f] : B.terms())
    if (std::popcount(mono) % 2 != 0) throw std::domain_error("clifford_exp needs an even form");
  const Layout& l = B.layout();
  GradedForm sum(l, 1);
  GradedForm power(l, 1);
  for (int k = 1; k <= l.generators(); ++k) {
    power = power.wedge(B) * Scalar::frac(1, k);
    if (power.is_zero()) break;
    sum += power;
  }
  return sum;
}

inline GradedForm b_transform(const GradedForm& B, const GradedForm& rho) {
  if (!B.is_real()) throw std::domain_error("B-field must be real");
  if (!(B.project_total(2) == B)) throw std::domain_error("B-field must be a 2-form");
  return clifford_exp(B).wedge(rho);
}

struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline void require_dS_closed_omega(const Bundle& b, const GradedForm& omega) {
  GradedForm ds = b.d_S(omega);
  if (!ds.is_zero()) throw PreconditionError("omega is not leafwise closed: d_S omega = " + ds.str());
}

inline void require_closed_3form(const Bundle& b, const GradedForm& H) {
  if (!(H.project_total(3) == H)) throw PreconditionError("H must be a 3-form");
  if (!H.is_real()) throw PreconditionError("H must be real");
  GradedForm dH = b.d(H);
  if (!dH.is_zero()) throw PreconditionError("H is not closed: dH = " + dH.str());
}

/// d rho + H ^ rho = 0.
inline bool dH_closed(const Bundle& b, const GradedForm& rho, const GradedForm& H) {
  require_closed_3form(b, H);
  return (b.d(rho) + H.wedge(rho)).is_zero();
}

/// The canonical generator e^{i omega} ^ dz^1 ^ ... ^ dz^m.
inline GradedForm canonical_generator(const GradedForm& omega) {
  const Layout& l = omega.layout();
  GradedForm kappa(l, 1);
  for (int a = 0; a < l.m; ++a) kappa = kappa.wedge(GradedForm::dz(l, a));
  return clifford_exp(omega * Scalar::I()).wedge(kappa);
}

struct HConstraintReport {
  GradedForm h003, h012_residual, h021_residual, h030;
  bool holds() const {
    return h003.is_zero() && h012_residual.is_zero() && h021_residual.is_zero() && h030.is_zero();
  }
};

inline HConstraintReport H_constraint_residuals(const Bundle& b, const GradedForm& omega,
                                                const GradedForm& H) {
  Scalar i = Scalar::I();
  return {H.project_degree({0, 0, 3}),
          H.project_degree({0, 1, 2}) + b.delbar(omega) * i,
          H.project_degree({0, 2, 1}) + b.theta_minus(omega) * i,
          H.project_degree({0, 3, 0})};
}

/// H|_K + i d_K omega = 0, checked degreewise and as a whole; the two must agree.
inline bool check_H_constraints(const Bundle& b, const GradedForm& omega, const GradedForm& H) {
  require_closed_3form(b, H);
  require_dS_closed_omega(b, omega);
  bool degreewise = H_constraint_residuals(b, omega, H).holds();
  bool whole = (H.restrict_K() + b.d_K(omega) * Scalar::I()).is_zero();
  if (degreewise != whole)
    throw std::logic_error("degreewise H constraints disagree with H|_K + i d_K omega = 0");
  return whole;
}

}  // namespace gcfol
