// Shared fixtures for the unit tests.
#pragma once

#include "gcfol/calculus.hpp"
#include "gcfol/random.hpp"
#include "gcfol/scenario.hpp"

namespace gcfol::fixtures {

/// T^4 x C with the flat connection and omega = th1^th2 + th3^th4 + x th1^th3.
inline Scenario t4_over_c() {
  Layout l{1, 4, BaseKind::Flat};
  Scenario s = Scenario::flat_product("t4_over_c", l);
  s.omega = GradedForm::etas(l, {0, 1}) + GradedForm::etas(l, {2, 3}) +
            GradedForm::etas(l, {0, 2}, CoeffFn::var(CoordId::flat(0)));
  return s;
}

/// V * th1^th2 on T^2 over the torus T^2, V = 2 + cos(2 pi u1).
inline Scenario v_omega_torus() {
  Layout l{1, 2, BaseKind::Torus};
  Scenario s = Scenario::flat_product("v_omega_torus", l);
  CoeffFn V = CoeffFn(2) + CoeffFn::cos(CoordId::angle(0), 1);
  s.omega = GradedForm::etas(l, {0, 1}, V);
  return s;
}

/// Symplectic fibre bundle with a planted trivialization: curved connection linear in the
/// base, omega = th1^th2 + d_S mu with mu real, so nabla omega = -d_S(gamma + gammabar)
/// for gamma = delbar mu.
struct PlantedSymplectic {
  Scenario scenario;
  GradedForm mu;
  GradedForm gamma;
};

inline PlantedSymplectic planted_symplectic(std::uint64_t seed) {
  Rng rng(seed);
  Layout l{2, 2, BaseKind::Flat};
  Scenario s = Scenario::flat_product("planted_symplectic_" + std::to_string(seed), l);
  for (int i = 0; i < l.p; ++i)
    for (int k = 0; k < 2 * l.m; ++k)
      for (int j = 0; j < 2 * l.m; ++j)
        if (rng.coin(25)) s.connection[i][k] += CoeffFn::var(CoordId::flat(j)) * Scalar(rng.uniform(-2, 2));
  // mu = sum_i g_i eta^i with g_i = (1/2pi) * (base polynomial) * trig(t)
  GradedForm mu(l);
  Scalar inv_two_pi = Scalar(GaussQ::I(), -1);
  for (int i = 0; i < l.p; ++i) {
    CoeffFn base = CoeffFn(rng.uniform(-1, 1));
    for (int j = 0; j < 2 * l.m; ++j)
      if (rng.coin(40)) base += CoeffFn::var(CoordId::flat(j)) * Scalar(GaussQ::frac(rng.uniform(-2, 2), 4));
    CoeffFn trig = rng.coin() ? CoeffFn::cos(CoordId::fibre(rng.uniform(0, 1)), rng.uniform(1, 2))
                              : CoeffFn::sin(CoordId::fibre(rng.uniform(0, 1)), rng.uniform(1, 2));
    mu += GradedForm::eta(l, i) * (base * trig * inv_two_pi * Scalar::frac(1, 8));
  }
  Bundle b(s);
  s.omega = GradedForm::etas(l, {0, 1}) + b.d_S(mu);
  return {s, mu, b.delbar(mu)};
}

/// Flat T^2 bundle over the torus T^4 with omega = th1^th2, for step B fixtures.
inline Scenario flat_over_t4() {
  Layout l{2, 2, BaseKind::Torus};
  Scenario s = Scenario::flat_product("flat_over_t4", l);
  s.omega = GradedForm::etas(l, {0, 1});
  return s;
}

}  // namespace gcfol::fixtures
