// Seeded generators of bounded random coefficient functions and forms.
#pragma once

#include "gcfol/forms.hpp"

#include <cstdint>
#include <random>

namespace gcfol {

/// Deterministic across platforms: only raw mt19937_64 output is used.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  int uniform(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool coin(int percent = 50) { return uniform(0, 99) < percent; }

 private:
  std::mt19937_64 eng_;
};

struct RandomBounds {
  int max_frequency = 2;
  int max_poly_degree = 2;
  int max_terms = 8;
  bool fibre_dependence = true;
  bool base_dependence = true;
};

inline GaussQ random_gauss(Rng& rng) {
  int den = rng.uniform(1, 3);
  return GaussQ(mpq_class(rng.uniform(-3, 3), den),
                rng.coin(40) ? mpq_class(rng.uniform(-2, 2), den) : mpq_class(0));
}

inline CoeffFn random_coeff(const Layout& l, Rng& rng, const RandomBounds& bd = {}) {
  CoeffFn f;
  int terms = rng.uniform(1, bd.max_terms);
  for (int t = 0; t < terms; ++t) {
    CoeffFn::Key key;
    if (bd.fibre_dependence)
      for (int i = 0; i < l.p; ++i)
        if (rng.coin(30)) key.emplace_back(CoordId::fibre(i).code(), rng.uniform(-bd.max_frequency, bd.max_frequency));
    if (bd.base_dependence) {
      int budget = bd.max_poly_degree;
      for (int k = 0; k < 2 * l.m; ++k) {
        if (!rng.coin(40)) continue;
        CoordId c = l.base_coord(k);
        if (c.is_angle()) {
          key.emplace_back(c.code(), rng.uniform(-bd.max_frequency, bd.max_frequency));
        } else if (budget > 0) {
          int e = rng.uniform(1, budget);
          budget -= e;
          key.emplace_back(c.code(), e);
        }
      }
    }
    f += CoeffFn::monomial(key, Scalar(random_gauss(rng)));
  }
  return f;
}

/// Random form with up to bd.max_terms monomials; `only` restricts to a tridegree.
inline GradedForm random_form(const Layout& l, Rng& rng, const RandomBounds& bd = {},
                              std::optional<Degree> only = {}) {
  GradedForm a(l);
  int terms = rng.uniform(1, bd.max_terms);
  RandomBounds inner = bd;
  inner.max_terms = 2;
  for (int t = 0; t < terms; ++t) {
    Monomial mono = 0;
    if (only) {
      auto pick = [&](int base, int count, int want) {
        for (int tries = 0; tries < 64 && std::popcount(mono >> base & ((1u << count) - 1)) < want; ++tries)
          mono |= Monomial{1} << (base + rng.uniform(0, count - 1));
      };
      if (only->i > l.m || only->j > l.m || only->k > l.p) return a;
      pick(0, l.m, only->i);
      pick(l.m, l.m, only->j);
      pick(2 * l.m, l.p, only->k);
    } else {
      for (int b = 0; b < l.generators(); ++b)
        if (rng.coin(35)) mono |= Monomial{1} << b;
    }
    a += GradedForm::term(l, mono, random_coeff(l, rng, inner));
  }
  return a;
}

}  // namespace gcfol
