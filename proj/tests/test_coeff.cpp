#include "gcfol/coeff.hpp"
#include "gcfol/forms.hpp"
#include "gcfol/random.hpp"

#include <gtest/gtest.h>

using namespace gcfol;

namespace {

const CoordId t1 = CoordId::fibre(0);
const CoordId t2 = CoordId::fibre(1);
const CoordId x = CoordId::flat(0);

TEST(CoeffFn, DifferentiatePolynomialRule) {
  CoeffFn f = CoeffFn::var(x) * CoeffFn::wave(t1, 1);
  EXPECT_EQ(f.differentiate(x), CoeffFn::wave(t1, 1));
}

TEST(CoeffFn, DifferentiateFourierRuleTracksTwoPiI) {
  CoeffFn f = CoeffFn::wave(t1, 1);
  EXPECT_EQ(f.differentiate(t1), CoeffFn::wave(t1, 1) * Scalar::tau());
  EXPECT_EQ(CoeffFn::wave(t1, -3).differentiate(t1), CoeffFn::wave(t1, -3) * Scalar(GaussQ(-3), 1));
}

TEST(CoeffFn, DifferentiateIndependentVariable) {
  CoeffFn f = CoeffFn::var(x) * CoeffFn::wave(t1, 1);
  EXPECT_TRUE(f.differentiate(t2).is_zero());
}

TEST(CoeffFn, FibreAverage) {
  CoeffFn f = CoeffFn(3) + CoeffFn::wave(t1, 1);
  EXPECT_EQ(f.fibre_average(), CoeffFn(3));
  CoeffFn g = CoeffFn::var(x) * CoeffFn::wave(t1, 1) * CoeffFn::wave(t2, -1);
  EXPECT_TRUE(g.fibre_average().is_zero());
}

TEST(CoeffFn, ModePrimitive) {
  EXPECT_EQ(CoeffFn::wave(t1, 1).mode_primitive(t1),
            CoeffFn::wave(t1, 1) * Scalar::tau(-1));
  EXPECT_EQ(CoeffFn::var(x).mode_primitive(x), CoeffFn::var(x, 2) * Scalar::frac(1, 2));
  EXPECT_THROW(CoeffFn(1).mode_primitive(t1), NotInvertibleMode);
}

TEST(CoeffFn, ModePrimitiveInvertsDerivative) {
  Rng rng(11);
  Layout l{1, 2, BaseKind::Flat};
  for (int trial = 0; trial < 30; ++trial) {
    CoeffFn f = random_coeff(l, rng);
    EXPECT_EQ(f.mode_primitive(x).differentiate(x), f);
    CoeffFn g = f - f.fibre_mode({});
    CoeffFn h;  // terms with nonzero t1 frequency
    for (auto& [k, c] : g.terms())
      if (CoeffFn::entry(k, t1) != 0) h += CoeffFn::monomial(k, c);
    EXPECT_EQ(h.mode_primitive(t1).differentiate(t1), h);
  }
}

TEST(CoeffFn, RingAxiomsOnRandomTriples) {
  Rng rng(7);
  Layout l{2, 2, BaseKind::Torus};
  for (int trial = 0; trial < 40; ++trial) {
    CoeffFn a = random_coeff(l, rng), b = random_coeff(l, rng), c = random_coeff(l, rng);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
    EXPECT_TRUE((a - a).is_zero());
  }
}

TEST(CoeffFn, ConjugationAndReality) {
  Rng rng(8);
  Layout l{1, 2, BaseKind::Flat};
  for (int trial = 0; trial < 40; ++trial) {
    CoeffFn a = random_coeff(l, rng), b = random_coeff(l, rng);
    EXPECT_EQ(a.conj().conj(), a);
    EXPECT_EQ((a * b).conj(), a.conj() * b.conj());
    EXPECT_TRUE(a.real_part().is_real());
  }
  EXPECT_TRUE(CoeffFn::cos(t1, 2).is_real());
  EXPECT_TRUE(CoeffFn::sin(t1, 1).is_real());
  EXPECT_FALSE(CoeffFn::wave(t1, 1).is_real());
  // 2 pi i is imaginary
  EXPECT_FALSE(CoeffFn(Scalar::tau()).is_real());
  EXPECT_TRUE(CoeffFn(Scalar::tau() * Scalar::I()).is_real());
}

TEST(CoeffFn, MixedPartialsCommute) {
  Rng rng(9);
  Layout l{1, 2, BaseKind::Flat};
  std::vector<CoordId> vars = {t1, t2, x, CoordId::flat(1)};
  for (int trial = 0; trial < 20; ++trial) {
    CoeffFn f = random_coeff(l, rng);
    for (auto u : vars)
      for (auto v : vars) EXPECT_EQ(f.differentiate(u).differentiate(v), f.differentiate(v).differentiate(u));
  }
}

TEST(CoeffFn, LeibnizRule) {
  Rng rng(10);
  Layout l{1, 2, BaseKind::Flat};
  for (int trial = 0; trial < 20; ++trial) {
    CoeffFn f = random_coeff(l, rng), g = random_coeff(l, rng);
    for (auto v : {t1, x})
      EXPECT_EQ((f * g).differentiate(v), f.differentiate(v) * g + f * g.differentiate(v));
  }
}

TEST(CoeffFn, FibreAverageIdempotentAndBaseLinear) {
  Rng rng(12);
  Layout l{1, 2, BaseKind::Torus};
  RandomBounds base_only;
  base_only.fibre_dependence = false;
  for (int trial = 0; trial < 30; ++trial) {
    CoeffFn f = random_coeff(l, rng);
    CoeffFn g = random_coeff(l, rng, base_only);
    EXPECT_EQ(f.fibre_average().fibre_average(), f.fibre_average());
    EXPECT_EQ((f * g).fibre_average(), f.fibre_average() * g);
  }
}

TEST(CoeffFn, EvaluateAtQuarterPoints) {
  CoeffFn f = CoeffFn::cos(t1, 1) + CoeffFn::var(x, 2);
  auto at = [](mpq_class tv, mpq_class xv) {
    return [=](CoordId c) { return c.kind == CoordKind::Fibre ? tv : xv; };
  };
  EXPECT_EQ(f.evaluate(at(0, 2)).value(), GaussQ(5));
  EXPECT_EQ(f.evaluate(at(mpq_class(1, 2), 0)).value(), GaussQ(-1));
  EXPECT_EQ(CoeffFn::wave(t1, 1).evaluate(at(mpq_class(1, 4), 0)).value(), GaussQ::I());
  EXPECT_THROW(f.evaluate(at(mpq_class(1, 3), 0)), std::domain_error);
}

TEST(CoeffFn, SubstituteTranslatesPolynomials) {
  CoeffFn f = CoeffFn::var(x, 2);
  CoeffFn g = f.substitute(0, {}, {}, [](CoordId) { return mpq_class(-1); });
  // (x-1)^2 = x^2 - 2x + 1
  EXPECT_EQ(g, CoeffFn::var(x, 2) - CoeffFn::var(x) * Scalar(2) + CoeffFn(1));
}

TEST(CoeffFn, UnknownCoordinateIsDomainError) {
  EXPECT_THROW(CoeffFn::var(t1), std::domain_error);
  EXPECT_THROW(CoeffFn::wave(x, 1), std::domain_error);
}

}  // namespace
