#include "gcfol/cohomology.hpp"
#include "gcfol/random.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace gcfol;

namespace {

TEST(Cohomology, HarmonicFormsRepresentThemselves) {
  auto s = fixtures::t4_over_c();
  Bundle b(s);
  EXPECT_EQ(dS_class(b, s.omega).rep, s.omega);
  auto r = dS_primitive(b, s.omega);
  EXPECT_FALSE(r.exact());
  EXPECT_EQ(r.residual, s.omega);
}

TEST(Cohomology, ExactFormsHaveZeroClassAndPrimitive) {
  auto s = fixtures::t4_over_c();
  Bundle b(s);
  Rng rng(41);
  for (int trial = 0; trial < 25; ++trial) {
    GradedForm g = random_form(s.layout, rng, {}, Degree{0, 1, 1});
    GradedForm a = b.d_S(g);
    EXPECT_TRUE(dS_class(b, a).is_zero());
    auto r = dS_primitive(b, a);
    ASSERT_TRUE(r.exact());
    EXPECT_EQ(b.d_S(*r.primitive), a);
  }
}

TEST(Cohomology, NotClosedRejected) {
  auto s = fixtures::t4_over_c();
  Bundle b(s);
  GradedForm a = GradedForm::eta(s.layout, 1) * CoeffFn::wave(CoordId::fibre(0), 1);
  EXPECT_THROW(dS_class(b, a), NotClosed);
  EXPECT_THROW(dS_primitive(b, a), NotClosed);
}

TEST(Cohomology, GaussManinOfOmegaOnT4OverC) {
  auto s = fixtures::t4_over_c();
  Bundle b(s);
  CohClass gm = gauss_manin(b, dS_class(b, s.omega));
  EXPECT_EQ(gm.rep, GradedForm::dx(s.layout, 0).wedge(GradedForm::etas(s.layout, {0, 2})));
  EXPECT_FALSE(is_flat(b, dS_class(b, s.omega)));
  // the connection is flat, so the induced connection squares to zero
  EXPECT_TRUE(gauss_manin(b, gm).is_zero());
}

TEST(Cohomology, PluriharmonicClasses) {
  auto t4 = fixtures::t4_over_c();
  EXPECT_TRUE(is_pluriharmonic(Bundle(t4), dS_class(Bundle(t4), t4.omega)));
  auto vt = fixtures::v_omega_torus();
  Bundle b(vt);
  EXPECT_FALSE(is_pluriharmonic(b, dS_class(b, vt.omega)));
}

TEST(Cohomology, ClassesAreLinear) {
  auto s = fixtures::t4_over_c();
  Bundle b(s);
  Rng rng(42);
  for (int trial = 0; trial < 15; ++trial) {
    GradedForm a = b.d_S(random_form(s.layout, rng, {}, Degree{1, 0, 1}));
    GradedForm h = GradedForm::etas(s.layout, {0, 3}) * random_coeff(s.layout, rng, {2, 2, 3, false, true});
    h = h.wedge(GradedForm::dz(s.layout, 0));
    EXPECT_EQ(dS_class(b, a + h).rep, h);
  }
}

TEST(Cohomology, GaussManinIsADerivation) {
  auto s = fixtures::t4_over_c();
  Bundle b(s);
  CohClass w = dS_class(b, s.omega);
  CohClass ww = dS_class(b, s.omega.wedge(s.omega));
  EXPECT_EQ(gauss_manin(b, ww).rep, gauss_manin(b, w).rep.wedge(w.rep) * Scalar(2));
}

TEST(Cohomology, FlatClassesArePluriharmonic) {
  auto s = fixtures::t4_over_c();
  Bundle b(s);
  Rng rng(43);
  RandomBounds bd{2, 2, 3, false, true};
  int flat = 0;
  for (int trial = 0; trial < 20; ++trial) {
    GradedForm a = GradedForm::etas(s.layout, {rng.uniform(0, 1), rng.uniform(2, 3)}) * random_coeff(s.layout, rng, bd);
    if (rng.coin()) a = GradedForm::etas(s.layout, {0, 1}) * CoeffFn(rng.uniform(1, 3));
    CohClass c = dS_class(b, a.real_part());
    if (!is_flat(b, c)) continue;
    ++flat;
    EXPECT_TRUE(is_pluriharmonic(b, c));
  }
  EXPECT_GT(flat, 0);
}

}  // namespace
