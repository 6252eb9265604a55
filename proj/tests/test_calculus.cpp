#include "gcfol/calculus.hpp"
#include "gcfol/random.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace gcfol;

namespace {

/// Curved model: T^2 over C with A^1_y = x (Heisenberg-type), A^2_x = sin(2 pi t1) free.
Bundle heisenberg() {
  Layout l{1, 2, BaseKind::Flat};
  std::vector<std::vector<CoeffFn>> A(2, std::vector<CoeffFn>(2));
  A[0][1] = CoeffFn::var(CoordId::flat(0));
  return Bundle(l, A);
}

Bundle torus_base_curved() {
  Layout l{1, 2, BaseKind::Torus};
  std::vector<std::vector<CoeffFn>> A(2, std::vector<CoeffFn>(2));
  A[0][0] = CoeffFn::cos(CoordId::angle(1), 1);
  A[1][1] = CoeffFn::sin(CoordId::angle(0), 1) * Scalar(2);
  return Bundle(l, A);
}

TEST(Calculus, DerivativeOfXTheta13) {
  auto s = fixtures::t4_over_c();
  Bundle b(s);
  const Layout& l = s.layout;
  GradedForm a = GradedForm::etas(l, {0, 2}, CoeffFn::var(CoordId::flat(0)));
  GradedForm expected =
      (GradedForm::dz(l, 0) + GradedForm::dzbar(l, 0)).wedge(GradedForm::etas(l, {0, 2})) * Scalar::frac(1, 2);
  EXPECT_EQ(b.d(a), expected);
  EXPECT_EQ(b.delbar(s.omega), GradedForm::dzbar(l, 0).wedge(GradedForm::etas(l, {0, 2})) * Scalar::frac(1, 2));
  EXPECT_TRUE(b.d_S(s.omega).is_zero());
}

TEST(Calculus, FunctionDifferentialUsesHorizontalLift) {
  Bundle b = heisenberg();
  const Layout& l = b.layout();
  CoeffFn f = CoeffFn::wave(CoordId::fibre(0), 1);
  // df = tau f eta^1 + x tau f dy
  GradedForm expected = GradedForm::eta(l, 0) * (f * Scalar::tau()) +
                        GradedForm::dx(l, 1) * (CoeffFn::var(CoordId::flat(0)) * f * Scalar::tau());
  EXPECT_EQ(b.d_function(f), expected);
  // d eta^1 = -dx ^ dy
  EXPECT_EQ(b.d_eta(0), -GradedForm::dx(l, 0).wedge(GradedForm::dx(l, 1)));
}

void expect_d_squared_zero(const Bundle& b, std::uint64_t seed) {
  Rng rng(seed);
  RandomBounds bd;
  bd.max_terms = 4;
  for (int trial = 0; trial < 15; ++trial) {
    GradedForm a = random_form(b.layout(), rng, bd);
    EXPECT_TRUE(b.d(b.d(a)).is_zero()) << a;
  }
}

TEST(Calculus, DSquaredZeroFlat) { expect_d_squared_zero(Bundle(fixtures::t4_over_c()), 21); }
TEST(Calculus, DSquaredZeroHeisenberg) { expect_d_squared_zero(heisenberg(), 22); }
TEST(Calculus, DSquaredZeroTorusBase) { expect_d_squared_zero(torus_base_curved(), 23); }

TEST(Calculus, ComponentsSumToD) {
  Bundle b = heisenberg();
  Rng rng(24);
  for (int trial = 0; trial < 15; ++trial) {
    GradedForm a = random_form(b.layout(), rng);
    GradedForm sum(b.layout());
    for (Op op : kAllOps) sum += b.component(a, op);
    EXPECT_EQ(sum, b.d(a));
  }
}

TEST(Calculus, LeibnizRule) {
  Bundle b = torus_base_curved();
  Rng rng(25);
  RandomBounds bd;
  bd.max_terms = 3;
  for (int trial = 0; trial < 15; ++trial) {
    GradedForm a = random_form(b.layout(), rng, bd, Degree{0, 1, 1});
    GradedForm c = random_form(b.layout(), rng, bd);
    EXPECT_EQ(b.d(a.wedge(c)), b.d(a).wedge(c) + a.wedge(b.d(c)));
  }
}

TEST(Calculus, ThetaIsTensorial) {
  Bundle b = heisenberg();
  Rng rng(26);
  for (int trial = 0; trial < 15; ++trial) {
    GradedForm a = random_form(b.layout(), rng);
    CoeffFn f = random_coeff(b.layout(), rng);
    EXPECT_EQ(b.theta(a * f), b.theta(a) * f);
    EXPECT_EQ(b.theta(a), b.theta_from_tensor(a));
  }
}

TEST(Calculus, PerturbedStructureBreaksDSquared) {
  // adding a non-closed piece to d eta^1 must make d^2 fail somewhere
  Layout l{1, 2, BaseKind::Flat};
  std::vector<std::vector<CoeffFn>> A(2, std::vector<CoeffFn>(2));
  GradedForm bad = GradedForm::dz(l, 0).wedge(GradedForm::eta(l, 1));
  Bundle b(l, A, {bad * CoeffFn::var(CoordId::flat(0))});
  GradedForm a = GradedForm::eta(l, 0);
  EXPECT_FALSE(b.d(b.d(a)).is_zero());
}

TEST(Calculus, FormFromOtherLayoutRejected) {
  Bundle b = heisenberg();
  EXPECT_THROW(b.d(GradedForm::eta(Layout{1, 4, BaseKind::Flat}, 0)), std::invalid_argument);
}

}  // namespace
