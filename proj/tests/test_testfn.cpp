#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "maass/quadrature.hpp"
#include "maass/specials.hpp"
#include "maass/testfn.hpp"

using namespace maass;
using namespace maass::testfn;

namespace {

constexpr double kPi = std::numbers::pi;

// Composite Simpson rule, used as an independent oracle.
template <class F>
double simpson(F f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

double bump_value(double c1, double c2, double x) {
  if (x <= c1 || x >= c2) return 0.0;
  const double w = c2 - c1;
  return std::exp(1.0 - w * w / (4.0 * (x - c1) * (c2 - x)));
}

}  // namespace

TEST(Quadrature, Elementary) {
  auto r = quad::integrate([](double x) { return x; }, 0.0, 1.0);
  EXPECT_NEAR(r.value, 0.5, 1e-15);
  quad::Options o;
  o.decay_rate = 1.0;
  auto e = quad::integrate([](double x) { return std::exp(-x); }, 0.0, INFINITY, o);
  EXPECT_NEAR(e.value, 1.0, 1e-12);
  auto g = quad::integrate([](double x) { return std::exp(-x * x); }, 0.0, INFINITY, o);
  const double oracle = simpson([](double x) { return std::exp(-x * x); }, 0.0, 12.0, 200000);
  EXPECT_NEAR(g.value, oracle, 1e-10);
  EXPECT_NEAR(g.value, std::sqrt(kPi) / 2, 1e-10);
}

TEST(Quadrature, KnotsAndErrorEstimate) {
  quad::Options o;
  o.knots = {0.3};
  auto r = quad::integrate([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0, o);
  EXPECT_NEAR(r.value, 0.29, 1e-15);
  EXPECT_LE(r.err, 1e-13);
  auto s = quad::integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0);
  EXPECT_NEAR(s.value, 2.0 / 3.0, 1e-12);
  EXPECT_GE(s.err, std::abs(s.value - 2.0 / 3.0) * 0.01);
}

TEST(Quadrature, VectorValued) {
  auto r = quad::integrate(
      [](double x) { return std::array<cplx, 2>{cplx(std::cos(x), std::sin(x)), x * x}; }, 0.0, 2.0);
  EXPECT_LT(std::abs(r.value[0] - cplx(std::sin(2.0), 1 - std::cos(2.0))), 1e-14);
  EXPECT_LT(std::abs(r.value[1] - 8.0 / 3.0), 1e-14);
  auto v = quad::integrate([](double x) { return std::valarray<double>{1.0, x}; }, 0.0, 1.0);
  EXPECT_NEAR(v.value[1], 0.5, 1e-15);
}

TEST(Quadrature, Errors) {
  EXPECT_THROW(quad::integrate([](double x) { return x; }, 0.0, INFINITY), DomainError);
  quad::Options o;
  o.max_intervals = 8;
  o.rel_tol = 1e-14;
  try {
    quad::integrate([](double x) { return std::sin(1.0 / x) / x; }, 1e-4, 1.0, o);
    FAIL() << "expected accuracy error";
  } catch (const AccuracyError& e) {
    EXPECT_TRUE(std::isfinite(e.best_estimate().real()));
    EXPECT_GT(e.error_estimate(), 0.0);
  }
}

TEST(TestFunction, PointEvaluation) {
  EXPECT_EQ(bump(1, 2)(3.0), cplx(0.0));
  EXPECT_NEAR(bump(1, 2)(1.5).real(), 1.0, 1e-15);
  EXPECT_NEAR(trunc_power(2.0, 1.0)(3.0).real(), 3.0, 1e-15);
  EXPECT_EQ(trunc_power(2.0, 1.0)(0.5), cplx(0.0));
  auto w = slash_W(bump(1, 2), 2, 1);
  EXPECT_NEAR(w(0.75).real(), std::pow(0.75, -2) * bump_value(1, 2, 4.0 / 3.0), 1e-15);
  EXPECT_THROW(bump(1, 2)(0.0), DomainError);
  EXPECT_THROW(bump(2, 1), DomainError);
}

TEST(TestFunction, ShiftAlgebra) {
  auto phi = bump(0.5, 3.0);
  auto s1 = shift_s(phi, 1.0);
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(0.5, 3.0);
  const cplx s(1.7, -0.4), t(-0.3, 2.0);
  auto a = shift_s(shift_s(phi, s), t), b = shift_s(phi, s + t - 1.0);
  for (int i = 0; i < 50; ++i) {
    const double x = u(rng);
    EXPECT_EQ(s1(x), phi(x));
    EXPECT_LT(std::abs(a(x) - b(x)), 1e-14 * (1 + std::abs(b(x))));
  }
  EXPECT_NEAR(shift_s(bump(1, 2), 3.0)(1.5).real(), 2.25 * bump_value(1, 2, 1.5), 1e-15);
  EXPECT_EQ(shift_s(phi, s).support(), phi.support());
}

TEST(TestFunction, SlashInvolution) {
  std::mt19937 rng(2);
  const TestFunction fns[] = {bump(0.3, 1.7), shift_s(bump(1, 2), cplx(0.5, 1.0)), bspline({0.5, 0.75, 1.0, 1.5, 2.0})};
  for (const auto& phi : fns)
    for (double a : {2.0, -5.0, 0.5, -11.0})
      for (long M : {1L, 3L, 4L}) {
        auto twice = slash_W(slash_W(phi, a, M), a, M);
        auto [lo, hi] = phi.support();
        std::uniform_real_distribution<double> u(lo, hi);
        for (int i = 0; i < 100; ++i) {
          const double x = u(rng);
          const cplx expect = std::pow(double(M), -a) * phi(x);
          // x → 1/(Mx) → x loses a few ulps of x; allow for the conditioning of φ there.
          const double cond = std::pow(double(M), -a) * x * std::abs(phi.jet(x, 1)[1]);
          EXPECT_LE(std::abs(twice(x) - expect), 1e-13 * std::abs(expect) + 1e-14 * cond) << phi.id();
        }
      }
}

TEST(TestFunction, SlashSupportAndTruncPower) {
  auto w = slash_W(bump(1, 2), 0, 1);
  EXPECT_DOUBLE_EQ(w.support().first, 0.5);
  EXPECT_DOUBLE_EQ(w.support().second, 1.0);
  const double k = 12;
  const cplx s(2.5, 0.7);
  const double T = 0.8;
  auto tp = slash_W(trunc_power(s, T), 2 - k, 1);
  for (double x : {0.3, 1.0, 1.2, 1.3}) {
    const cplx expect = x < 1 / T ? std::pow(x, k - 2) * std::pow(cplx(x), 1.0 - s) : cplx(0.0);
    EXPECT_LT(std::abs(tp(x) - expect), 1e-13 * (1 + std::abs(expect))) << x;
  }
  // Slashing back recovers M^{−a} times the original.
  auto back = slash_W(tp, 2 - k, 1);
  for (double x : {0.9, 1.5, 4.0}) EXPECT_LT(std::abs(back(x) - trunc_power(s, T)(x)), 1e-12 * std::abs(back(x)) + 1e-300);
}

TEST(TestFunction, Derivatives) {
  auto phi = bump(1, 2);
  EXPECT_EQ(derivative(phi, 0)(1.3), phi(1.3));
  quad::Options o;
  o.knots = {1.0, 2.0};
  auto d1 = derivative(phi, 1);
  EXPECT_NEAR(quad::integrate([&](double x) { return d1(x); }, 1.0, 2.0, o).value.real(), 0.0, 1e-13);
  // ∫ φ^{(m)}(x) x^j dx = 0 for j < m.
  auto d4 = derivative(phi, 4);
  for (int j = 0; j < 4; ++j) {
    auto r = quad::integrate([&](double x) { return d4(x) * std::pow(x, j); }, 1.0, 2.0, o);
    EXPECT_LT(std::abs(r.value), 1e-10 * r.abs_integral) << j;
  }
  // x³ on [1,2] differentiates to 6x.
  auto cube = spline({LaurentPiece{1, 2, 3, {1.0L}}});
  auto d2 = derivative(cube, 2);
  EXPECT_NEAR(d2(1.5).real(), 9.0, 1e-15);
  ASSERT_TRUE(std::holds_alternative<Spline>(d2.base()));
  EXPECT_EQ(std::get<Spline>(d2.base()).pieces[0].lo, 1);
  EXPECT_THROW(derivative(trunc_power(2.0, 1.0), 1), DomainError);
}

TEST(TestFunction, JetMatchesFiniteDifferences) {
  const TestFunction fns[] = {bump(1, 2), slash_W(shift_s(bump(0.5, 1.25), cplx(1.5, 0.5)), -10, 2),
                              slash_W(bspline({1.0, 1.25, 1.5, 1.75, 2.0, 2.5}), 0.5, 4)};
  for (const auto& phi : fns) {
    auto [lo, hi] = phi.support();
    for (double t : {0.3, 0.55, 0.7}) {
      const double x = lo + t * (hi - lo), h = 1e-4 * (hi - lo);
      auto j = phi.jet(x, 2);
      const cplx fd1 = (phi(x + h) - phi(x - h)) / (2 * h);
      const cplx fd2 = (phi(x + h) - 2.0 * phi(x) + phi(x - h)) / (h * h);
      EXPECT_LT(std::abs(j[0] - phi(x)), 1e-14 * std::abs(phi(x)) + 1e-300);
      EXPECT_LT(std::abs(j[1] - fd1), 1e-6 * (std::abs(fd1) + std::abs(phi(x)) / (hi - lo))) << phi.id();
      EXPECT_LT(std::abs(2.0 * j[2] - fd2), 1e-4 * (std::abs(fd2) + std::abs(phi(x)) / std::pow(hi - lo, 2)))
          << phi.id();
      // derivative() agrees with the jet.
      EXPECT_LT(std::abs(derivative(phi, 1)(x) - j[1]), 1e-12 * std::abs(j[1]) + 1e-300);
    }
  }
}

TEST(TestFunction, BSpline) {
  auto b = bspline({1, 2, 3, 4, 5});
  EXPECT_NEAR(b(3.0).real(), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(b(2.0).real(), 1.0 / 6.0, 1e-15);
  EXPECT_EQ(b(5.5), cplx(0.0));
  // C² at interior knots: left and right jets agree to order 2.
  for (double k : {2.0, 3.0, 4.0}) {
    auto l = b.jet(k - 1e-9, 2), r = b.jet(k, 2);
    for (int j = 0; j <= 2; ++j) EXPECT_NEAR(l[j].real(), r[j].real(), 1e-7) << k << " " << j;
  }
  // ∫ B = (t_end − t_0)/(d+1).
  auto r = laplace(b, 0.0);
  EXPECT_NEAR(r.real(), 1.0, 1e-13);
}

TEST(Laplace, ClosedForms) {
  auto ind = indicator(0.0, 1.0);
  EXPECT_NEAR(laplace(ind, 1.0).real(), 1 - std::exp(-1.0), 1e-14);
  EXPECT_NEAR(laplace(trunc_power(2.0, 1.0), 1.0).real(), 2 / std::exp(1.0), 1e-14);
  // Bump at u = 2π against a fine Simpson oracle.
  const double oracle =
      simpson([](double t) { return std::exp(-2 * kPi * t) * bump_value(1, 2, t); }, 1.0, 2.0, 400000);
  EXPECT_LT(std::abs(laplace(bump(1, 2), 2 * kPi) - oracle), 1e-10 * oracle);
}

TEST(Laplace, TruncatedPowerBranches) {
  // Below-type: ∫₀^T e^{−ut} t^{s−1} dt against quadrature, across the series/gamma switch.
  const cplx s(1.5, 0.8);
  for (double u : {-3.0, 0.0, 1.0, 5.0, 40.0}) {
    auto tp = slash_W(trunc_power(2.0 - 0.0 - s + 0.0, 1.0), 0.0, 1);  // x^{s−1} on (0, 1)
    quad::Options o;
    o.rel_tol = 1e-13;
    auto q = quad::integrate([&](double t) { return std::exp(-u * t) * std::pow(cplx(t), s - 1.0); }, 0.0, 1.0, o);
    EXPECT_LT(std::abs(laplace(tp, u) - q.value), 1e-10 * std::abs(q.value)) << u;
  }
  // Above-type at u = 0 with Re s < 0: ∫_T^∞ t^{s−1} = −T^s/s.
  const cplx sn(-1.5, 0.3);
  EXPECT_LT(std::abs(laplace(trunc_power(sn, 2.0), 0.0) + std::pow(cplx(2.0), sn) / sn), 1e-14);
  EXPECT_THROW(laplace(trunc_power(2.0, 1.0), 0.0), DomainError);
  // Negative argument uses the principal-branch continuation u^{−s}Γ(s, uT).
  const double u = -0.7;
  const cplx expect = std::exp(-s * cplx(std::log(0.7), kPi)) * specials::upper_gamma(s, u * 1.0);
  EXPECT_LT(std::abs(laplace(trunc_power(s, 1.0), u) - expect), 1e-14 * std::abs(expect));
}

TEST(Laplace, Linearity) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> c(-2, 2), lo(0.2, 2.0), w(0.1, 2.0);
  for (int i = 0; i < 20; ++i) {
    const double a1 = lo(rng), a2 = lo(rng);
    auto phi = bump(a1, a1 + w(rng));
    auto psi = shift_s(bump(a2, a2 + w(rng)), cplx(c(rng), c(rng)));
    const cplx al(c(rng), c(rng)), be(c(rng), c(rng));
    for (double u : {0.5, 2 * kPi, 20.0}) {
      const cplx lhs = laplace(linear(al, phi, be, psi), u);
      const cplx rhs = al * laplace(phi, u) + be * laplace(psi, u);
      EXPECT_LT(std::abs(lhs - rhs), 1e-11 * std::abs(rhs));
    }
  }
}

TEST(Laplace, DecayBoundOnBattery) {
  for (const auto& phi : extended_battery()) {
    auto [c1, c2] = phi.support();
    const double sup = sup_norm(phi);
    for (double x : {0.5, 1.0, 5.0, 20.0, 60.0}) {
      const double l = laplace_abs(phi, x);
      EXPECT_LE(std::abs(laplace(phi, x)), l * (1 + 1e-12));
      EXPECT_LE(l, sup * (c2 - c1) * std::exp(-x * c1)) << phi.id() << " x=" << x;
    }
  }
}

TEST(Battery, Coverage) {
  auto bat = standard_battery();
  ASSERT_EQ(bat.size(), 10u);
  EXPECT_DOUBLE_EQ(bat.front().support().first, 0.25);
  EXPECT_NEAR(bat.back().support().second, 4.0, 1e-14);
  for (double y = 0.2501; y < 4.0; y *= 1.01) {
    bool hit = false;
    for (const auto& phi : bat) hit = hit || std::abs(phi(y)) > 0;
    EXPECT_TRUE(hit) << y;
  }
  // Closed under x → 1/x up to reordering.
  for (size_t j = 0; j < bat.size(); ++j) {
    auto [a, b] = bat[j].support();
    auto [c, d] = bat[bat.size() - 1 - j].support();
    EXPECT_NEAR(a * d, 1.0, 1e-14);
    EXPECT_NEAR(b * c, 1.0, 1e-14);
  }
  EXPECT_EQ(extended_battery().size(), 30u);
  auto mb = make_battery(10, 0.25, 4.0);
  for (size_t j = 0; j < mb.size(); ++j) EXPECT_NEAR(mb[j].support().first, bat[j].support().first, 1e-14);
  EXPECT_THROW(make_battery(0, 1, 2), DomainError);
}
