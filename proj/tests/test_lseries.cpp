#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <numbers>

#include "maass/lseries.hpp"
#include "maass/qseries.hpp"

using namespace maass;
using namespace maass::lseries;

namespace {

constexpr double kPi = std::numbers::pi;

form::FormData finite_form(int weight2, std::map<long, cplx> a, std::map<long, cplx> b = {}, long level = 1) {
  form::FormSpec s;
  s.weight2 = weight2;
  s.level = level;
  s.a = std::move(a);
  s.b = std::move(b);
  s.finite = true;
  return form::FormData(s);
}

// Composite Simpson rule with n (even) panels; the independent oracle for one-dimensional integrals.
cplx simpson(const std::function<cplx(double)>& g, double a, double b, int n = 20000) {
  const double h = (b - a) / n;
  cplx s = g(a) + g(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * g(a + i * h);
  return s * h / 3.0;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST(LSeries, SingleTermIndicator) {
  const auto f = finite_form(24, {{1, 1.0}});
  const LValue v = lseries_series(f, testfn::indicator(0.0, 1.0));
  const double expected = (1 - std::exp(-2 * kPi)) / (2 * kPi);
  EXPECT_NEAR(v.value.real(), expected, 1e-14);
  EXPECT_NEAR(v.value.imag(), 0.0, 1e-15);
  EXPECT_NEAR(v.value.real(), 0.1588577303502, 1e-12);
  EXPECT_EQ(v.trunc_err, 0.0);
}

TEST(LSeries, SingleTermBumpAgainstSimpson) {
  const auto f = finite_form(24, {{1, 1.0}, {3, cplx(0.5, -2.0)}});
  const auto phi = testfn::bump(0.3, 1.1);
  const cplx oracle = simpson(
      [&](double y) {
        return phi(y) * (std::exp(-2 * kPi * y) + cplx(0.5, -2.0) * std::exp(-6 * kPi * y));
      },
      0.3, 1.1);
  EXPECT_LT(rel(lseries_series(f, phi).value, oracle), 1e-11);
  EXPECT_LT(rel(lseries_integral(f, phi).value, oracle), 1e-11);
}

TEST(LSeries, SeriesMatchesIntegralOnFixtures) {
  const auto battery = testfn::standard_battery();
  for (const auto& [name, prec] : std::vector<std::pair<std::string, long>>{
           {"delta", 64}, {"j744", 128}, {"inv_delta", 256}, {"theta", 256}}) {
    const auto f = qseries::fixture(name, prec);
    for (const auto& phi : battery) {
      const LValue s = lseries_series(f, phi);
      const LValue i = lseries_integral(f, phi);
      const double scale = std::max(std::abs(i.value), 1e-12 * s.abs_series);
      EXPECT_LT(std::abs(s.value - i.value) / scale, 1e-9) << name << " " << phi.id();
      EXPECT_LE(s.trunc_err, 1e-12 * s.abs_series);
      EXPECT_GE(s.abs_series, std::abs(s.value) * (1 - 1e-12));
    }
  }
}

TEST(LSeries, ShiftedBatteryMembers) {
  const auto f = qseries::fixture("delta", 64);
  for (const auto& phi : testfn::extended_battery()) {
    const LValue s = lseries_series(f, phi);
    const LValue i = lseries_integral(f, phi);
    EXPECT_LT(rel(s.value, i.value), 1e-9) << phi.id();
  }
}

TEST(LSeries, Linearity) {
  const auto f = qseries::fixture("delta", 64);
  const auto p = testfn::bump(0.3, 0.9), q = testfn::bump(0.5, 1.7);
  const cplx a(0.7, -1.2), b(-2.0, 0.4);
  const cplx lhs = lseries_series(f, testfn::linear(a, p, b, q)).value;
  const cplx rhs = a * lseries_series(f, p).value + b * lseries_series(f, q).value;
  EXPECT_LT(rel(lhs, rhs), 1e-12);
}

TEST(LSeries, DeltaVariant) {
  for (const auto& [name, prec] :
       std::vector<std::pair<std::string, long>>{{"delta", 64}, {"j744", 128}, {"theta", 256}}) {
    const auto f = qseries::fixture(name, prec);
    for (const auto& phi : testfn::standard_battery()) {
      const LValue s = lseries_delta(f, phi);
      const LValue i = lseries_delta_integral(f, phi);
      const double scale = std::max(std::abs(i.value), 1e-12 * s.abs_series);
      EXPECT_LT(std::abs(s.value - i.value) / scale, 1e-9) << name << " " << phi.id();
    }
  }
  // Single term oracle: δ_k e^{−2πy} along iy is (k/2 − 2πy) e^{−2πy}.
  const auto g = finite_form(24, {{1, 1.0}});
  const auto phi = testfn::bump(0.4, 1.3);
  const cplx oracle =
      simpson([&](double y) { return phi(y) * (6.0 - 2 * kPi * y) * std::exp(-2 * kPi * y); }, 0.4, 1.3);
  EXPECT_LT(rel(lseries_delta(g, phi).value, oracle), 1e-11);
}

TEST(LSeries, NonholomorphicTermForms) {
  // k = 0: Γ(1, X) = e^{−X}, so the term is (Lφ)(2π|n|/M).
  const auto phi = testfn::bump(0.5, 1.5);
  const NonholTerm t0 = nonhol_term(0.0, -2, 1, phi);
  const cplx oracle0 = simpson([&](double y) { return phi(y) * std::exp(-4 * kPi * y); }, 0.5, 1.5);
  EXPECT_LT(rel(t0.nested, oracle0), 1e-10);
  EXPECT_LT(rel(t0.direct, oracle0), 1e-10);
  for (double k : {-1.5, 0.5, 1.0, 2.0, 12.0, -10.0}) {
    for (long n : {-1L, -3L}) {
      const NonholTerm t = nonhol_term(k, n, 1, phi);
      EXPECT_LT(rel(t.nested, t.direct), 1e-9) << "k=" << k << " n=" << n;
    }
  }
}

TEST(LSeries, HarmonicSyntheticForm) {
  // A finite harmonic expansion with holomorphic and nonholomorphic parts.
  const auto f = finite_form(1, {{0, 0.3}, {1, 1.0}, {2, cplx(0.0, 0.5)}}, {{-1, 2.0}, {-3, cplx(-1.0, 1.0)}}, 4);
  for (const auto& phi : testfn::standard_battery()) {
    const LValue s = lseries_series(f, phi);
    const LValue i = lseries_integral(f, phi);
    EXPECT_LT(rel(s.value, i.value), 1e-10) << phi.id();
    const LValue sd = lseries_delta(f, phi);
    const LValue id = lseries_delta_integral(f, phi);
    EXPECT_LT(rel(sd.value, id.value), 1e-10) << phi.id();
  }
}

TEST(LSeries, HarmonicInfiniteTail) {
  // b(n) with geometric growth bound; the b-part tail is certified from the stored range.
  form::FormSpec s;
  s.weight2 = 3;
  s.level = 4;
  s.growth_C = 1.0;
  for (long n = 1; n <= 40; ++n) s.b[-n] = std::exp(0.5 * std::sqrt(double(n))) * std::cos(double(n));
  for (long n = 1; n <= 40; ++n) s.a[n] = n == 1 ? 1.0 : 0.0;
  const form::FormData f(s);
  const auto phi = testfn::bump(0.6, 1.4);
  const LValue v = lseries_series(f, phi);
  EXPECT_LT(rel(v.value, lseries_integral(f, phi).value), 1e-9);
  EXPECT_GT(v.n_terms, 2);
}

TEST(LSeries, MembershipAndDataErrors) {
  const auto delta = qseries::fixture("delta", 64);
  // Support reaching 0 cannot be certified for an infinite expansion.
  EXPECT_THROW(lseries_series(delta, testfn::indicator(0.0, 1.0)), MembershipError);
  // Principal parts with a truncated power: (L|φ|)(u ≤ 0) diverges.
  const auto j = qseries::fixture("j744", 64);
  EXPECT_THROW(lseries_series(j, testfn::trunc_power(2.0, 1.0)), MembershipError);
  // Too few coefficients for a support close to 0.
  EXPECT_THROW(lseries_series(delta, testfn::bump(0.01, 0.02)), InsufficientDataError);
  try {
    lseries_series(qseries::fixture("delta", 8), testfn::bump(0.1, 0.2));
    FAIL() << "expected InsufficientDataError";
  } catch (const InsufficientDataError& e) {
    EXPECT_GT(e.required_n_max(), 8);
    EXPECT_NO_THROW(lseries_series(qseries::fixture("delta", e.required_n_max() + 1), testfn::bump(0.1, 0.2)));
  }
}

TEST(LSeries, TruncatedPowerMatchesClosedForm) {
  // L_f(x^{s−1}·1_{x>T}) for a single term is the upper incomplete gamma.
  const auto f = finite_form(24, {{1, 1.0}, {2, 3.0}});
  const cplx s(2.5, 1.0);
  const double T = 0.7;
  cplx oracle = 0;
  for (auto [n, c] : std::vector<std::pair<long, double>>{{1, 1.0}, {2, 3.0}}) {
    const double u = 2 * kPi * n;
    oracle += c * specials::upper_gamma(s, u * T) * std::exp(-s * std::log(u));
  }
  EXPECT_LT(rel(lseries_series(f, testfn::trunc_power(s, T)).value, oracle), 1e-11);
}

TEST(LSeriesTwist, DelegationDirectAndIntegralAgree) {
  const auto f = qseries::fixture("delta", 320);
  for (long D : {3L, 5L, 7L}) {
    for (const auto& chi : specials::characters_mod(D)) {
      for (const auto& phi : {testfn::bump(0.4, 1.0), testfn::bump(0.8, 2.0)}) {
        const LValue a = lseries_twisted(f, chi, phi);
        const LValue b = lseries_twisted_direct(f, chi, phi);
        const LValue c = lseries_integral(form::twist(f, chi), phi);
        const double scale = std::max(std::abs(c.value), 1e-12 * a.abs_series);
        EXPECT_LT(std::abs(a.value - b.value) / scale, 1e-11) << chi.id();
        EXPECT_LT(std::abs(a.value - c.value) / scale, 1e-9) << chi.id();
      }
    }
  }
}

TEST(LSeriesTwist, TrivialCharacterModOne) {
  const auto f = qseries::fixture("delta", 64);
  const auto phi = testfn::bump(0.5, 1.0);
  EXPECT_LT(rel(lseries_twisted(f, specials::trivial_character(1), phi).value, lseries_series(f, phi).value),
            1e-13);
}

TEST(LSeriesS, AtOneIsTheSeriesValue) {
  const auto f = qseries::fixture("delta", 64);
  for (const auto& phi : testfn::standard_battery()) {
    EXPECT_LT(rel(lseries_s(f, phi, 1.0).value, lseries_series(f, phi).value), 1e-10) << phi.id();
  }
}

TEST(LSeriesS, AgreesWithShiftedSeries) {
  for (const auto& [name, prec] : std::vector<std::pair<std::string, long>>{{"delta", 64}, {"theta", 256}}) {
    const auto f = qseries::fixture(name, prec);
    for (cplx s : {cplx(0.3, 2.0), cplx(2.0, 0.0), cplx(-1.5, 0.5)}) {
      for (const auto& phi : {testfn::bump(0.3, 0.8), testfn::bump(0.4, 1.9)}) {
        const cplx a = lseries_s(f, f, phi, s).value;
        const cplx b = lseries_series(f, testfn::shift_s(phi, s)).value;
        EXPECT_LT(rel(a, b), 1e-9) << name << " s=" << s;
      }
    }
  }
}

TEST(LSeriesS, FunctionalEquation) {
  // L(s, f, φ) = N^{1−k/2−s} c_k L(1−s, g, φ|_{1−k}W_N), c_k = i^k (integral k) or 1.
  struct Case {
    std::string name;
    long prec;
    cplx ck;
  };
  for (const auto& c : std::vector<Case>{{"delta", 64, 1.0}, {"theta", 256, 1.0}}) {
    const auto f = qseries::fixture(c.name, c.prec);
    const double k = f.weight();
    const long N = f.level();
    for (cplx s : {cplx(0.3, 2.0), cplx(1.7, -0.4)}) {
      const auto phi = testfn::bump(0.3, 0.9);
      const cplx lhs = lseries_series(f, testfn::shift_s(phi, s)).value;
      const auto psi = testfn::slash_W(phi, 1 - k, N);
      const cplx rhs = std::pow(double(N), 1 - k / 2 - s) * c.ck *
                       lseries_series(f, testfn::shift_s(psi, 1.0 - s)).value;
      EXPECT_LT(rel(lhs, rhs), 1e-9) << c.name << " s=" << s;
    }
  }
}

TEST(Bfk, IndependentOfT0AndMatchesCompletedL) {
  const auto delta = qseries::fixture("delta", 64);
  for (double s : {2.0, 6.0, 12.0}) {
    const cplx ref = bfk_lseries(delta, s, 1.0);
    for (double t0 : {0.6, 0.8, 1.25, 1.7}) EXPECT_LT(rel(bfk_lseries(delta, s, t0), ref), 1e-10) << s;
  }
  // Γ(12)(2π)^{−12} Σ τ(n) n^{−12} by plain partial sums.
  cplx partial = 0;
  for (const auto& [n, c] : delta.a()) partial += c * std::pow(double(n), -12.0);
  const cplx completed = std::tgamma(12.0) * std::pow(2 * kPi, -12.0) * partial;
  EXPECT_LT(rel(bfk_lseries(delta, 12.0, 1.0), completed), 1e-10);

  const auto j = qseries::fixture("j744", 128);
  const cplx rj = bfk_lseries(j, 2.5, 1.0);
  for (double t0 : {0.7, 0.9, 1.3}) EXPECT_LT(rel(bfk_lseries(j, 2.5, t0), rj), 1e-9);
  const cplx rj2 = bfk_lseries(j, cplx(0.5, 3.0), 1.0);
  EXPECT_LT(rel(bfk_lseries(j, cplx(0.5, 3.0), 1.2), rj2), 1e-9);
}

TEST(Bfk, Errors) {
  EXPECT_THROW(bfk_lseries(qseries::fixture("e4", 32), 3.0, 1.0), DomainError);
  EXPECT_THROW(bfk_lseries(qseries::fixture("theta", 32), 3.0, 1.0), DomainError);
  EXPECT_THROW(bfk_lseries(qseries::fixture("delta", 32), 3.0, -1.0), DomainError);
}

TEST(Classical, ZetaFromUnitCoefficients) {
  form::FormSpec s;
  s.weight2 = 24;
  s.growth_C = 0.01;
  s.generator.a = [](long) { return cplx(1.0); };
  s.generator.limit = 100000000;
  const form::FormData f(s);
  const ClassicalValue z4 = classical_value(f, 4.0, 1e-12);
  EXPECT_NEAR(z4.value.real(), std::pow(kPi, 4) / 90, 2e-12);
  EXPECT_LE(z4.tail_bound, 1e-12);
  const ClassicalValue z4s = classical_value_serial(f, 4.0, 1e-12);
  EXPECT_LT(std::abs(z4.value - z4s.value), 1e-13);
  EXPECT_EQ(z4.n_terms, z4s.n_terms);
  // Complex s: ζ(3+2i) against the partial sum with an integral tail estimate.
  const cplx s3(3.0, 2.0);
  const ClassicalValue z = classical_value(f, s3, 1e-10);
  cplx oracle = 0;
  const long Nq = 20000;
  for (long n = 1; n <= Nq; ++n) oracle += std::exp(-s3 * std::log(double(n)));
  oracle += std::exp((1.0 - s3) * std::log(double(Nq))) / (s3 - 1.0) - 0.5 * std::exp(-s3 * std::log(double(Nq)));
  EXPECT_LT(std::abs(z.value - oracle), 1e-10);
  EXPECT_THROW(classical_value(f, 1.0, 1e-8), DomainError);
}

TEST(Classical, DeltaAtTwelve) {
  const auto delta = qseries::fixture("delta", 256);
  const ClassicalValue v = classical_value(delta, 12.0, 1e-13);
  cplx partial = 0;
  for (const auto& [n, c] : delta.a()) partial += c * std::pow(double(n), -12.0);
  EXPECT_LT(std::abs(v.value - partial), 1e-10);
  EXPECT_GT(v.alpha, 4.0);
  EXPECT_LT(v.alpha, 6.0);
  EXPECT_THROW(classical_value(delta, 6.0, 1e-8), DomainError);
  EXPECT_THROW(classical_value(qseries::fixture("j744", 32), 12.0, 1e-8), DomainError);
}
