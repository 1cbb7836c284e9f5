#include <gtest/gtest.h>

#include "maass/qseries.hpp"

using namespace maass;
using namespace maass::qseries;
using boost::multiprecision::cpp_int;

namespace {

// Schoolbook convolution oracle on plain integer vectors.
std::vector<cpp_int> convolve(const std::vector<cpp_int>& a, const std::vector<cpp_int>& b, size_t len) {
  std::vector<cpp_int> c(len, 0);
  for (size_t i = 0; i < a.size() && i < len; ++i)
    for (size_t j = 0; j < b.size() && i + j < len; ++j) c[i + j] += a[i] * b[j];
  return c;
}

cpp_int sigma(long n, unsigned k) {
  cpp_int s = 0;
  for (long d = 1; d <= n; ++d)
    if (n % d == 0) s += boost::multiprecision::pow(cpp_int(d), k);
  return s;
}

}  // namespace

TEST(QExpansion, ProductOfBinomials) {
  auto a = QExpansion::from_integers(0, {1, 1, 0, 0, 0});
  auto b = QExpansion::from_integers(0, {1, -1, 0, 0, 0});
  auto c = qexp_mul(a, b);
  EXPECT_EQ(c.lead(), 0);
  EXPECT_EQ(c.precision(), 5);
  EXPECT_EQ(c.coeff(0), 1);
  EXPECT_EQ(c.coeff(1), 0);
  EXPECT_EQ(c.coeff(2), -1);
  EXPECT_EQ(c.coeff(3), 0);
}

TEST(QExpansion, LeadingZerosAreStripped) {
  auto a = QExpansion::from_integers(0, {0, 0, 3, 1});
  EXPECT_EQ(a.lead(), 2);
  EXPECT_EQ(a.coeffs()[0], 3);
  EXPECT_EQ(a.abs_precision(), 4);
  auto z = QExpansion::from_integers(0, {0, 0});
  EXPECT_TRUE(z.is_zero());
  EXPECT_THROW(qexp_invert(z), DomainError);
}

TEST(QExpansion, PrecisionIsNeverExceeded) {
  auto a = QExpansion::from_integers(0, {1, 2, 3});
  EXPECT_THROW(a.coeff(3), DomainError);
  auto b = QExpansion::from_integers(-1, {1, 2, 3, 4, 5});
  auto c = qexp_mul(a, b);
  EXPECT_EQ(c.abs_precision(), 2);  // min(0 + 4, −1 + 3)
}

TEST(QExpansion, InvertGeometric) {
  auto inv = qexp_invert(QExpansion::from_integers(0, {1, -1, 0, 0, 0, 0, 0, 0}));
  ASSERT_EQ(inv.precision(), 8);
  for (long n = 0; n < 8; ++n) EXPECT_EQ(inv.coeff(n), 1);
}

TEST(QExpansion, DeltaTimesInverseIsOne) {
  auto d = delta_qexp(40);
  auto prod = qexp_mul(d, qexp_invert(d));
  EXPECT_EQ(prod.lead(), 0);
  EXPECT_EQ(prod.coeff(0), 1);
  for (long n = 1; n < prod.abs_precision(); ++n) EXPECT_EQ(prod.coeff(n), 0) << n;
}

TEST(QExpansion, InverseOfDeltaLeadsWithOne) {
  auto inv = qexp_invert(delta_qexp(20));
  EXPECT_EQ(inv.lead(), -1);
  EXPECT_EQ(inv.coeffs()[0], 1);
  EXPECT_EQ(inv.coeff(0), 24);
}

TEST(QExpansion, InvolutionOnE4) {
  auto e4 = eisenstein_qexp(4, 30);
  auto back = qexp_invert(qexp_invert(e4));
  ASSERT_EQ(back.precision(), e4.precision());
  for (long n = 0; n < 30; ++n) EXPECT_EQ(back.coeff(n), e4.coeff(n));
}

TEST(QExpansion, E4SquaredMatchesConvolution) {
  const long P = 40;
  auto e4 = eisenstein_qexp(4, P);
  std::vector<cpp_int> plain(P);
  plain[0] = 1;
  for (long n = 1; n < P; ++n) plain[n] = 240 * sigma(n, 3);
  auto oracle = convolve(plain, plain, P);
  auto sq = qexp_mul(e4, e4);
  for (long n = 0; n < P; ++n) EXPECT_EQ(sq.coeff(n), Rational(oracle[n])) << n;
  // E4^2 = E8 = 1 + 480 Σ σ7(n) q^n.
  for (long n = 1; n < P; ++n) EXPECT_EQ(sq.coeff(n), Rational(480 * sigma(n, 7))) << n;
}

TEST(Fixtures, DeltaCoefficients) {
  auto d = delta_qexp(10);
  const long tau[] = {1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643};
  for (long n = 1; n <= 9; ++n) EXPECT_EQ(d.coeff(n), tau[n - 1]);
  auto f = fixture("delta", 10);
  EXPECT_EQ(f.a().at(5), cplx(4830, 0));
  EXPECT_EQ(f.weight2(), 24);
  EXPECT_TRUE(f.weakly_holomorphic());
}

TEST(Fixtures, DeltaMatchesE4E6Identity) {
  // 1728 Δ = E4^3 − E6^2.
  const long P = 60;
  auto e4 = eisenstein_qexp(4, P), e6 = eisenstein_qexp(6, P);
  auto lhs = qexp_add(qexp_mul(qexp_mul(e4, e4), e4), qexp_scale(qexp_mul(e6, e6), -1));
  auto d = delta_qexp(P);
  for (long n = 1; n < P; ++n) EXPECT_EQ(lhs.coeff(n), 1728 * d.coeff(n)) << n;
}

TEST(Fixtures, RamanujanCongruence) {
  auto d = delta_qexp(51);
  for (long n = 1; n <= 50; ++n) {
    cpp_int tau = numerator(d.coeff(n));
    cpp_int diff = tau - sigma(n, 11);
    EXPECT_EQ(diff % 691, 0) << n;
  }
}

TEST(Fixtures, J744) {
  auto j = j744_qexp(32);
  EXPECT_EQ(j.lead(), -1);
  EXPECT_EQ(j.coeff(-1), 1);
  EXPECT_EQ(j.coeff(0), 0);
  EXPECT_EQ(j.coeff(1), 196884);
  EXPECT_EQ(j.coeff(2), 21493760);
  EXPECT_EQ(j.coeff(3), 864299970);
  auto f = fixture("j744", 32);
  EXPECT_EQ(f.n0(), 1);
  EXPECT_EQ(f.weight2(), 0);
  EXPECT_EQ(f.a().count(0), 0u);
}

TEST(Fixtures, Theta) {
  auto f = fixture("theta", 30);
  EXPECT_EQ(f.a().at(0), cplx(1, 0));
  EXPECT_EQ(f.a().at(1), cplx(2, 0));
  EXPECT_EQ(f.a().count(2), 0u);
  EXPECT_EQ(f.a().at(4), cplx(2, 0));
  EXPECT_EQ(f.a().at(25), cplx(2, 0));
  EXPECT_EQ(f.level(), 4);
  EXPECT_EQ(f.weight2(), 1);
}

TEST(Fixtures, InvDelta) {
  auto f = fixture("inv_delta", 20);
  EXPECT_EQ(f.n0(), 1);
  EXPECT_EQ(f.a().at(-1), cplx(1, 0));
  EXPECT_EQ(f.a().at(0), cplx(24, 0));
  EXPECT_EQ(f.a().at(1), cplx(324, 0));
  EXPECT_EQ(f.weight2(), -24);
}

TEST(Fixtures, GrowthWithinThirty) {
  for (const auto& name : fixture_names()) {
    auto f = fixture(name, 120);
    auto g = form::validate_growth(f);
    EXPECT_TRUE(g.ok) << name << " C_fit=" << g.C_fit;
    EXPECT_LE(g.C_fit, 30.0) << name;
  }
}

TEST(Fixtures, UnknownNameAndPrecision) {
  EXPECT_THROW(fixture("eta", 10), InputError);
  EXPECT_THROW(fixture("delta", 1), DomainError);
}
