#include "maass/qseries.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace maass::qseries {

QExpansion::QExpansion(long lead, std::vector<Rational> coeffs)
    : lead_(lead), coeffs_(std::move(coeffs)) {
  abs_prec_ = lead_ + long(coeffs_.size());
  normalize();
}

QExpansion QExpansion::from_integers(long lead, const std::vector<long>& coeffs) {
  std::vector<Rational> c(coeffs.begin(), coeffs.end());
  return QExpansion(lead, std::move(c));
}

QExpansion QExpansion::zero(long abs_precision) {
  QExpansion z;
  z.lead_ = abs_precision;
  z.abs_prec_ = abs_precision;
  return z;
}

void QExpansion::normalize() {
  size_t first = 0;
  while (first < coeffs_.size() && coeffs_[first] == 0) ++first;
  if (first > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + long(first));
    lead_ += long(first);
  }
}

Rational QExpansion::coeff(long n) const {
  if (n >= abs_prec_) throw DomainError("QExpansion: coefficient beyond the declared precision");
  if (n < lead_) return 0;
  return coeffs_[size_t(n - lead_)];
}

QExpansion qexp_mul(const QExpansion& a, const QExpansion& b) {
  const long lead = a.lead() + b.lead();
  const long abs_prec = std::min(a.lead() + b.abs_precision(), b.lead() + a.abs_precision());
  if (a.is_zero() || b.is_zero()) return QExpansion::zero(abs_prec);
  const long len = abs_prec - lead;
  std::vector<Rational> c(size_t(std::max(len, 0L)));
  const auto& ac = a.coeffs();
  const auto& bc = b.coeffs();
  for (long i = 0; i < len && i < long(ac.size()); ++i) {
    if (ac[i] == 0) continue;
    for (long j = 0; i + j < len && j < long(bc.size()); ++j) c[i + j] += ac[i] * bc[j];
  }
  return QExpansion(lead, std::move(c));
}

QExpansion qexp_add(const QExpansion& a, const QExpansion& b) {
  const long abs_prec = std::min(a.abs_precision(), b.abs_precision());
  const long lead = std::min(a.lead(), b.lead());
  if (lead >= abs_prec) return QExpansion::zero(abs_prec);
  std::vector<Rational> c(size_t(abs_prec - lead));
  for (long n = lead; n < abs_prec; ++n) c[n - lead] = a.coeff(n) + b.coeff(n);
  return QExpansion(lead, std::move(c));
}

QExpansion qexp_scale(const QExpansion& a, const Rational& s) {
  if (s == 0) return QExpansion::zero(a.abs_precision());
  std::vector<Rational> c = a.coeffs();
  for (auto& x : c) x *= s;
  return QExpansion(a.lead(), std::move(c));
}

QExpansion qexp_invert(const QExpansion& a) {
  if (a.is_zero()) throw DomainError("qexp_invert: zero series");
  const auto& c = a.coeffs();
  const long n = a.precision();
  std::vector<Rational> d(static_cast<size_t>(n));
  const Rational inv0 = 1 / c[0];
  d[0] = inv0;
  for (long m = 1; m < n; ++m) {
    Rational s = 0;
    for (long j = 1; j <= m; ++j)
      if (c[j] != 0) s += c[j] * d[m - j];
    d[m] = -inv0 * s;
  }
  return QExpansion(-a.lead(), std::move(d));
}

namespace {

using boost::multiprecision::cpp_int;

std::vector<cpp_int> divisor_sums(int power, long n_max) {
  std::vector<cpp_int> s(size_t(n_max + 1), 0);
  for (long d = 1; d <= n_max; ++d) {
    cpp_int dp = boost::multiprecision::pow(cpp_int(d), unsigned(power));
    for (long m = d; m <= n_max; m += d) s[m] += dp;
  }
  return s;
}

}  // namespace

QExpansion delta_qexp(long precision) {
  if (precision < 1) throw DomainError("delta_qexp: precision must be positive");
  // q ∏ (1 − q^n)^24 with exponents 1..precision.
  std::vector<cpp_int> c(size_t(precision), 0);
  c[0] = 1;
  for (long n = 1; n < precision; ++n)
    for (int rep = 0; rep < 24; ++rep)
      for (long j = precision - 1; j >= n; --j) c[j] -= c[j - n];
  std::vector<Rational> r(c.begin(), c.end());
  return QExpansion(1, std::move(r));
}

QExpansion eisenstein_qexp(int weight, long precision) {
  if (weight != 4 && weight != 6) throw DomainError("eisenstein_qexp: weight 4 or 6");
  const int scale = weight == 4 ? 240 : -504;
  auto sig = divisor_sums(weight - 1, precision);
  std::vector<Rational> r(static_cast<size_t>(precision));
  r[0] = 1;
  for (long n = 1; n < precision; ++n) r[n] = Rational(sig[n] * scale);
  return QExpansion(0, std::move(r));
}

QExpansion inv_delta_qexp(long precision) { return qexp_invert(delta_qexp(precision)); }

QExpansion j744_qexp(long precision) {
  // E4^3/Δ has lead −1; compute with `precision` terms from q^{−1}.
  const auto e4 = eisenstein_qexp(4, precision);
  const auto e4c = qexp_mul(qexp_mul(e4, e4), e4);
  const auto j = qexp_mul(e4c, inv_delta_qexp(precision));
  std::vector<Rational> c = j.coeffs();
  c[size_t(0 - j.lead())] -= 744;
  return QExpansion(j.lead(), std::move(c));
}

QExpansion theta_qexp(long precision) {
  std::vector<Rational> c(size_t(precision), 0);
  for (long n = 0; n * n < precision; ++n) c[size_t(n * n)] = n == 0 ? 1 : 2;
  return QExpansion(0, std::move(c));
}

form::FormData to_form(const QExpansion& e, int weight2, long level, double growth_C) {
  form::FormSpec s;
  s.weight2 = weight2;
  s.level = level;
  s.n0 = std::max(0L, -e.lead());
  s.growth_C = growth_C;
  for (long j = 0; j < e.precision(); ++j) {
    const Rational& r = e.coeffs()[size_t(j)];
    if (r != 0) s.a[e.lead() + j] = cplx(static_cast<double>(r), 0.0);
  }
  return form::FormData(std::move(s));
}

const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names = {"delta", "e4", "e6", "j744", "inv_delta", "theta"};
  return names;
}

form::FormData fixture(const std::string& name, long precision) {
  if (precision < 2) throw DomainError("fixture: precision must be at least 2");
  static std::mutex mu;
  static std::map<std::pair<std::string, long>, form::FormData> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({name, precision});
    if (it != cache.end()) return it->second;
  }
  const double four_pi = 4 * std::numbers::pi;
  form::FormData f;
  if (name == "delta") f = to_form(delta_qexp(precision), 24, 1, 4.5);
  else if (name == "e4") f = to_form(eisenstein_qexp(4, precision), 8, 1, 4.0);
  else if (name == "e6") f = to_form(eisenstein_qexp(6, precision), 12, 1, 4.5);
  else if (name == "j744") f = to_form(j744_qexp(precision), 0, 1, four_pi + 0.5);
  else if (name == "inv_delta") f = to_form(inv_delta_qexp(precision), -24, 1, four_pi + 0.5);
  else if (name == "theta") f = to_form(theta_qexp(precision), 1, 4, 0.1);
  else throw InputError("fixture: unknown name '" + name + "'");
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(std::make_pair(name, precision), f);
  return f;
}

}  // namespace maass::qseries
