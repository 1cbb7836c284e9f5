#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "maass/form.hpp"

namespace maass::qseries {

using Rational = boost::multiprecision::cpp_rational;

// Truncated Laurent series Σ_{j<len} coeffs[j] q^{lead+j} + O(q^{lead+len}).
class QExpansion {
 public:
  QExpansion() = default;
  QExpansion(long lead, std::vector<Rational> coeffs);
  static QExpansion from_integers(long lead, const std::vector<long>& coeffs);
  // The exact zero series known up to O(q^abs_precision).
  static QExpansion zero(long abs_precision);

  long lead() const { return lead_; }
  long precision() const { return long(coeffs_.size()); }
  // Exponent of the O-term.
  long abs_precision() const { return abs_prec_; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  // Coefficient of q^n (must satisfy n < abs_precision()).
  Rational coeff(long n) const;

 private:
  void normalize();
  long lead_ = 0;
  std::vector<Rational> coeffs_;
  long abs_prec_ = 0;
};

QExpansion qexp_mul(const QExpansion& a, const QExpansion& b);
QExpansion qexp_add(const QExpansion& a, const QExpansion& b);
QExpansion qexp_scale(const QExpansion& a, const Rational& c);
QExpansion qexp_invert(const QExpansion& a);

// Fixture q-expansions with `precision` retained terms.
QExpansion delta_qexp(long precision);
QExpansion eisenstein_qexp(int weight, long precision);  // weight 4 or 6
QExpansion j744_qexp(long precision);
QExpansion inv_delta_qexp(long precision);
QExpansion theta_qexp(long precision);

// FormData from an exact expansion (conversion to double happens here).
form::FormData to_form(const QExpansion& e, int weight2, long level, double growth_C);

const std::vector<std::string>& fixture_names();
// delta, e4, e6, j744, inv_delta, theta.
form::FormData fixture(const std::string& name, long precision = 64);

}  // namespace maass::qseries
