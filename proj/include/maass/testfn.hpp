#pragma once

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "maass/errors.hpp"

namespace maass::testfn {

// exp(1 − w²/(4(x−c1)(c2−x))) on (c1, c2), w = c2 − c1; peak 1 at the midpoint.
struct Bump {
  double c1, c2;
};

// Σ_j coeffs[j]·(x − center)^{lo+j} on [a, b).
struct LaurentPiece {
  double a, b;
  int lo = 0;
  std::vector<long double> coeffs;
  double center = 0.0;
};

struct Spline {
  std::vector<LaurentPiece> pieces;  // sorted, non-overlapping
};

// scale·x^{s−1} on x > T (or on 0 < x < T when below is set).
struct TruncPower {
  cplx s;
  double T;
  bool below = false;
  cplx scale = 1.0;
};

class TestFunction;

struct Sum {
  std::vector<std::pair<cplx, std::shared_ptr<const TestFunction>>> terms;
};

// Modifiers applied on top of the base, innermost first.
struct Op {
  enum Kind { Shift, Slash, Derivative, Scale } kind;
  cplx s = 1.0;  // Shift exponent or Scale factor
  double a = 0;  // Slash weight
  long M = 1;    // Slash level
  int m = 0;     // Derivative order
};

class TestFunction {
 public:
  using Base = std::variant<Bump, Spline, TruncPower, Sum>;

  TestFunction(Base base, std::string id, std::vector<Op> ops = {});

  cplx operator()(double x) const;
  // Taylor coefficients f(x+h) = Σ_j c_j h^j up to h^order (one-sided at knots: right limit).
  std::vector<cplx> jet(double x, int order) const;

  // Closed support hull [lo, hi]; hi may be +∞.
  std::pair<double, double> support() const;
  bool compact() const;
  // Break points where the function may fail to be smooth (includes support endpoints).
  std::vector<double> knots() const;

  const Base& base() const { return base_; }
  const std::vector<Op>& ops() const { return ops_; }
  const std::string& id() const { return id_; }
  TestFunction with_id(std::string id) const;
  bool has_derivative_op() const;
  bool contains_trunc_power() const;

 private:
  std::vector<cplx> jet_level(size_t level, double x, int order) const;

  Base base_;
  std::vector<Op> ops_;
  std::string id_;
};

TestFunction bump(double c1, double c2);
TestFunction spline(std::vector<LaurentPiece> pieces, std::string id = "spline");
// 1 on [a, b).
TestFunction indicator(double a, double b);
// Piecewise polynomial B-spline with the given knots (degree = knots.size() − 2),
// monomial coefficients computed exactly.
TestFunction bspline(const std::vector<double>& knots);
TestFunction trunc_power(cplx s, double T);
TestFunction combination(const std::vector<std::pair<cplx, TestFunction>>& terms);
TestFunction linear(cplx alpha, const TestFunction& phi, cplx beta, const TestFunction& psi);

TestFunction scale(const TestFunction& phi, cplx c);
// φ_s(x) = φ(x)·x^{s−1}.
TestFunction shift_s(const TestFunction& phi, cplx s);
// (φ|_a W_M)(x) = (Mx)^{−a} φ(1/(Mx)); a ∈ ½ℤ.
TestFunction slash_W(const TestFunction& phi, double a, long M);
// φ^{(m)}; truncated powers are not supported.
TestFunction derivative(const TestFunction& phi, int m);

struct LaplaceValue {
  cplx value;
  double abs_value = 0.0;  // (L|φ|)(u) for real u (upper bound for combinations)
  double err = 0.0;
};

// (Lφ)(u) = ∫₀^∞ e^{−ut} φ(t) dt together with (L|φ|)(u).
LaplaceValue laplace_pair(const TestFunction& phi, double u, double rel_tol = 1e-13);
cplx laplace(const TestFunction& phi, double u, double rel_tol = 1e-13);
double laplace_abs(const TestFunction& phi, double u, double rel_tol = 1e-13);

// max |φ| sampled densely over the support (compact variants only).
double sup_norm(const TestFunction& phi);

// Ten bumps on [2^{−2+j/3}, 2^{−1+j/3}], j = 0..9; union [1/4, 4].
std::vector<TestFunction> standard_battery();
// The standard battery together with its φ_s shifts, s ∈ {1, 2, 6}.
std::vector<TestFunction> extended_battery();
// count bumps with geometric supports covering [lo, hi], each spanning three steps.
std::vector<TestFunction> make_battery(int count, double lo, double hi, const std::vector<cplx>& shifts = {});

}  // namespace maass::testfn
