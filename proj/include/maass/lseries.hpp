#pragma once

#include "maass/form.hpp"
#include "maass/specials.hpp"
#include "maass/testfn.hpp"

namespace maass::lseries {

using form::FormData;
using testfn::TestFunction;

enum class Method { Series, Integral };

struct LValue {
  cplx value;
  double trunc_err = 0.0;   // series tail bound (or integrated eval tail bound)
  double quad_err = 0.0;    // accumulated quadrature error estimates
  long n_terms = 0;
  Method method = Method::Series;
  double abs_series = 0.0;  // the membership series Σ|c(n)|(L|φ|)(·) at the same truncation
};

// L_f(φ) = Σ a(n)(Lφ)(2πn/M) + Σ_{n<0} b(n)(−4πn/M)^{1−k} ∫₀^∞ (Lφ_{2−k})(−2πn(2t+1)/M)(1+t)^{−k} dt.
// tol is relative to the absolute series; the nonholomorphic terms are
// cross-checked against ∫Γ(1−k, −4πny/M) e^{−2πny/M} φ(y) dy.
LValue lseries_series(const FormData& f, const TestFunction& phi, double tol = 1e-12);
// ∫₀^∞ f(iy) φ(y) dy over the support of φ.
LValue lseries_integral(const FormData& f, const TestFunction& phi, double tol = 1e-12);

// L_{δ_k f}(φ) from the coefficients.
LValue lseries_delta(const FormData& f, const TestFunction& phi, double tol = 1e-12);
// ∫₀^∞ (δ_k f)(iy) φ(y) dy.
LValue lseries_delta_integral(const FormData& f, const TestFunction& phi, double tol = 1e-12);

// L_{f_χ}(φ) by delegation to lseries_series(twist(f, χ), φ).
LValue lseries_twisted(const FormData& f, const specials::Character& chi, const TestFunction& phi,
                       double tol = 1e-12);
LValue lseries_twisted_delta(const FormData& f, const specials::Character& chi, const TestFunction& phi,
                             double tol = 1e-12);
// Same quantity summed from the untwisted coefficients with Gauss sums computed per term.
LValue lseries_twisted_direct(const FormData& f, const specials::Character& chi, const TestFunction& phi,
                              double tol = 1e-12);

// One nonholomorphic term b(n)=1 of L_f(φ) in both forms (nested Laplace / incomplete gamma).
struct NonholTerm {
  cplx nested;
  cplx direct;
  double err = 0.0;
};
NonholTerm nonhol_term(double k, long n, long M, const TestFunction& phi, double tol = 1e-12);

// L(s, f, φ) = L_f(φ_s) from the integral split at 1/√N, with g = f|_k W_N.
LValue lseries_s(const FormData& f, const FormData& g, const TestFunction& phi, cplx s, double tol = 1e-12);
LValue lseries_s(const FormData& f, const TestFunction& phi, cplx s, double tol = 1e-12);

// Σ a(n)Γ(s, 2πn t₀)(2πn)^{−s} + i^k Σ a(n)Γ(k−s, 2πn/t₀)(2πn)^{s−k} over n ≠ 0.
struct BfkValue {
  cplx value;
  double trunc_err = 0.0;
  long n_terms = 0;
};
BfkValue bfk_lseries_detail(const FormData& f, cplx s, double t0, double tol = 1e-14);
cplx bfk_lseries(const FormData& f, cplx s, double t0);

// Σ_{n≥1} a(n) n^{−s} = L_f(I_s), I_s(x) = (2π)^s x^{s−1}/Γ(s).
struct ClassicalValue {
  cplx value;
  double tail_bound = 0.0;
  double alpha = 0.0;  // fitted polynomial growth exponent
  long n_terms = 0;
};
ClassicalValue classical_value(const FormData& f, cplx s, double tol = 1e-12);
// Single-threaded reference summation.
ClassicalValue classical_value_serial(const FormData& f, cplx s, double tol = 1e-12);
// The test function I_s.
TestFunction classical_test_function(cplx s);

}  // namespace maass::lseries
