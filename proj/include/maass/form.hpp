#pragma once

#include <functional>
#include <map>
#include <memory>

#include "maass/errors.hpp"
#include "maass/specials.hpp"

namespace maass::form {

// Optional closed-form source for holomorphic coefficients beyond the stored map.
struct CoefficientGenerator {
  std::function<cplx(long)> a;  // a(n) for n ≥ 1
  long limit = 0;               // largest index the generator may be asked for
};

struct FormSpec {
  int weight2 = 0;
  long level = 1;
  specials::Character psi;  // defaults to the trivial character mod level
  long period = 1;
  long n0 = 0;
  std::map<long, cplx> a;
  std::map<long, cplx> b;
  double growth_C = 1.0;
  double amplitude_floor = 0.0;  // lower bound imposed on the fitted amplitude A
  bool finite = false;           // stored coefficients are the complete expansion
  CoefficientGenerator generator;
};

// Fourier data of a (candidate) harmonic Maass form:
// f(z) = Σ_{n≥-n0} a(n) e(nz/M) + Σ_{n<0} b(n) Γ(1-k, -4πny/M) e(nz/M).
class FormData {
 public:
  FormData() : FormData(FormSpec{}) {}
  explicit FormData(FormSpec spec);

  int weight2() const { return s_->weight2; }
  double weight() const { return 0.5 * s_->weight2; }
  bool integral_weight() const { return s_->weight2 % 2 == 0; }
  long level() const { return s_->level; }
  const specials::Character& psi() const { return s_->psi; }
  long period() const { return s_->period; }
  long n0() const { return s_->n0; }
  const std::map<long, cplx>& a() const { return s_->a; }
  const std::map<long, cplx>& b() const { return s_->b; }
  double growth_C() const { return s_->growth_C; }
  // A with |a(n)|, |b(n)| ≤ A e^{C√|n|} on the stored range.
  double amplitude() const { return amplitude_; }
  bool weakly_holomorphic() const { return s_->b.empty(); }
  bool has_generator() const { return static_cast<bool>(s_->generator.a); }
  bool finite() const { return s_->finite; }
  const CoefficientGenerator& generator() const { return s_->generator; }

  // Largest index for which a(n) is known (stored or generated).
  long a_limit() const;
  // Largest |n| stored in b (0 when empty).
  long b_limit() const;
  // a(n) from the map, the generator, or zero inside the known range.
  cplx a_at(long n) const;

  const FormSpec& spec() const { return *s_; }

 private:
  std::shared_ptr<const FormSpec> s_;
  double amplitude_ = 0.0;
};

struct EvalResult {
  cplx value;
  double tail_bound = 0.0;
  long n_terms = 0;
};

// Bound on Σ_{m≥m0} exp(log_amp + C√m + p ln m − βm); +∞ when the summand is not
// yet decreasing geometrically (ratio ≤ e^{−β/2}) from m0 on.
double exp_sum_tail(double log_amp, double C, double p, double beta, long m0);
// Smallest m0 ≥ m_min with exp_sum_tail(...) ≤ tol.
long exp_sum_required_start(double log_amp, double C, double p, double beta, double tol, long m_min = 1);

EvalResult eval_detail(const FormData& f, cplx z, double tol_abs, double tol_rel = 0.0);
EvalResult delta_k_eval_detail(const FormData& f, cplx z, double tol_abs, double tol_rel = 0.0);
// Sums every known coefficient; tail_bound may be +∞.
EvalResult eval_all_terms(const FormData& f, cplx z);
cplx eval(const FormData& f, cplx z, double tol = 1e-13);
cplx delta_k_eval(const FormData& f, cplx z, double tol = 1e-13);

FormData twist(const FormData& f, const specials::Character& chi);

// α f + β g for forms sharing weight, level, period and character.
FormData linear_combination(cplx alpha, const FormData& f, cplx beta, const FormData& g);

// Copy of f with a(n) replaced (used for perturbation controls).
FormData with_a(const FormData& f, long n, cplx value);

std::map<long, cplx> shadow_coeffs(const FormData& g);

struct GrowthReport {
  double C_fit = 0.0;
  bool ok = true;
};
GrowthReport validate_growth(const FormData& f);

}  // namespace maass::form
