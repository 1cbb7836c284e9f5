#pragma once

#include <optional>
#include <string>
#include <vector>

#include "maass/form.hpp"
#include "maass/lseries.hpp"
#include "maass/specials.hpp"
#include "maass/testfn.hpp"

namespace maass::verify {

using form::FormData;
using specials::Character;
using testfn::TestFunction;

struct FEReport {
  cplx lhs, rhs;
  double abs_residual = 0.0;
  double rel_residual = 0.0;  // |lhs − rhs| / max(|lhs|, |rhs|, 1e−30)
  cplx prefactor;
  std::string phi_id, chi_id;
  long D = 1;
  long chi_index = 0;
  bool delta = false;  // the δ_k equation
  double tol = 0.0;
  bool pass = false;
};

struct FEPair {
  FEReport plain;
  FEReport delta;
};

constexpr double kDefaultTolInt = 1e-8;
constexpr double kDefaultTolHalf = 1e-6;

// L_{f_χ}(φ) against i^k χ(−N)ψ(D) N^{1−k/2} L_{g_χ̄}(φ|_{2−k}W_N), and the δ_k companion
// with prefactor delta_sign·i^k·(…) (the true equation has delta_sign = −1).
FEPair fe_residual_int(const FormData& f, const FormData& g, const Character& chi, const TestFunction& phi,
                       double tol = kDefaultTolInt, double delta_sign = -1.0);
// Half-integral weight: ψ_D(−1)^{k−1/2} ψ_D(N) χ(−N)ψ(D) ε_D^{−1} N^{1−k/2} L_{g_{χ̄ψ_D}}(φ|_{2−k}W_N).
FEPair fe_residual_half(const FormData& f, const FormData& g, const Character& chi, const TestFunction& phi,
                        double tol = kDefaultTolHalf, double delta_sign = -1.0);
// Dispatches on the weight; tol ≤ 0 selects the default for the weight.
FEPair fe_residual(const FormData& f, const FormData& g, const Character& chi, const TestFunction& phi,
                   double tol = 0.0);

struct SweepOptions {
  double tol = 0.0;             // ≤ 0: default for the weight
  bool primitive_only = false;  // primitive characters for D ≤ dcap instead of D < N²
  long dcap = 20;
  bool include_delta = true;
};

struct SweepReport {
  std::vector<FEReport> reports;  // deterministic order: D, χ index, φ, plain before δ
  bool consistent = true;
  std::optional<FEReport> witness;  // first failing report
  FEReport worst;                   // largest rel_residual
  long n_checks = 0;
  std::vector<long> moduli;
};

// The D values visited: D < N² with gcd(D, N) = 1 (D = 1 always), odd D only for
// half-integral weight; with primitive_only, 1 ≤ D ≤ dcap.
std::vector<long> sweep_moduli(long N, bool half_integral, const SweepOptions& o);
SweepReport converse_sweep(const FormData& f, const FormData& g, const std::vector<TestFunction>& battery,
                           const SweepOptions& o = {});
// Single-threaded reference with identical output.
SweepReport converse_sweep_serial(const FormData& f, const FormData& g, const std::vector<TestFunction>& battery,
                                  const SweepOptions& o = {});

// f₁ with a₁(n) = (2πn)^{k−1} a(n) for f of weight 2 − k (k even ≥ 2); a(0) drops out.
FormData derivative_lift(const FormData& f);

// Largest m with φ ∈ C^m on (0, ∞) (capped at 64); −1 for discontinuous φ.
int smoothness_order(const TestFunction& phi);

struct AlphaReport {
  int k = 0;
  // (i) L_{f₁}(φ) = L_f(φ^{(k−1)}), worst over the probe forms
  cplx transfer_lhs, transfer_rhs;
  double transfer_residual = 0.0;
  // (ii) x^{−k} φ^{(k−1)}(1/x) = −(φ|_{2−k}W₁)^{(k−1)}(x) on sample points
  double pointwise_residual = 0.0;
  int samples = 0;
  double tol = 0.0;
  bool pass = false;
};

struct PointwiseReport {
  double max_abs_diff = 0.0;
  double scale = 0.0;
  double residual = 0.0;  // max_abs_diff / max(scale, 1e−300)
  int samples = 0;
};

// Assertion (ii) alone; any piecewise smooth compactly supported φ.
PointwiseReport alpha_pointwise_check(const TestFunction& phi, int k, int samples = 100);
// Both assertions; (i) needs φ ∈ C^{k−2} (DomainError otherwise).
AlphaReport alpha_identity_check(const TestFunction& phi, int k, double tol = 1e-9);

struct TermReport {
  long n = 0;
  int k = 0;
  long N = 1;
  cplx lhs, rhs;
  double abs_residual = 0.0;
  double rel_residual = 0.0;
  double tol = 0.0;
  bool pass = false;
  cplx rhs_printed;             // Whittaker side with the constant as printed (mf only)
  double printed_ratio = 0.0;   // |rhs_printed / rhs|
};

// (4πn)^{1−k} ∫Γ(k−1, 4πny) e^{2πny} φ dy against Σ_l (k−2)!/l! (4πn)^{1−k+l} ∫ e^{−2πny} y^l φ dy.
TermReport gf_term_check(long n, int k, const TestFunction& phi, double tol = 1e-10);
// Bessel double integral against the Whittaker closed form (8πn)^{−k/2}/(N(k−1)) Σ_l 2^{l+1} ∫…M(2πny)dy.
TermReport mf_term_check(long n, int k, long N, const TestFunction& phi, double tol = 1e-6);

// Per-n pieces of the summation formula's right-hand side.
double gf_term(long n, int k, const TestFunction& phi);
double mf_bessel_term(long n, int k, long N, const TestFunction& phi);
double mf_whittaker_term(long n, int k, long N, const TestFunction& phi);

struct SummationReport {
  cplx lhs, rhs;
  cplx lhs_g, lhs_gW;  // the two sums on the left
  double abs_residual = 0.0;
  double rel_residual = 0.0;  // relative to max(|lhs_g|, |lhs_gW|, |rhs|)
  long rhs_terms = 0;
  double tol = 0.0;
  bool pass = false;
};

// f: cusp form of weight k (finite coefficient data on the right); g_plus, gW_plus:
// holomorphic parts of g and g|_{2−k}W_N (weight 2 − k).
SummationReport summation_residual(const FormData& f, const FormData& g_plus, const FormData& gW_plus,
                                   const TestFunction& phi, double tol = 1e-8);

// g = g⁺ + Σ c⁻(n)Γ(k−1, −4πny)e(nz) with c⁻(−n) = −conj(a_f(n))(4πn)^{1−k}.
FormData shadow_consistent_form(const FormData& f, const FormData& g_plus);

struct DecompReport {
  cplx lg;          // L_g(φ)
  cplx lg_plus;     // L_g⁺(φ)
  cplx shadow_sum;  // Σ a_f(n)(4πn)^{1−k}∫Γ(k−1,4πny)e^{2πny}φ dy
  double abs_residual = 0.0;
  double rel_residual = 0.0;
  double tol = 0.0;
  bool pass = false;
};
DecompReport decomp_check(const FormData& f, const FormData& g_plus, const TestFunction& phi, double tol = 1e-9);

}  // namespace maass::verify
