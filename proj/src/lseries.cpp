#include "maass/lseries.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "maass/parallel.hpp"
#include "maass/quadrature.hpp"

namespace maass::lseries {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

double log0(double x) { return x > 0 ? std::log(x) : -kInf; }

cplx i_pow(double k) { return std::exp(cplx(0.0, 0.5 * kPi * k)); }

// A coefficient source: the form's own a(n), b(n), optionally multiplied by w(n)
// and read with a different period (used by the direct twist path).
struct Source {
  const FormData& f;
  long M;
  std::function<cplx(long)> mult;  // empty: 1
  double amplitude;

  cplx w(long n) const { return mult ? mult(n) : cplx(1.0); }
};

struct PartResult {
  parallel::Neumaier<cplx> sum;
  double sabs = 0.0;
  double tail = 0.0;
  double quad_err = 0.0;
  long n_terms = 0;
};

[[noreturn]] void not_in_domain(const std::string& why) {
  throw MembershipError("lseries: test function not in the convergence domain of f (" + why + ")", "f");
}

// Σ_m (terms from m0 on) bounded through a reference Laplace value at m_ref:
// (L|ψ|)(β_u m) ≤ (L|ψ|)(β_u m_ref)·e^{−β_u c1 (m − m_ref)}.
double ratio_tail(double log_amp, double C, double p, double log_L_ref, double rate, long m_ref, long m0) {
  if (log_L_ref == -kInf || log_amp == -kInf) return 0.0;
  if (!(rate > 0)) return kInf;
  return form::exp_sum_tail(log_amp + log_L_ref + rate * double(m_ref), C, p, rate, m0);
}

long ratio_required(double log_amp, double C, double p, double log_L_ref, double rate, long m_ref, double tol,
                    long m_min) {
  if (!(rate > 0)) return m_min;
  return form::exp_sum_required_start(log_amp + log_L_ref + rate * double(m_ref), C, p, rate, tol, m_min);
}

// Holomorphic part Σ a(n)·[(Lφ)(u)] or, with delta, Σ a(n)·[(k/2)(Lφ)(u) − u(Lφ₂)(u)], u = 2πn/M.
PartResult holomorphic_part(const Source& src, const TestFunction& phi, double tol, bool delta,
                            const double& sabs_other) {
  const FormData& f = src.f;
  const double k = f.weight();
  const double M = double(src.M);
  const double c1 = phi.support().first;
  const double rate = 2 * kPi * c1 / M;
  const double C = f.growth_C();
  const double logA = f.finite() ? -kInf : log0(src.amplitude);
  const double qtol = std::min(1e-13, tol);
  const TestFunction phi2 = testfn::shift_s(phi, 2.0);

  PartResult r;
  long m_ref = 0;
  double logL_ref = -kInf, logL2_ref = -kInf;
  bool have_ref = false;

  auto tail_from = [&](long m0) {
    if (logA == -kInf) return 0.0;
    if (!have_ref) return kInf;
    if (!delta) return ratio_tail(logA, C, 0.0, logL_ref, rate, m_ref, m0);
    return ratio_tail(logA + log0(0.5 * std::abs(k)), C, 0.0, logL_ref, rate, m_ref, m0) +
           ratio_tail(logA + std::log(2 * kPi / M), C, 1.0, logL2_ref, rate, m_ref, m0);
  };
  auto threshold = [&] { return 0.5 * tol * (r.sabs + sabs_other); };

  auto add = [&](long n, cplx c) {
    const cplx a = c * src.w(n);
    const double u = 2 * kPi * double(n) / M;
    const auto lp = testfn::laplace_pair(phi, u, qtol);
    if (!std::isfinite(lp.abs_value)) not_in_domain("(L|φ|)(" + std::to_string(u) + ") diverges");
    cplx term;
    double tabs, terr;
    double L2abs = 0.0;
    if (!delta) {
      term = a * lp.value;
      tabs = std::abs(a) * lp.abs_value;
      terr = std::abs(a) * lp.err;
    } else {
      const auto lp2 = testfn::laplace_pair(phi2, u, qtol);
      if (!std::isfinite(lp2.abs_value)) not_in_domain("(L|φ₂|) diverges");
      term = a * (0.5 * k * lp.value - u * lp2.value);
      tabs = std::abs(a) * (0.5 * std::abs(k) * lp.abs_value + std::abs(u) * lp2.abs_value);
      terr = std::abs(a) * (0.5 * std::abs(k) * lp.err + std::abs(u) * lp2.err);
      L2abs = lp2.abs_value;
    }
    r.sum.add(term);
    r.sabs += tabs;
    r.quad_err += terr;
    ++r.n_terms;
    if (n >= 0) {
      m_ref = n;
      logL_ref = log0(lp.abs_value);
      logL2_ref = log0(L2abs);
      have_ref = true;
    }
  };

  bool done = false;
  long last = -f.n0() - 1;
  for (const auto& [n, c] : f.a()) {
    if (c != 0.0) add(n, c);
    last = n;
    if (n >= 0 && !f.finite() && have_ref && tail_from(n + 1) <= threshold()) {
      done = true;
      break;
    }
  }
  if (!done && f.has_generator()) {
    for (long n = std::max(last + 1, 1L); n <= f.generator().limit; ++n) {
      const cplx c = f.generator().a(n);
      if (c != 0.0) add(n, c);
      last = n;
      if (have_ref && tail_from(n + 1) <= threshold()) {
        done = true;
        break;
      }
    }
  }
  if (done) {
    r.tail = tail_from(last + 1);
    return r;
  }
  if (f.finite()) return r;
  if (!(rate > 0)) not_in_domain("support reaches 0, the coefficient series cannot be certified");
  const long start = std::max(last, f.a_limit()) + 1;
  r.tail = tail_from(start);
  if (!(r.tail <= threshold())) {
    long req = start;
    if (have_ref) req = ratio_required(logA + (delta ? log0(0.5 * std::abs(k) + 2 * kPi / M) : 0.0), C,
                                       delta ? 1.0 : 0.0, std::max(logL_ref, logL2_ref), rate, m_ref,
                                       threshold(), start);
    throw InsufficientDataError("lseries: holomorphic tail bound not reachable with stored coefficients",
                                std::max(req - 1, start));
  }
  return r;
}

struct NestedValue {
  cplx value;      // (2v)^{1−k} ∫₀^∞ (Lψ)(v(2t+1))(1+t)^{−k} dt  [plain], or the δ combination
  double abs = 0;  // same with |ψ|
  double err = 0;
};

// Nonholomorphic term for b(n) = 1, v = −2πn/M > 0, via the nested Laplace integral.
NestedValue nested_term(double k, double v, const TestFunction& phi, bool delta, double tol) {
  const double c1 = phi.support().first;
  if (!(c1 > 0)) not_in_domain("support reaches 0 on the nonholomorphic side");
  const TestFunction psi = testfn::shift_s(phi, 2.0 - k);
  const TestFunction psi3 = testfn::shift_s(phi, 3.0 - k);
  const double qtol = std::min(1e-13, tol);
  quad::Options o;
  o.rel_tol = tol;
  o.decay_rate = 2 * v * c1;
  auto integrand = [&](double t) {
    const double u = v * (2 * t + 1);
    const double w = std::pow(1 + t, -k);
    const auto lp = testfn::laplace_pair(psi, u, qtol);
    std::array<cplx, 4> out{lp.value * w, lp.abs_value * w, 0.0, 0.0};
    if (delta) {
      const auto lp3 = testfn::laplace_pair(psi3, u, qtol);
      out[2] = lp3.value * w;
      out[3] = lp3.abs_value * w;
    }
    return out;
  };
  const auto res = quad::integrate(integrand, 0.0, kInf, o);
  const double pre = std::pow(2 * v, 1 - k);
  NestedValue nv;
  if (!delta) {
    nv.value = pre * res.value[0];
    nv.abs = pre * std::abs(res.value[1]);
    nv.err = pre * res.err;
  } else {
    nv.value = pre * (0.5 * k * res.value[0] + v * res.value[2]);
    nv.abs = pre * (0.5 * std::abs(k) * std::abs(res.value[1]) + v * std::abs(res.value[3]));
    nv.err = pre * (0.5 * std::abs(k) + v) * res.err;
  }
  return nv;
}

// The same term as ∫ Γ(1−k, 2vy) e^{vy} φ(y) [k/2 + vy] dy.
std::pair<cplx, double> direct_term(double k, double v, const TestFunction& phi, bool delta, double tol) {
  const auto [lo, hi] = phi.support();
  if (!std::isfinite(hi)) throw DomainError("lseries: direct nonholomorphic form needs compact support");
  quad::Options o;
  o.rel_tol = tol;
  o.knots = phi.knots();
  auto integrand = [&](double y) -> cplx {
    const cplx g = specials::upper_gamma(cplx(1 - k, 0), 2 * v * y) * std::exp(v * y);
    const cplx p = phi(y);
    return delta ? g * p * (0.5 * k + v * y) : g * p;
  };
  const auto res = quad::integrate(integrand, lo, hi, o);
  return {res.value, res.err};
}

PartResult nonholomorphic_part(const Source& src, const TestFunction& phi, double tol, bool delta,
                               const double& sabs_other) {
  const FormData& f = src.f;
  PartResult r;
  if (f.b().empty()) return r;
  const double k = f.weight();
  const double M = double(src.M);
  const double c1 = phi.support().first;
  if (!(c1 > 0)) not_in_domain("support reaches 0 on the nonholomorphic side");
  const double C = f.growth_C();
  const double logA = f.finite() ? -kInf : log0(src.amplitude);
  const double qtol = std::min(1e-13, tol);
  const TestFunction psi1 = testfn::shift_s(phi, 1.0 - k);
  const TestFunction psi2 = testfn::shift_s(phi, 2.0 - k);

  // |Γ(1−k, X)| ≤ ρ X^{−k} e^{−X}: ρ = 1 for k ≥ 0, ρ = 2 once X ≥ −2k. With X = 2vy the
  // term is ≤ |b| ρ (2v)^{−k} (L|φ_{1−k}|)(v), v = 2πm/M.
  const double rate = 2 * kPi * c1 / M;
  const long m_valid = k >= 0 ? 1 : std::max(1L, long(std::ceil(-2.0 * k * M / (4 * kPi * c1))));
  const double log_base = logA + (k >= 0 ? 0.0 : std::log(2.0)) - k * std::log(4 * kPi / M);
  long m_ref = 0;
  double logL1 = -kInf, logL2 = -kInf;
  bool have_ref = false;

  auto tail_from = [&](long m0) {
    if (logA == -kInf) return 0.0;
    if (!have_ref || m0 < m_valid) return kInf;
    double t = ratio_tail(log_base + (delta ? log0(0.5 * std::abs(k)) : 0.0), C, -k, logL1, rate, m_ref, m0);
    if (delta) t += ratio_tail(log_base + std::log(2 * kPi / M), C, 1.0 - k, logL2, rate, m_ref, m0);
    return t;
  };
  auto threshold = [&] { return 0.5 * tol * (r.sabs + sabs_other); };

  bool done = false;
  long last = 0;
  for (auto it = f.b().rbegin(); it != f.b().rend(); ++it) {
    const long n = it->first;
    const long m = -n;
    const cplx c = it->second * src.w(n);
    last = m;
    if (c == 0.0) continue;
    const double v = 2 * kPi * double(m) / M;
    const NestedValue nv = nested_term(k, v, phi, delta, tol);
    const auto [dv, derr] = direct_term(k, v, phi, delta, tol);
    const double scale = std::max(nv.abs, 1e-300);
    if (std::abs(nv.value - dv) > 1e-8 * scale + 10 * (nv.err + derr))
      throw AccuracyError("lseries: nonholomorphic term cross-check failed at n = " + std::to_string(n), nv.value,
                          std::abs(nv.value - dv));
    r.sum.add(c * nv.value);
    r.sabs += std::abs(c) * nv.abs;
    r.quad_err += std::abs(c) * (nv.err + std::abs(nv.value - dv));
    ++r.n_terms;
    m_ref = m;
    logL1 = log0(testfn::laplace_abs(psi1, 2 * kPi * double(m) / M, qtol));
    logL2 = log0(testfn::laplace_abs(psi2, 2 * kPi * double(m) / M, qtol));
    have_ref = true;
    if (!f.finite() && tail_from(m + 1) <= threshold()) {
      done = true;
      break;
    }
  }
  if (f.finite()) return r;
  const long start = done ? last + 1 : f.b_limit() + 1;
  r.tail = tail_from(start);
  if (!done && !(r.tail <= threshold())) {
    long req = start;
    if (have_ref)
      req = ratio_required(log_base + log0(0.5 * std::abs(k) + 2 * kPi / M), C, std::max(-k, 1.0 - k),
                           std::max(logL1, logL2), rate, m_ref, threshold(), std::max(start, m_valid));
    throw InsufficientDataError("lseries: nonholomorphic tail bound not reachable with stored coefficients",
                                std::max(req - 1, start));
  }
  return r;
}

LValue series_core(const Source& src, const TestFunction& phi, double tol, bool delta) {
  if (!(tol > 0)) throw DomainError("lseries: tolerance must be positive");
  double sabs_b = 0.0, sabs_a = 0.0;
  PartResult a = holomorphic_part(src, phi, tol, delta, sabs_b);
  sabs_a = a.sabs;
  PartResult b = nonholomorphic_part(src, phi, tol, delta, sabs_a);
  LValue out;
  out.value = a.sum.value() + b.sum.value();
  out.trunc_err = a.tail + b.tail;
  out.quad_err = a.quad_err + b.quad_err;
  out.n_terms = a.n_terms + b.n_terms;
  out.abs_series = a.sabs + b.sabs;
  out.method = Method::Series;
  if (!std::isfinite(out.abs_series) || !std::isfinite(out.value.real()) || !std::isfinite(out.value.imag()))
    not_in_domain("the absolute series diverges");
  return out;
}

Source own(const FormData& f) { return Source{f, f.period(), {}, f.amplitude()}; }

// ∫ over [lo, hi] of F(y)·w(y) with F = f or δ_k f evaluated at iy; second slot integrates the eval tail bound.
LValue integral_core(const FormData& f, double lo, double hi,
                     const std::function<cplx(double)>& weight, const std::vector<double>& knots, double tol,
                     bool delta) {
  if (!std::isfinite(hi)) throw DomainError("lseries: the integral side needs compactly supported φ");
  LValue out;
  out.method = Method::Integral;
  if (!(hi > lo)) return out;
  quad::Options o;
  o.rel_tol = tol;
  o.knots = knots;
  long max_terms = 0;
  auto integrand = [&](double y) {
    const cplx z(0.0, y);
    const form::EvalResult e =
        delta ? form::delta_k_eval_detail(f, z, 0.0, 1e-16) : form::eval_detail(f, z, 0.0, 1e-16);
    max_terms = std::max(max_terms, e.n_terms);
    const cplx w = weight(y);
    return std::array<cplx, 2>{e.value * w, e.tail_bound * std::abs(w)};
  };
  const auto res = quad::integrate(integrand, lo, hi, o);
  out.value = res.value[0];
  out.trunc_err = std::abs(res.value[1]);
  out.quad_err = res.err;
  out.n_terms = max_terms;
  return out;
}

}  // namespace

LValue lseries_series(const FormData& f, const TestFunction& phi, double tol) {
  return series_core(own(f), phi, tol, false);
}

LValue lseries_delta(const FormData& f, const TestFunction& phi, double tol) {
  return series_core(own(f), phi, tol, true);
}

LValue lseries_integral(const FormData& f, const TestFunction& phi, double tol) {
  const auto [lo, hi] = phi.support();
  return integral_core(f, lo, hi, [&](double y) { return phi(y); }, phi.knots(), tol, false);
}

LValue lseries_delta_integral(const FormData& f, const TestFunction& phi, double tol) {
  const auto [lo, hi] = phi.support();
  return integral_core(f, lo, hi, [&](double y) { return phi(y); }, phi.knots(), tol, true);
}

LValue lseries_twisted(const FormData& f, const specials::Character& chi, const TestFunction& phi, double tol) {
  return lseries_series(form::twist(f, chi), phi, tol);
}

LValue lseries_twisted_delta(const FormData& f, const specials::Character& chi, const TestFunction& phi,
                             double tol) {
  return lseries_delta(form::twist(f, chi), phi, tol);
}

LValue lseries_twisted_direct(const FormData& f, const specials::Character& chi, const TestFunction& phi,
                              double tol) {
  if (f.period() != 1) throw DomainError("twist: iterated twists are not supported (period ≠ 1)");
  const long D = chi.modulus();
  if (specials::gcd(D, f.level()) != 1) throw DomainError("twist: gcd(D, N) must be 1");
  const specials::Character chibar = specials::conj(chi);
  // |τ_χ̄(n)| ≤ Σ_u |χ(u)| = φ(D)
  const double amp = f.amplitude() * double(specials::euler_phi(D));
  Source src{f, D, [chibar](long n) { return specials::gauss_sum(chibar, n); }, amp};
  return series_core(src, phi, tol, false);
}

NonholTerm nonhol_term(double k, long n, long M, const TestFunction& phi, double tol) {
  if (n >= 0) throw DomainError("nonhol_term: n must be negative");
  const double v = -2 * kPi * double(n) / double(M);
  const NestedValue nv = nested_term(k, v, phi, false, tol);
  const auto [dv, derr] = direct_term(k, v, phi, false, tol);
  return {nv.value, dv, nv.err + derr};
}

LValue lseries_s(const FormData& f, const FormData& g, const TestFunction& phi, cplx s, double tol) {
  if (!phi.compact()) throw DomainError("lseries_s: φ must be compactly supported");
  if (f.weight2() != g.weight2() || f.level() != g.level())
    throw DomainError("lseries_s: f and g must share weight and level");
  const long N = f.level();
  const double k = f.weight();
  const double cut = 1.0 / std::sqrt(double(N));
  const auto [lo, hi] = phi.support();

  // Upper half: ∫_{1/√N}^∞ f(ix) φ(x) x^{s−1} dx.
  std::vector<double> knots = phi.knots();
  knots.push_back(cut);
  const LValue upper =
      integral_core(f, std::max(lo, cut), hi, [&](double x) { return phi(x) * std::pow(x, s - 1.0); },
                    knots, tol, false);

  // Lower half mapped by x ↦ 1/(Nx): c·N^{1−k/2−s} ∫_{1/√N}^∞ g(ix)(φ|_{1−k}W_N)(x) x^{−s} dx.
  const TestFunction psi = testfn::slash_W(phi, 1.0 - k, N);
  const auto [plo, phi_hi] = psi.support();
  std::vector<double> pknots = psi.knots();
  pknots.push_back(cut);
  const LValue lower =
      integral_core(g, std::max(plo, cut), phi_hi, [&](double x) { return psi(x) * std::pow(x, -s); },
                    pknots, tol, false);
  const cplx ck = f.integral_weight() ? i_pow(k) : cplx(1.0);
  const cplx pre = ck * std::pow(double(N), 1.0 - 0.5 * k - s);

  LValue out;
  out.method = Method::Integral;
  out.value = upper.value + pre * lower.value;
  out.trunc_err = upper.trunc_err + std::abs(pre) * lower.trunc_err;
  out.quad_err = upper.quad_err + std::abs(pre) * lower.quad_err;
  out.n_terms = std::max(upper.n_terms, lower.n_terms);
  return out;
}

LValue lseries_s(const FormData& f, const TestFunction& phi, cplx s, double tol) {
  if (f.level() != 1) throw DomainError("lseries_s: pass the companion g = f|W_N explicitly for level N > 1");
  return lseries_s(f, f, phi, s, tol);
}

BfkValue bfk_lseries_detail(const FormData& f, cplx s, double t0, double tol) {
  if (!f.weakly_holomorphic()) throw DomainError("bfk_lseries: f must be weakly holomorphic");
  if (!f.integral_weight() || f.weight2() % 4 != 0) throw DomainError("bfk_lseries: weight must be an even integer");
  if (f.level() != 1 || f.period() != 1) throw DomainError("bfk_lseries: level 1 forms only");
  if (!(t0 > 0)) throw DomainError("bfk_lseries: t0 must be positive");
  auto it0 = f.a().find(0);
  if (it0 != f.a().end() && it0->second != 0.0)
    throw DomainError("bfk_lseries: constant term a(0) ≠ 0 (the n = 0 term is not defined)");
  const double k = f.weight();
  const cplx ik = i_pow(k);
  const double twopi = 2 * kPi;

  parallel::Neumaier<cplx> sum;
  double sabs = 0.0;
  long nterms = 0;
  auto term = [&](long n, cplx c) {
    const double x = twopi * double(n);
    // (2πn)^{−s} on the principal branch (n < 0: arg = π).
    const cplx logx = n > 0 ? cplx(std::log(x), 0.0) : cplx(std::log(-x), kPi);
    const cplx t1 = specials::upper_gamma(s, x * t0) * std::exp(-s * logx);
    const cplx t2 = ik * specials::upper_gamma(k - s, x / t0) * std::exp((s - k) * logx);
    const cplx t = c * (t1 + t2);
    sum.add(t);
    sabs += std::abs(t);
    ++nterms;
  };

  // |Γ(σ', x)| ≤ ρ x^{σ'−1} e^{−x}: ρ = 1 for σ' ≤ 1, else 2 once x ≥ 2(σ' − 1).
  const double s1 = s.real(), s2 = k - s.real();
  const double C = f.growth_C();
  const double logA = f.finite() ? -kInf : log0(f.amplitude());
  const double b1 = twopi * t0, b2 = twopi / t0;
  auto start_valid = [&](double sig, double b) {
    return sig <= 1 ? 1L : std::max(1L, long(std::ceil(2 * (sig - 1) / b)));
  };
  const long m_valid = std::max(start_valid(s1, b1), start_valid(s2, b2));
  auto tail_from = [&](long m0) {
    if (logA == -kInf) return 0.0;
    if (m0 < m_valid) return kInf;
    // term_m ≤ A e^{C√m} [ρ t0^{σ−1} (2πm)^{−1} e^{−2πm t0} + ρ t0^{1+σ−k} (2πm)^{−1} e^{−2πm/t0}]
    const double l1 = logA + (s1 <= 1 ? 0.0 : std::log(2.0)) + (s1 - 1) * std::log(t0) - std::log(twopi);
    const double l2 = logA + (s2 <= 1 ? 0.0 : std::log(2.0)) + (1 - s2) * std::log(1 / t0) - std::log(twopi);
    return form::exp_sum_tail(l1, C, -1.0, b1, m0) + form::exp_sum_tail(l2, C, -1.0, b2, m0);
  };
  auto threshold = [&] { return tol * std::max(sabs, 1e-300); };

  bool done = false;
  long last = -f.n0() - 1;
  for (const auto& [n, c] : f.a()) {
    last = n;
    if (n == 0 || c == 0.0) continue;
    term(n, c);
    if (n > 0 && !f.finite() && tail_from(n + 1) <= threshold()) {
      done = true;
      break;
    }
  }
  if (!done && f.has_generator()) {
    for (long n = std::max(last + 1, 1L); n <= f.generator().limit; ++n) {
      last = n;
      term(n, f.generator().a(n));
      if (tail_from(n + 1) <= threshold()) {
        done = true;
        break;
      }
    }
  }
  BfkValue out;
  out.value = sum.value();
  out.n_terms = nterms;
  if (f.finite()) return out;
  const long start = done ? last + 1 : f.a_limit() + 1;
  out.trunc_err = tail_from(start);
  if (!done && !(out.trunc_err <= threshold()))
    throw InsufficientDataError("bfk_lseries: stored coefficients do not reach the truncation point", start);
  return out;
}

cplx bfk_lseries(const FormData& f, cplx s, double t0) { return bfk_lseries_detail(f, s, t0).value; }

TestFunction classical_test_function(cplx s) {
  return testfn::scale(testfn::trunc_power(s, 0.0), std::exp(s * std::log(2 * kPi)) / specials::gamma(s))
      .with_id("I_s");
}

namespace {

struct ClassicalPlan {
  double A1 = 0;
  double alpha = 0;
  long N = 0;
  double tail = 0;
};

// Fits |a(n)| ≤ A1·n^α over the known range (the generator sampled up to 10⁴) and
// picks the cutoff N with A1 Σ_{n>N} n^{α−σ} ≤ A1 N^{α+1−σ}/(σ−α−1) ≤ tol.
ClassicalPlan plan_classical(const FormData& f, cplx s, double tol) {
  if (!f.weakly_holomorphic() || f.n0() > 0) throw DomainError("classical_value: f must be a holomorphic cusp form");
  auto it0 = f.a().find(0);
  if (it0 != f.a().end() && it0->second != 0.0) throw DomainError("classical_value: a(0) must vanish");
  ClassicalPlan p;
  std::vector<std::pair<long, double>> mags;
  for (const auto& [n, c] : f.a())
    if (n >= 1 && c != 0.0) mags.push_back({n, std::abs(c)});
  if (f.has_generator()) {
    const long from = f.a().empty() ? 1 : std::max(1L, f.a().rbegin()->first + 1);
    const long to = std::min(f.generator().limit, std::max(from, 10000L));
    for (long n = from; n <= to; ++n) {
      const double m = std::abs(f.generator().a(n));
      if (m > 0) mags.push_back({n, m});
    }
  }
  if (mags.empty()) return p;
  p.A1 = mags.front().first == 1 ? mags.front().second : 0.0;
  for (const auto& [n, m] : mags) p.A1 = std::max(p.A1, n == 1 ? m : 0.0);
  if (p.A1 == 0) p.A1 = mags.front().second;
  for (const auto& [n, m] : mags)
    if (n >= 2) p.alpha = std::max(p.alpha, std::log(m / p.A1) / std::log(double(n)));
  if (f.finite()) {
    p.N = mags.back().first;
    return p;
  }
  const double sigma = s.real();
  const double e = sigma - p.alpha - 1;
  if (!(e > 0))
    throw DomainError("classical_value: Re s = " + std::to_string(sigma) +
                      " is not beyond the abscissa α + 1 = " + std::to_string(p.alpha + 1));
  // N^{−e} A1/e ≤ tol
  const double Nreal = std::pow(p.A1 / (e * tol), 1.0 / e);
  if (!(Nreal < 4e9)) throw InsufficientDataError("classical_value: cutoff beyond addressable range", long(4e9));
  p.N = std::max(1L, long(std::ceil(Nreal)));
  p.tail = p.A1 * std::pow(double(p.N), -e) / e;
  if (p.N > f.a_limit())
    throw InsufficientDataError("classical_value: coefficients needed up to n = " + std::to_string(p.N), p.N);
  return p;
}

}  // namespace

ClassicalValue classical_value(const FormData& f, cplx s, double tol) {
  const ClassicalPlan p = plan_classical(f, s, tol);
  const TestFunction I = classical_test_function(s);
  // (L I_s)(u) = (2π)^s u^{−s}: evaluate the closed form once and scale per term.
  const cplx L1 = testfn::laplace(I, 2 * kPi);
  constexpr long kChunk = 1L << 16;
  const long nchunks = (p.N + kChunk - 1) / kChunk;
  std::vector<cplx> partial(nchunks);
  const bool real_s = s.imag() == 0.0;
  parallel::for_each_index(nchunks, [&](long ci) {
    parallel::Neumaier<cplx> acc;
    const long from = ci * kChunk + 1, to = std::min(p.N, (ci + 1) * kChunk);
    for (long n = from; n <= to; ++n) {
      const cplx a = f.a_at(n);
      if (a == 0.0) continue;
      acc.add(real_s ? a * std::pow(double(n), -s.real()) : a * std::exp(-s * std::log(double(n))));
    }
    partial[ci] = acc.value();
  });
  parallel::Neumaier<cplx> total;
  for (const cplx& v : partial) total.add(v);
  return {L1 * total.value(), p.tail, p.alpha, p.N};
}

ClassicalValue classical_value_serial(const FormData& f, cplx s, double tol) {
  const ClassicalPlan p = plan_classical(f, s, tol);
  const TestFunction I = classical_test_function(s);
  parallel::Neumaier<cplx> acc;
  for (long n = 1; n <= p.N; ++n) {
    const cplx a = f.a_at(n);
    if (a == 0.0) continue;
    acc.add(a * testfn::laplace(I, 2 * kPi * double(n)));
  }
  return {acc.value(), p.tail, p.alpha, p.N};
}

}  // namespace maass::lseries
