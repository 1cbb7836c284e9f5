#include "maass/form.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace maass::form {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

double log_or_neg_inf(double x) { return x > 0 ? std::log(x) : -kInf; }

}  // namespace

FormData::FormData(FormSpec spec) {
  if (spec.level < 1) throw DomainError("FormData: level must be positive");
  if (spec.period < 1) throw DomainError("FormData: period must be positive");
  if (spec.n0 < 0) throw DomainError("FormData: n0 must be nonnegative");
  if (!(spec.growth_C > 0)) throw DomainError("FormData: growth_C must be positive");
  if (spec.weight2 % 2 != 0 && spec.level % 4 != 0)
    throw DomainError("FormData: half-integral weight requires 4 | N");
  if (spec.psi.modulus() == 1 && spec.level != 1) spec.psi = specials::trivial_character(spec.level);
  if (spec.psi.modulus() != spec.level) throw DomainError("FormData: character modulus must equal the level");
  for (const auto& [n, c] : spec.a) {
    if (n < -spec.n0) throw DomainError("FormData: a(n) stored below -n0");
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw DomainError("FormData: non-finite coefficient");
  }
  for (const auto& [n, c] : spec.b) {
    if (n >= 0) throw DomainError("FormData: b(n) requires n < 0");
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw DomainError("FormData: non-finite coefficient");
  }
  if (spec.generator.a && spec.generator.limit < 1) throw DomainError("FormData: generator limit must be ≥ 1");
  double A = spec.amplitude_floor;
  auto fold = [&](long n, cplx c) {
    A = std::max(A, std::abs(c) * std::exp(-spec.growth_C * std::sqrt(double(std::abs(n)))));
  };
  for (const auto& [n, c] : spec.a) fold(n, c);
  for (const auto& [n, c] : spec.b) fold(n, c);
  amplitude_ = A;
  s_ = std::make_shared<const FormSpec>(std::move(spec));
}

long FormData::a_limit() const {
  long lim = s_->a.empty() ? -s_->n0 - 1 : s_->a.rbegin()->first;
  if (has_generator()) lim = std::max(lim, s_->generator.limit);
  return lim;
}

long FormData::b_limit() const { return s_->b.empty() ? 0 : -s_->b.begin()->first; }

cplx FormData::a_at(long n) const {
  auto it = s_->a.find(n);
  if (it != s_->a.end()) return it->second;
  if (has_generator() && n >= 1 && n <= s_->generator.limit &&
      (s_->a.empty() || n > s_->a.rbegin()->first))
    return s_->generator.a(n);
  return 0.0;
}

double exp_sum_tail(double log_amp, double C, double p, double beta, long m0) {
  if (log_amp == -kInf) return 0.0;
  if (m0 < 1) m0 = 1;
  const double m = double(m0);
  if (C / (2.0 * std::sqrt(m)) + std::max(p, 0.0) / m > 0.5 * beta) return kInf;
  const double h = log_amp + C * std::sqrt(m) + p * std::log(m) - beta * m;
  return std::exp(h) / (-std::expm1(-0.5 * beta));
}

long exp_sum_required_start(double log_amp, double C, double p, double beta, double tol, long m_min) {
  if (m_min < 1) m_min = 1;
  if (log_amp == -kInf) return m_min;
  if (!(beta > 0)) throw DomainError("exp_sum_required_start: β must be positive");
  const long cap = 1L << 50;
  auto decays = [&](long m) {
    const double md = double(m);
    return C / (2.0 * std::sqrt(md)) + std::max(p, 0.0) / md <= 0.5 * beta;
  };
  long lo = m_min;
  if (!decays(lo)) {
    long hi = lo;
    while (!decays(hi)) {
      if (hi > cap) return cap;
      hi *= 2;
    }
    while (hi - lo > 1) {
      long mid = lo + (hi - lo) / 2;
      if (decays(mid)) hi = mid;
      else lo = mid;
    }
    lo = hi;
  }
  if (exp_sum_tail(log_amp, C, p, beta, lo) <= tol) return lo;
  long hi = lo;
  while (exp_sum_tail(log_amp, C, p, beta, hi) > tol) {
    if (hi > cap) return cap;
    hi *= 2;
  }
  while (hi - lo > 1) {
    long mid = lo + (hi - lo) / 2;
    if (exp_sum_tail(log_amp, C, p, beta, mid) <= tol) hi = mid;
    else lo = mid;
  }
  return hi;
}

namespace {

// Tail model for one part of the expansion: Σ_{m≥m0} exp(log_amp + C√m + p ln m − βm),
// with the bound only valid from m_valid on.
struct TailModel {
  double log_amp;
  double C;
  double p;
  double beta;
  long m_valid = 1;

  double bound(long m0) const {
    if (log_amp == -kInf) return 0.0;
    if (m0 < m_valid) return kInf;
    return exp_sum_tail(log_amp, C, p, beta, m0);
  }
  long required(double tol) const {
    return exp_sum_required_start(log_amp, C, p, beta, tol, m_valid);
  }
};

EvalResult eval_impl(const FormData& f, cplx z, double tol_abs, double tol_rel, bool delta, bool exhaust) {
  const double y = z.imag();
  if (!(y > 0)) throw DomainError("eval: Im z must be positive");
  const double M = double(f.period());
  const double k = f.weight();
  const double beta = 2 * kPi * y / M;
  const double C = f.growth_C();
  const double logA = f.finite() ? -kInf : log_or_neg_inf(f.amplitude());
  const cplx two_pi_i_over_M(0.0, 2 * kPi / M);
  const double zabs_fac = std::log(2 * kPi * std::abs(z) / M);

  // Holomorphic-part tails: f itself, and the n-weighted derivative part.
  const TailModel tail_a{logA, C, 0.0, beta};
  const TailModel tail_ad{logA + zabs_fac, C, 1.0, beta};
  // Nonholomorphic part: Γ(1−k, X) ≤ ρ X^{−k} e^{−X}, ρ = 1 (k ≥ 0) or 2 for X ≥ −2k.
  const double X_per_m = 4 * kPi * y / M;
  const long m_x0 = k >= 0 ? 1 : std::max(1L, long(std::ceil(-2.0 * k / X_per_m)));
  const double rho_log = k >= 0 ? 0.0 : std::log(2.0);
  const TailModel tail_b{logA + rho_log - k * std::log(X_per_m), C, -k, beta, m_x0};
  const TailModel tail_bd{tail_b.log_amp + zabs_fac, C, 1.0 - k, beta, m_x0};

  auto part_bound = [&](const TailModel& base, const TailModel& deriv, long m0) {
    if (!delta) return base.bound(m0);
    return 0.5 * std::abs(k) * base.bound(m0) + deriv.bound(m0);
  };

  cplx value = 0.0, deriv_sum = 0.0;
  double sabs = 0.0;
  long nterms = 0;
  auto threshold = [&] { return exhaust ? -1.0 : 0.5 * std::max(tol_abs, tol_rel * sabs); };

  auto add_a = [&](long n, cplx c) {
    if (c == 0.0) return;
    const cplx e = std::exp(two_pi_i_over_M * double(n) * z);
    const cplx t = c * e;
    value += t;
    sabs += std::abs(t);
    if (delta) {
      const cplx d = two_pi_i_over_M * double(n) * z * t;
      deriv_sum += d;
      sabs += std::abs(d);
    }
    ++nterms;
  };

  // Holomorphic part.
  bool done = false;
  long last = -f.n0() - 1;
  for (const auto& [n, c] : f.a()) {
    add_a(n, c);
    last = n;
    if (n >= 0 && !f.finite() && part_bound(tail_a, tail_ad, n + 1) <= threshold()) {
      done = true;
      break;
    }
  }
  if (!done && f.has_generator()) {
    for (long n = std::max(last + 1, 1L); n <= f.generator().limit; ++n) {
      add_a(n, f.generator().a(n));
      last = n;
      if (part_bound(tail_a, tail_ad, n + 1) <= threshold()) {
        done = true;
        break;
      }
    }
  }
  double tail_total = 0.0;
  const long a_start = std::max(last, f.a_limit()) + 1;
  if (done) {
    tail_total += part_bound(tail_a, tail_ad, last + 1);
  } else {
    const double tb = part_bound(tail_a, tail_ad, a_start);
    if (!exhaust && tb > threshold()) {
      long req = (delta ? std::max(tail_a.required(threshold() / std::max(1.0, std::abs(k))),
                                   tail_ad.required(threshold() / 2))
                        : tail_a.required(threshold()));
      throw InsufficientDataError("eval: holomorphic tail bound not reachable with stored coefficients",
                                  std::max(req - 1, a_start));
    }
    tail_total += tb;
  }

  // Nonholomorphic part, |n| ascending.
  if (!f.b().empty()) {
    bool bdone = false;
    long lastm = 0;
    for (auto it = f.b().rbegin(); it != f.b().rend(); ++it) {
      const long n = it->first;
      const cplx c = it->second;
      const long m = -n;
      lastm = m;
      if (c != 0.0) {
        const double X = -4 * kPi * double(n) * y / M;
        const cplx g = specials::upper_gamma(1.0 - k, X);
        const cplx e = std::exp(two_pi_i_over_M * double(n) * z);
        const cplx t = c * g * e;
        value += t;
        sabs += std::abs(t);
        if (delta) {
          const cplx d = two_pi_i_over_M * double(n) * z * t;
          deriv_sum += d;
          sabs += std::abs(d);
        }
        ++nterms;
      }
      if (!f.finite() && part_bound(tail_b, tail_bd, m + 1) <= threshold()) {
        bdone = true;
        break;
      }
    }
    const double tb = part_bound(tail_b, tail_bd, lastm + 1);
    if (!exhaust && !bdone && tb > threshold()) {
      long req = tail_b.required(threshold());
      throw InsufficientDataError("eval: nonholomorphic tail bound not reachable with stored coefficients",
                                  std::max(req - 1, lastm + 1));
    }
    tail_total += tb;
  }

  EvalResult r;
  r.value = delta ? 0.5 * k * value + deriv_sum : value;
  r.tail_bound = tail_total;
  r.n_terms = nterms;
  return r;
}

}  // namespace

EvalResult eval_detail(const FormData& f, cplx z, double tol_abs, double tol_rel) {
  return eval_impl(f, z, tol_abs, tol_rel, false, false);
}

EvalResult eval_all_terms(const FormData& f, cplx z) { return eval_impl(f, z, 0.0, 0.0, false, true); }

EvalResult delta_k_eval_detail(const FormData& f, cplx z, double tol_abs, double tol_rel) {
  return eval_impl(f, z, tol_abs, tol_rel, true, false);
}

cplx eval(const FormData& f, cplx z, double tol) { return eval_detail(f, z, tol).value; }

cplx delta_k_eval(const FormData& f, cplx z, double tol) { return delta_k_eval_detail(f, z, tol).value; }

FormData twist(const FormData& f, const specials::Character& chi) {
  if (f.period() != 1) throw DomainError("twist: iterated twists are not supported (period ≠ 1)");
  const long D = chi.modulus();
  if (std::gcd(D, f.level()) != 1) throw DomainError("twist: gcd(D, N) must be 1");
  const specials::Character chibar = specials::conj(chi);
  std::vector<cplx> tau(D);
  double tau_max = 0.0;
  for (long r = 0; r < D; ++r) {
    tau[r] = specials::gauss_sum(chibar, r);
    tau_max = std::max(tau_max, std::abs(tau[r]));
  }
  auto tau_of = [tau, D](long n) {
    long r = n % D;
    if (r < 0) r += D;
    return tau[r];
  };
  FormSpec s = f.spec();
  s.period = D;
  s.a.clear();
  s.b.clear();
  for (const auto& [n, c] : f.a()) {
    const cplx t = c * tau_of(n);
    if (std::abs(t) > 0) s.a[n] = t;
  }
  for (const auto& [n, c] : f.b()) {
    const cplx t = c * tau_of(n);
    if (std::abs(t) > 0) s.b[n] = t;
  }
  s.amplitude_floor = std::max(f.spec().amplitude_floor, tau_max * f.amplitude());
  if (f.has_generator()) {
    auto gen = f.generator().a;
    s.generator.a = [gen, tau_of](long n) { return gen(n) * tau_of(n); };
  }
  return FormData(std::move(s));
}

FormData linear_combination(cplx alpha, const FormData& f, cplx beta, const FormData& g) {
  if (f.weight2() != g.weight2() || f.level() != g.level() || f.period() != g.period() ||
      f.psi().index() != g.psi().index())
    throw DomainError("linear_combination: incompatible forms");
  if (f.has_generator() || g.has_generator())
    throw DomainError("linear_combination: generator-backed forms are not supported");
  FormSpec s = f.spec();
  s.n0 = std::max(f.n0(), g.n0());
  s.growth_C = std::max(f.growth_C(), g.growth_C());
  s.a.clear();
  s.b.clear();
  for (const auto& [n, c] : f.a()) s.a[n] += alpha * c;
  for (const auto& [n, c] : g.a()) s.a[n] += beta * c;
  for (const auto& [n, c] : f.b()) s.b[n] += alpha * c;
  for (const auto& [n, c] : g.b()) s.b[n] += beta * c;
  s.amplitude_floor = std::abs(alpha) * f.amplitude() + std::abs(beta) * g.amplitude();
  s.finite = f.finite() && g.finite();
  return FormData(std::move(s));
}

FormData with_a(const FormData& f, long n, cplx value) {
  FormSpec s = f.spec();
  s.a[n] = value;
  return FormData(std::move(s));
}

std::map<long, cplx> shadow_coeffs(const FormData& g) {
  if (g.b().empty()) throw DomainError("shadow_coeffs: empty nonholomorphic part (shadow is zero)");
  if (!g.integral_weight()) throw DomainError("shadow_coeffs: integral weight required");
  const double k = 2.0 - g.weight();
  if (k < 2 || k != std::floor(k)) throw DomainError("shadow_coeffs: requires k ≥ 2 integral");
  std::map<long, cplx> out;
  for (const auto& [n, c] : g.b()) {
    const long m = -n;
    out[m] = -std::conj(c) * std::pow(4 * kPi * double(m), k - 1);
  }
  return out;
}

GrowthReport validate_growth(const FormData& f) {
  double A0 = 1.0;
  auto consider_small = [&](long n, cplx c) {
    if (std::abs(n) <= 1) A0 = std::max(A0, std::abs(c));
  };
  for (const auto& [n, c] : f.a()) consider_small(n, c);
  for (const auto& [n, c] : f.b()) consider_small(n, c);
  double C = 0.0;
  auto fit = [&](long n, cplx c) {
    if (std::abs(n) < 2 || c == 0.0) return;
    C = std::max(C, std::log(std::abs(c) / A0) / std::sqrt(double(std::abs(n))));
  };
  for (const auto& [n, c] : f.a()) fit(n, c);
  for (const auto& [n, c] : f.b()) fit(n, c);
  return {C, C <= f.growth_C()};
}

}  // namespace maass::form
