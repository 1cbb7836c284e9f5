#include "maass/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <valarray>

#include "maass/parallel.hpp"
#include "maass/qseries.hpp"
#include "maass/quadrature.hpp"

namespace maass::verify {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kFloor = 1e-30;

cplx i_pow(double k) { return std::exp(cplx(0.0, 0.5 * kPi * k)); }

double rel_residual(cplx a, cplx b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), kFloor}); }

FEReport make_report(cplx lhs, cplx rhs, cplx pre, const TestFunction& phi, const Character& chi, bool delta,
                     double tol) {
  FEReport r;
  r.lhs = lhs;
  r.rhs = rhs;
  r.abs_residual = std::abs(lhs - rhs);
  r.rel_residual = rel_residual(lhs, rhs);
  r.prefactor = pre;
  r.phi_id = phi.id();
  r.chi_id = chi.id();
  r.D = chi.modulus();
  r.chi_index = chi.index();
  r.delta = delta;
  r.tol = tol;
  r.pass = r.rel_residual <= tol;
  return r;
}

// Both sides of one functional equation pair, with prefactor pre (for the δ_k line: delta_sign·pre).
FEPair fe_pair(const FormData& f, const FormData& g, const Character& chi, const Character& chi_g,
               const TestFunction& phi, cplx pre, double tol, double delta_sign) {
  const double k = f.weight();
  const FormData fchi = form::twist(f, chi);
  const FormData gchi = form::twist(g, chi_g);
  const TestFunction psi = testfn::slash_W(phi, 2.0 - k, f.level());
  lseries::LValue lf, lfd, lg, lgd;
  lf = lseries::lseries_series(fchi, phi);
  lfd = lseries::lseries_delta(fchi, phi);
  try {
    lg = lseries::lseries_series(gchi, psi);
    lgd = lseries::lseries_delta(gchi, psi);
  } catch (const MembershipError& e) {
    throw MembershipError(std::string(e.what()) + " [φ|W_N on the g side]", "g");
  }
  FEPair out;
  out.plain = make_report(lf.value, pre * lg.value, pre, phi, chi, false, tol);
  out.delta = make_report(lfd.value, delta_sign * pre * lgd.value, delta_sign * pre, phi, chi, true, tol);
  return out;
}

void check_pair(const FormData& f, const FormData& g, const Character& chi) {
  if (f.weight2() != g.weight2() || f.level() != g.level())
    throw DomainError("fe_residual: f and g must share weight and level");
  if (specials::gcd(chi.modulus(), f.level()) != 1) throw DomainError("fe_residual: gcd(D, N) must be 1");
}

}  // namespace

FEPair fe_residual_int(const FormData& f, const FormData& g, const Character& chi, const TestFunction& phi,
                       double tol, double delta_sign) {
  if (!f.integral_weight()) throw DomainError("fe_residual_int: weight must be integral");
  check_pair(f, g, chi);
  const long N = f.level(), D = chi.modulus();
  const double k = f.weight();
  const cplx pre = i_pow(k) * chi(-N) * f.psi()(D) * std::pow(double(N), 1.0 - 0.5 * k);
  return fe_pair(f, g, chi, specials::conj(chi), phi, pre, tol, delta_sign);
}

FEPair fe_residual_half(const FormData& f, const FormData& g, const Character& chi, const TestFunction& phi,
                        double tol, double delta_sign) {
  if (f.integral_weight()) throw DomainError("fe_residual_half: weight must be half-integral");
  check_pair(f, g, chi);
  const long N = f.level(), D = chi.modulus();
  if (N % 4 != 0) throw DomainError("fe_residual_half: 4 must divide N");
  if (D % 2 == 0) throw DomainError("fe_residual_half: D must be odd (ε_D undefined)");
  const double k = f.weight();
  const long e = (f.weight2() - 1) / 2;  // k − 1/2
  const double psiD_m1 = specials::kronecker(-1, D);
  const double sign = (e % 2 == 0) ? 1.0 : psiD_m1;
  const cplx pre = sign * double(specials::kronecker(N, D)) * chi(-N) * f.psi()(D) / specials::epsilon_d(D) *
                   std::pow(double(N), 1.0 - 0.5 * k);
  const Character chi_g = specials::product(specials::conj(chi), specials::quadratic_character(D));
  return fe_pair(f, g, chi, chi_g, phi, pre, tol, delta_sign);
}

FEPair fe_residual(const FormData& f, const FormData& g, const Character& chi, const TestFunction& phi, double tol) {
  if (f.integral_weight()) return fe_residual_int(f, g, chi, phi, tol > 0 ? tol : kDefaultTolInt);
  return fe_residual_half(f, g, chi, phi, tol > 0 ? tol : kDefaultTolHalf);
}

std::vector<long> sweep_moduli(long N, bool half_integral, const SweepOptions& o) {
  if (o.dcap < 1) throw DomainError("converse_sweep: D-cap must be ≥ 1");
  std::vector<long> Ds;
  const long hi = o.primitive_only ? o.dcap : std::max(1L, N * N - 1);
  for (long D = 1; D <= hi; ++D) {
    if (specials::gcd(D, N) != 1) continue;
    if (half_integral && D % 2 == 0) continue;
    Ds.push_back(D);
  }
  return Ds;
}

namespace {

struct Task {
  Character chi;
  size_t phi;
};

std::vector<Task> sweep_tasks(const FormData& f, const std::vector<TestFunction>& battery, const SweepOptions& o,
                              std::vector<long>& Ds) {
  Ds = sweep_moduli(f.level(), !f.integral_weight(), o);
  std::vector<Task> tasks;
  for (long D : Ds)
    for (const auto& chi : specials::characters_mod(D)) {
      if (o.primitive_only && !chi.is_primitive()) continue;
      for (size_t p = 0; p < battery.size(); ++p) tasks.push_back({chi, p});
    }
  return tasks;
}

SweepReport assemble(std::vector<FEPair>& pairs, const SweepOptions& o, std::vector<long> Ds) {
  SweepReport r;
  r.moduli = std::move(Ds);
  for (auto& p : pairs) {
    r.reports.push_back(p.plain);
    if (o.include_delta) r.reports.push_back(p.delta);
  }
  r.n_checks = long(r.reports.size());
  for (const auto& rep : r.reports) {
    if (!rep.pass && !r.witness) r.witness = rep;
    if (rep.rel_residual >= r.worst.rel_residual) r.worst = rep;
  }
  r.consistent = !r.witness.has_value();
  return r;
}

double sweep_tol(const FormData& f, const SweepOptions& o) {
  if (o.tol > 0) return o.tol;
  return f.integral_weight() ? kDefaultTolInt : kDefaultTolHalf;
}

}  // namespace

SweepReport converse_sweep(const FormData& f, const FormData& g, const std::vector<TestFunction>& battery,
                           const SweepOptions& o) {
  std::vector<long> Ds;
  const auto tasks = sweep_tasks(f, battery, o, Ds);
  const double tol = sweep_tol(f, o);
  std::vector<FEPair> pairs(tasks.size());
  parallel::for_each_index(long(tasks.size()), [&](long i) {
    pairs[i] = fe_residual(f, g, tasks[i].chi, battery[tasks[i].phi], tol);
  });
  return assemble(pairs, o, std::move(Ds));
}

SweepReport converse_sweep_serial(const FormData& f, const FormData& g, const std::vector<TestFunction>& battery,
                                  const SweepOptions& o) {
  std::vector<long> Ds;
  const auto tasks = sweep_tasks(f, battery, o, Ds);
  const double tol = sweep_tol(f, o);
  std::vector<FEPair> pairs;
  for (const auto& t : tasks) pairs.push_back(fe_residual(f, g, t.chi, battery[t.phi], tol));
  return assemble(pairs, o, std::move(Ds));
}

FormData derivative_lift(const FormData& f) {
  if (!f.weakly_holomorphic()) throw DomainError("derivative_lift: f must be weakly holomorphic");
  if (f.weight2() % 2 != 0) throw DomainError("derivative_lift: integral weight required");
  const int k = 2 - f.weight2() / 2;
  if (k < 2 || k % 2 != 0) throw DomainError("derivative_lift: weight of f must be 2 − k with k even, k ≥ 2");
  if (f.has_generator()) throw DomainError("derivative_lift: generator-backed forms are not supported");
  form::FormSpec s = f.spec();
  s.weight2 = 2 * k;
  s.a.clear();
  for (const auto& [n, c] : f.a()) {
    if (n == 0) continue;  // (2π·0)^{k−1} = 0
    s.a[n] = std::pow(2 * kPi * double(n), double(k - 1)) * c;
  }
  // The polynomial factor is absorbed by a slightly larger growth constant.
  s.growth_C = f.growth_C() + 1.0;
  s.amplitude_floor = 0.0;
  return FormData(std::move(s));
}

namespace {

// j-th derivative of Σ c_i (x − center)^{lo+i} at x, and the sum of absolute term sizes.
std::pair<long double, long double> piece_derivative(const testfn::LaurentPiece& p, int j, double x) {
  long double v = 0, scale = 0;
  for (size_t i = 0; i < p.coeffs.size(); ++i) {
    const long e = p.lo + long(i);
    long double fall = 1;
    for (int t = 0; t < j; ++t) fall *= (e - t);
    if (fall == 0 || p.coeffs[i] == 0) continue;
    const long double term = p.coeffs[i] * fall * std::pow((long double)x - p.center, (long double)(e - j));
    v += term;
    scale += std::fabs(term);
  }
  return {v, scale};
}

int spline_smoothness(const testfn::Spline& s) {
  constexpr int kCap = 64;
  int order = kCap;
  const auto& P = s.pieces;
  auto compare = [&](const testfn::LaurentPiece* left, const testfn::LaurentPiece* right, double x) {
    for (int j = 0; j <= kCap; ++j) {
      long double l = 0, ls = 0, r = 0, rs = 0;
      if (left) std::tie(l, ls) = piece_derivative(*left, j, x);
      if (right) std::tie(r, rs) = piece_derivative(*right, j, x);
      const long double sc = std::max({ls, rs, (long double)1e-300});
      if (std::fabs(l - r) > 1e-9L * sc) return j - 1;
    }
    return kCap;
  };
  for (size_t i = 0; i < P.size(); ++i) {
    const bool joined_left = i > 0 && P[i - 1].b == P[i].a;
    if (!joined_left && P[i].a > 0) order = std::min(order, compare(nullptr, &P[i], P[i].a));
    const bool joined_right = i + 1 < P.size() && P[i + 1].a == P[i].b;
    order = std::min(order, compare(&P[i], joined_right ? &P[i + 1] : nullptr, P[i].b));
  }
  return order;
}

}  // namespace

int smoothness_order(const TestFunction& phi) {
  constexpr int kCap = 64;
  int order = std::visit(
      [&](const auto& b) -> int {
        using B = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<B, testfn::Bump>) {
          return kCap;
        } else if constexpr (std::is_same_v<B, testfn::Spline>) {
          return spline_smoothness(b);
        } else if constexpr (std::is_same_v<B, testfn::TruncPower>) {
          return (b.T == 0 && !b.below) ? kCap : -1;
        } else {
          int m = kCap;
          for (const auto& [c, t] : b.terms)
            if (c != 0.0) m = std::min(m, smoothness_order(*t));
          return m;
        }
      },
      phi.base());
  for (const auto& op : phi.ops())
    if (op.kind == testfn::Op::Derivative) order = order < 0 ? order : std::max(-1, order - op.m);
  return order;
}

PointwiseReport alpha_pointwise_check(const TestFunction& phi, int k, int samples) {
  if (k < 2 || k % 2 != 0) throw DomainError("alpha_identity_check: k must be even and ≥ 2");
  if (!phi.compact()) throw DomainError("alpha_identity_check: φ must be compactly supported");
  const auto [lo, hi] = phi.support();
  if (!(lo > 0)) throw DomainError("alpha_identity_check: support must stay away from 0");
  const TestFunction dphi = testfn::derivative(phi, k - 1);
  const TestFunction rhs_fn = testfn::derivative(testfn::slash_W(phi, 2.0 - k, 1), k - 1);
  // Sample the common support [1/hi, 1/lo] away from images of knots.
  std::vector<double> bad;
  for (double t : phi.knots())
    if (t > 0) bad.push_back(1.0 / t);
  const double a = 1.0 / hi, b = 1.0 / lo;
  PointwiseReport r;
  for (int i = 0; i < samples; ++i) {
    double x = a + (b - a) * (i + 0.5) / samples;
    for (double t : bad)
      if (std::abs(x - t) < 1e-9 * b) x += 1e-6 * (b - a);
    const cplx lhs = std::pow(x, -double(k)) * dphi(1.0 / x);
    const cplx rhs = -rhs_fn(x);
    r.max_abs_diff = std::max(r.max_abs_diff, std::abs(lhs - rhs));
    r.scale = std::max({r.scale, std::abs(lhs), std::abs(rhs)});
  }
  r.samples = samples;
  r.residual = r.max_abs_diff / std::max(r.scale, 1e-300);
  return r;
}

AlphaReport alpha_identity_check(const TestFunction& phi, int k, double tol) {
  if (k < 2 || k % 2 != 0) throw DomainError("alpha_identity_check: k must be even and ≥ 2");
  if (smoothness_order(phi) < k - 2)
    throw DomainError("alpha_identity_check: φ must be C^{k−2} for the L-series transfer (smoothness " +
                      std::to_string(smoothness_order(phi)) + ")");
  AlphaReport r;
  r.k = k;
  r.tol = tol;
  // Probe forms of weight 2 − k: a single a(1) = 1, and the first coefficients of 1/Δ.
  std::vector<FormData> probes;
  {
    form::FormSpec s;
    s.weight2 = 2 * (2 - k);
    s.a[1] = 1.0;
    s.finite = true;
    probes.emplace_back(s);
    form::FormSpec t = qseries::fixture("inv_delta", 8).spec();
    t.weight2 = 2 * (2 - k);
    t.finite = true;
    probes.emplace_back(t);
  }
  const TestFunction dphi = testfn::derivative(phi, k - 1);
  for (const auto& f : probes) {
    const cplx lhs = lseries::lseries_series(derivative_lift(f), phi, 1e-13).value;
    const cplx rhs = lseries::lseries_series(f, dphi, 1e-13).value;
    const double res = rel_residual(lhs, rhs);
    if (res >= r.transfer_residual) {
      r.transfer_residual = res;
      r.transfer_lhs = lhs;
      r.transfer_rhs = rhs;
    }
  }
  const PointwiseReport p = alpha_pointwise_check(phi, k);
  r.pointwise_residual = p.residual;
  r.samples = p.samples;
  r.pass = r.transfer_residual <= tol && r.pointwise_residual <= tol;
  return r;
}

double gf_term(long n, int k, const TestFunction& phi) {
  // Σ_l (k−2)!/l! (4πn)^{1−k+l} ∫ e^{−2πny} y^l φ(y) dy
  const double x = 4 * kPi * double(n);
  double sum = 0, fact_ratio = std::tgamma(double(k - 1));  // (k−2)!/l! at l = 0
  for (int l = 0; l <= k - 2; ++l) {
    if (l > 0) fact_ratio /= l;
    const cplx mom = testfn::laplace(testfn::shift_s(phi, double(l + 1)), 2 * kPi * double(n), 1e-14);
    sum += fact_ratio * std::pow(x, double(1 - k + l)) * mom.real();
  }
  return sum;
}

TermReport gf_term_check(long n, int k, const TestFunction& phi, double tol) {
  if (k < 2 || k % 2 != 0) throw DomainError("gf_term_check: k must be even and ≥ 2");
  if (n < 1) throw DomainError("gf_term_check: n must be positive");
  if (!phi.compact()) throw DomainError("gf_term_check: φ must be compactly supported");
  const auto [lo, hi] = phi.support();
  const double x = 4 * kPi * double(n);
  quad::Options o;
  o.rel_tol = 1e-14;
  o.knots = phi.knots();
  auto integrand = [&](double y) -> cplx {
    return specials::upper_gamma(double(k - 1), x * y) * std::exp(0.5 * x * y) * phi(y);
  };
  TermReport r;
  r.n = n;
  r.k = k;
  r.lhs = std::pow(x, double(1 - k)) * quad::integrate(integrand, lo, hi, o).value;
  r.rhs = gf_term(n, k, phi);
  r.abs_residual = std::abs(r.lhs - r.rhs);
  r.rel_residual = rel_residual(r.lhs, r.rhs);
  r.tol = tol;
  r.pass = r.rel_residual <= tol;
  return r;
}

double mf_bessel_term(long n, int k, long N, const TestFunction& phi) {
  // (8πn)^{(1−k)/2} N^{−1} Σ_l 2^{l+1}(k−2)!/l! ∫ φ(y) y^{k−2−l} ∫ u^{2−k+2l} J_{k−1}(√(8πn)u) e^{−u²/y} du dy
  const auto [lo, hi] = phi.support();
  const double c = std::sqrt(8 * kPi * double(n));
  std::vector<double> coef(k - 1);
  double fr = std::tgamma(double(k - 1));
  for (int l = 0; l <= k - 2; ++l) {
    if (l > 0) fr /= l;
    coef[l] = std::pow(2.0, l + 1) * fr;
  }
  quad::Options inner;
  inner.rel_tol = 1e-12;
  inner.max_intervals = 8000;
  quad::Options outer;
  outer.rel_tol = 1e-11;
  outer.knots = phi.knots();
  auto outer_f = [&](double y) -> double {
    const cplx p = phi(y);
    if (p == 0.0) return 0.0;
    auto inner_f = [&](double u) -> double {
      const double J = specials::bessel_J(double(k - 1), c * u) * std::exp(-u * u / y);
      double s = 0, upow = std::pow(u, double(2 - k)), ypow = std::pow(y, double(k - 2));
      for (int l = 0; l <= k - 2; ++l) {
        s += coef[l] * ypow * upow;
        upow *= u * u;
        ypow /= y;
      }
      return s * J;
    };
    const auto res = quad::integrate(inner_f, 0.0, std::sqrt(80.0 * y), inner);
    return p.real() * res.value;
  };
  const double val = quad::integrate(outer_f, lo, hi, outer).value;
  return std::pow(8 * kPi * double(n), 0.5 * (1 - k)) / double(N) * val;
}

double mf_whittaker_term(long n, int k, long N, const TestFunction& phi) {
  // (8πn)^{−k/2} / (N(k−1)) Σ_l 2^{l+1} ∫ φ(y) y^{k/2−1} e^{−πny} M_{1−k/2+l,(k−1)/2}(2πny) dy
  const auto [lo, hi] = phi.support();
  quad::Options o;
  o.rel_tol = 1e-12;
  o.knots = phi.knots();
  const double mu = 0.5 * (k - 1);
  auto f = [&](double y) -> double {
    const cplx p = phi(y);
    if (p == 0.0) return 0.0;
    const double z = 2 * kPi * double(n) * y;
    double s = 0;
    for (int l = 0; l <= k - 2; ++l) s += std::pow(2.0, l + 1) * specials::whittaker_M(1 - 0.5 * k + l, mu, z);
    return p.real() * std::pow(y, 0.5 * k - 1) * std::exp(-0.5 * z) * s;
  };
  const double val = quad::integrate(f, lo, hi, o).value;
  return std::pow(8 * kPi * double(n), -0.5 * k) / (double(N) * (k - 1)) * val;
}

TermReport mf_term_check(long n, int k, long N, const TestFunction& phi, double tol) {
  if (k < 2 || k % 2 != 0) throw DomainError("mf_term_check: k must be even and ≥ 2");
  if (n < 1 || N < 1) throw DomainError("mf_term_check: n and N must be positive");
  if (!phi.compact() || !(phi.support().first > 0)) throw DomainError("mf_term_check: φ must be in S_c(R+)");
  TermReport r;
  r.n = n;
  r.k = k;
  r.N = N;
  r.lhs = mf_bessel_term(n, k, N, phi);
  r.rhs = mf_whittaker_term(n, k, N, phi);
  r.rhs_printed = r.rhs / std::sqrt(8 * kPi * double(n));
  r.printed_ratio = std::abs(r.rhs_printed) / std::max(std::abs(r.rhs), 1e-300);
  r.abs_residual = std::abs(r.lhs - r.rhs);
  r.rel_residual = rel_residual(r.lhs, r.rhs);
  r.tol = tol;
  r.pass = r.rel_residual <= tol;
  return r;
}

SummationReport summation_residual(const FormData& f, const FormData& g_plus, const FormData& gW_plus,
                                   const TestFunction& phi, double tol) {
  if (!f.integral_weight()) throw DomainError("summation_residual: integral weight required");
  const int k = f.weight2() / 2;
  if (k < 2 || k % 2 != 0) throw DomainError("summation_residual: k must be even and ≥ 2");
  if (g_plus.weight2() != 2 * (2 - k) || gW_plus.weight2() != 2 * (2 - k))
    throw DomainError("summation_residual: g⁺ data must have weight 2 − k");
  if (!g_plus.weakly_holomorphic() || !gW_plus.weakly_holomorphic())
    throw DomainError("summation_residual: pass holomorphic parts only");
  if (!f.weakly_holomorphic() || f.n0() > 0) throw DomainError("summation_residual: f must be a cusp form");
  const long N = f.level();
  SummationReport r;
  r.tol = tol;
  r.lhs_g = lseries::lseries_series(g_plus, phi).value;
  // Σ c(n) ∫ φ(y)(−iy)^{k−2} e^{−2πn/(Ny)} dy = (−i)^{k−2} N · L⁺_{gW}(φ|_k W_N)  (substitute y = 1/(Nx)).
  const cplx lw = lseries::lseries_series(gW_plus, testfn::slash_W(phi, double(k), N)).value;
  r.lhs_gW = std::pow(double(N), 0.5 * k - 1) * std::pow(cplx(0, -1), double(k - 2)) * double(N) * lw;
  r.lhs = r.lhs_g - r.lhs_gW;
  cplx rhs = 0;
  for (const auto& [n, a] : f.a()) {
    if (n <= 0 || a == 0.0) continue;
    rhs += std::conj(a) * (gf_term(n, k, phi) + double(N) * mf_whittaker_term(n, k, N, phi));
    ++r.rhs_terms;
  }
  r.rhs = rhs;
  r.abs_residual = std::abs(r.lhs - r.rhs);
  r.rel_residual = r.abs_residual / std::max({std::abs(r.lhs_g), std::abs(r.lhs_gW), std::abs(r.rhs), kFloor});
  r.pass = r.rel_residual <= tol;
  return r;
}

FormData shadow_consistent_form(const FormData& f, const FormData& g_plus) {
  const int k = f.weight2() / 2;
  if (!f.integral_weight() || k < 2 || k % 2 != 0) throw DomainError("shadow_consistent_form: k must be even ≥ 2");
  if (g_plus.weight2() != 2 * (2 - k)) throw DomainError("shadow_consistent_form: g⁺ must have weight 2 − k");
  if (!f.finite()) throw DomainError("shadow_consistent_form: f must carry finite coefficient data");
  form::FormSpec s = g_plus.spec();
  s.b.clear();
  for (const auto& [n, a] : f.a()) {
    if (n <= 0 || a == 0.0) continue;
    s.b[-n] = -std::conj(a) * std::pow(4 * kPi * double(n), double(1 - k));
  }
  s.finite = g_plus.finite() && f.finite();
  s.amplitude_floor = 0.0;
  return FormData(std::move(s));
}

DecompReport decomp_check(const FormData& f, const FormData& g_plus, const TestFunction& phi, double tol) {
  const FormData g = shadow_consistent_form(f, g_plus);
  const int k = f.weight2() / 2;
  const auto [lo, hi] = phi.support();
  DecompReport r;
  r.tol = tol;
  r.lg = lseries::lseries_series(g, phi).value;
  r.lg_plus = lseries::lseries_series(g_plus, phi).value;
  quad::Options o;
  o.rel_tol = 1e-13;
  o.knots = phi.knots();
  cplx shadow = 0;
  for (const auto& [n, a] : f.a()) {
    if (n <= 0 || a == 0.0) continue;
    const double x = 4 * kPi * double(n);
    auto integrand = [&](double y) -> cplx {
      return specials::upper_gamma(double(k - 1), x * y) * std::exp(0.5 * x * y) * phi(y);
    };
    shadow += a * std::pow(x, double(1 - k)) * quad::integrate(integrand, lo, hi, o).value;
  }
  r.shadow_sum = shadow;
  const cplx rhs = r.lg_plus - std::conj(shadow);
  r.abs_residual = std::abs(r.lg - rhs);
  r.rel_residual = r.abs_residual / std::max({std::abs(r.lg), std::abs(r.lg_plus), std::abs(shadow), kFloor});
  r.pass = r.rel_residual <= tol;
  return r;
}

}  // namespace maass::verify
