#include "maass/testfn.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numbers>

#include <boost/multiprecision/cpp_int.hpp>

#include "maass/quadrature.hpp"
#include "maass/specials.hpp"

namespace maass::testfn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
using Jet = std::vector<cplx>;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string fmt(cplx v) {
  if (v.imag() == 0) return fmt(v.real());
  return "(" + fmt(v.real()) + (v.imag() < 0 ? "" : "+") + fmt(v.imag()) + "i)";
}

cplx cpow(double x, cplx p) {
  if (p == 0.0) return 1.0;
  return std::exp(p * std::log(x));
}

// Image of t under x ↦ 1/(Mx), with 1/0 = ∞ and 1/∞ = 0.
double recip(double t, long M) {
  if (t == 0) return kInf;
  if (std::isinf(t)) return 0.0;
  return 1.0 / (double(M) * t);
}

Jet mul(const Jet& a, const Jet& b) {
  Jet c(a.size(), 0.0);
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0.0)
      for (size_t j = 0; i + j < c.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

// Taylor coefficients of x^p at x0.
Jet power_jet(double x0, cplx p, int order) {
  Jet r(order + 1);
  cplx binom = 1.0;
  const cplx base = cpow(x0, p);
  for (int j = 0; j <= order; ++j) {
    r[j] = binom * base * std::pow(x0, -j);
    binom *= (p - double(j)) / double(j + 1);
  }
  return r;
}

// F(t0 + τ(h)) for τ with zero constant term.
Jet compose(const Jet& F, const Jet& tau) {
  Jet r(tau.size(), 0.0);
  for (int j = int(F.size()) - 1; j >= 0; --j) {
    r = mul(r, tau);
    r[0] += F[j];
  }
  return r;
}

long double laurent_eval(const LaurentPiece& p, long double x) {
  long double s = 0;
  const long double h = x - (long double)p.center;
  for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) s = s * h + *it;
  return s * std::pow(h, (long double)p.lo);
}

const LaurentPiece* find_piece(const Spline& sp, double x) {
  for (const auto& p : sp.pieces)
    if (x >= p.a && x < p.b) return &p;
  return nullptr;
}

Jet bump_jet(const Bump& b, double x, int order) {
  Jet r(order + 1, 0.0);
  if (!(x > b.c1 && x < b.c2)) return r;
  const double w = b.c2 - b.c1;
  // q(x+h) = (x+h−c1)(c2−x−h)
  Jet q(order + 1, 0.0);
  q[0] = (x - b.c1) * (b.c2 - x);
  if (order >= 1) q[1] = b.c1 + b.c2 - 2 * x;
  if (order >= 2) q[2] = -1.0;
  Jet inv(order + 1, 0.0);
  inv[0] = 1.0 / q[0];
  for (int n = 1; n <= order; ++n) {
    cplx s = 0;
    for (int j = 1; j <= std::min(n, 2); ++j) s += q[j] * inv[n - j];
    inv[n] = -s / q[0];
  }
  Jet g(order + 1);
  for (int n = 0; n <= order; ++n) g[n] = -0.25 * w * w * inv[n];
  g[0] += 1.0;
  r[0] = std::exp(g[0]);
  for (int n = 1; n <= order; ++n) {
    cplx s = 0;
    for (int j = 1; j <= n; ++j) s += double(j) * g[j] * r[n - j];
    r[n] = s / double(n);
  }
  return r;
}

Jet spline_jet(const Spline& sp, double x, int order) {
  Jet r(order + 1, 0.0);
  const LaurentPiece* p = find_piece(sp, x);
  if (!p) return r;
  for (int k = 0; k <= order; ++k) {
    long double s = 0;
    for (size_t j = 0; j < p->coeffs.size(); ++j) {
      const long e = p->lo + long(j);
      long double binom = 1;
      for (int i = 0; i < k; ++i) binom *= (long double)(e - i) / (long double)(i + 1);
      if (binom != 0) s += p->coeffs[j] * binom * std::pow((long double)x - p->center, (long double)(e - k));
    }
    r[k] = double(s);
  }
  return r;
}

Jet base_jet(const TestFunction::Base& base, double x, int order) {
  return std::visit(
      [&](const auto& b) -> Jet {
        using B = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<B, Bump>) {
          return bump_jet(b, x, order);
        } else if constexpr (std::is_same_v<B, Spline>) {
          return spline_jet(b, x, order);
        } else if constexpr (std::is_same_v<B, TruncPower>) {
          Jet r(order + 1, 0.0);
          const bool inside = b.below ? x < b.T : x > b.T;
          if (!inside) return r;
          Jet p = power_jet(x, b.s - 1.0, order);
          for (auto& c : p) c *= b.scale;
          return p;
        } else {
          Jet r(order + 1, 0.0);
          for (const auto& [c, f] : b.terms) {
            Jet t = f->jet(x, order);
            for (int j = 0; j <= order; ++j) r[j] += c * t[j];
          }
          return r;
        }
      },
      base);
}

cplx base_eval(const TestFunction::Base& base, double x) {
  return std::visit(
      [&](const auto& b) -> cplx {
        using B = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<B, Bump>) {
          if (!(x > b.c1 && x < b.c2)) return 0.0;
          const double w = b.c2 - b.c1;
          return std::exp(1.0 - w * w / (4.0 * (x - b.c1) * (b.c2 - x)));
        } else if constexpr (std::is_same_v<B, Spline>) {
          const LaurentPiece* p = find_piece(b, x);
          return p ? cplx(double(laurent_eval(*p, x))) : cplx(0.0);
        } else if constexpr (std::is_same_v<B, TruncPower>) {
          const bool inside = b.below ? x < b.T : x > b.T;
          return inside ? b.scale * cpow(x, b.s - 1.0) : cplx(0.0);
        } else {
          cplx s = 0;
          for (const auto& [c, f] : b.terms) s += c * (*f)(x);
          return s;
        }
      },
      base);
}

std::pair<double, double> base_support(const TestFunction::Base& base) {
  return std::visit(
      [](const auto& b) -> std::pair<double, double> {
        using B = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<B, Bump>) {
          return {b.c1, b.c2};
        } else if constexpr (std::is_same_v<B, Spline>) {
          if (b.pieces.empty()) return {1.0, 1.0};
          return {b.pieces.front().a, b.pieces.back().b};
        } else if constexpr (std::is_same_v<B, TruncPower>) {
          return b.below ? std::pair<double, double>{0.0, b.T} : std::pair<double, double>{b.T, kInf};
        } else {
          double lo = kInf, hi = 0;
          for (const auto& t : b.terms) {
            auto [a, c] = t.second->support();
            lo = std::min(lo, a);
            hi = std::max(hi, c);
          }
          if (b.terms.empty()) return {1.0, 1.0};
          return {lo, hi};
        }
      },
      base);
}

std::vector<double> base_knots(const TestFunction::Base& base) {
  return std::visit(
      [](const auto& b) -> std::vector<double> {
        using B = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<B, Bump>) {
          return {b.c1, b.c2};
        } else if constexpr (std::is_same_v<B, Spline>) {
          std::vector<double> k;
          for (const auto& p : b.pieces) {
            k.push_back(p.a);
            k.push_back(p.b);
          }
          return k;
        } else if constexpr (std::is_same_v<B, TruncPower>) {
          return {b.T};
        } else {
          std::vector<double> k;
          for (const auto& t : b.terms) {
            auto kk = t.second->knots();
            k.insert(k.end(), kk.begin(), kk.end());
          }
          return k;
        }
      },
      base);
}

bool has_trunc(const TestFunction::Base& base) {
  if (std::holds_alternative<TruncPower>(base)) return true;
  if (const auto* s = std::get_if<Sum>(&base))
    for (const auto& t : s->terms)
      if (t.second->contains_trunc_power()) return true;
  return false;
}

// Apply fn to every term of a Sum, keeping coefficients.
template <class Fn>
TestFunction map_sum(const Sum& s, const std::string& id, Fn fn) {
  Sum out;
  for (const auto& [c, f] : s.terms) out.terms.push_back({c, std::make_shared<const TestFunction>(fn(*f))});
  return TestFunction(out, id);
}

}  // namespace

TestFunction::TestFunction(Base base, std::string id, std::vector<Op> ops)
    : base_(std::move(base)), ops_(std::move(ops)), id_(std::move(id)) {
  if (const auto* b = std::get_if<Bump>(&base_))
    if (!(b->c1 > 0 && b->c2 > b->c1)) throw DomainError("bump: requires 0 < c1 < c2");
  if (const auto* t = std::get_if<TruncPower>(&base_))
    if (!(t->T >= 0)) throw DomainError("trunc_power: requires T ≥ 0");
}

cplx TestFunction::operator()(double x) const {
  if (!(x > 0)) throw DomainError("test function: x must be positive");
  if (has_derivative_op()) return jet(x, 0)[0];
  cplx fac = 1.0;
  double y = x;
  for (auto it = ops_.rbegin(); it != ops_.rend(); ++it) {
    switch (it->kind) {
      case Op::Shift:
        fac *= cpow(y, it->s - 1.0);
        break;
      case Op::Slash:
        fac *= cpow(double(it->M) * y, -it->a);
        y = 1.0 / (double(it->M) * y);
        break;
      case Op::Scale:
        fac *= it->s;
        break;
      case Op::Derivative:
        break;
    }
  }
  if (fac == 0.0) return 0.0;
  return fac * base_eval(base_, y);
}

std::vector<cplx> TestFunction::jet(double x, int order) const {
  if (!(x > 0)) throw DomainError("test function: x must be positive");
  return jet_level(ops_.size(), x, order);
}

std::vector<cplx> TestFunction::jet_level(size_t level, double x, int order) const {
  if (level == 0) return base_jet(base_, x, order);
  const Op& op = ops_[level - 1];
  switch (op.kind) {
    case Op::Scale: {
      Jet r = jet_level(level - 1, x, order);
      for (auto& c : r) c *= op.s;
      return r;
    }
    case Op::Shift:
      return mul(power_jet(x, op.s - 1.0, order), jet_level(level - 1, x, order));
    case Op::Slash: {
      const double M = double(op.M);
      const double t0 = 1.0 / (M * x);
      // τ(h) = 1/(M(x+h)) − t0 = t0 Σ_{j≥1} (−h/x)^j
      Jet tau(order + 1, 0.0);
      for (int j = 1; j <= order; ++j) tau[j] = t0 * std::pow(-1.0 / x, j);
      Jet inner = compose(jet_level(level - 1, t0, order), tau);
      Jet fac = power_jet(x, -op.a, order);
      const cplx Ma = cpow(M, -op.a);
      for (auto& c : fac) c *= Ma;
      return mul(fac, inner);
    }
    case Op::Derivative: {
      Jet J = jet_level(level - 1, x, order + op.m);
      Jet r(order + 1);
      for (int j = 0; j <= order; ++j) {
        double f = 1;
        for (int i = 1; i <= op.m; ++i) f *= double(j + i);
        r[j] = J[j + op.m] * f;
      }
      return r;
    }
  }
  return Jet(order + 1, 0.0);
}

std::pair<double, double> TestFunction::support() const {
  auto [lo, hi] = base_support(base_);
  for (const auto& op : ops_)
    if (op.kind == Op::Slash) {
      const double nlo = recip(hi, op.M), nhi = recip(lo, op.M);
      lo = nlo;
      hi = nhi;
    }
  return {lo, hi};
}

bool TestFunction::compact() const {
  auto [lo, hi] = support();
  return lo >= 0 && std::isfinite(hi);
}

std::vector<double> TestFunction::knots() const {
  std::vector<double> k = base_knots(base_);
  for (const auto& op : ops_)
    if (op.kind == Op::Slash)
      for (auto& t : k) t = recip(t, op.M);
  std::vector<double> out;
  for (double t : k)
    if (t > 0 && std::isfinite(t)) out.push_back(t);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

TestFunction TestFunction::with_id(std::string id) const {
  TestFunction r = *this;
  r.id_ = std::move(id);
  return r;
}

bool TestFunction::has_derivative_op() const {
  return std::any_of(ops_.begin(), ops_.end(), [](const Op& o) { return o.kind == Op::Derivative; });
}

bool TestFunction::contains_trunc_power() const { return has_trunc(base_); }

TestFunction bump(double c1, double c2) { return TestFunction(Bump{c1, c2}, "bump(" + fmt(c1) + "," + fmt(c2) + ")"); }

TestFunction spline(std::vector<LaurentPiece> pieces, std::string id) {
  std::sort(pieces.begin(), pieces.end(), [](const auto& x, const auto& y) { return x.a < y.a; });
  for (size_t i = 0; i < pieces.size(); ++i) {
    if (!(pieces[i].a >= 0 && pieces[i].b > pieces[i].a)) throw DomainError("spline: pieces need 0 ≤ a < b");
    if (i && pieces[i].a < pieces[i - 1].b) throw DomainError("spline: overlapping pieces");
  }
  return TestFunction(Spline{std::move(pieces)}, std::move(id));
}

TestFunction indicator(double a, double b) {
  return spline({LaurentPiece{a, b, 0, {1.0L}}}, "1[" + fmt(a) + "," + fmt(b) + ")");
}

TestFunction bspline(const std::vector<double>& knots) {
  using boost::multiprecision::cpp_rational;
  using Poly = std::vector<cpp_rational>;
  if (knots.size() < 2) throw DomainError("bspline: needs at least two knots");
  for (size_t i = 0; i + 1 < knots.size(); ++i)
    if (!(knots[i + 1] > knots[i]) || !(knots[i] > 0)) throw DomainError("bspline: knots must be positive and increasing");
  auto exact = [](double v) {
    int e;
    const double m = std::frexp(v, &e);
    const auto mant = static_cast<long long>(std::ldexp(m, 53));
    cpp_rational r(mant);
    e -= 53;
    cpp_rational p = 1;
    for (int i = 0; i < std::abs(e); ++i) p *= 2;
    return e >= 0 ? cpp_rational(r * p) : cpp_rational(r / p);
  };
  const size_t n = knots.size() - 1;  // number of intervals
  std::vector<cpp_rational> t;
  for (double k : knots) t.push_back(exact(k));
  auto padd = [](Poly a, const Poly& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    return a;
  };
  // (α x + β)·p
  auto plin = [](const Poly& p, const cpp_rational& al, const cpp_rational& be) {
    Poly r(p.size() + 1, 0);
    for (size_t i = 0; i < p.size(); ++i) {
      r[i + 1] += al * p[i];
      r[i] += be * p[i];
    }
    return r;
  };
  // N[i][j]: polynomial of N_{i,deg} on interval j
  std::vector<std::vector<Poly>> N(n, std::vector<Poly>(n));
  for (size_t i = 0; i < n; ++i) N[i][i] = Poly{1};
  for (size_t p = 1; p < n; ++p) {
    std::vector<std::vector<Poly>> M(n - p, std::vector<Poly>(n));
    for (size_t i = 0; i + p < n; ++i) {
      const cpp_rational d1 = t[i + p] - t[i], d2 = t[i + p + 1] - t[i + 1];
      for (size_t j = 0; j < n; ++j) {
        Poly a = N[i][j].empty() ? Poly{} : plin(N[i][j], 1 / d1, -t[i] / d1);
        Poly b = N[i + 1][j].empty() ? Poly{} : plin(N[i + 1][j], -1 / d2, t[i + p + 1] / d2);
        M[i][j] = padd(a, b);
      }
    }
    N = std::move(M);
  }
  // Taylor coefficients about the left knot keep evaluation well conditioned.
  auto shift = [](const Poly& p, const cpp_rational& a) {
    Poly r(p.size(), 0);
    for (size_t i = 0; i < p.size(); ++i) {
      cpp_rational binom = 1;
      // p_i x^i = p_i Σ_j C(i,j) a^{i−j} h^j
      for (size_t j = 0; j <= i; ++j) {
        cpp_rational apow = 1;
        for (size_t t = 0; t < i - j; ++t) apow *= a;
        r[j] += p[i] * binom * apow;
        binom = binom * cpp_rational(long(i - j)) / cpp_rational(long(j + 1));
      }
    }
    return r;
  };
  std::vector<LaurentPiece> pieces;
  for (size_t j = 0; j < n; ++j) {
    LaurentPiece lp{knots[j], knots[j + 1], 0, {}, knots[j]};
    for (const auto& c : shift(N[0][j], t[j])) lp.coeffs.push_back(static_cast<long double>(c));
    if (lp.coeffs.empty()) lp.coeffs.push_back(0.0L);
    pieces.push_back(lp);
  }
  return spline(std::move(pieces), "bspline" + std::to_string(n - 1) + "[" + fmt(knots.front()) + "," + fmt(knots.back()) + "]");
}

TestFunction trunc_power(cplx s, double T) {
  return TestFunction(TruncPower{s, T, false, 1.0}, "tp(" + fmt(s) + "," + fmt(T) + ")");
}

TestFunction combination(const std::vector<std::pair<cplx, TestFunction>>& terms) {
  Sum s;
  std::string id;
  for (const auto& [c, f] : terms) {
    s.terms.push_back({c, std::make_shared<const TestFunction>(f)});
    if (!id.empty()) id += "+";
    id += fmt(c) + "*" + f.id();
  }
  return TestFunction(std::move(s), id);
}

TestFunction linear(cplx alpha, const TestFunction& phi, cplx beta, const TestFunction& psi) {
  return combination({{alpha, phi}, {beta, psi}});
}

TestFunction scale(const TestFunction& phi, cplx c) {
  const std::string id = fmt(c) + "*" + phi.id();
  if (const auto* t = std::get_if<TruncPower>(&phi.base())) {
    TruncPower r = *t;
    r.scale *= c;
    return TestFunction(r, id);
  }
  if (const auto* s = std::get_if<Sum>(&phi.base())) {
    Sum out = *s;
    for (auto& term : out.terms) term.first *= c;
    return TestFunction(out, id);
  }
  auto ops = phi.ops();
  if (!ops.empty() && ops.back().kind == Op::Scale) ops.back().s *= c;
  else ops.push_back(Op{Op::Scale, c});
  return TestFunction(phi.base(), id, ops);
}

TestFunction shift_s(const TestFunction& phi, cplx s) {
  if (s == 1.0) return phi;
  const std::string id = phi.id() + "_s" + fmt(s);
  if (const auto* t = std::get_if<TruncPower>(&phi.base())) {
    TruncPower r = *t;
    r.s += s - 1.0;
    return TestFunction(r, id);
  }
  if (const auto* sum = std::get_if<Sum>(&phi.base()))
    return map_sum(*sum, id, [&](const TestFunction& f) { return shift_s(f, s); });
  auto ops = phi.ops();
  if (!ops.empty() && ops.back().kind == Op::Shift) {
    ops.back().s += s - 1.0;
    if (ops.back().s == 1.0) ops.pop_back();
  } else {
    ops.push_back(Op{Op::Shift, s});
  }
  return TestFunction(phi.base(), id, ops);
}

TestFunction slash_W(const TestFunction& phi, double a, long M) {
  if (M < 1) throw DomainError("slash_W: M must be positive");
  if (2 * a != std::floor(2 * a)) throw DomainError("slash_W: weight must be a half-integer");
  const std::string id = phi.id() + "|W(" + fmt(a) + "," + std::to_string(M) + ")";
  if (const auto* t = std::get_if<TruncPower>(&phi.base())) {
    TruncPower r = *t;
    const cplx e = 1.0 - a - t->s;
    r.s = 1.0 + e;
    r.scale = t->scale * cpow(double(M), e);
    r.T = recip(t->T, M);
    r.below = !t->below;
    if (r.below && std::isinf(r.T)) {
      r.below = false;
      r.T = 0.0;
    }
    return TestFunction(r, id);
  }
  if (const auto* sum = std::get_if<Sum>(&phi.base()))
    return map_sum(*sum, id, [&](const TestFunction& f) { return slash_W(f, a, M); });
  auto ops = phi.ops();
  ops.push_back(Op{Op::Slash, 1.0, a, M});
  return TestFunction(phi.base(), id, ops);
}

TestFunction derivative(const TestFunction& phi, int m) {
  if (m < 0) throw DomainError("derivative: order must be nonnegative");
  if (phi.contains_trunc_power()) throw DomainError("derivative: unsupported for truncated powers");
  if (m == 0) return phi;
  const std::string id = phi.id() + "^(" + std::to_string(m) + ")";
  if (const auto* sum = std::get_if<Sum>(&phi.base()))
    return map_sum(*sum, id, [&](const TestFunction& f) { return derivative(f, m); });
  if (const auto* sp = std::get_if<Spline>(&phi.base()); sp && phi.ops().empty()) {
    Spline out = *sp;
    for (auto& p : out.pieces) {
      for (int r = 0; r < m; ++r) {
        std::vector<long double> c(p.coeffs.size());
        for (size_t j = 0; j < p.coeffs.size(); ++j) c[j] = p.coeffs[j] * (long double)(p.lo + long(j));
        p.coeffs = std::move(c);
        p.lo -= 1;
      }
      // drop vanishing leading terms so lo stays meaningful
      size_t z = 0;
      while (z + 1 < p.coeffs.size() && p.coeffs[z] == 0) ++z;
      p.coeffs.erase(p.coeffs.begin(), p.coeffs.begin() + long(z));
      p.lo += int(z);
      if (p.coeffs.size() == 1 && p.coeffs[0] == 0) p.lo = 0;
    }
    return TestFunction(out, id);
  }
  auto ops = phi.ops();
  if (!ops.empty() && ops.back().kind == Op::Derivative) ops.back().m += m;
  else ops.push_back(Op{Op::Derivative, 1.0, 0, 1, m});
  return TestFunction(phi.base(), id, ops);
}

namespace {

// ∫₀^T e^{−ut} t^{s−1} dt, Re s > 0.
cplx lower_laplace(cplx s, double T, double u) {
  const double x = u * T;
  if (x <= 2.0) {
    // T^s Σ_j (−x)^j / (j!(s+j))
    cplx sum = 0, term = 1.0;
    for (int j = 0; j < 400; ++j) {
      const cplx add = term / (s + double(j));
      sum += add;
      if (std::abs(add) < 1e-17 * std::abs(sum) && j > 2) break;
      term *= -x / double(j + 1);
    }
    return cpow(T, s) * sum;
  }
  return std::exp(-s * std::log(u)) * (specials::gamma(s) - specials::upper_gamma(s, x));
}

// (L t^{s−1}1_{t>T})(u) with principal branches (continuation for u < 0).
cplx upper_laplace(cplx s, double T, double u) {
  if (u == 0) {
    if (s.real() < 0) return -cpow(T, s) / s;
    throw DomainError("laplace: truncated power diverges at u = 0 unless Re s < 0");
  }
  if (T == 0) {
    if (u < 0 || s.real() <= 0) throw DomainError("laplace: untruncated power needs u > 0 and Re s > 0");
    return specials::gamma(s) * std::exp(-s * std::log(u));
  }
  const cplx log_u = u > 0 ? cplx(std::log(u)) : cplx(std::log(-u), std::numbers::pi);
  return std::exp(-s * log_u) * specials::upper_gamma(s, u * T);
}

LaplaceValue trunc_laplace(const TruncPower& t, double u) {
  LaplaceValue r;
  if (t.below) {
    if (t.s.real() <= 0) throw DomainError("laplace: x^{s−1}1_{x<T} needs Re s > 0");
    r.value = t.scale * lower_laplace(t.s, t.T, u);
    r.abs_value = std::abs(t.scale) * lower_laplace(t.s.real(), t.T, u).real();
  } else {
    r.value = t.scale * upper_laplace(t.s, t.T, u);
    if (u > 0 || (u == 0 && t.s.real() < 0))
      r.abs_value = std::abs(t.scale) * upper_laplace(t.s.real(), t.T, u).real();
    else
      r.abs_value = std::numeric_limits<double>::infinity();
  }
  return r;
}

}  // namespace

LaplaceValue laplace_pair(const TestFunction& phi, double u, double rel_tol) {
  if (const auto* t = std::get_if<TruncPower>(&phi.base())) return trunc_laplace(*t, u);
  if (const auto* s = std::get_if<Sum>(&phi.base())) {
    LaplaceValue r;
    for (const auto& [c, f] : s->terms) {
      auto v = laplace_pair(*f, u, rel_tol);
      r.value += c * v.value;
      r.abs_value += std::abs(c) * v.abs_value;
      r.err += std::abs(c) * v.err;
    }
    return r;
  }
  auto [lo, hi] = phi.support();
  if (!(hi > lo)) return {};
  quad::Options o;
  o.rel_tol = rel_tol;
  o.knots = phi.knots();
  auto q = quad::integrate(
      [&](double t) {
        const double e = std::exp(-u * t);
        const cplx v = phi(t);
        return std::array<cplx, 2>{e * v, e * std::abs(v)};
      },
      lo, hi, o);
  return {q.value[0], q.value[1].real(), q.err};
}

cplx laplace(const TestFunction& phi, double u, double rel_tol) { return laplace_pair(phi, u, rel_tol).value; }

double laplace_abs(const TestFunction& phi, double u, double rel_tol) {
  return laplace_pair(phi, u, rel_tol).abs_value;
}

double sup_norm(const TestFunction& phi) {
  if (!phi.compact()) throw DomainError("sup_norm: compact support required");
  auto [lo, hi] = phi.support();
  double m = 0;
  const int S = 20000;
  for (int i = 1; i < S; ++i) m = std::max(m, std::abs(phi(lo + (hi - lo) * i / S)));
  for (double k : phi.knots()) {
    for (double d : {-1e-12, 1e-12}) {
      const double x = k * (1 + d);
      if (x > 0) m = std::max(m, std::abs(phi(x)));
    }
  }
  return m;
}

std::vector<TestFunction> make_battery(int count, double lo, double hi, const std::vector<cplx>& shifts) {
  if (count < 1) throw DomainError("battery: count must be ≥ 1");
  if (!(lo > 0 && hi > lo)) throw DomainError("battery: need 0 < lo < hi");
  const double q = std::log(hi / lo) / double(count + 2);
  std::vector<TestFunction> base;
  for (int j = 0; j < count; ++j) {
    const double a = lo * std::exp(q * j), b = lo * std::exp(q * (j + 3));
    base.push_back(bump(a, b).with_id("bump" + std::to_string(j)));
  }
  if (shifts.empty()) return base;
  std::vector<TestFunction> out;
  for (const auto& s : shifts)
    for (const auto& f : base) out.push_back(shift_s(f, s).with_id(f.id() + (s == 1.0 ? "" : "_s" + fmt(s))));
  return out;
}

std::vector<TestFunction> standard_battery() {
  std::vector<TestFunction> out;
  for (int j = 0; j < 10; ++j)
    out.push_back(bump(std::exp2(-2.0 + j / 3.0), std::exp2(-1.0 + j / 3.0)).with_id("bump" + std::to_string(j)));
  return out;
}

std::vector<TestFunction> extended_battery() {
  std::vector<TestFunction> out;
  for (cplx s : {cplx(1.0), cplx(2.0), cplx(6.0)})
    for (const auto& f : standard_battery())
      out.push_back(shift_s(f, s).with_id(f.id() + (s == 1.0 ? "" : "_s" + fmt(s))));
  return out;
}

}  // namespace maass::testfn
