#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <type_traits>
#include <valarray>
#include <vector>

#include "maass/errors.hpp"

namespace maass::quad {

struct Options {
  double rel_tol = 1e-12;
  double abs_tol = 0.0;
  int max_intervals = 4000;
  std::vector<double> knots;  // break points; those outside (a, b) are ignored
  double decay_rate = 0.0;    // required for b = +∞: |f(x)| ≲ e^{−rate·x} eventually
};

template <class T>
struct Result {
  T value;
  double err = 0.0;
  long evals = 0;
  double abs_integral = 0.0;  // Kronrod estimate of ∫|f| (max-norm for vector values)
};

namespace detail {

extern const double xgk[8];
extern const double wgk[8];
extern const double wg[4];

inline double mag(double v) { return std::abs(v); }
inline double mag(const cplx& v) { return std::abs(v); }
template <size_t N>
double mag(const std::array<cplx, N>& v) {
  double m = 0;
  for (const auto& x : v) m = std::max(m, std::abs(x));
  return m;
}
template <class S>
double mag(const std::valarray<S>& v) {
  double m = 0;
  for (const auto& x : v) m = std::max(m, double(std::abs(x)));
  return m;
}

inline cplx first(double v) { return v; }
inline cplx first(const cplx& v) { return v; }
template <size_t N>
cplx first(const std::array<cplx, N>& v) { return v[0]; }
template <class S>
cplx first(const std::valarray<S>& v) { return v.size() ? cplx(v[0]) : cplx(0); }

template <class T>
T scaled(const T& v, double c) {
  if constexpr (std::is_arithmetic_v<T> || std::is_same_v<T, cplx>) {
    return v * c;
  } else if constexpr (std::is_same_v<T, std::valarray<double>> || std::is_same_v<T, std::valarray<cplx>>) {
    return v * c;
  } else {
    T r = v;
    for (auto& x : r) x *= c;
    return r;
  }
}

template <class T>
void add_to(T& acc, const T& v) {
  if constexpr (std::is_arithmetic_v<T> || std::is_same_v<T, cplx>) {
    acc += v;
  } else if constexpr (std::is_same_v<T, std::valarray<double>> || std::is_same_v<T, std::valarray<cplx>>) {
    if (acc.size() != v.size()) acc.resize(v.size());
    acc += v;
  } else {
    for (size_t i = 0; i < acc.size(); ++i) acc[i] += v[i];
  }
}

template <class T>
T diff(const T& a, const T& b) {
  T r = a;
  add_to(r, scaled(b, -1.0));
  return r;
}

template <class T>
struct Segment {
  double a, b;
  T value;
  double err;
  double resabs;
};

template <class T, class F>
Segment<T> gk15(F& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const T fc = f(c);
  T K = scaled(fc, wgk[7]);
  T G = scaled(fc, wg[3]);
  double rabs = wgk[7] * mag(fc);
  for (int j = 0; j < 7; ++j) {
    const double dx = h * xgk[j];
    const T f1 = f(c - dx), f2 = f(c + dx);
    T s = f1;
    add_to(s, f2);
    add_to(K, scaled(s, wgk[j]));
    if (j % 2 == 1) add_to(G, scaled(s, wg[j / 2]));
    rabs += wgk[j] * (mag(f1) + mag(f2));
  }
  Segment<T> seg{a, b, scaled(K, h), 0.0, std::abs(h) * rabs};
  seg.err = mag(diff(K, G)) * std::abs(h);
  return seg;
}

template <class T, class F>
Result<T> adaptive(F& f, double a, double b, const Options& o, const std::vector<double>& breaks) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  std::vector<Segment<T>> segs;
  std::vector<double> pts{a};
  for (double k : breaks)
    if (k > a && k < b) pts.push_back(k);
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  long evals = 0;
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    segs.push_back(gk15<T>(f, pts[i], pts[i + 1]));
    evals += 15;
  }
  auto splittable = [&](const Segment<T>& s) {
    const double w = s.b - s.a;
    return s.err > 50 * eps * s.resabs && w > 1e-13 * std::max(1.0, std::abs(s.a) + std::abs(s.b));
  };
  for (;;) {
    T total = segs[0].value;
    double err_open = 0, err_all = 0, rabs = 0;
    size_t worst = segs.size();
    for (size_t i = 0; i < segs.size(); ++i) {
      if (i) add_to(total, segs[i].value);
      err_all += segs[i].err;
      rabs += segs[i].resabs;
      if (splittable(segs[i])) {
        err_open += segs[i].err;
        if (worst == segs.size() || segs[i].err > segs[worst].err) worst = i;
      }
    }
    const double tol = std::max(o.abs_tol, o.rel_tol * mag(total));
    if (err_open <= tol || worst == segs.size()) return {total, err_all, evals, rabs};
    if (int(segs.size()) >= o.max_intervals)
      throw AccuracyError("quadrature: no convergence within the subdivision limit", first(total), err_all);
    const Segment<T> s = segs[worst];
    const double m = 0.5 * (s.a + s.b);
    segs[worst] = gk15<T>(f, s.a, m);
    segs.push_back(gk15<T>(f, m, s.b));
    evals += 30;
  }
}

}  // namespace detail

// Adaptive Gauss–Kronrod (7/15) integration of f over [a, b]; b may be +∞, in
// which case o.decay_rate must be positive and the range is covered by panels
// of length 4/rate until the geometric tail estimate drops below tolerance.
// T may be double, cplx, std::array<cplx, N> or std::valarray<double|cplx>.
template <class F>
auto integrate(F&& f, double a, double b, const Options& o = {}) {
  using T = std::decay_t<std::invoke_result_t<F&, double>>;
  if (!(b >= a)) throw DomainError("quadrature: requires a ≤ b");
  if (a == b) return Result<T>{detail::scaled(f(a), 0.0), 0.0, 1, 0.0};
  if (std::isfinite(b)) return detail::adaptive<T>(f, a, b, o, o.knots);
  if (!(o.decay_rate > 0)) throw DomainError("quadrature: semi-infinite range needs a positive decay rate");

  double split = a;
  for (double k : o.knots)
    if (k > split && std::isfinite(k)) split = k;
  Result<T> acc{detail::scaled(f(a), 0.0), 0.0, 1, 0.0};
  if (split > a) acc = detail::adaptive<T>(f, a, split, o, o.knots);
  const double L = 4.0 / o.decay_rate;
  const double r = std::exp(-4.0);
  double prev = std::numeric_limits<double>::infinity();
  for (int panel = 0; panel < 20000; ++panel) {
    const double lo = split + panel * L, hi = lo + L;
    Options po = o;
    po.abs_tol = std::max(o.abs_tol, 0.1 * o.rel_tol * detail::mag(acc.value));
    auto seg = detail::adaptive<T>(f, lo, hi, po, {});
    detail::add_to(acc.value, seg.value);
    acc.err += seg.err;
    acc.evals += seg.evals;
    acc.abs_integral += seg.abs_integral;
    const double tail = seg.abs_integral * r / (1 - r);
    const double tol = std::max(o.abs_tol, o.rel_tol * detail::mag(acc.value));
    if (seg.abs_integral <= prev && tail <= tol) {
      acc.err += tail;
      acc.abs_integral += tail;
      return acc;
    }
    prev = seg.abs_integral;
  }
  throw AccuracyError("quadrature: semi-infinite tail did not decay", detail::first(acc.value), acc.err);
}

}  // namespace maass::quad
