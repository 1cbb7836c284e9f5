#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <type_traits>

#include "maass/errors.hpp"

namespace maass::parallel {

// Worker count for parallel kernels: MAASS_LSERIES_THREADS when set (≥ 1),
// otherwise the OpenMP default. Always 1 in builds without OpenMP.
int thread_cap();

// Runs body(i) for i in [0, n) on up to thread_cap() threads (dynamic schedule).
// After the loop, the exception from the lowest failing index is rethrown;
// indices above a known failure may be skipped.
void for_each_index(long n, const std::function<void(long)>& body);

// Compensated (Neumaier) summation.
template <class T>
struct Neumaier {
  T sum{};
  T comp{};

  void add(const T& v) {
    if constexpr (std::is_same_v<T, cplx>) {
      double sr = sum.real(), cr = comp.real(), si = sum.imag(), ci = comp.imag();
      step(sr, cr, v.real());
      step(si, ci, v.imag());
      sum = {sr, si};
      comp = {cr, ci};
    } else {
      step(sum, comp, v);
    }
  }
  T value() const { return sum + comp; }

 private:
  static void step(double& s, double& c, double v) {
    const double t = s + v;
    if (std::abs(s) >= std::abs(v))
      c += (s - t) + v;
    else
      c += (v - t) + s;
    s = t;
  }
};

}  // namespace maass::parallel
