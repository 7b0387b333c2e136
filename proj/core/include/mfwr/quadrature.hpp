#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "mfwr/errors.hpp"

// Adaptive Simpson quadrature for smooth scalar or small-vector integrands.
// The vector form integrates all components over one shared refinement so
// ratios of the results stay consistent.

namespace mfwr {

namespace quad_detail {

inline double vadd(double a, double b) { return a + b; }
inline double vsub(double a, double b) { return a - b; }
inline double vscale(double w, double a) { return w * a; }
inline double vnorm(double a) { return std::fabs(a); }

template <std::size_t N>
std::array<double, N> vadd(const std::array<double, N>& a, const std::array<double, N>& b) {
  std::array<double, N> r;
  for (std::size_t i = 0; i < N; ++i) r[i] = a[i] + b[i];
  return r;
}

template <std::size_t N>
std::array<double, N> vsub(const std::array<double, N>& a, const std::array<double, N>& b) {
  std::array<double, N> r;
  for (std::size_t i = 0; i < N; ++i) r[i] = a[i] - b[i];
  return r;
}

template <std::size_t N>
std::array<double, N> vscale(double w, const std::array<double, N>& a) {
  std::array<double, N> r;
  for (std::size_t i = 0; i < N; ++i) r[i] = w * a[i];
  return r;
}

template <std::size_t N>
double vnorm(const std::array<double, N>& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < N; ++i) m = std::max(m, std::fabs(a[i]));
  return m;
}

template <typename F, typename V>
struct SimpsonWorker {
  F& f;
  long evals;
  long eval_cap;
  double floor_rel;  // stop refining once diff is this small next to the local mass

  V eval(double x) {
    if (++evals > eval_cap) throw NumericalError("adaptive quadrature: evaluation budget exhausted");
    return f(x);
  }

  static V rule(double lo, double hi, const V& flo, const V& fm, const V& fhi) {
    return vscale((hi - lo) / 6.0, vadd(flo, vadd(vscale(4.0, fm), fhi)));
  }

  V refine(double lo, double hi, const V& flo, const V& fm, const V& fhi,
           const V& whole, double tol, int depth) {
    const double m = 0.5 * (lo + hi);
    const double lm = 0.5 * (lo + m);
    const double rm = 0.5 * (m + hi);
    const V flm = eval(lm);
    const V frm = eval(rm);
    const V left = rule(lo, m, flo, flm, fm);
    const V right = rule(m, hi, fm, frm, fhi);
    const V both = vadd(left, right);
    const V diff = vsub(both, whole);
    // the relative floor keeps integrands whose evaluation noise exceeds the
    // requested tolerance from refining forever: past it the disagreement is
    // rounding, not structure
    if (vnorm(diff) <= 15.0 * tol || vnorm(diff) <= floor_rel * vnorm(both) ||
        hi - lo <= 1e-300 * (1.0 + std::fabs(lo)))
      return vadd(both, vscale(1.0 / 15.0, diff));
    if (depth <= 0) throw NumericalError("adaptive quadrature: refinement depth exhausted");
    return vadd(refine(lo, m, flo, flm, fm, left, 0.5 * tol, depth - 1),
                refine(m, hi, fm, frm, fhi, right, 0.5 * tol, depth - 1));
  }
};

}  // namespace quad_detail

// Integrates f over [lo, hi] to absolute tolerance abs_tol. F maps double to
// either double or std::array<double, N>. floor_rel caps the refinement at
// the integrand's own evaluation noise; callers that know that noise level
// should pass a small multiple of it.
template <typename F>
auto adaptive_simpson(F&& f, double lo, double hi, double abs_tol, double floor_rel = 0.0,
                      int max_depth = 52, long eval_cap = 4000000) {
  using V = decltype(f(lo));
  quad_detail::SimpsonWorker<F, V> w{f, 0, eval_cap, floor_rel};
  const V flo = w.eval(lo);
  const V fm = w.eval(0.5 * (lo + hi));
  const V fhi = w.eval(hi);
  const V whole = quad_detail::SimpsonWorker<F, V>::rule(lo, hi, flo, fm, fhi);
  return w.refine(lo, hi, flo, fm, fhi, whole, abs_tol, max_depth);
}

}  // namespace mfwr
