#include "mfwr/finite_volume.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <vector>

#include "mfwr/errors.hpp"
#include "mfwr/quadrature.hpp"
#include "mfwr/special_functions.hpp"

namespace mfwr::fv {

namespace {

void check_av(double a, double V) {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("finite volume: need finite a > 0");
  if (!(V > 0.0) || !std::isfinite(V)) throw DomainError("finite volume: need finite V > 0");
}

void check_model(const ModelParams& p) {
  if (!(p.a > 0.0) || !std::isfinite(p.a) || !std::isfinite(p.mu0) || !std::isfinite(p.mu1))
    throw DomainError("finite volume: need finite a > 0 and finite potentials");
}

std::int64_t trunc_index(double peak) {
  if (!(peak >= 0.0) || !std::isfinite(peak))
    throw NumericalError("finite volume: invalid series peak estimate");
  const double nm = std::ceil(peak) + std::ceil(12.0 * std::sqrt(1.0 + peak)) + 50.0;
  if (nm > 2e8) throw NumericalError("finite volume: series too long for these parameters");
  return static_cast<std::int64_t>(nm);
}

struct SeriesStats {
  double log_sum;
  double mean;
  double variance;
  std::int64_t mode;
};

// Per-(a, V) evaluator. The x-independent coefficient
// c_n = n ln V - ln n! - a n^2/(2V) is cached, so sweeps in x pay one
// multiply-add plus exp() per retained term.
class SpeciesSeries {
 public:
  SpeciesSeries(double a, double V) : a_(a), V_(V), lv_(std::log(V)) { check_av(a, V); }

  SeriesStats stats(double x) {
    if (!std::isfinite(x)) throw DomainError("finite volume: potential not finite");
    const double peak = V_ * mean_density(a_, x + a_ / (2.0 * V_));
    const std::int64_t nmax = trunc_index(peak);
    ensure(nmax);
    lt_.resize(static_cast<std::size_t>(nmax) + 1);
    std::int64_t mode = 0;
    double mx = -std::numeric_limits<double>::infinity();
    for (std::int64_t n = 0; n <= nmax; ++n) {
      const double t = c_[static_cast<std::size_t>(n)] + x * static_cast<double>(n);
      lt_[static_cast<std::size_t>(n)] = t;
      if (t > mx) {
        mx = t;
        mode = n;
      }
    }
    if (!(lt_.back() <= mx - 40.0))
      throw NumericalError("finite volume: truncation window too short");
    const double r = std::exp(lt_.back() - lt_[lt_.size() - 2]);
    if (!(r < 1.0)) throw NumericalError("finite volume: tail ratio not contracting");

    // terms below mx - 60 cannot move the double-precision sums
    std::int64_t ilo = mode;
    while (ilo > 0 && lt_[static_cast<std::size_t>(ilo) - 1] >= mx - 60.0) --ilo;
    std::int64_t ihi = mode;
    while (ihi < nmax && lt_[static_cast<std::size_t>(ihi) + 1] >= mx - 60.0) ++ihi;
    ew_.resize(static_cast<std::size_t>(ihi - ilo) + 1);
    long double s0 = 0.0L;
    long double s1 = 0.0L;
    for (std::int64_t n = ilo; n <= ihi; ++n) {
      const double e = std::exp(lt_[static_cast<std::size_t>(n)] - mx);
      ew_[static_cast<std::size_t>(n - ilo)] = e;
      s0 += e;
      s1 += static_cast<long double>(n) * static_cast<long double>(e);
    }
    const double mean = static_cast<double>(s1 / s0);
    long double s2 = 0.0L;
    for (std::int64_t n = ilo; n <= ihi; ++n) {
      const double d = static_cast<double>(n) - mean;
      s2 += static_cast<long double>(ew_[static_cast<std::size_t>(n - ilo)]) *
            static_cast<long double>(d) * static_cast<long double>(d);
    }
    const double tail = std::exp(lt_.back() - mx) * (r / (1.0 - r));
    if (!(tail <= 1e-14 * static_cast<double>(s0)))
      throw NumericalError("finite volume: tail bound violated");
    const double slack = 1e-9 * (1.0 + peak);
    if (!(static_cast<double>(mode) >= peak - 1.0 - slack &&
          static_cast<double>(mode) <= peak + slack))
      throw NumericalError("finite volume: weight mode escaped its bracket");
    return {mx + std::log(static_cast<double>(s0)), mean, static_cast<double>(s2 / s0), mode};
  }

  // argmax with the analytic bracket and a full unimodality sweep
  ModeLocation mode_loc(double x) {
    const SeriesStats st = stats(x);
    for (std::size_t n = 1; n + 1 < lt_.size(); ++n) {
      if (!(lt_[n + 1] - lt_[n] <= lt_[n] - lt_[n - 1] + 1e-12))
        throw NumericalError("finite volume: weight ratios not decreasing");
    }
    const double peak = V_ * mean_density(a_, x + a_ / (2.0 * V_));
    return {st.mode, peak - 1.0, peak};
  }

 private:
  void ensure(std::int64_t n) {
    while (static_cast<std::int64_t>(c_.size()) <= n) {
      const double k = static_cast<double>(c_.size());
      c_.push_back(k * lv_ - std::lgamma(k + 1.0) - a_ * k * k / (2.0 * V_));
    }
  }

  double a_, V_, lv_;
  std::vector<double> c_;
  std::vector<double> lt_;  // scratch: log-terms
  std::vector<double> ew_;  // scratch: shifted weights
};

// one shared series evaluator drives both species of the landscape
struct PairSeries {
  ModelParams p;
  double V;
  SpeciesSeries s;

  PairSeries(const ModelParams& p_, double V_) : p(p_), V(V_), s(p_.a, V_) { check_model(p_); }

  double E(double y) {
    return (s.stats(p.mu0 + y).log_sum + s.stats(p.mu1 - y).log_sum) / V -
           y * y / (2.0 * p.a);
  }

  struct EU {
    double E, u0, u1;
  };

  EU eu(double y) {
    const SeriesStats a0 = s.stats(p.mu0 + y);
    const SeriesStats a1 = s.stats(p.mu1 - y);
    return {(a0.log_sum + a1.log_sum) / V - y * y / (2.0 * p.a), a0.mean / V, a1.mean / V};
  }
};

struct Peak {
  double y;
  double curvature;
  double value;
};

// polish the infinite-volume maximizers on the finite-volume landscape
std::vector<Peak> refine_peaks(PairSeries& ps, const std::vector<double>& seeds) {
  std::vector<Peak> out;
  for (double y0 : seeds) {
    double y = y0;
    const double h = 1e-6;
    for (int it = 0; it < 12; ++it) {
      const double em = ps.E(y - h);
      const double e0 = ps.E(y);
      const double ep = ps.E(y + h);
      const double d1 = (ep - em) / (2.0 * h);
      const double d2 = (ep - 2.0 * e0 + em) / (h * h);
      if (!(d2 < 0.0) || !std::isfinite(d1)) break;
      const double step = d1 / d2;
      if (!std::isfinite(step) || std::fabs(step) > 1.0) break;
      y -= step;
      if (std::fabs(step) <= 1e-9 * (1.0 + std::fabs(y))) break;
    }
    // wider stencil for the reported curvature: the cancellation noise of
    // the tight Newton stencil is too large to quote
    const double hc = 1e-3;
    const double d2 = (ps.E(y + hc) - 2.0 * ps.E(y) + ps.E(y - hc)) / (hc * hc);
    out.push_back({y, d2, ps.E(y)});
  }
  std::sort(out.begin(), out.end(), [](const Peak& a, const Peak& b) { return a.y < b.y; });
  std::vector<Peak> ded;
  for (const Peak& pk : out) {
    if (!ded.empty() && std::fabs(pk.y - ded.back().y) <= 1e-6 * (1.0 + std::fabs(pk.y))) {
      if (pk.value > ded.back().value) ded.back() = pk;
    } else {
      ded.push_back(pk);
    }
  }
  return ded;
}

struct Window {
  double lo, hi;
};

// grow each window until the integrand has fallen below 1e-18 of its peak;
// the landscape decays slower than a Gaussian far out, so this is measured,
// not assumed
std::vector<Window> peak_windows(PairSeries& ps, const std::vector<Peak>& peaks, double e_top) {
  std::vector<Window> wins;
  for (const Peak& pk : peaks) {
    double w = 0.25;
    int guard = 0;
    while (ps.V * (ps.E(pk.y + w) - e_top) > -46.0) {
      w *= 2.0;
      if (++guard > 60) throw NumericalError("finite volume: window growth failed");
    }
    const double hi = pk.y + w;
    w = 0.25;
    guard = 0;
    while (ps.V * (ps.E(pk.y - w) - e_top) > -46.0) {
      w *= 2.0;
      if (++guard > 60) throw NumericalError("finite volume: window growth failed");
    }
    wins.push_back({pk.y - w, hi});
  }
  std::sort(wins.begin(), wins.end(), [](const Window& a, const Window& b) { return a.lo < b.lo; });
  std::vector<Window> merged;
  for (const Window& w : wins) {
    if (!merged.empty() && w.lo <= merged.back().hi)
      merged.back().hi = std::max(merged.back().hi, w.hi);
    else
      merged.push_back(w);
  }
  return merged;
}

// cut each window at the peaks inside it. A merged window can hold several
// peaks separated by deep valleys; Simpson's first samples of such a span may
// all land where the integrand is dead and the refinement stops before it has
// seen any mass. A peak on the boundary of every piece rules that out.
std::vector<Window> quad_segments(const std::vector<Window>& wins,
                                  const std::vector<Peak>& peaks) {
  std::vector<Window> segs;
  for (const Window& w : wins) {
    double lo = w.lo;
    for (const Peak& pk : peaks) {
      if (pk.y > lo && pk.y < w.hi) {
        segs.push_back({lo, pk.y});
        lo = pk.y;
      }
    }
    segs.push_back({lo, w.hi});
  }
  return segs;
}

// relative evaluation noise of exp(V (E - e_top)). E is assembled from two
// log-sums of size V * f, so its absolute rounding error scales with them;
// the exponential turns that into relative noise the quadrature must not
// chase below.
double noise_floor(PairSeries& ps, double y_top) {
  const double ls0 = ps.s.stats(ps.p.mu0 + y_top).log_sum;
  const double ls1 = ps.s.stats(ps.p.mu1 - y_top).log_sum;
  return 2e-13 + 8e-16 * (std::fabs(ls0) + std::fabs(ls1));
}

double coarse_integral(PairSeries& ps, const std::vector<Window>& wins, double e_top) {
  double total = 0.0;
  for (const Window& w : wins) {
    const int m = 128;
    const double h = (w.hi - w.lo) / m;
    double s = 0.5 * (std::exp(ps.V * (ps.E(w.lo) - e_top)) +
                      std::exp(ps.V * (ps.E(w.hi) - e_top)));
    for (int i = 1; i < m; ++i) s += std::exp(ps.V * (ps.E(w.lo + h * i) - e_top));
    total += s * h;
  }
  return total;
}

}  // namespace

double species_pressure_v(double a, double x, double V) {
  SpeciesSeries s(a, V);
  return s.stats(x).log_sum / V;
}

double mean_density_v(double a, double x, double V) {
  SpeciesSeries s(a, V);
  return s.stats(x).mean / V;
}

double mean_density_v_dx(double a, double x, double V) {
  SpeciesSeries s(a, V);
  return s.stats(x).variance / V;
}

ModeLocation mode_location(double a, double x, double V) {
  SpeciesSeries s(a, V);
  return s.mode_loc(x);
}

double free_energy_v(const ModelParams& p, double y, double V) {
  check_model(p);
  if (!std::isfinite(y)) throw DomainError("free_energy_v: y not finite");
  PairSeries ps(p, V);
  return ps.E(y);
}

double log_partition_series(const ModelParams& p, double V) {
  check_model(p);
  check_av(p.a, V);
  // collapse over the species with the smaller activity: shorter series,
  // same value by symmetry of the partition function
  double m0 = p.mu0;
  double m1 = p.mu1;
  if (m1 < m0) std::swap(m0, m1);
  const double P = V * std::exp(m0);
  if (!std::isfinite(V * std::exp(m1)))
    throw NumericalError("log_partition_series: closed-form factor overflows");
  const std::int64_t nmax = trunc_index(P);
  const double lv = std::log(V);
  std::vector<double> lt(static_cast<std::size_t>(nmax) + 1);
  double mx = -std::numeric_limits<double>::infinity();
  for (std::int64_t n = 0; n <= nmax; ++n) {
    const double nd = static_cast<double>(n);
    lt[static_cast<std::size_t>(n)] =
        nd * lv - std::lgamma(nd + 1.0) + m0 * nd + V * std::exp(m1 - p.a * nd / V);
    mx = std::max(mx, lt[static_cast<std::size_t>(n)]);
  }
  if (!(lt.back() <= mx - 40.0))
    throw NumericalError("log_partition_series: truncation window too short");
  long double s0 = 0.0L;
  for (double t : lt) s0 += static_cast<long double>(std::exp(t - mx));
  // decreasing envelope of the term ratio certifies the dropped tail
  const double rbar = P / static_cast<double>(nmax + 1);
  const double tail = std::exp(lt.back() - mx) * (rbar / (1.0 - rbar));
  if (!(rbar < 1.0) || !(tail <= 1e-14 * static_cast<double>(s0)))
    throw NumericalError("log_partition_series: tail bound violated");
  return mx + std::log(static_cast<double>(s0));
}

double log_partition_integral(const ModelParams& p, double V) {
  check_model(p);
  check_av(p.a, V);
  PairSeries ps(p, V);
  const auto seeds = landscape::solve(p).maximizers;
  const auto peaks = refine_peaks(ps, seeds);
  double e_top = -std::numeric_limits<double>::infinity();
  double y_top = 0.0;
  for (const Peak& pk : peaks) {
    if (pk.value > e_top) {
      e_top = pk.value;
      y_top = pk.y;
    }
  }
  const auto wins = peak_windows(ps, peaks, e_top);
  const double t0 = coarse_integral(ps, wins, e_top);
  if (!(t0 > 0.0) || !std::isfinite(t0))
    throw NumericalError("log_partition_integral: degenerate integrand");
  const double fl = noise_floor(ps, y_top);
  const auto segs = quad_segments(wins, peaks);
  const double tol = 0.5e-12 * t0 / static_cast<double>(segs.size());
  double total = 0.0;
  for (const Window& w : segs) {
    auto f = [&](double y) { return std::exp(V * (ps.E(y) - e_top)); };
    total += adaptive_simpson(f, w.lo, w.hi, tol, fl);
  }
  return 0.5 * std::log(V / (2.0 * std::numbers::pi * p.a)) + V * e_top + std::log(total);
}

VMaximizer free_energy_v_maximizer(const ModelParams& p, double V) {
  check_model(p);
  check_av(p.a, V);
  PairSeries ps(p, V);
  const auto seeds = landscape::solve(p).maximizers;
  const auto peaks = refine_peaks(ps, seeds);
  const Peak* best = &peaks.front();
  for (const Peak& pk : peaks) {
    if (pk.value > best->value + 1e-12 * (1.0 + std::fabs(best->value)) ||
        (std::fabs(pk.value - best->value) <= 1e-12 * (1.0 + std::fabs(best->value)) &&
         pk.y > best->y))
      best = &pk;
  }
  return {best->y, best->curvature};
}

Densities finite_densities(const ModelParams& p, double V) {
  check_model(p);
  check_av(p.a, V);
  PairSeries ps(p, V);
  const auto seeds = landscape::solve(p).maximizers;
  const auto peaks = refine_peaks(ps, seeds);
  double e_top = -std::numeric_limits<double>::infinity();
  double y_top = 0.0;
  for (const Peak& pk : peaks) {
    if (pk.value > e_top) {
      e_top = pk.value;
      y_top = pk.y;
    }
  }
  const auto wins = peak_windows(ps, peaks, e_top);
  const double t0 = coarse_integral(ps, wins, e_top);
  if (!(t0 > 0.0) || !std::isfinite(t0))
    throw NumericalError("finite_densities: degenerate integrand");
  const double fl = noise_floor(ps, y_top);
  const auto segs = quad_segments(wins, peaks);
  const double tol = 0.5e-12 * t0 / static_cast<double>(segs.size());
  std::array<double, 3> acc{0.0, 0.0, 0.0};
  for (const Window& w : segs) {
    auto f = [&](double y) -> std::array<double, 3> {
      const PairSeries::EU eu = ps.eu(y);
      const double g = std::exp(V * (eu.E - e_top));
      return {eu.u0 * g, eu.u1 * g, g};
    };
    const auto part = adaptive_simpson(f, w.lo, w.hi, tol, fl);
    for (int i = 0; i < 3; ++i) acc[static_cast<std::size_t>(i)] += part[static_cast<std::size_t>(i)];
  }
  return {acc[0] / acc[2], acc[1] / acc[2]};
}

EffectivePotentials effective_potentials(const ModelParams& p, double V, std::int64_t n0,
                                         std::int64_t n1) {
  check_model(p);
  check_av(p.a, V);
  if (n0 < 0 || n1 < 0) throw DomainError("effective_potentials: need n0, n1 >= 0");

  // 8-point Gauss-Legendre on [0, 1]
  static const double gx[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                               -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                               0.7966664774136267,  0.9602898564975363};
  static const double gw[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                               0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                               0.2223810344533745, 0.1012285362903763};

  const double shift0 = (p.a / V) * static_cast<double>(n0);
  const double shift1 = (p.a / V) * static_cast<double>(n1);

  double f1_path = 0.0;
  if (shift0 == 0.0) {
    f1_path = finite_densities(p, V).rho1;
  } else {
    for (int i = 0; i < 8; ++i) {
      const double t = 0.5 * (gx[i] + 1.0);
      f1_path += 0.5 * gw[i] *
                 finite_densities({p.a, p.mu0, p.mu1 - shift0 * t}, V).rho1;
    }
  }
  const double mu0_eff = p.mu0 - p.a * f1_path;

  const ModelParams switched{p.a, p.mu0, p.mu1 - shift0};
  double f0_path = 0.0;
  if (shift1 == 0.0) {
    f0_path = finite_densities(switched, V).rho0;
  } else {
    for (int i = 0; i < 8; ++i) {
      const double t = 0.5 * (gx[i] + 1.0);
      f0_path += 0.5 * gw[i] *
                 finite_densities({p.a, p.mu0 - shift1 * t, p.mu1 - shift0}, V).rho0;
    }
  }
  const double mu1_eff = p.mu1 - p.a * f0_path;
  return {mu0_eff, mu1_eff};
}

double correlation(const ModelParams& p, double V, std::int64_t n0, std::int64_t n1) {
  const EffectivePotentials e = effective_potentials(p, V, n0, n1);
  return std::exp(e.mu0_eff * static_cast<double>(n0) + e.mu1_eff * static_cast<double>(n1) -
                  (p.a / V) * static_cast<double>(n0) * static_cast<double>(n1));
}

}  // namespace mfwr::fv
