#include "mfwr/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "mfwr/errors.hpp"
#include "mfwr/finite_volume.hpp"
#include "mfwr/landscape.hpp"
#include "mfwr/phase_diagram.hpp"
#include "mfwr/special_functions.hpp"

namespace mfwr::verify {

namespace {

// brute-force ln Xi at small volume: full double sum in extended precision
long double log_xi_bruteforce(double a, double mu0, double mu1, double V, int nmax) {
  std::vector<long double> c0(static_cast<std::size_t>(nmax) + 1);
  std::vector<long double> c1(static_cast<std::size_t>(nmax) + 1);
  const long double lv = std::log(static_cast<long double>(V));
  for (int n = 0; n <= nmax; ++n) {
    const long double nl = n;
    const long double base = nl * lv - std::lgamma(static_cast<long double>(n) + 1.0L);
    c0[static_cast<std::size_t>(n)] = base + static_cast<long double>(mu0) * nl;
    c1[static_cast<std::size_t>(n)] = base + static_cast<long double>(mu1) * nl;
  }
  const long double av = static_cast<long double>(a) / static_cast<long double>(V);
  long double mx = -std::numeric_limits<long double>::infinity();
  for (int n0 = 0; n0 <= nmax; ++n0)
    for (int n1 = 0; n1 <= nmax; ++n1)
      mx = std::max(mx, c0[static_cast<std::size_t>(n0)] + c1[static_cast<std::size_t>(n1)] -
                            av * n0 * n1);
  long double sum = 0.0L;
  long double comp = 0.0L;  // Kahan correction
  for (int n0 = 0; n0 <= nmax; ++n0) {
    for (int n1 = 0; n1 <= nmax; ++n1) {
      const long double e = std::exp(c0[static_cast<std::size_t>(n0)] +
                                     c1[static_cast<std::size_t>(n1)] - av * n0 * n1 - mx);
      const long double t = sum + (e - comp);
      comp = (t - sum) - (e - comp);
      sum = t;
    }
  }
  return mx + std::log(sum);
}

// Neville tableau evaluated at 0 in the variable 1/V
double extrapolate_to_infinite_volume(const std::vector<double>& vols,
                                      const std::vector<double>& vals) {
  const std::size_t n = vols.size();
  std::vector<double> t(n);
  std::vector<double> f(vals);
  for (std::size_t i = 0; i < n; ++i) t[i] = 1.0 / vols[i];
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t i = 0; i + k < n; ++i)
      f[i] = ((0.0 - t[i + k]) * f[i] + (t[i] - 0.0) * f[i + 1]) / (t[i] - t[i + k]);
  return f[0];
}

double single_phase_pressure(const ModelParams& p) {
  const auto pts = phase::equation_of_state(p);
  return pts.front().pressure;
}

// distance from (xi, |eta|) to the three-solution boundary, in potential units
double boundary_distance(double xi, double eta) {
  const double ae = std::fabs(eta);
  const double cusp = std::hypot(xi - 1.0, ae);
  if (xi <= 1.0) return std::numbers::sqrt2 * cusp;
  const double h = phase::spinodal_eta(xi);
  const double hp = std::sqrt((xi - 1.0) / (xi + 1.0));
  const double line = std::fabs(ae - h) / std::hypot(1.0, hp);
  return std::numbers::sqrt2 * std::min(cusp, line);
}

struct Runner {
  std::vector<CriterionResult> out;
  const std::map<std::string, double>& overrides;

  void add(int id, const std::string& key, const std::string& desc, double tol,
           const std::function<double()>& fn) {
    const auto it = overrides.find(key);
    if (it != overrides.end()) tol = it->second;
    CriterionResult r{id, key, desc, tol, std::numeric_limits<double>::infinity(), false, 0.0};
    const auto t0 = std::chrono::steady_clock::now();
    try {
      r.observed = fn();
    } catch (const std::exception&) {
      r.observed = std::numeric_limits<double>::infinity();
    }
    const auto t1 = std::chrono::steady_clock::now();
    r.seconds = std::chrono::duration<double>(t1 - t0).count();
    r.pass = r.observed <= r.tolerance;
    out.push_back(std::move(r));
  }
};

}  // namespace

std::vector<CriterionResult> run_acceptance(
    const std::map<std::string, double>& tolerance_overrides) {
  Runner run{{}, tolerance_overrides};

  run.add(1, "lambert_identity",
          "implicit-density identity residual |ln u + a u - x| on the (a, x) grid", 1e-13, [] {
            double worst = 0.0;
            for (int i = 0; i <= 60; ++i) {
              const double a = std::pow(10.0, -3.0 + 0.1 * i);
              for (int j = 0; j <= 100; ++j) {
                const double x = -50.0 + j;
                const double u = mean_density(a, x);
                worst = std::max(worst, std::fabs(std::log(u) + a * u - x));
              }
            }
            return worst;
          });

  run.add(2, "maxwell_rule", "equal-area residual of the pressure plateau across the jump",
          1e-10, [] {
            double worst = 0.0;
            for (const double r : {1.1, 1.5, 2.0, 3.0, 5.0, 10.0}) {
              for (const double th : {0.5, 2.0}) {
                const double a = r * std::numbers::e / th;
                worst = std::max(worst, std::fabs(phase::maxwell_residual(a, th)));
              }
            }
            return worst;
          });

  run.add(3, "order_scaling", "square-root onset of the order parameter above the critical point",
          0.01, [] {
            const double delta = 1e-8;
            double worst = 0.0;
            for (const double a : {0.5, 1.0, 3.0}) {
              const double yb = phase::order_parameter(a, phase::critical_mu(a) + delta);
              worst = std::max(worst, std::fabs(yb / std::sqrt(24.0 * delta) - 1.0));
            }
            return worst;
          });

  run.add(4, "critical_isotherm",
          "cube-root response along the critical isotherm: slope and prefactor", 1.0, [] {
            double worst = 0.0;
            for (const double a : {1.0, 2.0}) {
              std::vector<double> le, ly;
              for (int i = 0; i < 7; ++i) {
                const double eta = std::pow(10.0, -9.0 + 0.5 * i);
                const double ys = phase::critical_isotherm_maximizer(a, eta);
                le.push_back(std::log(eta));
                ly.push_back(std::log(ys));
              }
              double mx = 0.0, my = 0.0;
              for (std::size_t i = 0; i < le.size(); ++i) {
                mx += le[i];
                my += ly[i];
              }
              mx /= static_cast<double>(le.size());
              my /= static_cast<double>(le.size());
              double sxx = 0.0, sxy = 0.0, pref = 0.0;
              for (std::size_t i = 0; i < le.size(); ++i) {
                sxx += (le[i] - mx) * (le[i] - mx);
                sxy += (le[i] - mx) * (ly[i] - my);
                pref += ly[i] - le[i] / 3.0;
              }
              const double slope = sxy / sxx;
              const double amp = std::exp(pref / static_cast<double>(le.size()));
              const double target = 2.0 * std::cbrt(6.0);
              worst = std::max(worst, std::fabs(slope - 1.0 / 3.0) / 0.02);
              worst = std::max(worst, std::fabs(amp / target - 1.0) / 0.02);
            }
            return worst;
          });

  run.add(5, "uv_bound", "finite-volume density error against the 1/(2V) envelope", 1.0, [] {
    double worst = 0.0;
    for (const double a : {0.5, 1.0, 3.0}) {
      for (int xi = -3; xi <= 3; ++xi) {
        const double x = xi;
        const double u = mean_density(a, x);
        for (const double V : {10.0, 50.0, 250.0, 1250.0}) {
          worst = std::max(worst, std::fabs(fv::mean_density_v(a, x, V) - u) * 2.0 * V);
        }
      }
    }
    return worst;
  });

  run.add(6, "thermo_limit",
          "partition-function pressure reaches the equation of state as V grows", 1.0, [] {
            const ModelParams p{1.0, 2.0, 0.0};
            const double press = single_phase_pressure(p);
            const std::vector<double> vols{50.0, 100.0, 200.0, 400.0, 800.0};
            std::vector<double> vals;
            for (const double V : vols) vals.push_back(fv::log_partition_series(p, V) / V);
            const double extrap = extrapolate_to_infinite_volume(vols, vals);
            const double raw = std::fabs(vals.back() - press);
            return std::max(std::fabs(extrap - press) / 1e-3, raw / 5e-3);
          });

  run.add(7, "representation", "series and integral representations of ln Xi agree", 1e-8, [] {
    const double V = 25.0;
    const ModelParams pts[] = {{0.5, 0.3, -0.2}, {0.5, 2.0, 2.0},     {0.5, -1.0, 1.0},
                               {1.0, 0.2, -0.4}, {1.0, 2.0, 2.0},     {1.0, 3.0, 0.0},
                               {1.0, 1.005, 1.005}, {2.0, -1.0, 0.5}, {2.0, 1.2, 1.2},
                               {3.0, 0.7, 0.7}};
    double worst = 0.0;
    for (const ModelParams& p : pts) {
      const double s = fv::log_partition_series(p, V);
      const double i = fv::log_partition_integral(p, V);
      worst = std::max(worst, std::fabs(s - i) / std::fabs(s));
    }
    return worst;
  });

  run.add(8, "mixture_density",
          "finite-volume densities sit midway between the jump endpoints", 5e-3, [] {
            const ModelParams p{1.0, 2.0, 2.0};
            const double yb = phase::order_parameter(1.0, 2.0);
            const double target = 0.5 * (mean_density(1.0, 2.0 + yb) + mean_density(1.0, 2.0 - yb));
            const auto d = fv::finite_densities(p, 400.0);
            return std::max(std::fabs(d.rho0 - target), std::fabs(d.rho1 - target));
          });

  run.add(9, "root_counts", "fixed-point count matches the spinodal prediction on the grid", 0.0,
          [] {
            int mismatches = 0;
            for (int i = 0; i <= 40; ++i) {
              for (int j = 0; j <= 40; ++j) {
                const double mu0 = -2.0 + 0.15 * i;
                const double mu1 = -2.0 + 0.15 * j;
                const double xi = 0.5 * (mu0 + mu1);
                const double eta = 0.5 * (mu0 - mu1);
                if (boundary_distance(xi, eta) <= 1e-3) continue;
                const ModelParams p{1.0, mu0, mu1};
                const bool inside = phase::classify(p).in_spinodal;
                const std::size_t expect = inside ? 3 : 1;
                if (landscape::fixed_points(p).size() != expect) ++mismatches;
              }
            }
            return static_cast<double>(mismatches);
          });

  run.add(10, "thermo_consistency", "densities equal the potential-gradient of the pressure",
          1e-6, [] {
            std::mt19937 gen(20240817u);
            const auto uni = [&gen](double lo, double hi) {
              return lo + (hi - lo) * (static_cast<double>(gen()) / 4294967296.0);
            };
            const double h = 1e-5;
            double worst = 0.0;
            int accepted = 0;
            while (accepted < 20) {
              const double a = uni(0.3, 3.0);
              const double mu0 = uni(-2.0, 2.5);
              const double mu1 = uni(-2.0, 2.5);
              if (std::fabs(mu0 - mu1) < 1e-3) continue;
              ++accepted;
              const auto pt = phase::equation_of_state({a, mu0, mu1}).front();
              const double d0 = (single_phase_pressure({a, mu0 + h, mu1}) -
                                 single_phase_pressure({a, mu0 - h, mu1})) /
                                (2.0 * h);
              const double d1 = (single_phase_pressure({a, mu0, mu1 + h}) -
                                 single_phase_pressure({a, mu0, mu1 - h})) /
                                (2.0 * h);
              worst = std::max({worst, std::fabs(d0 - pt.rho0), std::fabs(d1 - pt.rho1)});
            }
            return worst;
          });

  run.add(11, "ground_state", "strong repulsion pins the densities at (e, 0)", 1e-3, [] {
    const auto pt = phase::equation_of_state({200.0, 1.0, 0.0}).front();
    return std::max(std::fabs(pt.rho0 - std::numbers::e), pt.rho1);
  });

  run.add(12, "oracle_v3", "ln Xi at V = 3 against a brute-force double sum", 1e-10, [] {
    const ModelParams pts[] = {
        {1.0, 0.2, -0.4}, {0.5, 1.0, 0.3}, {2.0, -1.0, 0.5}, {1.0, 2.0, 2.0}, {3.0, 0.7, 0.7}};
    double worst = 0.0;
    for (const ModelParams& p : pts) {
      const double lx = fv::log_partition_series(p, 3.0);
      const double oracle =
          static_cast<double>(log_xi_bruteforce(p.a, p.mu0, p.mu1, 3.0, 200));
      worst = std::max(worst, std::fabs(lx - oracle) / std::fabs(oracle));
    }
    return worst;
  });

  return std::move(run.out);
}

}  // namespace mfwr::verify
