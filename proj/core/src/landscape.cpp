#include "mfwr/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "mfwr/errors.hpp"
#include "mfwr/special_functions.hpp"
#include "shifted_log_solver.hpp"

namespace mfwr::landscape {

namespace {

void check(const ModelParams& p) {
  if (!(p.a > 0.0) || !std::isfinite(p.a))
    throw DomainError("landscape: need finite a > 0");
  if (!std::isfinite(p.mu0) || !std::isfinite(p.mu1))
    throw DomainError("landscape: potentials must be finite");
}

struct MapPoint {
  double g;   // imbalance_map(y) - y
  double gp;  // d/dy of the same
};

// Warm-started evaluator for sweeps in y. v0, v1 are the scaled densities
// a*u at the two shifted potentials; both derivatives come for free.
class Sweep {
 public:
  explicit Sweep(const ModelParams& p) : p_(p), la_(std::log(p.a)) {}

  MapPoint at(double y) {
    v0_ = detail::solve_shifted_log(p_.mu0 + y + la_, v0_);
    v1_ = detail::solve_shifted_log(p_.mu1 - y + la_, v1_);
    return {(v0_ - v1_) - y, v0_ / (1.0 + v0_) + v1_ / (1.0 + v1_) - 1.0};
  }

 private:
  ModelParams p_;
  double la_;
  double v0_ = -1.0;
  double v1_ = -1.0;
};

// bisection plus a short Newton polish inside a sign-change bracket
double polish_root(const ModelParams& p, double yl, double yr, double gl) {
  Sweep sc(p);
  for (int it = 0; it < 90; ++it) {
    if (yr - yl <= 1e-13 * (1.0 + std::fabs(yl) + std::fabs(yr))) break;
    const double ym = 0.5 * (yl + yr);
    const double gm = sc.at(ym).g;
    if (gm == 0.0) return ym;
    if ((gm > 0.0) == (gl > 0.0)) {
      yl = ym;
      gl = gm;
    } else {
      yr = ym;
    }
  }
  double y = 0.5 * (yl + yr);
  for (int it = 0; it < 8; ++it) {
    const MapPoint q = sc.at(y);
    if (q.gp == 0.0 || !std::isfinite(q.gp)) break;
    const double step = q.g / q.gp;
    if (!std::isfinite(step) || std::fabs(step) > 1.0 + (yr - yl) * 8.0) break;
    y -= step;
    if (std::fabs(step) <= 1e-16 * (1.0 + std::fabs(y))) break;
  }
  return y;
}

// locate a stationary point of g inside [yl, yr] given a sign change of g'
double polish_stationary(const ModelParams& p, double yl, double yr, double gpl) {
  Sweep sc(p);
  for (int it = 0; it < 70 && yr - yl > 1e-10; ++it) {
    const double ym = 0.5 * (yl + yr);
    const double gpm = sc.at(ym).gp;
    if (gpm == 0.0) return ym;
    if ((gpm > 0.0) == (gpl > 0.0)) {
      yl = ym;
      gpl = gpm;
    } else {
      yr = ym;
    }
  }
  return 0.5 * (yl + yr);
}

struct ScanOut {
  std::vector<double> roots;
};

// walk [lo, hi] on a fixed grid; brackets from sign changes of g, plus a
// stationary-point probe so tangencies and sub-grid root pairs are caught
void scan_cells(const ModelParams& p, double lo, double hi, double g_lo, double gp_lo,
                std::vector<double>& roots) {
  const double h = 1e-2;
  const long n = static_cast<long>(std::ceil((hi - lo) / h));
  if (n > 50000000L) throw NumericalError("fixed point scan: range too large");
  Sweep sc(p);
  double y_prev = lo;
  double g_prev = g_lo;
  double gp_prev = gp_lo;
  for (long k = 1; k <= n; ++k) {
    const double y = k == n ? hi : lo + h * static_cast<double>(k);
    const MapPoint q = sc.at(y);
    if (q.g == 0.0) {
      roots.push_back(y);
    } else if (g_prev != 0.0 && (q.g > 0.0) != (g_prev > 0.0)) {
      roots.push_back(polish_root(p, y_prev, y, g_prev));
    } else if ((q.gp > 0.0) != (gp_prev > 0.0)) {
      // same-sign endpoints: look for a dip or touch inside the cell
      const double ys = polish_stationary(p, y_prev, y, gp_prev);
      Sweep one(p);
      const double gs = one.at(ys).g;
      if (g_prev != 0.0 && gs != 0.0 && (gs > 0.0) != (g_prev > 0.0)) {
        roots.push_back(polish_root(p, y_prev, ys, g_prev));
        roots.push_back(polish_root(p, ys, y, gs));
      } else if (std::fabs(gs) <= 5e-12 * (1.0 + std::fabs(ys))) {
        roots.push_back(ys);  // tangency, listed once
      }
    }
    y_prev = y;
    g_prev = q.g;
    gp_prev = q.gp;
  }
}

void dedupe_sorted(std::vector<double>& r) {
  std::vector<double> out;
  for (double v : r) {
    if (out.empty() || std::fabs(v - out.back()) > 1e-9 * (1.0 + std::fabs(v)))
      out.push_back(v);
  }
  r.swap(out);
}

}  // namespace

double free_energy(const ModelParams& p, double y) {
  check(p);
  return species_pressure(p.a, p.mu0 + y) + species_pressure(p.a, p.mu1 - y) -
         y * y / (2.0 * p.a);
}

double free_energy_d1(const ModelParams& p, double y) {
  check(p);
  return mean_density(p.a, p.mu0 + y) - mean_density(p.a, p.mu1 - y) - y / p.a;
}

double free_energy_d2(const ModelParams& p, double y) {
  check(p);
  return mean_density_dx(p.a, p.mu0 + y) + mean_density_dx(p.a, p.mu1 - y) - 1.0 / p.a;
}

double imbalance_map(const ModelParams& p, double y) {
  check(p);
  const double la = std::log(p.a);
  return detail::solve_shifted_log(p.mu0 + y + la) -
         detail::solve_shifted_log(p.mu1 - y + la);
}

double discriminant(const ModelParams& p, double y) {
  check(p);
  const double la = std::log(p.a);
  return detail::solve_shifted_log(p.mu0 + y + la) *
             detail::solve_shifted_log(p.mu1 - y + la) -
         1.0;
}

std::vector<double> fixed_points(const ModelParams& p) {
  check(p);
  const double r0 = 1.0 + std::fabs(p.mu0) + std::fabs(p.mu1) + p.a;

  double hi = r0;
  {
    Sweep sc(p);
    int guard = 0;
    while (sc.at(hi).g >= 0.0) {
      hi *= 2.0;
      if (++guard > 60) throw NumericalError("fixed point scan: no outer bracket above");
    }
  }

  std::vector<double> roots;
  if (p.mu0 == p.mu1) {
    // exact symmetry: y = 0 always solves, the rest come in +/- pairs
    roots.push_back(0.0);
    Sweep sc(p);
    const MapPoint origin = sc.at(0.0);
    std::vector<double> pos;
    const double h = 1e-2;
    const MapPoint first = sc.at(h);
    if (first.g == 0.0) {
      pos.push_back(h);
    } else if (origin.gp > 0.0 && first.g < 0.0) {
      // map expands at the origin, so the positive root is below the grid step
      pos.push_back(polish_root(p, 1e-300, h, 1.0));
    }
    scan_cells(p, h, hi, first.g, first.gp, pos);
    std::sort(pos.begin(), pos.end());
    dedupe_sorted(pos);
    for (double r : pos) {
      if (r > 0.0) {
        roots.push_back(r);
        roots.push_back(-r);
      }
    }
  } else {
    double lo = -r0;
    Sweep sc(p);
    int guard = 0;
    while (sc.at(lo).g <= 0.0) {
      lo *= 2.0;
      if (++guard > 60) throw NumericalError("fixed point scan: no outer bracket below");
    }
    const MapPoint start = sc.at(lo);
    scan_cells(p, lo, hi, start.g, start.gp, roots);
  }

  std::sort(roots.begin(), roots.end());
  dedupe_sorted(roots);
  if (roots.empty() || roots.size() > 3)
    throw NumericalError("fixed point scan: unexpected root count");
  return roots;
}

LandscapeSolution solve(const ModelParams& p) {
  LandscapeSolution out;
  out.fixed_points = fixed_points(p);
  std::vector<double> ev;
  ev.reserve(out.fixed_points.size());
  double vmax = -std::numeric_limits<double>::infinity();
  for (double r : out.fixed_points) {
    ev.push_back(free_energy(p, r));
    vmax = std::max(vmax, ev.back());
  }
  const double tie = 1e-10 * (1.0 + std::fabs(vmax));
  for (std::size_t i = 0; i < ev.size(); ++i) {
    if (ev[i] >= vmax - tie) {
      out.maximizers.push_back(out.fixed_points[i]);
      if (std::fabs(free_energy_d2(p, out.fixed_points[i])) <= 1e-9) out.degenerate = true;
    }
  }
  out.value = vmax;
  return out;
}

}  // namespace mfwr::landscape
