#include "mfwr/special_functions.hpp"

#include <cmath>
#include <limits>

#include "mfwr/errors.hpp"
#include "shifted_log_solver.hpp"

namespace mfwr {

namespace detail {

namespace {

double newton_shifted_log(double s, double v) {
  // Stop tolerance from the problem scale, then polish to the rounding
  // floor: the extra steps cost little and the identity residual checks
  // downstream need every digit at large |s|.
  const double floor_tol = 2.2e-16 * (1.0 + std::fabs(s));
  const double accept_tol = 1e-14 * (1.0 + std::fabs(s));
  double best_v = v;
  double best_g = std::numeric_limits<double>::infinity();
  int polish = 0;
  for (int it = 0; it < 60; ++it) {
    const double g = v + std::log(v) - s;
    const double ag = std::fabs(g);
    if (ag < best_g) {
      best_g = ag;
      best_v = v;
    }
    if (ag <= floor_tol) break;
    if (ag <= accept_tol && ++polish > 2) break;
    double next = v - g * v / (v + 1.0);
    if (!(next > 0.0) || !std::isfinite(next)) next = 0.5 * v;  // bisect toward 0
    v = next;
  }
  if (!(best_g <= 1e-12 * (1.0 + std::fabs(s))))
    throw NumericalError("shifted-log solve did not converge");
  return best_v;
}

}  // namespace

double solve_shifted_log(double s) {
  if (!std::isfinite(s)) throw DomainError("shifted-log solve: argument not finite");
  // below this the correction to v = e^s is beyond double resolution
  if (s < -37.0) return std::exp(s);
  const double v0 = s <= 0.0 ? std::exp(s) : (s > 1.0 ? s - std::log(s) : 1.0);
  return newton_shifted_log(s, v0);
}

double solve_shifted_log(double s, double v_hint) {
  if (!(v_hint > 0.0) || !std::isfinite(v_hint)) return solve_shifted_log(s);
  if (!std::isfinite(s)) throw DomainError("shifted-log solve: argument not finite");
  if (s < -37.0) return std::exp(s);
  // a hint far from the root would slow Newton down, not help it
  if (!(std::fabs(v_hint + std::log(v_hint) - s) <= 2.0)) return solve_shifted_log(s);
  return newton_shifted_log(s, v_hint);
}

}  // namespace detail

double lambert_w0(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("lambert_w0: need finite t > 0");
  if (t < 1e-4) {
    // W(t) = t - t^2 + 3/2 t^3 - 8/3 t^4 + 125/24 t^5 + O(t^6)
    return t * (1.0 + t * (-1.0 + t * (1.5 + t * (-8.0 / 3.0 + t * (125.0 / 24.0)))));
  }
  return detail::solve_shifted_log(std::log(t));
}

static void check_ax(double a, double x) {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("mean-field density: need finite a > 0");
  if (!std::isfinite(x)) throw DomainError("mean-field density: potential not finite");
}

double mean_density(double a, double x) {
  check_ax(a, x);
  return detail::solve_shifted_log(x + std::log(a)) / a;
}

double mean_density_dx(double a, double x) {
  check_ax(a, x);
  const double v = detail::solve_shifted_log(x + std::log(a));
  return v / (a * (1.0 + v));
}

double species_pressure(double a, double x) {
  check_ax(a, x);
  const double v = detail::solve_shifted_log(x + std::log(a));
  return (0.5 * v * v + v) / a;
}

double free_gas_density(double x) {
  if (!std::isfinite(x)) throw DomainError("free_gas_density: potential not finite");
  return std::exp(x);
}

double potential_of_density(double a, double rho) {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("potential_of_density: need a > 0");
  if (!(rho > 0.0) || !std::isfinite(rho)) throw DomainError("potential_of_density: need rho > 0");
  return a * rho + std::log(rho);
}

}  // namespace mfwr
