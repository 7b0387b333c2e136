#include "mfwr/phase_diagram.hpp"

#include <quadmath.h>

#include <cmath>
#include <string>

#include "mfwr/errors.hpp"
#include "mfwr/special_functions.hpp"
#include "shifted_log_solver.hpp"

namespace mfwr::phase {

namespace {

void check_model(const ModelParams& p) {
  if (!(p.a > 0.0) || !std::isfinite(p.a) || !std::isfinite(p.mu0) || !std::isfinite(p.mu1))
    throw DomainError("phase: need finite a > 0 and finite potentials");
}

void check_oc(const OneComponentParams& p) {
  if (!(p.a > 0.0) || !std::isfinite(p.a)) throw DomainError("one-component: need finite a > 0");
  if (!(p.theta > 0.0) || !std::isfinite(p.theta))
    throw DomainError("one-component: need finite theta > 0");
  if (!std::isfinite(p.mu)) throw DomainError("one-component: potential not finite");
}

constexpr double kLineEps = 1e-12;  // width of the symmetric / critical line

// formal pressure curve of the kept species at density rho
double formal_pressure(double a, double theta, double rho) {
  return a * theta * rho * std::exp(-a * rho) + rho + theta * std::expm1(-a * rho);
}

// ---- extended-precision internals for the equal-area check ----------------
//
// The plateau construction makes the equal-area integral vanish identically,
// so the computed value is pure cancellation noise. Its sensitivity to the
// order parameter grows like e^ybar, which pushes the whole chain (order
// parameter, jump endpoints, plateau, quadrature) beyond double precision
// well inside the target parameter range. These helpers run it in
// __float128 and only the final residual is rounded back.

using quad = __float128;

quad psi_q(quad y) {
  if (y < quad(1e-4)) {
    const quad y2 = y * y;
    return y2 * (quad(1) / 24 - y2 * (quad(1) / 960 - y2 / quad(36288)));
  }
  const quad em = expm1q(y);
  if (y < quad(1)) {
    const quad q = (y - em) / em;
    return y + q + log1pq(q);
  }
  if (y > quad(11000)) return logq(y) - 1 + (y + 1) * expq(-y);
  return y + y / em - 1 + logq(y) - logq(em);
}

quad psi_prime_q(quad y) {
  if (y < quad(1e-4)) {
    const quad y2 = y * y;
    return y * (quad(1) / 12 - y2 * (quad(1) / 240 - y2 / quad(6048)));
  }
  if (y > quad(11000)) return 1 / y - y * expq(-y);
  const quad em = expm1q(y);
  const quad r = y / em;
  const quad rp = (em - y * (em + 1)) / (em * em);
  return 1 + rp * (1 + 1 / r);
}

quad solve_shifted_log_q(quad s, double seed) {
  quad v = seed > 0.0 ? quad(seed) : expq(s);
  for (int it = 0; it < 6; ++it) {
    const quad g = v + logq(v) - s;
    v -= g * v / (v + 1);
  }
  return v;
}

quad order_parameter_q(quad delta) {
  quad hi = 1;
  int guard = 0;
  while (psi_q(hi) < delta) {
    hi *= 2;
    if (++guard > 60) throw NumericalError("order parameter: no bracket");
  }
  quad lo = 0;
  for (int it = 0; it < 150; ++it) {
    const quad mid = (lo + hi) / 2;
    if (psi_q(mid) < delta)
      lo = mid;
    else
      hi = mid;
  }
  quad y = (lo + hi) / 2;
  for (int it = 0; it < 4; ++it) {
    const quad dp = psi_prime_q(y);
    if (!(dp > 0)) break;
    y -= (psi_q(y) - delta) / dp;
  }
  return y;
}

struct EqualAreaSetup {
  quad qa, qth, ps;
};

quad equal_area_integrand(const EqualAreaSetup& c, quad tau) {
  const quad rho = expq(tau);
  const quad phat = c.qa * c.qth * rho * expq(-c.qa * rho) + rho + c.qth * expm1q(-c.qa * rho);
  return (phat - c.ps) * expq(-tau);
}

quad equal_area_rec(const EqualAreaSetup& c, quad lo, quad hi, quad flo, quad fm, quad fhi,
                    quad whole, quad tol, int depth, long& evals) {
  const quad m = (lo + hi) / 2;
  if ((evals += 2) > 2000000) throw NumericalError("maxwell_residual: quadrature budget exhausted");
  const quad flm = equal_area_integrand(c, (lo + m) / 2);
  const quad frm = equal_area_integrand(c, (m + hi) / 2);
  const quad left = (m - lo) / 6 * (flo + 4 * flm + fm);
  const quad right = (hi - m) / 6 * (fm + 4 * frm + fhi);
  const quad sum2 = left + right;
  const quad diff = sum2 - whole;
  if (fabsq(diff) <= 15 * tol) return sum2 + diff / 15;
  if (depth <= 0) throw NumericalError("maxwell_residual: quadrature depth exhausted");
  return equal_area_rec(c, lo, m, flo, flm, fm, left, tol / 2, depth - 1, evals) +
         equal_area_rec(c, m, hi, fm, frm, fhi, right, tol / 2, depth - 1, evals);
}

}  // namespace

std::string region_code(Region r) {
  switch (r) {
    case Region::Single: return "R";
    case Region::Coexistence: return "M";
    case Region::Critical: return "C";
  }
  return "?";
}

double critical_mu(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("critical_mu: need finite a > 0");
  return 1.0 - std::log(a);
}

double order_parameter_inverse(double y) {
  if (!(y > 0.0) || !std::isfinite(y)) throw DomainError("order_parameter_inverse: need y > 0");
  if (y < 1e-2) {
    // series of the closed form below; no cancellation at small y
    const double y2 = y * y;
    return y2 * (1.0 / 24.0 - y2 * (1.0 / 960.0 - y2 / 36288.0));
  }
  if (y < 1.0) {
    const double em = std::expm1(y);
    const double q = (y - em) / em;
    return y + q + std::log1p(q);
  }
  if (y < 30.0) {
    const double em = std::expm1(y);
    return y + y / em - 1.0 + std::log(y) - std::log(em);
  }
  return std::log(y) - 1.0 + std::exp(-y) * (y + 1.0);
}

double order_parameter_inverse_dy(double y) {
  if (!(y > 0.0) || !std::isfinite(y)) throw DomainError("order_parameter_inverse_dy: need y > 0");
  if (y < 1e-2) {
    const double y2 = y * y;
    return y * (1.0 / 12.0 - y2 * (1.0 / 240.0 - y2 / 6048.0));
  }
  if (y >= 30.0) return 1.0 / y - y * std::exp(-y);
  const double em = std::expm1(y);
  const double r = y / em;
  const double rp = (em - y * (em + 1.0)) / (em * em);
  return 1.0 + rp * (1.0 + 1.0 / r);
}

double order_parameter(double a, double mu) {
  if (!(a > 0.0) || !std::isfinite(a) || !std::isfinite(mu))
    throw DomainError("order_parameter: need finite a > 0 and finite mu");
  const double delta = mu - critical_mu(a);
  if (!(delta > 0.0))
    throw DomainError("order_parameter: potential not above the critical line");
  double hi = 1.0;
  int guard = 0;
  while (order_parameter_inverse(hi) < delta) {
    hi *= 2.0;
    if (++guard > 60) throw NumericalError("order_parameter: no bracket");
  }
  double lo = 0.0;
  for (int it = 0; it < 110 && hi - lo > 1e-14 * std::max(1.0, lo); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (order_parameter_inverse(mid) < delta)
      lo = mid;
    else
      hi = mid;
  }
  double y = 0.5 * (lo + hi);
  for (int it = 0; it < 3; ++it) {
    const double dp = order_parameter_inverse_dy(y);
    if (!(dp > 0.0)) break;
    const double step = (order_parameter_inverse(y) - delta) / dp;
    y -= step;
    if (!(y > 0.0)) y = 0.5 * (lo + hi);
    if (std::fabs(step) <= 1e-17 * (1.0 + y)) break;
  }
  return y;
}

double spinodal_eta(double xi) {
  if (!std::isfinite(xi) || !(xi >= 1.0)) throw DomainError("spinodal_eta: need xi >= 1");
  const double s = std::sqrt((xi - 1.0) * (xi + 1.0));
  return s - std::log1p(s + (xi - 1.0));
}

PhaseClass classify(const ModelParams& p) {
  check_model(p);
  double xi = 0.5 * (p.mu0 + p.mu1) + std::log(p.a);
  bool insp = false;
  if (xi > 1.0) insp = 0.5 * std::fabs(p.mu0 - p.mu1) < spinodal_eta(xi);
  if (std::fabs(p.mu0 - p.mu1) <= kLineEps) {
    const double mu = 0.5 * (p.mu0 + p.mu1);
    const double d = mu - critical_mu(p.a);
    if (std::fabs(d) <= kLineEps) return {Region::Critical, insp, std::nullopt};
    if (d > 0.0) return {Region::Coexistence, insp, order_parameter(p.a, mu)};
  }
  return {Region::Single, insp, std::nullopt};
}

std::vector<EosPoint> equation_of_state(const ModelParams& p) {
  const PhaseClass pc = classify(p);
  if (pc.region == Region::Critical)
    throw CriticalPointError("equation_of_state: undefined at the critical point");
  if (pc.region == Region::Coexistence) {
    const double mu = 0.5 * (p.mu0 + p.mu1);
    const double yb = *pc.order_parameter;
    const double zp = mean_density(p.a, mu + yb);
    const double zm = mean_density(p.a, mu - yb);
    const double press = p.a * zp * zm + zp + zm;
    return {{zp, zm, zp, zm, press}, {zm, zp, zm, zp, press}};
  }
  const auto sol = landscape::solve(p);
  const double ys = sol.maximizers.back();
  const double z0 = mean_density(p.a, p.mu0 + ys);
  const double z1 = mean_density(p.a, p.mu1 - ys);
  return {{z0, z1, z0, z1, p.a * z0 * z1 + z0 + z1}};
}

double one_component_density(const OneComponentParams& p, Side side) {
  check_oc(p);
  const double lt = std::log(p.theta);
  if (std::fabs(p.mu - lt) <= kLineEps) {
    const double d = std::log(p.a * p.theta) - 1.0;
    if (std::fabs(d) <= kLineEps)
      throw CriticalPointError("one_component_density: undefined at the critical point");
    if (d > 0.0) {
      if (side == Side::Auto)
        throw AmbiguityError("one_component_density: pick a side on the coexistence line");
      const CoexistenceData cd = coexistence_data(p.a, p.theta);
      return side == Side::Left ? cd.z_minus : cd.z_plus;
    }
    return mean_density(p.a, p.mu);  // symmetric but subcritical
  }
  const ModelParams mp{p.a, p.mu, lt};
  const auto sol = landscape::solve(mp);
  // ties can only appear numerically next to the line; break by its side
  const double ys = (sol.maximizers.size() > 1 && p.mu < lt) ? sol.maximizers.front()
                                                             : sol.maximizers.back();
  return mean_density(p.a, p.mu + ys);
}

double one_component_pressure(const OneComponentParams& p) {
  check_oc(p);
  const double lt = std::log(p.theta);
  double rho;
  if (std::fabs(p.mu - lt) <= kLineEps) {
    const double d = std::log(p.a * p.theta) - 1.0;
    // both jump endpoints give the same value; the low side is better conditioned
    rho = d > kLineEps ? coexistence_data(p.a, p.theta).z_minus : mean_density(p.a, p.mu);
  } else {
    rho = one_component_density(p, Side::Auto);
  }
  return formal_pressure(p.a, p.theta, rho);
}

double pressure_curve(double a, double theta, double rho) {
  if (!(a > 0.0) || !(theta > 0.0) || !(rho >= 0.0))
    throw DomainError("pressure_curve: need a > 0, theta > 0, rho >= 0");
  return formal_pressure(a, theta, rho);
}

CoexistenceData coexistence_data(double a, double theta) {
  OneComponentParams probe{a, theta, 0.0};
  check_oc(probe);
  const double d = std::log(a * theta) - 1.0;
  if (!(d > 0.0)) throw DomainError("coexistence_data: no jump for a <= e/theta");
  const double mu = std::log(theta);
  const double yb = order_parameter(a, mu);
  const double zp = mean_density(a, mu + yb);
  const double zm = mean_density(a, mu - yb);
  // the two endpoints share the plateau value; the low-density side avoids
  // the near-total cancellation the high-density side suffers when the
  // plateau sits far below theta
  return {yb, zm, zp, formal_pressure(a, theta, zm)};
}

double maxwell_residual(double a, double theta) {
  OneComponentParams probe{a, theta, 0.0};
  check_oc(probe);
  if (!(std::log(a * theta) - 1.0 > 0.0))
    throw DomainError("maxwell_residual: no coexistence for a <= e/theta");

  const quad qa = a;
  const quad qth = theta;
  const quad delta = logq(qa * qth) - 1;
  const quad yb = order_parameter_q(delta);
  const quad la = logq(qa);
  const quad mu = logq(qth);
  // seeds from the double-precision pipeline keep the quad Newton short
  const double yb_d = static_cast<double>(yb);
  const double seed_m = detail::solve_shifted_log(std::log(theta) - yb_d + std::log(a));
  const double seed_p = detail::solve_shifted_log(std::log(theta) + yb_d + std::log(a));
  const quad zm = solve_shifted_log_q(mu - yb + la, seed_m) / qa;
  const quad zp = solve_shifted_log_q(mu + yb + la, seed_p) / qa;
  const EqualAreaSetup c{qa, qth, qa * zp * zm + zp + zm - qth};

  const quad lo = logq(zm);
  const quad hi = logq(zp);
  const quad flo = equal_area_integrand(c, lo);
  const quad fm = equal_area_integrand(c, (lo + hi) / 2);
  const quad fhi = equal_area_integrand(c, hi);
  const quad whole = (hi - lo) / 6 * (flo + 4 * fm + fhi);
  long evals = 3;
  const quad val = equal_area_rec(c, lo, hi, flo, fm, fhi, whole, quad(5e-14), 60, evals);
  return static_cast<double>(val);
}

double critical_isotherm_maximizer(double a, double eta) {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("critical_isotherm_maximizer: need a > 0");
  if (!(eta > 0.0) || !std::isfinite(eta))
    throw DomainError("critical_isotherm_maximizer: need eta > 0");
  const double mc = critical_mu(a);
  const ModelParams p{a, mc + 0.5 * eta, mc - 0.5 * eta};
  return landscape::solve(p).maximizers.back();
}

}  // namespace mfwr::phase
