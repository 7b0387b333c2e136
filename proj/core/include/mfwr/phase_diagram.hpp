#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mfwr/landscape.hpp"

namespace mfwr::phase {

enum class Region {
  Single,       // unique phase
  Coexistence,  // symmetric line above the critical potential
  Critical      // endpoint of the coexistence line
};

// single-letter code used in tabulated output: R, M, or C
std::string region_code(Region r);

struct PhaseClass {
  Region region;
  bool in_spinodal;                      // strictly inside the three-solution set
  std::optional<double> order_parameter; // set on the coexistence line only
};

// potential at which the symmetric line turns critical: 1 - ln a
double critical_mu(double a);

PhaseClass classify(const ModelParams& p);

// Excess symmetric potential needed to sustain an imbalance y > 0:
// psi(y) = y + y/(e^y - 1) - 1 + ln(y / (e^y - 1)), increasing from 0.
double order_parameter_inverse(double y);
double order_parameter_inverse_dy(double y);

// Unique ybar > 0 with order_parameter_inverse(ybar) = mu - critical_mu(a).
// Requires mu > critical_mu(a).
double order_parameter(double a, double mu);

// Half-width |mu0 - mu1| / 2 of the three-solution region at mean shifted
// potential xi = (mu0 + mu1) / 2 + ln a >= 1. Increasing in xi.
double spinodal_eta(double xi);

struct EosPoint {
  double z0, z1;      // species activities
  double rho0, rho1;  // species densities (equal to the activities here)
  double pressure;
};

// One point in the single-phase region, the two swapped points on the
// coexistence line; throws CriticalPointError at the critical point.
std::vector<EosPoint> equation_of_state(const ModelParams& p);

struct OneComponentParams {
  double a;      // repulsion strength
  double theta;  // activity of the integrated-out species
  double mu;     // chemical potential of the kept species
};

enum class Side { Left, Right, Auto };

// Density of the kept species. On the coexistence line (mu = ln theta with
// a theta > e) a side must be chosen; Auto throws AmbiguityError there.
double one_component_density(const OneComponentParams& p, Side side = Side::Auto);

// Pressure of the kept species, continuous across the coexistence line.
double one_component_pressure(const OneComponentParams& p);

// Formal pressure curve at a prescribed density; traces the full loop,
// including the unstable branch, when a > e / theta.
double pressure_curve(double a, double theta, double rho);

struct CoexistenceData {
  double ybar;              // order parameter at mu = ln theta
  double z_minus, z_plus;   // density jump endpoints
  double plateau;           // common pressure on [z_minus, z_plus]
};

// Endpoint data of the density jump; requires a > e / theta.
CoexistenceData coexistence_data(double a, double theta);

// Equal-area residual of the pressure plateau across the jump; vanishes
// identically, so the returned value measures numerical error only.
double maxwell_residual(double a, double theta);

// Global landscape maximizer along the critical isotherm
// mu0 + mu1 = 2 (1 - ln a) at separation mu0 - mu1 = eta > 0.
double critical_isotherm_maximizer(double a, double eta);

}  // namespace mfwr::phase
