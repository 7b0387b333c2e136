#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "grids.hpp"
#include "table.hpp"

namespace mfwr::cli {

// classification grid plus the sampled spinodal boundary curve
std::vector<Table> cmd_phase_diagram(double a, const Grid& g0, const Grid& g1, int jobs);

// fixed points, maximizers, landscape value and curvature per grid point
std::vector<Table> cmd_landscape(double a, const Grid& g0, const Grid& g1, int jobs);

// two-component equation of state over a (mu0, mu1) grid
std::vector<Table> cmd_eos_two(double a, const Grid& g0, const Grid& g1, int jobs);

// one-component isotherm over mu with both branches at the density jump
std::vector<Table> cmd_eos_one(double a, double theta, const Grid& gmu, int jobs);

// Maxwell construction summary and full pressure-curve data per (a, theta)
std::vector<Table> cmd_maxwell(const Grid& ga, const Grid& gt, int jobs);

// finite-volume convergence study over a V list, with fitted rates
std::vector<Table> cmd_finite_volume(double a, double mu0, double mu1,
                                     const std::vector<double>& volumes, int jobs);

struct VerifyOutcome {
  std::vector<Table> tables;  // "criteria" and "summary"
  bool all_pass = false;
};

// runs the acceptance suite; human-readable lines go to stderr
VerifyOutcome cmd_verify(const std::map<std::string, double>& tolerance_overrides);

}  // namespace mfwr::cli
