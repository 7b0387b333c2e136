#pragma once

#include <vector>

namespace mfwr {

struct ModelParams {
  double a;    // cross-species repulsion strength, > 0
  double mu0;  // chemical potential, species 0
  double mu1;  // chemical potential, species 1
};

namespace landscape {

// Grand-potential landscape over the imbalance coordinate y. Its global
// maximizers select the thermodynamic state.
double free_energy(const ModelParams& p, double y);
double free_energy_d1(const ModelParams& p, double y);
double free_energy_d2(const ModelParams& p, double y);

// Self-consistency map w: stationary points of free_energy solve w(y) = y.
double imbalance_map(const ModelParams& p, double y);

// a^2 u(mu0+y) u(mu1-y) - 1: same sign as d/dy imbalance_map - 1.
double discriminant(const ModelParams& p, double y);

// All solutions of imbalance_map(y) = y, ascending. One to three of them;
// a tangency (double root) is listed once.
std::vector<double> fixed_points(const ModelParams& p);

struct LandscapeSolution {
  std::vector<double> fixed_points;  // ascending
  std::vector<double> maximizers;    // global maximizers among them, ascending
  double value = 0.0;                // free_energy at the maximizers
  bool degenerate = false;           // curvature vanishes at a maximizer
};

LandscapeSolution solve(const ModelParams& p);

}  // namespace landscape
}  // namespace mfwr
