#pragma once

#include <cstdint>

#include "mfwr/landscape.hpp"

namespace mfwr::fv {

// Finite-volume single-species pressure:
// (1/V) ln sum_n V^n/n! exp(x n - a n^2 / (2V)), with a certified tail cut.
double species_pressure_v(double a, double x, double V);

// <n>/V under the same weights; the x-derivative of species_pressure_v.
double mean_density_v(double a, double x, double V);

// Var(n)/V; second x-derivative of species_pressure_v, never negative.
double mean_density_v_dx(double a, double x, double V);

struct ModeLocation {
  std::int64_t mode;  // argmax of the series weights
  double lower;       // analytic bracket: lower <= mode <= upper
  double upper;
};

// Argmax of the weights, with the bracket and unimodality verified.
ModeLocation mode_location(double a, double x, double V);

// Finite-volume landscape over the imbalance coordinate.
double free_energy_v(const ModelParams& p, double y, double V);

// ln of the two-species partition function by exact reduction to a single
// sum over one species count (the other species summed in closed form).
double log_partition_series(const ModelParams& p, double V);

// The same quantity through the Gaussian-linearization integral
// sqrt(V/(2 pi a)) * Int exp(V free_energy_v(y)) dy, an exact identity.
double log_partition_integral(const ModelParams& p, double V);

struct VMaximizer {
  double y;          // maximizer of free_energy_v
  double curvature;  // second derivative there (finite difference)
};

// Global maximizer of free_energy_v; the positive one when tied by symmetry.
VMaximizer free_energy_v_maximizer(const ModelParams& p, double V);

struct Densities {
  double rho0, rho1;
};

// Finite-volume species densities as ratios of the Laplace integrals.
Densities finite_densities(const ModelParams& p, double V);

struct EffectivePotentials {
  double mu0_eff, mu1_eff;
};

// Screened potentials felt by an inserted (n0, n1) particle cluster.
EffectivePotentials effective_potentials(const ModelParams& p, double V, std::int64_t n0,
                                         std::int64_t n1);

// Finite-volume correlation weight of an (n0, n1) insertion.
double correlation(const ModelParams& p, double V, std::int64_t n0, std::int64_t n1);

}  // namespace mfwr::fv
