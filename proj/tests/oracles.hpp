#pragma once

// Slow high-precision references (MPFR, ~200 decimal digits) used only to
// pin down the fast double-precision implementations.

namespace oracles {

double lambert_w0_ref(double t);
double mean_density_ref(double a, double x);

// finite-volume single-species series, exact summation to nmax
double species_pressure_v_ref(double a, double x, double V, long nmax);
double mean_density_v_ref(double a, double x, double V, long nmax);

// full two-species double sum at small volume
double log_xi_ref(double a, double mu0, double mu1, double V, long nmax);

}  // namespace oracles
