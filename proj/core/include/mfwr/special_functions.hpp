#pragma once

namespace mfwr {

// Principal-branch Lambert W for t > 0, solved in log space as v + ln v = ln t.
// Relative accuracy ~1e-14 across the full positive range.
double lambert_w0(double t);

// Self-consistent density: the unique rho > 0 with rho = exp(x - a*rho).
// Equals W(a e^x) / a. Requires a > 0; see free_gas_density for a = 0.
double mean_density(double a, double x);

// d/dx mean_density = u / (1 + a u); lies in (0, min(u, 1/a)).
double mean_density_dx(double a, double x);

// Pressure contribution of one species: (a/2) u^2 + u with u = mean_density.
double species_pressure(double a, double x);

// Non-interacting limit of mean_density as a -> 0.
double free_gas_density(double x);

// Inverse of mean_density in x: returns x with mean_density(a, x) = rho.
double potential_of_density(double a, double rho);

}  // namespace mfwr
