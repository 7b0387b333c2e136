#include "oracles.hpp"

#include <mpfr.h>

#include <cmath>
#include <stdexcept>

namespace oracles {

namespace {

constexpr mpfr_prec_t kPrec = 700;  // bits, ~210 decimal digits

// v + ln v = s by Newton from a positive seed
void solve_shifted_log_ref(mpfr_t v, const mpfr_t s) {
  mpfr_t g, lnv, tmp;
  mpfr_inits2(kPrec, g, lnv, tmp, (mpfr_ptr)nullptr);
  const double sd = mpfr_get_d(s, MPFR_RNDN);
  if (sd > 1.0)
    mpfr_set_d(v, sd - std::log(sd), MPFR_RNDN);
  else
    mpfr_exp(v, s, MPFR_RNDN);
  for (int it = 0; it < 120; ++it) {
    mpfr_log(lnv, v, MPFR_RNDN);
    mpfr_add(g, v, lnv, MPFR_RNDN);
    mpfr_sub(g, g, s, MPFR_RNDN);            // g = v + ln v - s
    mpfr_add_ui(tmp, v, 1, MPFR_RNDN);       // 1 + v
    mpfr_div(tmp, v, tmp, MPFR_RNDN);        // v / (1 + v)
    mpfr_mul(g, g, tmp, MPFR_RNDN);          // Newton step
    mpfr_sub(v, v, g, MPFR_RNDN);
    if (mpfr_sgn(v) <= 0) mpfr_set_d(v, 1e-300, MPFR_RNDN);
  }
  mpfr_clears(g, lnv, tmp, (mpfr_ptr)nullptr);
}

}  // namespace

double lambert_w0_ref(double t) {
  if (!(t > 0.0)) throw std::domain_error("lambert_w0_ref: t > 0");
  mpfr_t s, v;
  mpfr_inits2(kPrec, s, v, (mpfr_ptr)nullptr);
  mpfr_set_d(s, t, MPFR_RNDN);
  mpfr_log(s, s, MPFR_RNDN);
  solve_shifted_log_ref(v, s);
  const double out = mpfr_get_d(v, MPFR_RNDN);
  mpfr_clears(s, v, (mpfr_ptr)nullptr);
  return out;
}

double mean_density_ref(double a, double x) {
  mpfr_t s, v, la;
  mpfr_inits2(kPrec, s, v, la, (mpfr_ptr)nullptr);
  mpfr_set_d(la, a, MPFR_RNDN);
  mpfr_log(la, la, MPFR_RNDN);
  mpfr_set_d(s, x, MPFR_RNDN);
  mpfr_add(s, s, la, MPFR_RNDN);
  solve_shifted_log_ref(v, s);
  mpfr_div_d(v, v, a, MPFR_RNDN);
  const double out = mpfr_get_d(v, MPFR_RNDN);
  mpfr_clears(s, v, la, (mpfr_ptr)nullptr);
  return out;
}

namespace {

// accumulates sum_{n=0}^{nmax} n^k exp(n ln V - ln n! + x n - a n^2/(2V))
void series_moments(double a, double x, double V, long nmax, mpfr_t s0, mpfr_t s1) {
  mpfr_t lv, term, expo, nn, lg;
  mpfr_inits2(kPrec, lv, term, expo, nn, lg, (mpfr_ptr)nullptr);
  mpfr_set_d(lv, V, MPFR_RNDN);
  mpfr_log(lv, lv, MPFR_RNDN);
  mpfr_set_ui(s0, 0, MPFR_RNDN);
  mpfr_set_ui(s1, 0, MPFR_RNDN);
  for (long n = 0; n <= nmax; ++n) {
    mpfr_set_si(nn, n, MPFR_RNDN);
    mpfr_add_ui(lg, nn, 1, MPFR_RNDN);
    mpfr_lngamma(lg, lg, MPFR_RNDN);
    mpfr_mul(expo, nn, lv, MPFR_RNDN);      // n ln V
    mpfr_sub(expo, expo, lg, MPFR_RNDN);    // - ln n!
    mpfr_mul_d(term, nn, x, MPFR_RNDN);     // + x n
    mpfr_add(expo, expo, term, MPFR_RNDN);
    mpfr_mul(term, nn, nn, MPFR_RNDN);      // - a n^2 / (2V)
    mpfr_mul_d(term, term, a / (2.0 * V), MPFR_RNDN);
    mpfr_sub(expo, expo, term, MPFR_RNDN);
    mpfr_exp(term, expo, MPFR_RNDN);
    mpfr_add(s0, s0, term, MPFR_RNDN);
    mpfr_mul(term, term, nn, MPFR_RNDN);
    mpfr_add(s1, s1, term, MPFR_RNDN);
  }
  mpfr_clears(lv, term, expo, nn, lg, (mpfr_ptr)nullptr);
}

}  // namespace

double species_pressure_v_ref(double a, double x, double V, long nmax) {
  mpfr_t s0, s1;
  mpfr_inits2(kPrec, s0, s1, (mpfr_ptr)nullptr);
  series_moments(a, x, V, nmax, s0, s1);
  mpfr_log(s0, s0, MPFR_RNDN);
  mpfr_div_d(s0, s0, V, MPFR_RNDN);
  const double out = mpfr_get_d(s0, MPFR_RNDN);
  mpfr_clears(s0, s1, (mpfr_ptr)nullptr);
  return out;
}

double mean_density_v_ref(double a, double x, double V, long nmax) {
  mpfr_t s0, s1;
  mpfr_inits2(kPrec, s0, s1, (mpfr_ptr)nullptr);
  series_moments(a, x, V, nmax, s0, s1);
  mpfr_div(s1, s1, s0, MPFR_RNDN);
  mpfr_div_d(s1, s1, V, MPFR_RNDN);
  const double out = mpfr_get_d(s1, MPFR_RNDN);
  mpfr_clears(s0, s1, (mpfr_ptr)nullptr);
  return out;
}

double log_xi_ref(double a, double mu0, double mu1, double V, long nmax) {
  mpfr_t lv, sum, term, expo, n0m, n1m, lg0, lg1, c0;
  mpfr_inits2(kPrec, lv, sum, term, expo, n0m, n1m, lg0, lg1, c0, (mpfr_ptr)nullptr);
  mpfr_set_d(lv, V, MPFR_RNDN);
  mpfr_log(lv, lv, MPFR_RNDN);
  mpfr_set_ui(sum, 0, MPFR_RNDN);
  for (long n0 = 0; n0 <= nmax; ++n0) {
    mpfr_set_si(n0m, n0, MPFR_RNDN);
    mpfr_add_ui(lg0, n0m, 1, MPFR_RNDN);
    mpfr_lngamma(lg0, lg0, MPFR_RNDN);
    mpfr_mul(c0, n0m, lv, MPFR_RNDN);
    mpfr_sub(c0, c0, lg0, MPFR_RNDN);
    mpfr_mul_d(term, n0m, mu0, MPFR_RNDN);
    mpfr_add(c0, c0, term, MPFR_RNDN);  // n0 ln V - ln n0! + mu0 n0
    for (long n1 = 0; n1 <= nmax; ++n1) {
      mpfr_set_si(n1m, n1, MPFR_RNDN);
      mpfr_add_ui(lg1, n1m, 1, MPFR_RNDN);
      mpfr_lngamma(lg1, lg1, MPFR_RNDN);
      mpfr_mul(expo, n1m, lv, MPFR_RNDN);
      mpfr_sub(expo, expo, lg1, MPFR_RNDN);
      mpfr_mul_d(term, n1m, mu1, MPFR_RNDN);
      mpfr_add(expo, expo, term, MPFR_RNDN);
      mpfr_add(expo, expo, c0, MPFR_RNDN);
      mpfr_mul(term, n0m, n1m, MPFR_RNDN);
      mpfr_mul_d(term, term, a / V, MPFR_RNDN);
      mpfr_sub(expo, expo, term, MPFR_RNDN);
      mpfr_exp(term, expo, MPFR_RNDN);
      mpfr_add(sum, sum, term, MPFR_RNDN);
    }
  }
  mpfr_log(sum, sum, MPFR_RNDN);
  const double out = mpfr_get_d(sum, MPFR_RNDN);
  mpfr_clears(lv, sum, term, expo, n0m, n1m, lg0, lg1, c0, (mpfr_ptr)nullptr);
  return out;
}

}  // namespace oracles
