#pragma once

// Internal root solver shared by the implementation files: the unique v > 0
// with v + ln v = s. Strictly increasing and concave in v, so Newton with a
// positivity guard is globally convergent from the starts used below.

namespace mfwr::detail {

double solve_shifted_log(double s);

// warm start for sweeps where s changes a little between calls
double solve_shifted_log(double s, double v_hint);

}  // namespace mfwr::detail
