#pragma once

namespace bcscg {

// Solver configuration. Defaults follow the standard experimental setup:
// sufficient decrease gamma(r) = rho * r^2, budget of budget_multiplier*(n+1)
// true evaluations, and r0 = delta0 = initial_radius_fraction * min box width.
struct SolverParams {
  double rho = 0.25;
  double tau_l = 2.0;  // shrink factor for r and delta_p on poll failure
  double tau_u = 2.0;  // expansion factor for delta_p after long search steps
  double eps = 1e-6;   // minimum poll radius; reaching it declares stationarity
  double eps2 = 0.01;  // ball inflation when collecting simplex-gradient points
  double vicinity_count_fraction = 0.1;  // l = floor(fraction * n)
  double initial_radius_fraction = 0.1;
  int budget_multiplier = 40;
  int brent_max_iter = 20;
  double brent_tol = 1e-5;
};

}  // namespace bcscg
