#pragma once

#include <string>

#include "morlax/envs.hpp"
#include "morlax/pareto.hpp"
#include "morlax/simplex.hpp"

namespace morlax {

inline constexpr double kOracleGamma = 0.99;  // matches the training default

// Optimal scalarized return of the 1-D linear-quadratic task for weights
// w = [state, control]: finite-horizon discounted Riccati recursion for the
// stage cost w1 x^2 + w2 u^2 under x' = A x + B u, negated and averaged
// over x0 ~ U[-1, 1] (E[x0^2] = 1/3). Requires w2 >= 0.1 so the
// unconstrained optimum respects the [-1, 1] actuator bound on the bulk of
// the initial distribution.
double lqr_oracle(const TradeoffVector& w, int horizon = kLqrHorizon,
                  double gamma = kOracleGamma);

// Brute-force achievable front of the point-mass task over constant-action
// open-loop policies on a grid x grid lattice of u in [-1, 1]^2 (odd grid
// recommended so u = 0 and the axis extremes are included). Points are
// undiscounted episode returns (sum v_x, -sum |u|^2), nondominated-filtered.
ParetoFront pointmass_front_oracle(int grid = 41);

// Whether cmd_oracle has something to print for this environment.
bool has_oracle(const std::string& env_name);

}  // namespace morlax
