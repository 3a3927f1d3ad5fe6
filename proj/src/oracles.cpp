#include "morlax/oracles.hpp"

#include <cmath>
#include <string>

#include "morlax/envs.hpp"
#include "morlax/errors.hpp"

namespace morlax {

double lqr_oracle(const TradeoffVector& w, int horizon, double gamma) {
    if (w.m() != 2) throw ShapeError("lqr_oracle expects 2 weights");
    TradeoffVector::checked(w.weights);
    const double Q = w.weights[0];
    const double R = w.weights[1];
    if (R < 0.1)
        throw DomainError("lqr_oracle requires control weight >= 0.1 "
                          "(bounded-action optimum would differ)");
    if (horizon < 1) throw ShapeError("lqr_oracle: horizon must be >= 1");
    if (!(gamma >= 0.0 && gamma < 1.0))
        throw DomainError("lqr_oracle: gamma must be in [0, 1)");

    const double A = kLqrA, B = kLqrB;
    // Backward Riccati recursion for V_t(x) = P_t x^2 with V_H = 0:
    //   P = Q + g A^2 P' - (g A B P')^2 / (R + g B^2 P')
    double P = 0.0;
    for (int t = 0; t < horizon; ++t) {
        const double gP = gamma * P;
        P = Q + gP * A * A - (gP * A * B) * (gP * A * B) / (R + gP * B * B);
    }
    return -P / 3.0 + 0.0;  // E[x0^2] = 1/3 for x0 ~ U[-1, 1]; +0 drops -0
}

ParetoFront pointmass_front_oracle(int grid) {
    if (grid < 2) throw ShapeError("pointmass_front_oracle: grid must be >= 2");
    const int T = kPointmassHorizon;
    const double dt = kPointmassDt;

    std::vector<ObjectiveVector> points;
    points.reserve(static_cast<std::size_t>(grid) * grid);
    for (int ix = 0; ix < grid; ++ix) {
        const double ux = -1.0 + 2.0 * ix / (grid - 1);
        for (int iy = 0; iy < grid; ++iy) {
            const double uy = -1.0 + 2.0 * iy / (grid - 1);
            // Constant-action rollout of the double integrator; initial
            // position is irrelevant to both objectives and v0 = 0.
            double vx = 0.0, speed_sum = 0.0;
            for (int t = 0; t < T; ++t) {
                vx += dt * ux;
                speed_sum += vx;
            }
            // + 0.0 turns the u = 0 case's -0.0 into a plain 0.
            const double energy =
                -static_cast<double>(T) * (ux * ux + uy * uy) + 0.0;
            points.push_back({speed_sum, energy});
        }
    }
    ParetoFront front;
    front.points = nondominated_filter(points);
    front.reference = PointMassEnv::make_spec().hv_reference;
    return front;
}

bool has_oracle(const std::string& env_name) {
    return env_name == "mo-lqr1d" || env_name == "mo-pointmass";
}

}  // namespace morlax
