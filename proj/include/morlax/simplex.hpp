#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "morlax/rng.hpp"

namespace morlax {

// Point on the probability simplex: nonnegative entries summing to one.
// The multi-objective machinery uses m >= 2; length 1 (the degenerate
// simplex {[1]}) is permitted so that the single-objective regression path
// can reuse every downstream type unchanged.
struct TradeoffVector {
    std::vector<double> weights;

    int m() const { return static_cast<int>(weights.size()); }
    double dot(std::span<const double> v) const;

    // Validates nonnegativity and sum == 1 within tol.
    static TradeoffVector checked(std::vector<double> w, double tol = 1e-9);
    static TradeoffVector vertex(int m, int axis);
};

bool operator==(const TradeoffVector& a, const TradeoffVector& b);

// Cluster layout for one training iteration: K distinct trade-offs, each
// assigned to a contiguous block of N/K environment instances, with the
// last kappa clusters pinned to simplex vertices e_1..e_kappa.
struct SamplingConfig {
    int m = 2;      // objective count
    int K = 8;      // distinct trade-offs per iteration
    int kappa = 2;  // pinned extreme vertices
    int N = 64;     // parallel environment instances

    // Throws ConfigError on violation. Messages name the offending fields.
    void validate() const;
};

// n draws from the flat Dirichlet (all concentrations 1): sample unit-rate
// exponentials and normalize by their sum. m < 2 is an error.
std::vector<TradeoffVector> dirichlet_sample(Rng& rng, int m, int n);

// Per-instance trade-off assignment for one iteration. Layout:
//   [d_1 x N/K, ..., d_{K-kappa} x N/K, e_1 x N/K, ..., e_kappa x N/K]
// where d_i are fresh Dirichlet draws and e_j are simplex vertices.
std::vector<TradeoffVector> build_tradeoff_batch(const SamplingConfig& cfg,
                                                 Rng& rng);

// All points of the resolution-th simplex lattice {k/resolution}, first
// coordinate descending; size C(resolution + m - 1, m - 1).
std::vector<TradeoffVector> simplex_grid(int m, int resolution);
std::uint64_t simplex_grid_size(int m, int resolution);

}  // namespace morlax
