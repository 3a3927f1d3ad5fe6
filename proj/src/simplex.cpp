#include "morlax/simplex.hpp"

#include <cmath>
#include <string>

#include "morlax/errors.hpp"

namespace morlax {

double TradeoffVector::dot(std::span<const double> v) const {
    if (v.size() != weights.size())
        throw ShapeError("TradeoffVector::dot: length mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) acc += weights[i] * v[i];
    return acc;
}

TradeoffVector TradeoffVector::checked(std::vector<double> w, double tol) {
    if (w.empty()) throw ShapeError("trade-off vector must be non-empty");
    double sum = 0.0;
    for (double x : w) {
        if (!(x >= 0.0))
            throw DomainError("trade-off entries must be nonnegative");
        sum += x;
    }
    if (std::abs(sum - 1.0) > tol)
        throw DomainError("trade-off entries must sum to 1 (got " +
                          std::to_string(sum) + ")");
    return TradeoffVector{std::move(w)};
}

TradeoffVector TradeoffVector::vertex(int m, int axis) {
    if (m < 1 || axis < 0 || axis >= m)
        throw ShapeError("simplex vertex index out of range");
    std::vector<double> w(static_cast<std::size_t>(m), 0.0);
    w[static_cast<std::size_t>(axis)] = 1.0;
    return TradeoffVector{std::move(w)};
}

bool operator==(const TradeoffVector& a, const TradeoffVector& b) {
    return a.weights == b.weights;
}

void SamplingConfig::validate() const {
    if (m < 2) throw ConfigError("sampling requires m >= 2 objectives");
    if (K <= 1) throw ConfigError("K must be > 1");
    if (N < 1) throw ConfigError("N must be >= 1");
    if (N % K != 0) throw ConfigError("K must divide N (got K=" +
                                      std::to_string(K) + ", N=" +
                                      std::to_string(N) + ")");
    if (kappa < 0 || kappa > K) throw ConfigError("kappa must be in [0, K]");
    if (kappa > m) throw ConfigError("kappa must be <= m");
}

std::vector<TradeoffVector> dirichlet_sample(Rng& rng, int m, int n) {
    if (m < 2) throw ShapeError("dirichlet_sample requires m >= 2");
    if (n < 0) throw ShapeError("dirichlet_sample requires n >= 0");
    std::vector<TradeoffVector> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        std::vector<double> w(static_cast<std::size_t>(m));
        double sum = 0.0;
        for (double& x : w) {
            x = -std::log(rng.next_open());  // Exp(1) draw
            sum += x;
        }
        for (double& x : w) x /= sum;
        out.push_back(TradeoffVector{std::move(w)});
    }
    return out;
}

std::vector<TradeoffVector> build_tradeoff_batch(const SamplingConfig& cfg,
                                                 Rng& rng) {
    cfg.validate();
    const int reps = cfg.N / cfg.K;
    std::vector<TradeoffVector> clusters =
        dirichlet_sample(rng, cfg.m, cfg.K - cfg.kappa);
    for (int j = 0; j < cfg.kappa; ++j)
        clusters.push_back(TradeoffVector::vertex(cfg.m, j));

    std::vector<TradeoffVector> batch;
    batch.reserve(static_cast<std::size_t>(cfg.N));
    for (const TradeoffVector& w : clusters)
        for (int r = 0; r < reps; ++r) batch.push_back(w);
    return batch;
}

namespace {

void grid_rec(int m, int resolution, int remaining,
              std::vector<double>& prefix, std::vector<TradeoffVector>& out) {
    if (m == 1) {
        prefix.push_back(static_cast<double>(remaining) / resolution);
        out.push_back(TradeoffVector{prefix});
        prefix.pop_back();
        return;
    }
    for (int k = remaining; k >= 0; --k) {
        prefix.push_back(static_cast<double>(k) / resolution);
        grid_rec(m - 1, resolution, remaining - k, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace

std::vector<TradeoffVector> simplex_grid(int m, int resolution) {
    if (m < 1) throw ShapeError("simplex_grid requires m >= 1");
    if (resolution < 1) throw ShapeError("simplex_grid requires resolution >= 1");
    if (m == 1) return {TradeoffVector{{1.0}}};
    std::vector<TradeoffVector> out;
    out.reserve(static_cast<std::size_t>(simplex_grid_size(m, resolution)));
    std::vector<double> prefix;
    grid_rec(m, resolution, resolution, prefix, out);
    return out;
}

std::uint64_t simplex_grid_size(int m, int resolution) {
    if (m < 1 || resolution < 1)
        throw ShapeError("simplex_grid_size: bad arguments");
    // C(resolution + m - 1, m - 1), multiplied in an order that keeps every
    // intermediate value integral.
    std::uint64_t result = 1;
    for (int i = 1; i <= m - 1; ++i) {
        result = result * static_cast<std::uint64_t>(resolution + i) /
                 static_cast<std::uint64_t>(i);
    }
    return result;
}

}  // namespace morlax
