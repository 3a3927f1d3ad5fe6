#include <cmath>
#include <cstddef>
#include <string>

#include "morlax/errors.hpp"
#include "morlax/trainer.hpp"

namespace morlax {

namespace {

void check_batch_shapes(const RolloutBatch& batch) {
    const std::size_t rows = static_cast<std::size_t>(batch.rows());
    const std::size_t vec = rows * static_cast<std::size_t>(batch.m);
    if (batch.N <= 0 || batch.T <= 0 || batch.m <= 0)
        throw ShapeError("gae: batch dimensions must be positive");
    if (batch.reward.size() != vec || batch.value.size() != vec ||
        batch.next_value.size() != vec)
        throw ShapeError("gae: reward/value arrays do not match N*T*m");
    if (batch.terminated.size() != rows || batch.truncated.size() != rows)
        throw ShapeError("gae: done flags do not match N*T");
}

}  // namespace

GaeResult gae_per_objective(const RolloutBatch& batch, double gamma,
                            double lambda) {
    check_batch_shapes(batch);
    if (!(gamma >= 0.0 && gamma <= 1.0))
        throw DomainError("gae: gamma must lie in [0, 1], got " +
                          std::to_string(gamma));
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw DomainError("gae: lambda must lie in [0, 1], got " +
                          std::to_string(lambda));

    const int m = batch.m;
    GaeResult out;
    out.advantages.assign(batch.reward.size(), 0.0);
    out.value_targets.assign(batch.reward.size(), 0.0);

    std::vector<double> carry(static_cast<std::size_t>(m));
    for (int i = 0; i < batch.N; ++i) {
        std::fill(carry.begin(), carry.end(), 0.0);
        for (int t = batch.T - 1; t >= 0; --t) {
            const int r = batch.row(i, t);
            // Termination kills the bootstrap value; truncation keeps it for
            // this step's delta but severs accumulation from later steps.
            const double bootstrap = batch.terminated[r] ? 0.0 : 1.0;
            const double carry_on =
                (batch.terminated[r] || batch.truncated[r]) ? 0.0 : 1.0;
            for (int k = 0; k < m; ++k) {
                const std::size_t idx =
                    static_cast<std::size_t>(r) * m + static_cast<std::size_t>(k);
                const double delta = batch.reward[idx] +
                                     gamma * batch.next_value[idx] * bootstrap -
                                     batch.value[idx];
                carry[static_cast<std::size_t>(k)] =
                    delta + gamma * lambda * carry_on *
                                carry[static_cast<std::size_t>(k)];
                out.advantages[idx] = carry[static_cast<std::size_t>(k)];
                out.value_targets[idx] = out.advantages[idx] + batch.value[idx];
            }
        }
    }
    return out;
}

std::vector<double> normalize_and_scalarize(
    const std::vector<double>& advantages, const RolloutBatch& batch) {
    check_batch_shapes(batch);
    if (advantages.size() != batch.reward.size())
        throw ShapeError("normalize_and_scalarize: advantage array mismatch");
    if (batch.tradeoffs.size() != static_cast<std::size_t>(batch.N))
        throw ShapeError("normalize_and_scalarize: need one trade-off per instance");

    const int m = batch.m;
    const std::size_t rows = static_cast<std::size_t>(batch.rows());

    std::vector<double> mean(static_cast<std::size_t>(m), 0.0);
    std::vector<double> var(static_cast<std::size_t>(m), 0.0);
    for (std::size_t r = 0; r < rows; ++r)
        for (int k = 0; k < m; ++k)
            mean[static_cast<std::size_t>(k)] +=
                advantages[r * m + static_cast<std::size_t>(k)];
    for (int k = 0; k < m; ++k) mean[static_cast<std::size_t>(k)] /= double(rows);
    for (std::size_t r = 0; r < rows; ++r)
        for (int k = 0; k < m; ++k) {
            const double d = advantages[r * m + static_cast<std::size_t>(k)] -
                             mean[static_cast<std::size_t>(k)];
            var[static_cast<std::size_t>(k)] += d * d;
        }
    std::vector<double> inv_std(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
        const double std_k = std::sqrt(var[static_cast<std::size_t>(k)] / double(rows));
        inv_std[static_cast<std::size_t>(k)] = 1.0 / (std_k + 1e-8);
    }

    std::vector<double> out(rows, 0.0);
    for (int i = 0; i < batch.N; ++i) {
        const TradeoffVector& w = batch.tradeoffs[static_cast<std::size_t>(i)];
        if (w.m() != m)
            throw ShapeError("normalize_and_scalarize: trade-off dimension mismatch");
        for (int t = 0; t < batch.T; ++t) {
            const std::size_t r = static_cast<std::size_t>(batch.row(i, t));
            double s = 0.0;
            for (int k = 0; k < m; ++k) {
                const double centered =
                    advantages[r * m + static_cast<std::size_t>(k)] -
                    mean[static_cast<std::size_t>(k)];
                s += w.weights[static_cast<std::size_t>(k)] * centered *
                     inv_std[static_cast<std::size_t>(k)];
            }
            out[r] = s;
        }
    }
    return out;
}

}  // namespace morlax
