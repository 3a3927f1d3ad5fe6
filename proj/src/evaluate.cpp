#include <algorithm>
#include <cstring>

#include "morlax/envs.hpp"
#include "morlax/errors.hpp"
#include "morlax/parallel.hpp"
#include "morlax/trainer.hpp"

namespace morlax {

namespace {

// Rolls one trade-off's deterministic policy (tanh of the Gaussian mean)
// through `episodes` fresh episodes in lockstep and returns the mean
// undiscounted return per objective. Only the first episode of each
// instance counts; auto-reset restarts are masked out.
ObjectiveVector eval_point(const HypernetSpec& actor_spec,
                           const HypernetParams& actor_params,
                           const std::string& env_name,
                           const TradeoffVector& w, int episodes,
                           const Rng& rng) {
    const std::vector<double> theta =
        hypernet_forward(actor_spec, actor_params, w);
    const MlpSpec& net = actor_spec.target_spec;
    const std::size_t mlp_n = mlp_param_count(net);

    std::unique_ptr<BatchedEnv> env = make_env(env_name, episodes);
    const EnvSpec& es = env->spec();
    env->reset(rng);

    std::vector<double> totals(static_cast<std::size_t>(es.m) * episodes, 0.0);
    std::vector<std::uint8_t> alive(static_cast<std::size_t>(episodes), 1);
    std::vector<double> reward(static_cast<std::size_t>(es.m));
    std::vector<double> final_obs(static_cast<std::size_t>(es.obs_dim));
    MlpWork work;

    for (int t = 0; t < es.max_episode_steps; ++t) {
        bool any = false;
        for (int i = 0; i < episodes; ++i) {
            if (!alive[static_cast<std::size_t>(i)]) continue;
            any = true;
            const double* o = env->current_obs(i);
            mlp_forward_cached(net, {theta.data(), mlp_n},
                               {o, static_cast<std::size_t>(es.obs_dim)}, work);
            const std::vector<double>& action = work.activations.back();
            std::uint8_t term = 0;
            std::uint8_t trunc = 0;
            env->step_instance(i, action.data(), reward.data(), &term, &trunc,
                               final_obs.data());
            double* tot = totals.data() + static_cast<std::size_t>(i) * es.m;
            for (int k = 0; k < es.m; ++k) tot[k] += reward[static_cast<std::size_t>(k)];
            if (term || trunc) alive[static_cast<std::size_t>(i)] = 0;
        }
        if (!any) break;
    }

    ObjectiveVector mean(static_cast<std::size_t>(es.m), 0.0);
    for (int i = 0; i < episodes; ++i)
        for (int k = 0; k < es.m; ++k)
            mean[static_cast<std::size_t>(k)] +=
                totals[static_cast<std::size_t>(i) * es.m + static_cast<std::size_t>(k)];
    for (double& v : mean) v /= static_cast<double>(episodes);
    return mean;
}

}  // namespace

EvalTable evaluate_params(const HypernetSpec& actor_spec,
                          const HypernetParams& actor_params,
                          const std::string& env_name, int grid_resolution,
                          int episodes_per_point, const Rng& rng, int threads) {
    if (episodes_per_point < 1)
        throw ConfigError("evaluate: episodes_per_point must be >= 1");
    const EnvSpec es = env_spec(env_name);
    if (actor_spec.m != es.m)
        throw ShapeError("evaluate: hypernet trade-off dim does not match env");

    std::vector<TradeoffVector> grid;
    if (es.m == 1) {
        grid.push_back(TradeoffVector{{1.0}});
    } else {
        if (grid_resolution < 1)
            throw ConfigError("evaluate: grid_resolution must be >= 1");
        grid = simplex_grid(es.m, grid_resolution);
    }

    EvalTable table;
    table.m = es.m;
    table.rows.resize(grid.size());
    const int n = static_cast<int>(grid.size());
    parallel_for(n, threads, [&](int begin, int end) {
        for (int g = begin; g < end; ++g) {
            EvalRow& row = table.rows[static_cast<std::size_t>(g)];
            row.w = grid[static_cast<std::size_t>(g)];
            row.mean_return = eval_point(actor_spec, actor_params, env_name,
                                         row.w, episodes_per_point,
                                         rng.split(static_cast<std::uint64_t>(g)));
        }
    });
    return table;
}

EvalTable evaluate(const Checkpoint& ckpt, const std::string& env_override,
                   int grid_resolution, int episodes_per_point, const Rng& rng,
                   int threads) {
    if (!env_override.empty() && env_override != ckpt.config.env_name)
        throw ConfigError("checkpoint was trained on '" + ckpt.config.env_name +
                          "', not '" + env_override + "'");
    const HypernetParams actor =
        unflatten_hypernet(ckpt.actor_spec, ckpt.actor_params);
    return evaluate_params(ckpt.actor_spec, actor, ckpt.config.env_name,
                           grid_resolution, episodes_per_point, rng, threads);
}

}  // namespace morlax
