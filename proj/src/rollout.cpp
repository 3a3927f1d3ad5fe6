#include <cstring>
#include <string>

#include "morlax/errors.hpp"
#include "morlax/parallel.hpp"
#include "morlax/trainer.hpp"

namespace morlax {

void RolloutBatch::resize(int n, int horizon, int num_objectives, int obs_d,
                          int act_d) {
    N = n;
    T = horizon;
    m = num_objectives;
    obs_dim = obs_d;
    act_dim = act_d;
    const std::size_t r = static_cast<std::size_t>(n) * horizon;
    obs.assign(r * obs_d, 0.0);
    action_pre.assign(r * act_d, 0.0);
    logprob_old.assign(r, 0.0);
    reward.assign(r * num_objectives, 0.0);
    value.assign(r * num_objectives, 0.0);
    next_value.assign(r * num_objectives, 0.0);
    terminated.assign(r, 0);
    truncated.assign(r, 0);
    tradeoffs.clear();
    cluster.assign(static_cast<std::size_t>(n), 0);
    completed_returns.clear();
}

void EpisodeTracker::reset(int n, int num_objectives) {
    N = n;
    m = num_objectives;
    running.assign(static_cast<std::size_t>(n) * num_objectives, 0.0);
}

RolloutBatch collect_rollouts(const HypernetSpec& actor_spec,
                              const HypernetParams& actor_params,
                              const HypernetSpec& critic_spec,
                              const HypernetParams& critic_params,
                              BatchedEnv& env,
                              const std::vector<TradeoffVector>& cluster_tradeoffs,
                              int reps_per_cluster, int T, const Rng& rng,
                              int threads, EpisodeTracker* tracker) {
    const EnvSpec& es = env.spec();
    const int K = static_cast<int>(cluster_tradeoffs.size());
    if (K < 1 || reps_per_cluster < 1)
        throw ShapeError("collect_rollouts: need at least one cluster and one repeat");
    const int N = K * reps_per_cluster;
    if (N != env.num_envs())
        throw ShapeError("collect_rollouts: K * reps (" + std::to_string(N) +
                         ") does not match env instances (" +
                         std::to_string(env.num_envs()) + ")");
    if (T < 1) throw ShapeError("collect_rollouts: T must be >= 1");
    if (actor_spec.m != es.m || critic_spec.m != es.m)
        throw ShapeError("collect_rollouts: hypernet trade-off dim does not match env objectives");
    if (!actor_spec.target_has_log_std ||
        actor_spec.target_spec.input_dim() != es.obs_dim ||
        actor_spec.target_spec.output_dim() != es.act_dim)
        throw ShapeError("collect_rollouts: actor target does not match env dims");
    if (critic_spec.target_has_log_std ||
        critic_spec.target_spec.input_dim() != es.obs_dim ||
        critic_spec.target_spec.output_dim() != es.m)
        throw ShapeError("collect_rollouts: critic target does not match env dims");

    // Policy / critic parameters are frozen per cluster for the whole window.
    std::vector<std::vector<double>> theta(static_cast<std::size_t>(K));
    std::vector<std::vector<double>> phi(static_cast<std::size_t>(K));
    for (int c = 0; c < K; ++c) {
        const TradeoffVector& w = cluster_tradeoffs[static_cast<std::size_t>(c)];
        theta[static_cast<std::size_t>(c)] =
            hypernet_forward(actor_spec, actor_params, w);
        phi[static_cast<std::size_t>(c)] =
            hypernet_forward(critic_spec, critic_params, w);
    }

    RolloutBatch batch;
    batch.resize(N, T, es.m, es.obs_dim, es.act_dim);
    batch.tradeoffs.reserve(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) {
        batch.cluster[static_cast<std::size_t>(i)] = i / reps_per_cluster;
        batch.tradeoffs.push_back(
            cluster_tradeoffs[static_cast<std::size_t>(i / reps_per_cluster)]);
    }

    EpisodeTracker local;
    if (tracker == nullptr) {
        local.reset(N, es.m);
        tracker = &local;
    } else if (tracker->N != N || tracker->m != es.m) {
        throw ShapeError("collect_rollouts: episode tracker shape mismatch");
    }

    // Collected per instance, merged in index order below, so the output is
    // independent of the thread count.
    std::vector<std::vector<double>> finished(static_cast<std::size_t>(N));

    parallel_for(N, threads, [&](int begin, int end) {
        std::vector<double> final_obs(static_cast<std::size_t>(es.obs_dim));
        for (int i = begin; i < end; ++i) {
            Rng stream = rng.split(static_cast<std::uint64_t>(i));
            const int c = i / reps_per_cluster;
            const std::vector<double>& pol = theta[static_cast<std::size_t>(c)];
            const std::vector<double>& val = phi[static_cast<std::size_t>(c)];
            const TradeoffVector& w = batch.tradeoffs[static_cast<std::size_t>(i)];
            double* run =
                tracker->running.data() + static_cast<std::size_t>(i) * es.m;
            for (int t = 0; t < T; ++t) {
                const int r = batch.row(i, t);
                const double* o = env.current_obs(i);
                std::memcpy(batch.obs.data() +
                                static_cast<std::size_t>(r) * es.obs_dim,
                            o, sizeof(double) * es.obs_dim);

                const GaussianAction dist = policy_forward(
                    actor_spec.target_spec, pol, {o, static_cast<std::size_t>(es.obs_dim)});
                const ActionSample smp = sample_and_logprob(stream, dist);
                std::memcpy(batch.action_pre.data() +
                                static_cast<std::size_t>(r) * es.act_dim,
                            smp.pre_tanh.data(), sizeof(double) * es.act_dim);
                batch.logprob_old[static_cast<std::size_t>(r)] = smp.logprob;

                const std::vector<double> v = critic_forward(
                    critic_spec.target_spec, val,
                    {o, static_cast<std::size_t>(es.obs_dim)});
                std::memcpy(batch.value.data() + static_cast<std::size_t>(r) * es.m,
                            v.data(), sizeof(double) * es.m);

                double* rew = batch.reward.data() + static_cast<std::size_t>(r) * es.m;
                std::uint8_t term = 0;
                std::uint8_t trunc = 0;
                env.step_instance(i, smp.action.data(), rew, &term, &trunc,
                                  final_obs.data());
                batch.terminated[static_cast<std::size_t>(r)] = term;
                batch.truncated[static_cast<std::size_t>(r)] = trunc;

                const std::vector<double> nv =
                    critic_forward(critic_spec.target_spec, val, final_obs);
                std::memcpy(batch.next_value.data() +
                                static_cast<std::size_t>(r) * es.m,
                            nv.data(), sizeof(double) * es.m);

                for (int k = 0; k < es.m; ++k) run[k] += rew[k];
                if (term || trunc) {
                    finished[static_cast<std::size_t>(i)].push_back(
                        w.dot({run, static_cast<std::size_t>(es.m)}));
                    for (int k = 0; k < es.m; ++k) run[k] = 0.0;
                }
            }
        }
    });

    batch.completed_returns.assign(static_cast<std::size_t>(K), {});
    for (int i = 0; i < N; ++i) {
        std::vector<double>& dst =
            batch.completed_returns[static_cast<std::size_t>(i / reps_per_cluster)];
        const std::vector<double>& src = finished[static_cast<std::size_t>(i)];
        dst.insert(dst.end(), src.begin(), src.end());
    }
    return batch;
}

}  // namespace morlax
