#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>
#include <string>

#include "morlax/envs.hpp"
#include "morlax/errors.hpp"
#include "morlax/trainer.hpp"

namespace morlax {

namespace {

// Distinct split lanes off the root seed, so every consumer of randomness
// has its own counter-based stream.
constexpr std::uint64_t kLaneActorInit = 0xA1;
constexpr std::uint64_t kLaneCriticInit = 0xA2;
constexpr std::uint64_t kLaneEnvReset = 0xE0;
constexpr std::uint64_t kLaneIterBase = 0x1000'0000ULL;
constexpr std::uint64_t kLaneEvalBase = 0x2000'0000ULL;

// Adam over the three hypernet parameter blocks, kept unflattened so the
// update never copies the parameter vector.
struct HypernetAdam {
    AdamState feature, M, b;

    explicit HypernetAdam(const HypernetParams& p)
        : feature(p.feature_params.size()), M(p.M.size()), b(p.b.size()) {}

    void apply(HypernetParams& p, const HypernetGrad& g, double lr) {
        adam_apply(feature, p.feature_params, g.feature_params, lr);
        adam_apply(M, p.M, g.M, lr);
        adam_apply(b, p.b, g.b, lr);
    }
};

double mean_or_nan(const std::vector<double>& v) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    return std::accumulate(v.begin(), v.end(), 0.0) /
           static_cast<double>(v.size());
}

std::string format_metric(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

Checkpoint train(const RunConfig& cfg, const TrainOptions& opts,
                 const IterationCallback& callback) {
    cfg.validate();
    const EnvSpec es = env_spec(cfg.env_name);
    const TrainerConfig& tc = cfg.trainer;
    const int m = es.m;
    const int threads = opts.deterministic ? 1 : std::max(1, opts.threads);

    const HypernetSpec actor_spec = cfg.hypernet.actor_spec(es);
    const HypernetSpec critic_spec = cfg.hypernet.critic_spec(es);

    const Rng root(tc.seed);
    Rng actor_init = root.split(kLaneActorInit);
    Rng critic_init = root.split(kLaneCriticInit);
    HypernetParams actor = init_hypernet(actor_spec, actor_init);
    HypernetParams critic = init_hypernet(critic_spec, critic_init);
    HypernetAdam actor_adam(actor);
    HypernetAdam critic_adam(critic);

    std::unique_ptr<BatchedEnv> env = make_env(cfg.env_name, tc.N);
    env->reset(root.split(kLaneEnvReset));
    EpisodeTracker tracker;
    tracker.reset(tc.N, m);

    const ObjectiveVector reference =
        cfg.pareto_reference.empty() ? es.hv_reference : cfg.pareto_reference;

    auto snapshot = [&](int iteration) {
        Checkpoint c;
        c.config = cfg;
        c.actor_spec = actor_spec;
        c.critic_spec = critic_spec;
        c.actor_params = flatten_hypernet(actor);
        c.critic_params = flatten_hypernet(critic);
        c.iteration = iteration;
        c.rng_key = root.key();
        c.rng_counter = root.counter();
        return c;
    };

    const std::filesystem::path out_dir(opts.out_dir);
    std::ofstream metrics;
    if (!opts.out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        metrics.open(out_dir / "metrics.csv", std::ios::trunc);
        if (!metrics)
            throw ConfigError("cannot open metrics log in '" + opts.out_dir + "'");
        metrics << "iteration,wall_ms";
        const int K = tc.K;
        for (int c = 0; c < K; ++c) metrics << ",cluster_" << c << "_return";
        metrics << ",archive_hypervolume\n";
    }

    Checkpoint last_good = snapshot(0);
    std::vector<ObjectiveVector> archive;
    double archive_hv = 0.0;

    const int rows = tc.N * tc.T;
    std::vector<int> perm(static_cast<std::size_t>(rows));
    std::iota(perm.begin(), perm.end(), 0);

    const int reps = tc.N / tc.K;

    for (int it = 0; it < tc.iterations; ++it) {
        const auto t0 = std::chrono::steady_clock::now();
        const Rng iter_rng = root.split(kLaneIterBase + static_cast<std::uint64_t>(it));

        std::vector<TradeoffVector> clusters;
        clusters.reserve(static_cast<std::size_t>(tc.K));
        if (m == 1) {
            clusters.assign(static_cast<std::size_t>(tc.K),
                            TradeoffVector{{1.0}});
        } else {
            SamplingConfig sc;
            sc.m = m;
            sc.K = tc.K;
            sc.kappa = tc.kappa;
            sc.N = tc.N;
            Rng sample_rng = iter_rng.split(0);
            const std::vector<TradeoffVector> per_instance =
                build_tradeoff_batch(sc, sample_rng);
            for (int c = 0; c < tc.K; ++c)
                clusters.push_back(per_instance[static_cast<std::size_t>(c) *
                                                static_cast<std::size_t>(reps)]);
        }

        IterationStats stats;
        stats.iteration = it;
        try {
            RolloutBatch batch = collect_rollouts(
                actor_spec, actor, critic_spec, critic, *env, clusters, reps,
                tc.T, iter_rng.split(1), threads, &tracker);
            const GaeResult gae =
                gae_per_objective(batch, tc.gamma, tc.gae_lambda);
            const std::vector<double> sadv =
                normalize_and_scalarize(gae.advantages, batch);

            stats.cluster_returns.reserve(batch.completed_returns.size());
            for (const std::vector<double>& r : batch.completed_returns)
                stats.cluster_returns.push_back(mean_or_nan(r));

            Rng shuffle_rng = iter_rng.split(2);
            Minibatch mb;
            mb.batch = &batch;
            mb.scalar_advantage = &sadv;
            mb.value_targets = &gae.value_targets;
            for (int e = 0; e < tc.epochs; ++e) {
                shuffle_rng.shuffle(perm);
                for (int s = 0; s < tc.minibatch_count; ++s) {
                    const int lo = static_cast<int>(
                        static_cast<long long>(rows) * s / tc.minibatch_count);
                    const int hi = static_cast<int>(
                        static_cast<long long>(rows) * (s + 1) / tc.minibatch_count);
                    if (lo == hi) continue;
                    mb.rows.assign(perm.begin() + lo, perm.begin() + hi);

                    const LossResult al = actor_loss(actor_spec, actor, mb,
                                                     tc.clip_eps, tc.entropy_coef);
                    const LossResult cl = critic_loss(critic_spec, critic, mb);
                    if (!std::isfinite(al.loss) || !std::isfinite(cl.loss))
                        throw NumericError(
                            "non-finite loss at iteration " + std::to_string(it) +
                            ", epoch " + std::to_string(e) + ", minibatch " +
                            std::to_string(s));
                    actor_adam.apply(actor, al.grad, tc.actor_lr);
                    critic_adam.apply(critic, cl.grad, tc.critic_lr);
                    stats.actor_loss += al.loss;
                    stats.critic_loss += cl.loss;
                }
            }

            if (it % cfg.eval.log_interval == 0 || it == tc.iterations - 1) {
                const EvalTable table = evaluate_params(
                    actor_spec, actor, cfg.env_name, cfg.eval.grid_resolution,
                    cfg.eval.episodes_per_point,
                    root.split(kLaneEvalBase + static_cast<std::uint64_t>(it)),
                    threads);
                for (const EvalRow& row : table.rows)
                    archive.push_back(row.mean_return);
                archive = nondominated_filter(archive);
                archive_hv = hypervolume(ParetoFront{archive, reference});
            }
        } catch (const NumericError&) {
            // Numeric blow-up: keep the last healthy state on disk, then
            // let the caller decide (the CLI maps this to exit code 3).
            if (!opts.out_dir.empty()) {
                save_checkpoint(last_good,
                                (out_dir / "checkpoint.bin").string());
                metrics.flush();
            }
            throw;
        }
        stats.archive_hypervolume = archive_hv;

        const auto t1 = std::chrono::steady_clock::now();
        const double wall_ms =
            opts.deterministic
                ? 0.0
                : std::chrono::duration<double, std::milli>(t1 - t0).count();

        if (metrics.is_open()) {
            metrics << it << ',' << format_metric(wall_ms);
            for (double r : stats.cluster_returns)
                metrics << ',' << format_metric(r);
            metrics << ',' << format_metric(archive_hv) << '\n';
            metrics.flush();
        }
        if (callback) callback(stats);
        last_good = snapshot(it + 1);
    }

    if (!opts.out_dir.empty())
        save_checkpoint(last_good, (out_dir / "checkpoint.bin").string());
    return last_good;
}

}  // namespace morlax
