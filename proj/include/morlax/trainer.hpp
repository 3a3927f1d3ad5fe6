#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "morlax/env.hpp"
#include "morlax/hypernet.hpp"
#include "morlax/pareto.hpp"
#include "morlax/rng.hpp"
#include "morlax/simplex.hpp"

namespace morlax {

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

struct TrainerConfig {
    int N = 64;                  // parallel environment instances
    int K = 8;                   // trade-off clusters per iteration
    int kappa = 2;               // clusters pinned to simplex vertices
    int T = 200;                 // steps per instance per iteration
    double gamma = 0.99;         // discount
    double gae_lambda = 0.95;    // advantage estimator decay
    double clip_eps = 0.1;       // surrogate clip radius
    int epochs = 10;             // optimization passes per batch
    int minibatch_count = 8;     // minibatches per epoch
    double actor_lr = 3e-4;
    double critic_lr = 1e-3;
    // Keeps the policy's noise scale off its lower clamp. Objectives that
    // penalize action magnitude otherwise reward shrinking sigma directly,
    // and once sigma hits the floor the mean's gradient signal (scaled by
    // 1/sigma in SNR terms) is too weak to keep improving. Evaluation uses
    // the deterministic mean, so the bonus costs nothing at measurement.
    double entropy_coef = 0.1;
    int iterations = 300;
    std::uint64_t seed = 0;

    // m is the environment's objective count; m == 1 bypasses trade-off
    // sampling entirely (every instance gets the weight [1]), so the
    // simplex-sampling constraints (K > 1, kappa <= K) only apply for m >= 2.
    void validate(int m) const;
};

struct HypernetArch {
    int F = 64;                            // feature dimension
    std::vector<int> feature_hidden{64, 64};
    std::vector<int> actor_hidden{32, 32};
    std::vector<int> critic_hidden{32, 32};

    void validate() const;
    HypernetSpec actor_spec(const EnvSpec& env) const;
    HypernetSpec critic_spec(const EnvSpec& env) const;
};

struct EvalConfig {
    int grid_resolution = 10;   // simplex grid used for periodic evaluation
    int episodes_per_point = 8;
    int log_interval = 10;      // iterations between archive evaluations

    void validate() const;
};

struct RunConfig {
    std::string env_name = "mo-lqr1d";
    TrainerConfig trainer;
    HypernetArch hypernet;
    EvalConfig eval;
    // Hypervolume reference for the training archive; empty means use the
    // environment's default.
    std::vector<double> pareto_reference;

    void validate() const;
};

// ---------------------------------------------------------------------------
// Rollout storage
// ---------------------------------------------------------------------------

// One iteration's worth of experience from N instances x T steps. Rows are
// stored instance-major: row(i, t) = i * T + t. Vector-valued entries (reward,
// value, next_value) hold m doubles per row. `value` is the critic at the
// observation the action was taken from; `next_value` is the critic at the
// state the step landed on (for finished episodes this is the terminal
// observation, not the auto-reset successor), which is what bootstrapping
// across truncation needs.
struct RolloutBatch {
    int N = 0;
    int T = 0;
    int m = 0;
    int obs_dim = 0;
    int act_dim = 0;

    std::vector<double> obs;            // N*T*obs_dim
    std::vector<double> action_pre;     // N*T*act_dim, pre-squash samples
    std::vector<double> logprob_old;    // N*T
    std::vector<double> reward;         // N*T*m
    std::vector<double> value;          // N*T*m
    std::vector<double> next_value;     // N*T*m
    std::vector<std::uint8_t> terminated;  // N*T
    std::vector<std::uint8_t> truncated;   // N*T

    std::vector<TradeoffVector> tradeoffs;  // per instance, N entries
    std::vector<int> cluster;               // per instance, N entries

    // Undiscounted scalarized returns of episodes that finished during this
    // window, grouped by cluster (for progress metrics).
    std::vector<std::vector<double>> completed_returns;

    int rows() const { return N * T; }
    int row(int i, int t) const { return i * T + t; }
    void resize(int n, int horizon, int num_objectives, int obs_d, int act_d);
};

// Undiscounted per-objective return accumulators that survive across
// iterations, so episodes spanning a window boundary still report once.
struct EpisodeTracker {
    int N = 0;
    int m = 0;
    std::vector<double> running;  // N*m

    void reset(int n, int num_objectives);
};

// Rolls the policy family out for T steps. Instance i uses trade-off
// cluster_tradeoffs[i / reps_per_cluster]; the hypernets are evaluated once
// per cluster. `rng` must be dedicated to this call (it is split per
// instance), and `tracker`, when given, carries episode-return accumulators
// across successive calls on the same env.
RolloutBatch collect_rollouts(const HypernetSpec& actor_spec,
                              const HypernetParams& actor_params,
                              const HypernetSpec& critic_spec,
                              const HypernetParams& critic_params,
                              BatchedEnv& env,
                              const std::vector<TradeoffVector>& cluster_tradeoffs,
                              int reps_per_cluster, int T, const Rng& rng,
                              int threads, EpisodeTracker* tracker = nullptr);

// ---------------------------------------------------------------------------
// Advantage estimation
// ---------------------------------------------------------------------------

struct GaeResult {
    std::vector<double> advantages;     // N*T*m
    std::vector<double> value_targets;  // N*T*m, advantage + value
};

// Per-objective generalized advantage estimation, scanned backwards per
// instance. Termination zeroes the bootstrap; truncation keeps the bootstrap
// for its own delta but stops accumulation across the boundary.
GaeResult gae_per_objective(const RolloutBatch& batch, double gamma,
                            double lambda);

// Normalizes each advantage channel to zero mean / unit variance over the
// whole batch (a channel with zero spread normalizes to zero), then projects
// each row onto its instance's trade-off vector. Returns N*T scalars.
std::vector<double> normalize_and_scalarize(const std::vector<double>& advantages,
                                            const RolloutBatch& batch);

// ---------------------------------------------------------------------------
// Losses
// ---------------------------------------------------------------------------

// A view over selected rows of a batch plus the tensors derived from it.
struct Minibatch {
    const RolloutBatch* batch = nullptr;
    std::vector<int> rows;                           // flattened row indices
    const std::vector<double>* scalar_advantage = nullptr;  // N*T
    const std::vector<double>* value_targets = nullptr;     // N*T*m
};

struct LossResult {
    double loss = 0.0;
    HypernetGrad grad;
};

// Clipped-ratio policy surrogate (maximizing scalarized advantage, so the
// returned loss is its negation) minus entropy_coef times the Gaussian
// entropy. Gradients flow through the hypernetwork for every distinct
// trade-off in the minibatch.
LossResult actor_loss(const HypernetSpec& spec, const HypernetParams& params,
                      const Minibatch& mb, double clip_eps,
                      double entropy_coef);

// Mean squared error between the critic head and per-objective value targets
// (mean over rows of the squared Euclidean distance).
LossResult critic_loss(const HypernetSpec& spec, const HypernetParams& params,
                       const Minibatch& mb);

// ---------------------------------------------------------------------------
// Optimizer
// ---------------------------------------------------------------------------

inline constexpr double kAdamBeta1 = 0.9;
inline constexpr double kAdamBeta2 = 0.999;
inline constexpr double kAdamEps = 1e-8;

struct AdamState {
    std::vector<double> m1;
    std::vector<double> m2;
    std::int64_t step = 0;

    AdamState() = default;
    explicit AdamState(std::size_t n) : m1(n, 0.0), m2(n, 0.0) {}
};

// One bias-corrected Adam step; params and grad must match the state size.
void adam_apply(AdamState& state, std::span<double> params,
                std::span<const double> grad, double lr);

// ---------------------------------------------------------------------------
// Checkpoint
// ---------------------------------------------------------------------------

struct Checkpoint {
    std::uint32_t version = 1;
    RunConfig config;
    HypernetSpec actor_spec;
    HypernetSpec critic_spec;
    std::vector<double> actor_params;   // flattened
    std::vector<double> critic_params;  // flattened
    std::int64_t iteration = 0;
    std::uint64_t rng_key = 0;
    std::uint64_t rng_counter = 0;
};

void save_checkpoint(const Checkpoint& ckpt, const std::string& path);
Checkpoint load_checkpoint(const std::string& path);

// ---------------------------------------------------------------------------
// Training and evaluation
// ---------------------------------------------------------------------------

struct TrainOptions {
    std::string out_dir;        // empty disables checkpoint/metrics files
    int threads = 1;
    bool deterministic = false;  // single-threaded; wall-clock logged as zero
};

struct IterationStats {
    int iteration = 0;
    double actor_loss = 0.0;        // summed over minibatch steps
    double critic_loss = 0.0;       // summed over minibatch steps
    double archive_hypervolume = 0.0;
    std::vector<double> cluster_returns;  // mean completed return per cluster
};

using IterationCallback = std::function<void(const IterationStats&)>;

// Runs the full training loop and returns the final checkpoint. When out_dir
// is set, writes checkpoint.bin and metrics.csv there (and on a numeric
// failure saves the last healthy checkpoint before rethrowing).
Checkpoint train(const RunConfig& cfg, const TrainOptions& opts,
                 const IterationCallback& callback = {});

struct EvalRow {
    TradeoffVector w;
    ObjectiveVector mean_return;  // undiscounted, averaged over episodes
};

struct EvalTable {
    int m = 0;
    std::vector<EvalRow> rows;
};

// Evaluates the deterministic policy (tanh of the pre-squash mean) for each
// trade-off on the simplex grid, averaging full-episode undiscounted returns.
EvalTable evaluate_params(const HypernetSpec& actor_spec,
                          const HypernetParams& actor_params,
                          const std::string& env_name, int grid_resolution,
                          int episodes_per_point, const Rng& rng, int threads);

// Convenience wrapper over a checkpoint; env_override must name the same
// environment the checkpoint was trained on (or be empty).
EvalTable evaluate(const Checkpoint& ckpt, const std::string& env_override,
                   int grid_resolution, int episodes_per_point, const Rng& rng,
                   int threads);

}  // namespace morlax
