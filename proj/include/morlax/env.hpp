#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "morlax/rng.hpp"

namespace morlax {

struct EnvSpec {
    std::string name;
    int obs_dim = 0;
    int act_dim = 0;
    int m = 0;                  // objective count (>= 2 for the MO suite;
                                // 1 only for the scalar regression variant)
    int max_episode_steps = 0;
    std::vector<std::string> objective_names;
    std::vector<double> hv_reference;  // default hypervolume reference

    void validate() const;
};

// N independent instances of one environment, stepped in lockstep.
//
// Dynamics are deterministic; all stochasticity lives in the initial-state
// draws, which come from per-instance RNG streams seeded at reset() so that
// results are identical for any thread count.
//
// Auto-reset: when an instance terminates or truncates, step() reports the
// final observation of the finished episode (so a truncated value can be
// bootstrapped), then the instance is reset internally; the *next* step
// consumes the fresh initial state, visible through current_obs().
class BatchedEnv {
public:
    BatchedEnv(EnvSpec spec, int num_envs);
    virtual ~BatchedEnv() = default;
    BatchedEnv(const BatchedEnv&) = delete;
    BatchedEnv& operator=(const BatchedEnv&) = delete;

    const EnvSpec& spec() const { return spec_; }
    int num_envs() const { return num_envs_; }

    struct StepOut {
        std::vector<double> obs;        // N x obs_dim, pre-reset final obs
        std::vector<double> reward;     // N x m
        std::vector<std::uint8_t> terminated;  // MDP-terminal state reached
        std::vector<std::uint8_t> truncated;   // time limit hit (never both)

        void resize(const EnvSpec& spec, int n);
    };

    // Reseeds per-instance streams from `rng` (instance i gets split(i)),
    // resets every instance, and returns the initial observations.
    std::vector<double> reset(const Rng& rng);

    // Steps all instances with `actions` (N x act_dim, clamped to [-1, 1]
    // with a counter for out-of-range inputs).
    void step(std::span<const double> actions, StepOut& out);

    // Steps one instance; thread-safe across distinct i. Buffers are the
    // instance's slices (act_dim / m / obs_dim doubles).
    void step_instance(int i, const double* action, double* reward,
                       std::uint8_t* terminated, std::uint8_t* truncated,
                       double* final_obs);

    // Observation the next action will act on (post-reset after a done).
    std::span<const double> current_obs() const { return current_obs_; }
    const double* current_obs(int i) const {
        return current_obs_.data() +
               static_cast<std::size_t>(i) * spec_.obs_dim;
    }

    std::uint64_t clamp_count() const {
        return clamp_count_.load(std::memory_order_relaxed);
    }

protected:
    // Derived classes hold per-instance physical state.
    virtual void do_reset(int i, Rng& stream) = 0;
    // Advance instance i with a pre-clamped action; fill the m-vector
    // reward and set `terminated` when an MDP-terminal state is reached.
    virtual void do_step(int i, const double* action, double* reward,
                         bool* terminated) = 0;
    virtual void write_obs(int i, double* out) const = 0;

private:
    void reset_instance(int i);

    EnvSpec spec_;
    int num_envs_;
    std::vector<Rng> streams_;
    std::vector<int> step_count_;
    std::vector<double> current_obs_;
    std::atomic<std::uint64_t> clamp_count_ = 0;
};

}  // namespace morlax
