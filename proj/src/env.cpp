#include "morlax/env.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "morlax/errors.hpp"

namespace morlax {

namespace {
constexpr int kMaxActDim = 8;  // stack clamp buffer bound; plenty here
}

void EnvSpec::validate() const {
    if (name.empty()) throw ShapeError("EnvSpec: empty name");
    if (obs_dim < 1 || act_dim < 1 || m < 1 || max_episode_steps < 1)
        throw ShapeError("EnvSpec: all counts must be >= 1");
    if (act_dim > kMaxActDim)
        throw ShapeError("EnvSpec: act_dim exceeds supported bound");
    if (static_cast<int>(objective_names.size()) != m)
        throw ShapeError("EnvSpec: objective_names length must equal m");
    if (!hv_reference.empty() && static_cast<int>(hv_reference.size()) != m)
        throw ShapeError("EnvSpec: hv_reference length must equal m");
}

void BatchedEnv::StepOut::resize(const EnvSpec& spec, int n) {
    obs.resize(static_cast<std::size_t>(n) * spec.obs_dim);
    reward.resize(static_cast<std::size_t>(n) * spec.m);
    terminated.assign(static_cast<std::size_t>(n), 0);
    truncated.assign(static_cast<std::size_t>(n), 0);
}

BatchedEnv::BatchedEnv(EnvSpec spec, int num_envs)
    : spec_(std::move(spec)), num_envs_(num_envs) {
    spec_.validate();
    if (num_envs_ < 1) throw ShapeError("BatchedEnv: num_envs must be >= 1");
    streams_.assign(static_cast<std::size_t>(num_envs_), Rng());
    step_count_.assign(static_cast<std::size_t>(num_envs_), 0);
    current_obs_.assign(
        static_cast<std::size_t>(num_envs_) * spec_.obs_dim, 0.0);
}

void BatchedEnv::reset_instance(int i) {
    do_reset(i, streams_[static_cast<std::size_t>(i)]);
    step_count_[static_cast<std::size_t>(i)] = 0;
    write_obs(i, current_obs_.data() +
                     static_cast<std::size_t>(i) * spec_.obs_dim);
}

std::vector<double> BatchedEnv::reset(const Rng& rng) {
    for (int i = 0; i < num_envs_; ++i) {
        streams_[static_cast<std::size_t>(i)] =
            rng.split(static_cast<std::uint64_t>(i));
        reset_instance(i);
    }
    return current_obs_;
}

void BatchedEnv::step_instance(int i, const double* action, double* reward,
                               std::uint8_t* terminated,
                               std::uint8_t* truncated, double* final_obs) {
    double clamped[kMaxActDim];
    bool any_clamped = false;
    for (int d = 0; d < spec_.act_dim; ++d) {
        if (!std::isfinite(action[d]))
            throw NumericError("non-finite action for environment instance " +
                               std::to_string(i));
        clamped[d] = std::clamp(action[d], -1.0, 1.0);
        any_clamped |= clamped[d] != action[d];
    }
    if (any_clamped) clamp_count_.fetch_add(1, std::memory_order_relaxed);

    bool term = false;
    do_step(i, clamped, reward, &term);
    int& steps = step_count_[static_cast<std::size_t>(i)];
    ++steps;
    // Terminal state wins if both fire on the same step: nothing remains to
    // bootstrap from a state the MDP has already left.
    const bool trunc = !term && steps >= spec_.max_episode_steps;
    *terminated = term ? 1 : 0;
    *truncated = trunc ? 1 : 0;

    write_obs(i, final_obs);  // final obs of the (possibly finished) episode
    if (term || trunc) {
        reset_instance(i);    // next step consumes the fresh initial state
    } else {
        std::copy(final_obs, final_obs + spec_.obs_dim,
                  current_obs_.data() +
                      static_cast<std::size_t>(i) * spec_.obs_dim);
    }
}

void BatchedEnv::step(std::span<const double> actions, StepOut& out) {
    if (actions.size() !=
        static_cast<std::size_t>(num_envs_) * spec_.act_dim)
        throw ShapeError("BatchedEnv::step: actions must be N x act_dim");
    out.resize(spec_, num_envs_);
    for (int i = 0; i < num_envs_; ++i) {
        step_instance(i, actions.data() + static_cast<std::size_t>(i) * spec_.act_dim,
                      out.reward.data() + static_cast<std::size_t>(i) * spec_.m,
                      &out.terminated[static_cast<std::size_t>(i)],
                      &out.truncated[static_cast<std::size_t>(i)],
                      out.obs.data() + static_cast<std::size_t>(i) * spec_.obs_dim);
    }
}

}  // namespace morlax
