#include "morlax/envs.hpp"

namespace morlax {

EnvSpec PointMassEnv::make_spec() {
    EnvSpec s;
    s.name = "mo-pointmass";
    s.obs_dim = 4;  // [px, py, vx, vy]
    s.act_dim = 2;
    s.m = 2;
    s.max_episode_steps = kPointmassHorizon;
    s.objective_names = {"speed", "energy"};
    // Worst bounded returns: |v_x| <= T*dt*1 summed, |u|^2 <= 2 per step.
    s.hv_reference = {-1100.0, -450.0};
    return s;
}

PointMassEnv::PointMassEnv(int num_envs)
    : BatchedEnv(make_spec(), num_envs),
      state_(static_cast<std::size_t>(num_envs) * 4, 0.0) {}

void PointMassEnv::do_reset(int i, Rng& stream) {
    double* s = state_.data() + static_cast<std::size_t>(i) * 4;
    s[0] = stream.uniform(-0.1, 0.1);  // position noise only: the rewards
    s[1] = stream.uniform(-0.1, 0.1);  // depend on velocity and action
    s[2] = 0.0;
    s[3] = 0.0;
}

void PointMassEnv::do_step(int i, const double* action, double* reward,
                           bool* terminated) {
    double* s = state_.data() + static_cast<std::size_t>(i) * 4;
    // semi-implicit Euler: velocity first, then position
    s[2] += kPointmassDt * action[0];
    s[3] += kPointmassDt * action[1];
    s[0] += kPointmassDt * s[2];
    s[1] += kPointmassDt * s[3];
    reward[0] = s[2];  // forward speed
    reward[1] = -(action[0] * action[0] + action[1] * action[1]);
    *terminated = false;
}

void PointMassEnv::write_obs(int i, double* out) const {
    const double* s = state_.data() + static_cast<std::size_t>(i) * 4;
    out[0] = s[0];
    out[1] = s[1];
    out[2] = s[2];
    out[3] = s[3];
}

}  // namespace morlax
