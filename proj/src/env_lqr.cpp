#include "morlax/envs.hpp"

namespace morlax {

EnvSpec LqrEnv::make_spec(bool scalar_variant) {
    EnvSpec s;
    s.name = scalar_variant ? "mo-lqr1d-m1" : "mo-lqr1d";
    s.obs_dim = 1;
    s.act_dim = 1;
    s.m = scalar_variant ? 1 : 2;
    s.max_episode_steps = kLqrHorizon;
    s.objective_names = scalar_variant
                            ? std::vector<std::string>{"state"}
                            : std::vector<std::string>{"state", "control"};
    s.hv_reference = scalar_variant ? std::vector<double>{-50.0}
                                    : std::vector<double>{-50.0, -20.0};
    return s;
}

LqrEnv::LqrEnv(int num_envs, bool scalar_variant)
    : BatchedEnv(make_spec(scalar_variant), num_envs),
      x_(static_cast<std::size_t>(num_envs), 0.0),
      scalar_(scalar_variant) {}

void LqrEnv::do_reset(int i, Rng& stream) {
    x_[static_cast<std::size_t>(i)] = stream.uniform(-1.0, 1.0);
}

void LqrEnv::do_step(int i, const double* action, double* reward,
                     bool* terminated) {
    double& x = x_[static_cast<std::size_t>(i)];
    const double u = action[0];
    reward[0] = -x * x;                    // stage cost on the current state
    if (!scalar_) reward[1] = -u * u;
    x = kLqrA * x + kLqrB * u;
    *terminated = false;                   // truncation only
}

void LqrEnv::write_obs(int i, double* out) const {
    out[0] = x_[static_cast<std::size_t>(i)];
}

}  // namespace morlax
