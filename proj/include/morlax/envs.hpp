#pragma once

#include <memory>
#include <string>
#include <vector>

#include "morlax/env.hpp"

namespace morlax {

// --- mo-lqr1d ---------------------------------------------------------
// Scalar linear system x' = A x + B u with A = 0.9, B = 0.5, u in [-1, 1],
// x0 ~ U[-1, 1]. Rewards (-x^2, -u^2) on the pre-transition state; episodes
// truncate at 200 steps. The scalar variant keeps only the -x^2 channel.
inline constexpr double kLqrA = 0.9;
inline constexpr double kLqrB = 0.5;
inline constexpr int kLqrHorizon = 200;

class LqrEnv final : public BatchedEnv {
public:
    LqrEnv(int num_envs, bool scalar_variant);
    static EnvSpec make_spec(bool scalar_variant);

protected:
    void do_reset(int i, Rng& stream) override;
    void do_step(int i, const double* action, double* reward,
                 bool* terminated) override;
    void write_obs(int i, double* out) const override;

private:
    std::vector<double> x_;
    bool scalar_;
};

// --- mo-pointmass -----------------------------------------------------
// Planar double integrator, dt = 0.05: v += dt*u, p += dt*v. Rewards
// (v_x, -|u|^2); obs = [p, v]; p0 ~ U[-0.1, 0.1]^2, v0 = 0; 200 steps.
inline constexpr double kPointmassDt = 0.05;
inline constexpr int kPointmassHorizon = 200;

class PointMassEnv final : public BatchedEnv {
public:
    explicit PointMassEnv(int num_envs);
    static EnvSpec make_spec();

protected:
    void do_reset(int i, Rng& stream) override;
    void do_step(int i, const double* action, double* reward,
                 bool* terminated) override;
    void write_obs(int i, double* out) const override;

private:
    std::vector<double> state_;  // N x [px, py, vx, vy]
};

// --- mo-dst-continuous ------------------------------------------------
// Depth p starts at 0 and advances by u in [-1, 1] per step. Ten treasures
// sit at increasing depths; landing within +-kDstZoneHalfWidth of a depth
// collects that treasure's value and terminates. Every step costs -1 time.
// Depths are spaced so that reaching deeper treasures costs strictly more
// steps and the achievable (value, -time) front has strictly concave dips
// (points no linear scalarization can prefer).
inline constexpr double kDstZoneHalfWidth = 0.25;
inline constexpr int kDstHorizon = 50;
const std::vector<double>& dst_depths();   // 10 entries, increasing
const std::vector<double>& dst_values();   // concave-increasing ladder

class DeepSeaEnv final : public BatchedEnv {
public:
    explicit DeepSeaEnv(int num_envs);
    static EnvSpec make_spec();

protected:
    void do_reset(int i, Rng& stream) override;
    void do_step(int i, const double* action, double* reward,
                 bool* terminated) override;
    void write_obs(int i, double* out) const override;

private:
    std::vector<double> p_;
};

// --- registry ---------------------------------------------------------
std::vector<std::string> env_names();
bool is_known_env(const std::string& name);
EnvSpec env_spec(const std::string& name);  // throws ConfigError if unknown
std::unique_ptr<BatchedEnv> make_env(const std::string& name, int num_envs);

}  // namespace morlax
