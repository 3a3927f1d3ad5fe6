#include <algorithm>

#include "morlax/envs.hpp"
#include "morlax/errors.hpp"

namespace morlax {

std::vector<std::string> env_names() {
    return {"mo-lqr1d", "mo-pointmass", "mo-dst-continuous", "mo-lqr1d-m1"};
}

bool is_known_env(const std::string& name) {
    const std::vector<std::string> names = env_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

EnvSpec env_spec(const std::string& name) {
    if (name == "mo-lqr1d") return LqrEnv::make_spec(false);
    if (name == "mo-lqr1d-m1") return LqrEnv::make_spec(true);
    if (name == "mo-pointmass") return PointMassEnv::make_spec();
    if (name == "mo-dst-continuous") return DeepSeaEnv::make_spec();
    throw ConfigError("unknown environment: " + name);
}

std::unique_ptr<BatchedEnv> make_env(const std::string& name, int num_envs) {
    if (name == "mo-lqr1d")
        return std::make_unique<LqrEnv>(num_envs, /*scalar_variant=*/false);
    if (name == "mo-lqr1d-m1")
        return std::make_unique<LqrEnv>(num_envs, /*scalar_variant=*/true);
    if (name == "mo-pointmass")
        return std::make_unique<PointMassEnv>(num_envs);
    if (name == "mo-dst-continuous")
        return std::make_unique<DeepSeaEnv>(num_envs);
    throw ConfigError("unknown environment: " + name);
}

}  // namespace morlax
