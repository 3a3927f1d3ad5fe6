#pragma once

#include <cstdint>
#include <iostream>
#include <string>

#include "morlax/errors.hpp"

namespace morlax::cli {

// Exit-code contract: 0 success, 2 usage/config error, 3 numeric failure.
template <typename Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return 3;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const ShapeError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

struct TrainArgs {
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;      // --seed overrides the config file's seed
    bool deterministic = false;
    int threads = 1;
};
int cmd_train(const TrainArgs& args);

struct EvalArgs {
    std::string checkpoint_path;
    std::string out_csv;
    std::string env;            // optional; must match the checkpoint's env
    int grid = 0;               // 0 = use the checkpoint's eval settings
    int episodes = 0;
    std::uint64_t seed = 0;
    bool deterministic = false;
    int threads = 1;
};
int cmd_eval(const EvalArgs& args);

struct MetricsArgs {
    std::string front_csv;
    std::string ref;            // "r1,r2,..."
};
int cmd_metrics(const MetricsArgs& args);

struct OracleArgs {
    std::string env;
    std::string w;              // "w1,w2" (value oracle)
    int horizon = 0;            // 0 = environment default
    int grid = 41;              // action lattice for the front oracle
    std::string out_csv;        // optional; front oracle prints to stdout
};
int cmd_oracle(const OracleArgs& args);

}  // namespace morlax::cli
